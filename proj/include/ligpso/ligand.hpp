#pragma once

// Tree-encoded ligand: two rooted trees of functional groups on either side
// of a fixed pharmacophore. Each node holds a 3-bit group code; the
// chromosome is the right-tree fields (node 1 first) followed by the
// left-tree fields, most significant bit first.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ligpso/bitstring.hpp"
#include "ligpso/site.hpp"

namespace ligpso {

inline constexpr std::size_t kBitsPerGroup = 3;

enum class GroupCode : std::uint8_t {
  nul = 0,
  alkyl_1c = 1,
  alkyl_3c = 2,
  alkyl_1c_polar = 3,
  alkyl_3c_polar = 4,
  polar = 5,
  aromatic = 6,
  aromatic_polar = 7,
};

struct FunctionalGroup {
  GroupCode code;
  std::string_view name;
  /// Bond-length projection on the x axis, in angstrom. Zero for NUL.
  double bond_length_x;
  Polarity polarity;
};

const std::array<FunctionalGroup, 8>& group_table();
const FunctionalGroup& group_info(GroupCode code);
inline bool is_polar(GroupCode code) { return group_info(code).polarity == Polarity::polar; }
/// Alkyl-1C-Polar -> Alkyl-1C, Alkyl-3C-Polar -> Alkyl-3C, Aromatic-Polar -> Aromatic,
/// Polar -> Alkyl-1C. Identity on every other code.
GroupCode nonpolar_counterpart(GroupCode code);

inline constexpr double kMaxBondLength = 2.7;
inline constexpr double kMinBondLength = 0.65;  // smallest non-degenerate projection (Alkyl-1C)

enum class Side { right, left };
std::string to_string(Side s);
Side parse_side(std::string_view text);

class TopologyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape of one side's tree. Node ids are 1-based; parent id 0 is the
/// pharmacophore.
struct TreeTopology {
  Side side = Side::right;
  std::vector<int> parent;
  /// Chain of node ids running outward from the pharmacophore.
  std::vector<int> backbone;
  /// Nodes that may not hold a polar group unless every descendant is NUL.
  std::vector<int> junction_polar_restricted;
  /// junction id -> nodes whose occupancy forces the junction to be non-NUL.
  std::map<int, std::vector<int>> dependent_groups;

  std::size_t node_count() const noexcept { return parent.size(); }
  void validate() const;
  bool is_ancestor(int ancestor, int node) const;

  /// Right tree: backbone 1-3-6, node 2 under 1, nodes 4,5 under 3, nodes 7..10 under 6.
  static TreeTopology default_right();
  /// Left tree: backbone 1-3, node 2 under 1, nodes 4..7 under 3.
  static TreeTopology default_left();

  friend bool operator==(const TreeTopology&, const TreeTopology&) = default;
};

/// JSON schema: {"side": "right"|"left", "parent": [...], "backbone": [...],
/// "junction_polar_restricted": [...], "dependent_groups": {"6": [8, 9, 10]}}.
TreeTopology parse_topology(std::string_view document);
std::string serialize_topology(const TreeTopology& topology);
TreeTopology load_topology(const std::string& path);

struct NodeKey {
  Side side = Side::right;
  int node = 0;
  friend auto operator<=>(const NodeKey&, const NodeKey&) = default;
};

using CoordinateMap = std::map<NodeKey, Point>;

struct LigandTree {
  std::vector<GroupCode> right;
  std::vector<GroupCode> left;
  /// Present exactly for non-NUL nodes.
  CoordinateMap coords;

  const std::vector<GroupCode>& groups(Side s) const { return s == Side::right ? right : left; }
  std::size_t group_count(Side s) const;
};

struct LayoutConfig {
  /// Vertical spacing between sibling branches, in angstrom. At 0.55 the
  /// branch rows (0, +/-0.55, +/-1.1) stay at least 0.9 A from the
  /// barrel-default walls at y = +/-2, where the pair potential is positive.
  double branch_spacing = 0.55;
};

struct LengthBounds {
  std::size_t min_groups = 0;
  std::size_t max_groups = 0;
  friend bool operator==(const LengthBounds&, const LengthBounds&) = default;
};

struct SideLimits {
  LengthBounds bounds;
  double major_axis = 0.0;
};

enum class LengthMode { fixed, variable };
std::string to_string(LengthMode m);
LengthMode parse_length_mode(std::string_view text);

/// min_groups = ceil(axis / 2.7), max_groups = min(node count, floor(axis / 0.65)).
/// Throws std::invalid_argument for a non-positive axis.
LengthBounds compute_bounds(double major_axis, std::size_t node_count);
LengthBounds compute_bounds(const ActiveSite& site, Side side, const TreeTopology& topology);

class LigandModel {
 public:
  LigandModel();
  LigandModel(TreeTopology right, TreeTopology left, LayoutConfig layout = {});

  const TreeTopology& topology(Side s) const { return side(s).topology; }
  const LayoutConfig& layout_config() const noexcept { return layout_; }

  /// 3 bits per node over both trees (51 for the default topology).
  std::size_t chromosome_bits() const noexcept;
  std::size_t field_offset(Side s, int node) const;

  /// Throws std::invalid_argument if the chromosome length is wrong.
  LigandTree decode(const BitString& chromosome, Point origin = {}) const;
  BitString encode(const LigandTree& tree) const;

  /// Each occupied node sits at its parent's position shifted by its bond
  /// length along the side's x direction and by its branch offset in y. A
  /// NUL node occupies no space, so its children hang from its parent.
  CoordinateMap layout(const LigandTree& tree, Point origin) const;
  CoordinateMap layout(const LigandTree& tree, const ActiveSite& site) const { return layout(tree, site.origin); }

  /// Distance from the pharmacophore to the outermost occupied node along
  /// the side's x direction; 0 for an empty side.
  double extent(Side s, std::span<const GroupCode> groups) const;

  /// Constraint repair. Returns a chromosome that satisfies the junction
  /// polarity rule, the dependency rule and the length-mode rule. Identity
  /// on chromosomes that already satisfy them, hence idempotent.
  BitString correct(const BitString& chromosome, LengthMode mode, const SideLimits& right,
                    const SideLimits& left) const;

  /// Limits for both sides of `site` under this model's topologies.
  std::pair<SideLimits, SideLimits> limits_for(const ActiveSite& site) const;

  /// Non-NUL assignment order used by the minimum-length fill: backbone
  /// nodes outward, then the rest by depth and id.
  std::span<const int> fill_order(Side s) const { return side(s).fill_order; }
  /// y offset of a node relative to its parent when occupied.
  double branch_offset(Side s, int node) const;
  bool is_terminal(Side s, std::span<const GroupCode> groups, int node) const;

 private:
  struct SideData {
    TreeTopology topology;
    std::vector<int> order;               // parents before children
    std::vector<int> fill_order;
    std::vector<int> offset_rank;         // signed sibling rank, 0 for backbone
    std::vector<std::vector<int>> descendants;
  };

  const SideData& side(Side s) const { return s == Side::right ? right_ : left_; }
  SideData build(TreeTopology topology) const;
  void place(Side s, std::span<const GroupCode> groups, Point origin, CoordinateMap& out) const;
  void repair_side(Side s, std::vector<GroupCode>& groups, LengthMode mode, const SideLimits& limits) const;

  LayoutConfig layout_;
  SideData right_;
  SideData left_;
};

}  // namespace ligpso
