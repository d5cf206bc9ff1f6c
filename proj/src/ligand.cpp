#include "ligpso/ligand.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ligpso {

using nlohmann::json;

namespace {

constexpr double kExtentTolerance = 1e-9;

constexpr std::array<FunctionalGroup, 8> kGroups{{
    {GroupCode::nul, "NUL", 0.0, Polarity::none},
    {GroupCode::alkyl_1c, "Alkyl-1C", 0.65, Polarity::nonpolar},
    {GroupCode::alkyl_3c, "Alkyl-3C", 1.75, Polarity::nonpolar},
    {GroupCode::alkyl_1c_polar, "Alkyl-1C-Polar", 1.1, Polarity::polar},
    {GroupCode::alkyl_3c_polar, "Alkyl-3C-Polar", 2.2, Polarity::polar},
    {GroupCode::polar, "Polar", 0.01, Polarity::polar},
    {GroupCode::aromatic, "Aromatic", 1.9, Polarity::nonpolar},
    {GroupCode::aromatic_polar, "Aromatic-Polar", 2.7, Polarity::polar},
}};

double direction(Side s) { return s == Side::right ? 1.0 : -1.0; }

std::size_t occupied(std::span<const GroupCode> groups) {
  return static_cast<std::size_t>(std::count_if(groups.begin(), groups.end(), [](GroupCode g) { return g != GroupCode::nul; }));
}

std::vector<int> int_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw TopologyError(path + ": expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) throw TopologyError(path + "[" + std::to_string(i) + "]: expected an integer");
    out.push_back(v[i].get<int>());
  }
  return out;
}

}  // namespace

const std::array<FunctionalGroup, 8>& group_table() { return kGroups; }

const FunctionalGroup& group_info(GroupCode code) { return kGroups.at(static_cast<std::size_t>(code)); }

GroupCode nonpolar_counterpart(GroupCode code) {
  switch (code) {
    case GroupCode::alkyl_1c_polar: return GroupCode::alkyl_1c;
    case GroupCode::alkyl_3c_polar: return GroupCode::alkyl_3c;
    case GroupCode::aromatic_polar: return GroupCode::aromatic;
    case GroupCode::polar: return GroupCode::alkyl_1c;
    default: return code;
  }
}

std::string to_string(Side s) { return s == Side::right ? "right" : "left"; }

Side parse_side(std::string_view text) {
  if (text == "right") return Side::right;
  if (text == "left") return Side::left;
  throw std::invalid_argument("unknown side '" + std::string(text) + "' (expected right or left)");
}

std::string to_string(LengthMode m) { return m == LengthMode::fixed ? "fixed" : "variable"; }

LengthMode parse_length_mode(std::string_view text) {
  if (text == "fixed") return LengthMode::fixed;
  if (text == "variable") return LengthMode::variable;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "' (expected fixed or variable)");
}

// ---------------------------------------------------------------------------
// Topology

void TreeTopology::validate() const {
  const int n = static_cast<int>(parent.size());
  if (n == 0) throw TopologyError("parent: tree has no nodes");
  auto valid_id = [n](int id) { return id >= 1 && id <= n; };

  for (int id = 1; id <= n; ++id) {
    const int p = parent[id - 1];
    if (p < 0 || p > n || p == id) {
      throw TopologyError("parent[" + std::to_string(id - 1) + "]: invalid parent " + std::to_string(p));
    }
    int cur = id;
    for (int steps = 0; cur != 0; ++steps) {
      if (steps > n) throw TopologyError("parent: cycle through node " + std::to_string(id));
      cur = parent[cur - 1];
    }
  }

  if (backbone.empty()) throw TopologyError("backbone: must name at least one node");
  for (std::size_t i = 0; i < backbone.size(); ++i) {
    const int id = backbone[i];
    if (!valid_id(id)) throw TopologyError("backbone[" + std::to_string(i) + "]: unknown node " + std::to_string(id));
    const int expected = i == 0 ? 0 : backbone[i - 1];
    if (parent[id - 1] != expected) {
      throw TopologyError("backbone[" + std::to_string(i) + "]: node " + std::to_string(id) +
                          " is not a child of " + (i == 0 ? std::string("the pharmacophore") : std::to_string(expected)));
    }
  }
  for (std::size_t i = 0; i < junction_polar_restricted.size(); ++i) {
    if (!valid_id(junction_polar_restricted[i])) {
      throw TopologyError("junction_polar_restricted[" + std::to_string(i) + "]: unknown node " +
                          std::to_string(junction_polar_restricted[i]));
    }
  }
  for (const auto& [junction, children] : dependent_groups) {
    const std::string path = "dependent_groups." + std::to_string(junction);
    if (!valid_id(junction)) throw TopologyError(path + ": unknown junction node");
    for (int c : children) {
      if (!valid_id(c) || !is_ancestor(junction, c)) {
        throw TopologyError(path + ": node " + std::to_string(c) + " is not a descendant of the junction");
      }
    }
  }
}

bool TreeTopology::is_ancestor(int ancestor, int node) const {
  int cur = node;
  for (std::size_t steps = 0; steps <= parent.size() && cur > 0; ++steps) {
    cur = parent[static_cast<std::size_t>(cur - 1)];
    if (cur == ancestor) return true;
  }
  return false;
}

TreeTopology TreeTopology::default_right() {
  return {Side::right, {0, 1, 1, 3, 3, 3, 6, 6, 6, 6}, {1, 3, 6}, {1, 3, 6}, {{6, {8, 9, 10}}}};
}

TreeTopology TreeTopology::default_left() {
  return {Side::left, {0, 1, 1, 3, 3, 3, 3}, {1, 3}, {1, 3}, {{3, {5, 6, 7}}}};
}

TreeTopology parse_topology(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw TopologyError(std::string("document: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw TopologyError("document: expected a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "side" && key != "parent" && key != "backbone" && key != "junction_polar_restricted" &&
        key != "dependent_groups") {
      throw TopologyError(key + ": unknown field");
    }
  }
  for (const char* key : {"side", "parent", "backbone", "junction_polar_restricted", "dependent_groups"}) {
    if (!doc.contains(key)) throw TopologyError(std::string(key) + ": missing required field");
  }

  TreeTopology t;
  if (!doc["side"].is_string()) throw TopologyError("side: expected \"right\" or \"left\"");
  try {
    t.side = parse_side(doc["side"].get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw TopologyError(std::string("side: ") + e.what());
  }
  t.parent = int_array(doc["parent"], "parent");
  t.backbone = int_array(doc["backbone"], "backbone");
  t.junction_polar_restricted = int_array(doc["junction_polar_restricted"], "junction_polar_restricted");
  const json& deps = doc["dependent_groups"];
  if (!deps.is_object()) throw TopologyError("dependent_groups: expected an object");
  for (const auto& [key, value] : deps.items()) {
    int junction = 0;
    try {
      std::size_t used = 0;
      junction = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      throw TopologyError("dependent_groups." + key + ": key must be a node id");
    }
    t.dependent_groups[junction] = int_array(value, "dependent_groups." + key);
  }
  t.validate();
  return t;
}

std::string serialize_topology(const TreeTopology& topology) {
  json doc;
  doc["side"] = to_string(topology.side);
  doc["parent"] = topology.parent;
  doc["backbone"] = topology.backbone;
  doc["junction_polar_restricted"] = topology.junction_polar_restricted;
  json deps = json::object();
  for (const auto& [junction, children] : topology.dependent_groups) deps[std::to_string(junction)] = children;
  doc["dependent_groups"] = std::move(deps);
  return doc.dump(2) + "\n";
}

TreeTopology load_topology(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TopologyError(path + ": cannot open topology file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_topology(buf.str());
  } catch (const TopologyError& e) {
    throw TopologyError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Bounds

LengthBounds compute_bounds(double major_axis, std::size_t node_count) {
  if (!(major_axis > 0.0) || !std::isfinite(major_axis)) {
    throw std::invalid_argument("major axis must be positive, got " + std::to_string(major_axis));
  }
  // The tolerance keeps exact multiples (18.9 / 2.7 = 6.999...) on the right integer.
  const auto lo = static_cast<std::size_t>(std::ceil(major_axis / kMaxBondLength - 1e-9));
  const auto hi = static_cast<std::size_t>(std::floor(major_axis / kMinBondLength + 1e-9));
  LengthBounds b;
  b.max_groups = std::min(node_count, hi);
  b.min_groups = std::min(lo, b.max_groups);
  return b;
}

LengthBounds compute_bounds(const ActiveSite& site, Side side, const TreeTopology& topology) {
  return compute_bounds(side == Side::right ? site.major_axis_right : site.major_axis_left, topology.node_count());
}

std::size_t LigandTree::group_count(Side s) const { return occupied(groups(s)); }

// ---------------------------------------------------------------------------
// Model

LigandModel::LigandModel() : LigandModel(TreeTopology::default_right(), TreeTopology::default_left()) {}

LigandModel::LigandModel(TreeTopology right, TreeTopology left, LayoutConfig layout) : layout_(layout) {
  if (right.side != Side::right) throw TopologyError("right topology is labelled as a left tree");
  if (left.side != Side::left) throw TopologyError("left topology is labelled as a right tree");
  if (!(layout_.branch_spacing >= 0.0)) throw std::invalid_argument("branch spacing must be non-negative");
  right_ = build(std::move(right));
  left_ = build(std::move(left));
}

LigandModel::SideData LigandModel::build(TreeTopology topology) const {
  topology.validate();
  const int n = static_cast<int>(topology.node_count());
  SideData d;

  std::vector<std::vector<int>> children(n + 1);
  for (int id = 1; id <= n; ++id) children[topology.parent[id - 1]].push_back(id);

  std::vector<int> depth(n + 1, 0);
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int p : frontier) {
      for (int c : children[p]) {
        depth[c] = depth[p] + 1;
        d.order.push_back(c);
        next.push_back(c);
      }
    }
    frontier = std::move(next);
  }

  const std::set<int> backbone(topology.backbone.begin(), topology.backbone.end());
  d.offset_rank.assign(n + 1, 0);
  for (int p = 0; p <= n; ++p) {
    int k = 0;
    for (int c : children[p]) {
      if (backbone.count(c)) continue;
      ++k;
      // Siblings alternate above and below the parent: +1, -1, +2, -2, ...
      d.offset_rank[c] = (k % 2 == 1 ? 1 : -1) * ((k + 1) / 2);
    }
  }

  d.fill_order = topology.backbone;
  std::vector<int> rest;
  for (int id = 1; id <= n; ++id)
    if (!backbone.count(id)) rest.push_back(id);
  std::stable_sort(rest.begin(), rest.end(), [&](int a, int b) { return depth[a] < depth[b]; });
  d.fill_order.insert(d.fill_order.end(), rest.begin(), rest.end());

  d.descendants.assign(n + 1, {});
  for (int id = 1; id <= n; ++id)
    for (int other = 1; other <= n; ++other)
      if (topology.is_ancestor(id, other)) d.descendants[id].push_back(other);

  d.topology = std::move(topology);
  return d;
}

std::size_t LigandModel::chromosome_bits() const noexcept {
  return kBitsPerGroup * (right_.topology.node_count() + left_.topology.node_count());
}

std::size_t LigandModel::field_offset(Side s, int node) const {
  const std::size_t n = side(s).topology.node_count();
  if (node < 1 || static_cast<std::size_t>(node) > n) throw std::out_of_range("node id " + std::to_string(node));
  const std::size_t base = s == Side::right ? 0 : right_.topology.node_count();
  return kBitsPerGroup * (base + static_cast<std::size_t>(node - 1));
}

double LigandModel::branch_offset(Side s, int node) const {
  return layout_.branch_spacing * side(s).offset_rank.at(static_cast<std::size_t>(node));
}

bool LigandModel::is_terminal(Side s, std::span<const GroupCode> groups, int node) const {
  for (int d : side(s).descendants.at(static_cast<std::size_t>(node)))
    if (groups[d - 1] != GroupCode::nul) return false;
  return true;
}

LigandTree LigandModel::decode(const BitString& chromosome, Point origin) const {
  if (chromosome.size() != chromosome_bits()) {
    throw std::invalid_argument("chromosome has " + std::to_string(chromosome.size()) + " bits, expected " +
                                std::to_string(chromosome_bits()));
  }
  LigandTree tree;
  for (Side s : {Side::right, Side::left}) {
    auto& groups = s == Side::right ? tree.right : tree.left;
    const int n = static_cast<int>(side(s).topology.node_count());
    groups.reserve(n);
    for (int id = 1; id <= n; ++id)
      groups.push_back(static_cast<GroupCode>(chromosome.field(field_offset(s, id), kBitsPerGroup)));
  }
  tree.coords = layout(tree, origin);
  return tree;
}

BitString LigandModel::encode(const LigandTree& tree) const {
  BitString out(chromosome_bits());
  for (Side s : {Side::right, Side::left}) {
    const auto& groups = tree.groups(s);
    if (groups.size() != side(s).topology.node_count()) {
      throw std::invalid_argument(to_string(s) + " tree has " + std::to_string(groups.size()) + " nodes, expected " +
                                  std::to_string(side(s).topology.node_count()));
    }
    for (std::size_t i = 0; i < groups.size(); ++i)
      out.set_field(field_offset(s, static_cast<int>(i + 1)), kBitsPerGroup, static_cast<unsigned>(groups[i]));
  }
  return out;
}

void LigandModel::place(Side s, std::span<const GroupCode> groups, Point origin, CoordinateMap& out) const {
  const SideData& d = side(s);
  std::vector<Point> pos(d.topology.node_count() + 1, origin);
  for (int id : d.order) {
    const Point anchor = pos[d.topology.parent[id - 1]];
    const GroupCode g = groups[id - 1];
    if (g == GroupCode::nul) {
      pos[id] = anchor;
      continue;
    }
    pos[id] = {anchor.x + direction(s) * group_info(g).bond_length_x, anchor.y + branch_offset(s, id)};
    out[{s, id}] = pos[id];
  }
}

CoordinateMap LigandModel::layout(const LigandTree& tree, Point origin) const {
  CoordinateMap out;
  for (Side s : {Side::right, Side::left}) {
    if (tree.groups(s).size() != side(s).topology.node_count()) {
      throw std::invalid_argument(to_string(s) + " tree does not match the model topology");
    }
    place(s, tree.groups(s), origin, out);
  }
  return out;
}

double LigandModel::extent(Side s, std::span<const GroupCode> groups) const {
  CoordinateMap coords;
  place(s, groups, {}, coords);
  double best = 0.0;
  for (const auto& [key, p] : coords) best = std::max(best, direction(s) * p.x);
  return best;
}

std::pair<SideLimits, SideLimits> LigandModel::limits_for(const ActiveSite& site) const {
  return {SideLimits{compute_bounds(site, Side::right, right_.topology), site.major_axis_right},
          SideLimits{compute_bounds(site, Side::left, left_.topology), site.major_axis_left}};
}

// Repair runs in a fixed order so that every step is a no-op on a feasible
// side:
//   1. fill junctions whose dependent nodes are occupied,
//   2. strip polarity from non-terminal restricted junctions,
//   3. (variable) drop outermost terminal nodes until the side fits its
//      major axis and its maximum group count,
//   4. (variable) add Alkyl-1C in fill order up to the minimum group count,
//      skipping any fill that would break steps 1-3.
void LigandModel::repair_side(Side s, std::vector<GroupCode>& groups, LengthMode mode,
                              const SideLimits& limits) const {
  const SideData& d = side(s);
  const TreeTopology& topo = d.topology;

  auto fill_dependencies = [&](std::vector<GroupCode>& g) {
    for (const auto& [junction, dependents] : topo.dependent_groups) {
      if (g[junction - 1] != GroupCode::nul) continue;
      const bool needed =
          std::any_of(dependents.begin(), dependents.end(), [&](int c) { return g[c - 1] != GroupCode::nul; });
      if (needed) g[junction - 1] = GroupCode::alkyl_1c;
    }
  };
  auto strip_polarity = [&](std::vector<GroupCode>& g) {
    for (int j : topo.junction_polar_restricted) {
      if (is_polar(g[j - 1]) && !is_terminal(s, g, j)) g[j - 1] = nonpolar_counterpart(g[j - 1]);
    }
  };

  if (mode == LengthMode::fixed) {
    for (auto& g : groups)
      if (g == GroupCode::nul) g = GroupCode::alkyl_1c;
    strip_polarity(groups);
    return;
  }

  fill_dependencies(groups);
  strip_polarity(groups);

  const double axis = limits.major_axis + kExtentTolerance;
  auto fits = [&](const std::vector<GroupCode>& g) {
    return occupied(g) <= limits.bounds.max_groups && extent(s, g) <= axis;
  };

  while (!fits(groups)) {
    CoordinateMap coords;
    place(s, groups, {}, coords);
    int victim = 0;
    double reach = -1.0;
    for (const auto& [key, p] : coords) {
      if (!is_terminal(s, groups, key.node)) continue;
      const double r = direction(s) * p.x;
      if (r >= reach) {
        reach = r;
        victim = key.node;
      }
    }
    groups[victim - 1] = GroupCode::nul;
  }

  while (occupied(groups) < limits.bounds.min_groups) {
    bool filled = false;
    for (int id : d.fill_order) {
      if (groups[id - 1] != GroupCode::nul) continue;
      std::vector<GroupCode> candidate = groups;
      candidate[id - 1] = GroupCode::alkyl_1c;
      fill_dependencies(candidate);
      strip_polarity(candidate);
      if (fits(candidate)) {
        groups = std::move(candidate);
        filled = true;
        break;
      }
    }
    if (!filled) break;
  }
}

BitString LigandModel::correct(const BitString& chromosome, LengthMode mode, const SideLimits& right,
                               const SideLimits& left) const {
  LigandTree tree = decode(chromosome);
  repair_side(Side::right, tree.right, mode, right);
  repair_side(Side::left, tree.left, mode, left);
  return encode(tree);
}

}  // namespace ligpso
