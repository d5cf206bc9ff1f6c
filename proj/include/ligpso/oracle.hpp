#pragma once

// Brute-force ground truth on reduced instances: only the listed nodes may
// hold groups, every other node is pinned to NUL, and every assignment of
// the 8 group codes over the active nodes is enumerated.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ligpso/problem.hpp"

namespace ligpso {

inline constexpr std::size_t kMaxOracleStates = std::size_t{1} << 24;

class SearchSpaceTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

class ReducedProblem {
 public:
  /// Each side's minimum group count is clipped to its number of active
  /// nodes; the maximum count and major axes still apply.
  ReducedProblem(std::vector<NodeKey> active, LigandModel model, ActiveSite site, EnergyParams params,
                 LengthMode mode);

  const std::vector<NodeKey>& active() const noexcept { return active_; }
  const DockingProblem& problem() const noexcept { return problem_; }

  /// Bits in the reduced chromosome: 3 per active node.
  std::size_t dimension() const noexcept { return kBitsPerGroup * active_.size(); }
  /// 8^(active nodes).
  std::size_t search_space() const;

  BitString expand(const BitString& reduced) const;
  BitString contract(const BitString& full) const;
  /// Sets every inactive node to NUL.
  BitString mask(const BitString& full) const;
  /// mask(correct(mask(full))).
  BitString repair_full(const BitString& full) const;
  double energy_full(const BitString& full) const { return problem_.energy(full); }

  /// Optimizer callbacks over reduced chromosomes.
  FitnessFn fitness_fn() const;
  RepairFn repair_fn() const;

 private:
  std::vector<NodeKey> active_;
  DockingProblem problem_;
};

struct OracleResult {
  /// Repaired full-length chromosome of the optimum.
  BitString chromosome;
  double energy = 0.0;
  std::size_t evaluations = 0;
};

struct OracleOptions {
  std::size_t workers = 1;
  /// Enumerate assignments from the last index down. The result is the same.
  bool reverse_order = false;
};

/// Minimum-energy repaired chromosome; ties go to the lexicographically
/// smallest bit string. Throws SearchSpaceTooLarge above kMaxOracleStates.
OracleResult exhaustive_best(const ReducedProblem& problem, const OracleOptions& options = {});

/// Parses node lists like "R1,R3,L2" (side letter + 1-based node id).
std::vector<NodeKey> parse_node_list(std::string_view text);
std::string format_node_list(const std::vector<NodeKey>& nodes);

}  // namespace ligpso
