#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ligpso/ligand.hpp"
#include "ligpso/site.hpp"

namespace ligpso {

/// Sign convention for the pair potential. `as_printed` is c_n/r^6 - c_m/r^12;
/// `conventional` is the usual Lennard-Jones c_m/r^12 - c_n/r^6.
enum class VdwSign { as_printed, conventional };

std::string to_string(VdwSign s);
VdwSign parse_vdw_sign(std::string_view text);

struct EnergyParams {
  double c_n = 2.0;            // kcal A^6 / mol
  double c_m = 1.0;            // kcal A^12 / mol
  double r_min = 0.7;          // A
  double r_max = 2.7;          // A
  double penalty_polarity = 5.0;  // kcal/mol
  double penalty_range = 10.0;    // kcal/mol
  double k = 100.0;
  double e_floor = 1e-6;
  VdwSign sign = VdwSign::as_printed;

  /// Throws std::invalid_argument unless c_n, c_m, k, e_floor > 0 and 0 < r_min < r_max.
  void validate() const;
};

struct GroupEnergy {
  NodeKey node;
  GroupCode group = GroupCode::nul;
  int residue_id = 0;
  double distance = 0.0;
  /// vdw(distance) when inside [r_min, r_max], else 0.
  double pair_energy = 0.0;
  double polarity_penalty = 0.0;
  double range_penalty = 0.0;

  double total() const { return pair_energy + polarity_penalty + range_penalty; }
};

struct EnergyReport {
  double total = 0.0;  // kcal/mol
  std::vector<GroupEnergy> groups;
};

/// Pair potential at separation r. Throws std::domain_error for r <= 0.
double vdw(double r, const EnergyParams& params);

/// Sums, over every occupied group, the potential to its nearest residue
/// (ties to the lowest residue id) plus penalties: penalty_range when the
/// distance falls outside [r_min, r_max], penalty_polarity when the group and
/// residue polarities differ. Coordinates are taken from `tree.coords`.
EnergyReport interaction_energy(const LigandTree& tree, const ActiveSite& site, const EnergyParams& params);

/// k / max(E, e_floor).
double fitness(double energy, const EnergyParams& params);

}  // namespace ligpso
