#include "ligpso/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ligpso {

std::string to_string(VdwSign s) { return s == VdwSign::as_printed ? "as-printed" : "conventional"; }

VdwSign parse_vdw_sign(std::string_view text) {
  if (text == "as-printed") return VdwSign::as_printed;
  if (text == "conventional") return VdwSign::conventional;
  throw std::invalid_argument("unknown vdw sign '" + std::string(text) + "' (expected as-printed or conventional)");
}

void EnergyParams::validate() const {
  auto require = [](bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
  };
  require(std::isfinite(c_n) && c_n > 0.0, "c_n must be positive");
  require(std::isfinite(c_m) && c_m > 0.0, "c_m must be positive");
  require(std::isfinite(r_min) && std::isfinite(r_max) && r_min > 0.0 && r_min < r_max,
          "distance window must satisfy 0 < r_min < r_max");
  require(std::isfinite(penalty_polarity) && std::isfinite(penalty_range), "penalties must be finite");
  require(std::isfinite(k) && k > 0.0, "k must be positive");
  require(std::isfinite(e_floor) && e_floor > 0.0, "e_floor must be positive");
}

double vdw(double r, const EnergyParams& params) {
  if (!(r > 0.0)) throw std::domain_error("coincident points: vdw evaluated at r = " + std::to_string(r));
  const double r6 = r * r * r * r * r * r;
  const double v = params.c_n / r6 - params.c_m / (r6 * r6);
  return params.sign == VdwSign::as_printed ? v : -v;
}

EnergyReport interaction_energy(const LigandTree& tree, const ActiveSite& site, const EnergyParams& params) {
  if (site.residues.empty()) throw std::invalid_argument("active site has no residues");
  EnergyReport report;
  for (const auto& [key, pos] : tree.coords) {
    const GroupCode code = tree.groups(key.side).at(static_cast<std::size_t>(key.node - 1));
    if (code == GroupCode::nul) continue;

    const Residue* nearest = nullptr;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : site.residues) {
      const double d = distance(pos, r.position);
      if (d < best || (d == best && r.id < nearest->id)) {
        best = d;
        nearest = &r;
      }
    }

    GroupEnergy g;
    g.node = key;
    g.group = code;
    g.residue_id = nearest->id;
    g.distance = best;
    if (best >= params.r_min && best <= params.r_max) {
      g.pair_energy = vdw(best, params);
    } else {
      g.range_penalty = params.penalty_range;
    }
    if (group_info(code).polarity != nearest->polarity) g.polarity_penalty = params.penalty_polarity;
    report.total += g.total();
    report.groups.push_back(g);
  }
  return report;
}

double fitness(double energy, const EnergyParams& params) {
  if (!std::isfinite(energy)) throw std::domain_error("energy must be finite, got " + std::to_string(energy));
  return params.k / std::max(energy, params.e_floor);
}

}  // namespace ligpso
