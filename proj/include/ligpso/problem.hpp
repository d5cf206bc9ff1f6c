#pragma once

#include "ligpso/energy.hpp"
#include "ligpso/ligand.hpp"
#include "ligpso/site.hpp"
#include "ligpso/swarm.hpp"

namespace ligpso {

/// Binds a ligand model to a site, energy parameters and a length mode, and
/// exposes the repair and fitness callbacks the optimizers consume.
class DockingProblem {
 public:
  DockingProblem(LigandModel model, ActiveSite site, EnergyParams params, LengthMode mode);

  const LigandModel& model() const noexcept { return model_; }
  const ActiveSite& site() const noexcept { return site_; }
  const EnergyParams& params() const noexcept { return params_; }
  LengthMode mode() const noexcept { return mode_; }
  const SideLimits& limits(Side s) const noexcept { return s == Side::right ? right_ : left_; }
  void set_limits(SideLimits right, SideLimits left);

  std::size_t dimension() const noexcept { return model_.chromosome_bits(); }

  BitString repair(const BitString& chromosome) const;
  LigandTree decode(const BitString& chromosome) const { return model_.decode(chromosome, site_.origin); }
  EnergyReport energy_report(const BitString& chromosome) const;
  double energy(const BitString& chromosome) const { return energy_report(chromosome).total; }
  /// Fitness of the chromosome as given; callers repair first.
  double fitness(const BitString& chromosome) const { return ligpso::fitness(energy(chromosome), params_); }

  FitnessFn fitness_fn() const;
  RepairFn repair_fn() const;

 private:
  LigandModel model_;
  ActiveSite site_;
  EnergyParams params_;
  LengthMode mode_;
  SideLimits right_;
  SideLimits left_;
};

}  // namespace ligpso
