#include "ligpso/problem.hpp"

#include <tuple>

namespace ligpso {

DockingProblem::DockingProblem(LigandModel model, ActiveSite site, EnergyParams params, LengthMode mode)
    : model_(std::move(model)), site_(std::move(site)), params_(params), mode_(mode) {
  site_.validate();
  params_.validate();
  std::tie(right_, left_) = model_.limits_for(site_);
}

void DockingProblem::set_limits(SideLimits right, SideLimits left) {
  right_ = right;
  left_ = left;
}

BitString DockingProblem::repair(const BitString& chromosome) const {
  return model_.correct(chromosome, mode_, right_, left_);
}

EnergyReport DockingProblem::energy_report(const BitString& chromosome) const {
  return interaction_energy(decode(chromosome), site_, params_);
}

FitnessFn DockingProblem::fitness_fn() const {
  return [this](const BitString& c) { return fitness(c); };
}

RepairFn DockingProblem::repair_fn() const {
  return [this](const BitString& c) { return repair(c); };
}

}  // namespace ligpso
