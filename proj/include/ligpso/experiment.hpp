#pragma once

// Experiment harness behind the CLI: resolves a site and ligand model,
// runs one optimizer run per seed, and writes self-describing result files.
//
// Output files (all under ExperimentSpec::out_dir):
//   optimize:  trace_<mode>_seed<S>.csv   generation,best_fitness,best_energy
//              run_<mode>_seed<S>.json    best chromosome, decoded groups, energies
//   compare:   compare_runs.csv           mode,seed,best_energy,best_fitness,evaluations,best_chromosome
//              compare_summary.csv        mode,runs,median_energy,mean_energy,min_energy,max_energy
// CSV files start with a "# config: {...}" comment line holding the resolved
// configuration as compact JSON.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ligpso/problem.hpp"

namespace ligpso {

struct ExperimentSpec {
  std::optional<std::string> site_path;
  SiteProfile profile = SiteProfile::barrel_default;
  std::uint64_t site_seed = 0;
  std::optional<std::string> topology_right_path;
  std::optional<std::string> topology_left_path;
  LayoutConfig layout;

  Algorithm algorithm = Algorithm::qbpso;
  LengthMode mode = LengthMode::variable;
  BpsoConfig bpso;
  QbpsoConfig qbpso;
  EnergyParams energy;

  std::vector<std::uint64_t> seeds{1};
  std::string out_dir = "results";
  /// Seeds run concurrently on this many threads.
  std::size_t jobs = 1;

  /// Throws std::invalid_argument on an empty seed list or invalid parameters.
  void validate() const;
  /// Swarm configuration for `seed`, with the dimension taken from `problem`.
  SwarmConfig swarm_config(std::uint64_t seed, std::size_t dimension) const;
};

/// Parses "1,2,5-9" into {1,2,5,6,7,8,9}. Throws std::invalid_argument.
std::vector<std::uint64_t> parse_seed_list(std::string_view text);

ActiveSite resolve_site(const ExperimentSpec& spec);
LigandModel resolve_model(const ExperimentSpec& spec);

struct SeedRun {
  std::uint64_t seed = 0;
  RunResult result;
  /// Energy of the global best after each generation; parallel to result.trace.
  std::vector<double> energy_trace;
  double best_energy = 0.0;
};

/// Thrown when some seeds fail. Completed runs are still written.
class RunFailure : public std::runtime_error {
 public:
  RunFailure(const std::string& what, std::vector<std::uint64_t> failed)
      : std::runtime_error(what), failed_(std::move(failed)) {}
  const std::vector<std::uint64_t>& failed_seeds() const noexcept { return failed_; }

 private:
  std::vector<std::uint64_t> failed_;
};

SeedRun run_seed(const DockingProblem& problem, const ExperimentSpec& spec, std::uint64_t seed);

struct OptimizeOutcome {
  std::vector<SeedRun> runs;
  std::vector<std::string> files;
};

OptimizeOutcome cmd_optimize(const ExperimentSpec& spec);

struct ModeSummary {
  LengthMode mode = LengthMode::variable;
  std::size_t runs = 0;
  double median_energy = 0.0;
  double mean_energy = 0.0;
  double min_energy = 0.0;
  double max_energy = 0.0;
};

struct CompareOutcome {
  std::vector<SeedRun> fixed_runs;
  std::vector<SeedRun> variable_runs;
  ModeSummary fixed;
  ModeSummary variable;
  std::vector<std::string> files;
};

inline constexpr std::size_t kMinCompareSeeds = 5;

/// Runs both length modes over the same seeds. Throws std::invalid_argument
/// when fewer than kMinCompareSeeds seeds are given.
CompareOutcome cmd_compare(const ExperimentSpec& spec);

ModeSummary summarize(LengthMode mode, const std::vector<SeedRun>& runs);
std::string format_summary_table(const CompareOutcome& outcome);

/// Writes the site to `path`. Refuses to replace an existing file unless `force`.
void cmd_gen_site(SiteProfile profile, std::uint64_t seed, const std::string& path, bool force);

/// Resolved configuration for `mode` as compact JSON text.
std::string resolved_config_json(const ExperimentSpec& spec, LengthMode mode, const DockingProblem& problem);

}  // namespace ligpso
