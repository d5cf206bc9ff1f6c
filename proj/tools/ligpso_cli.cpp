// ligpso command-line front end.
//
//   ligpso optimize [options]   one run per seed, trace CSV + run JSON per seed
//   ligpso compare  [options]   fixed vs variable length over shared seeds
//   ligpso gen-site --profile barrel-default|random [--seed S] --out FILE [--force]
//   ligpso oracle   --active R1,R3,R6 [--mode M] [--out FILE]
//
// Exit codes: 0 success, 1 run error, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ligpso/experiment.hpp"
#include "ligpso/oracle.hpp"

namespace {

constexpr int kRunError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string site;
  std::string profile = "barrel-default";
  std::uint64_t site_seed = 0;
  std::string topology_right;
  std::string topology_left;
  double branch_spacing = ligpso::LayoutConfig{}.branch_spacing;
  std::string algorithm = "qbpso";
  std::string mode = "variable";
  std::size_t pop = 40;
  std::size_t gens = 100;
  std::string seeds = "1";
  std::string out = "results";
  std::size_t jobs = 1;

  ligpso::BpsoConfig bpso;
  ligpso::QbpsoConfig qbpso;
  ligpso::EnergyParams energy;
  std::string vdw_sign = "as-printed";
  std::optional<double> inertia;
};

void add_site_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--site", o.site, "Site JSON file (overrides --profile)");
  cmd.add_option("--profile", o.profile, "Generated site profile")->check(CLI::IsMember({"barrel-default", "random"}));
  cmd.add_option("--site-seed", o.site_seed, "Seed for the random site profile");
  cmd.add_option("--topology-right", o.topology_right, "Right-tree topology JSON");
  cmd.add_option("--topology-left", o.topology_left, "Left-tree topology JSON");
  cmd.add_option("--branch-spacing", o.branch_spacing, "Sibling branch spacing in angstrom");
}

void add_energy_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--cn", o.energy.c_n, "Attractive coefficient c_n");
  cmd.add_option("--cm", o.energy.c_m, "Repulsive coefficient c_m");
  cmd.add_option("--k", o.energy.k, "Fitness constant k");
  cmd.add_option("--penalty-polarity", o.energy.penalty_polarity, "Polarity mismatch penalty (kcal/mol)");
  cmd.add_option("--penalty-range", o.energy.penalty_range, "Out-of-window distance penalty (kcal/mol)");
  cmd.add_option("--vdw-sign", o.vdw_sign, "Pair potential sign")->check(CLI::IsMember({"as-printed", "conventional"}));
}

void add_run_options(CLI::App& cmd, Options& o, bool with_mode) {
  add_site_options(cmd, o);
  add_energy_options(cmd, o);
  cmd.add_option("--algorithm", o.algorithm, "Optimizer")->check(CLI::IsMember({"bpso", "qbpso"}));
  if (with_mode) cmd.add_option("--mode", o.mode, "Length mode")->check(CLI::IsMember({"fixed", "variable"}));
  cmd.add_option("--pop", o.pop, "Population size");
  cmd.add_option("--gens", o.gens, "Generations");
  cmd.add_option("--seeds", o.seeds, "Seed list, e.g. 1,2,10-20");
  cmd.add_option("--out", o.out, "Output directory");
  cmd.add_option("--jobs", o.jobs, "Seeds run concurrently");
  cmd.add_option("--w", o.inertia, "Inertia of the selected algorithm (default 0.4 QBPSO, 1.0 BPSO)");
  cmd.add_option("--c1", o.qbpso.c1, "QBPSO local-best coefficient");
  cmd.add_option("--c2", o.qbpso.c2, "QBPSO global-best coefficient");
  cmd.add_option("--alpha", o.qbpso.alpha, "QBPSO alpha (beta = 1 - alpha)");
  cmd.add_option("--phi1", o.bpso.phi1, "BPSO cognitive weight");
  cmd.add_option("--phi2", o.bpso.phi2, "BPSO social weight");
  cmd.add_option("--vmax", o.bpso.v_max, "BPSO velocity clamp");
}

ligpso::ExperimentSpec make_spec(const Options& o) {
  ligpso::ExperimentSpec spec;
  try {
    if (!o.site.empty()) spec.site_path = o.site;
    spec.profile = ligpso::parse_site_profile(o.profile);
    spec.site_seed = o.site_seed;
    if (!o.topology_right.empty()) spec.topology_right_path = o.topology_right;
    if (!o.topology_left.empty()) spec.topology_left_path = o.topology_left;
    spec.layout.branch_spacing = o.branch_spacing;
    spec.algorithm = ligpso::parse_algorithm(o.algorithm);
    spec.mode = ligpso::parse_length_mode(o.mode);
    spec.bpso = o.bpso;
    spec.qbpso = o.qbpso;
    spec.qbpso.beta = 1.0 - o.qbpso.alpha;
    if (o.inertia) spec.bpso.inertia = spec.qbpso.inertia = *o.inertia;
    spec.bpso.population = spec.qbpso.population = o.pop;
    spec.bpso.generations = spec.qbpso.generations = o.gens;
    spec.energy = o.energy;
    spec.energy.sign = ligpso::parse_vdw_sign(o.vdw_sign);
    spec.seeds = ligpso::parse_seed_list(o.seeds);
    spec.out_dir = o.out;
    spec.jobs = o.jobs;
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return spec;
}

int run_optimize(const Options& o) {
  const auto spec = make_spec(o);
  const auto outcome = ligpso::cmd_optimize(spec);
  for (const auto& run : outcome.runs) {
    std::cout << "seed " << run.seed << ": best energy " << run.best_energy << " kcal/mol, fitness "
              << run.result.best_fitness << ", chromosome " << run.result.best_position.to_string() << "\n";
  }
  std::cout << "wrote " << outcome.files.size() << " files to " << spec.out_dir << "\n";
  return 0;
}

int run_compare(const Options& o) {
  const auto spec = make_spec(o);
  if (spec.seeds.size() < ligpso::kMinCompareSeeds) {
    throw UsageError("compare needs at least " + std::to_string(ligpso::kMinCompareSeeds) + " seeds");
  }
  const auto outcome = ligpso::cmd_compare(spec);
  std::cout << ligpso::format_summary_table(outcome);
  for (const auto& f : outcome.files) std::cout << "wrote " << f << "\n";
  return 0;
}

int run_oracle(const Options& o, const std::string& active, const std::string& out) {
  const auto spec = make_spec(o);
  std::vector<ligpso::NodeKey> nodes;
  try {
    nodes = ligpso::parse_node_list(active);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  ligpso::ReducedProblem problem(nodes, ligpso::resolve_model(spec), ligpso::resolve_site(spec), spec.energy,
                                 spec.mode);
  const auto best = ligpso::exhaustive_best(problem, {.workers = spec.jobs});
  std::cout << "active " << ligpso::format_node_list(nodes) << ": " << best.evaluations << " states, optimum "
            << best.energy << " kcal/mol, chromosome " << best.chromosome.to_string() << "\n";
  if (!out.empty()) {
    nlohmann::json ref;
    ref["config"] = nlohmann::json::parse(ligpso::resolved_config_json(spec, spec.mode, problem.problem()));
    ref["active"] = ligpso::format_node_list(nodes);
    ref["chromosome"] = best.chromosome.to_string();
    ref["energy"] = best.energy;
    ref["evaluations"] = best.evaluations;
    std::ofstream f(out, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error(out + ": cannot open for writing");
    f << ref.dump(2) << "\n";
    std::cout << "wrote " << out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary and quantum binary PSO for tree-encoded ligand design"};
  app.require_subcommand(1);

  Options opt;
  auto* optimize = app.add_subcommand("optimize", "Run the optimizer once per seed");
  add_run_options(*optimize, opt, true);

  auto* compare = app.add_subcommand("compare", "Compare fixed and variable length over shared seeds");
  add_run_options(*compare, opt, false);

  std::string gen_profile = "barrel-default";
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  bool gen_force = false;
  auto* gen = app.add_subcommand("gen-site", "Write a generated active-site file");
  gen->add_option("--profile", gen_profile, "Site profile")->check(CLI::IsMember({"barrel-default", "random"}));
  gen->add_option("--seed", gen_seed, "Seed for the random profile");
  gen->add_option("--out", gen_out, "Output path")->required();
  gen->add_flag("--force", gen_force, "Overwrite an existing file");

  std::string oracle_active = "R1,R3,R6";
  std::string oracle_out;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive optimum on a reduced instance");
  add_site_options(*oracle, opt);
  add_energy_options(*oracle, opt);
  oracle->add_option("--mode", opt.mode, "Length mode")->check(CLI::IsMember({"fixed", "variable"}));
  oracle->add_option("--active", oracle_active, "Active nodes, e.g. R1,R3,R6");
  oracle->add_option("--jobs", opt.jobs, "Enumeration workers");
  oracle->add_option("--out", oracle_out, "Reference JSON output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*optimize) return run_optimize(opt);
    if (*compare) return run_compare(opt);
    if (*gen) {
      ligpso::cmd_gen_site(ligpso::parse_site_profile(gen_profile), gen_seed, gen_out, gen_force);
      std::cout << "wrote " << gen_out << "\n";
      return 0;
    }
    if (*oracle) return run_oracle(opt, oracle_active, oracle_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ligpso::RunFailure& e) {
    std::cerr << "error: " << e.what();
    return kRunError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRunError;
  }
  return kUsageError;
}
