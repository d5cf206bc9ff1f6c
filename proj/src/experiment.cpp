#include "ligpso/experiment.hpp"

#include <algorithm>
#include <set>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace ligpso {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json swarm_json(const SwarmConfig& cfg) {
  return std::visit(
      [](const auto& c) -> json {
        json j{{"population", c.population}, {"dimension", c.dimension}, {"generations", c.generations}};
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>, BpsoConfig>) {
          j["algorithm"] = "bpso";
          j["w"] = c.inertia;
          j["phi1"] = c.phi1;
          j["phi2"] = c.phi2;
          j["v_max"] = c.v_max;
        } else {
          j["algorithm"] = "qbpso";
          j["w"] = c.inertia;
          j["c1"] = c.c1;
          j["c2"] = c.c2;
          j["alpha"] = c.alpha;
          j["beta"] = c.beta;
        }
        return j;
      },
      cfg);
}

json energy_json(const EnergyParams& p) {
  return {{"c_n", p.c_n},
          {"c_m", p.c_m},
          {"r_min", p.r_min},
          {"r_max", p.r_max},
          {"penalty_polarity", p.penalty_polarity},
          {"penalty_range", p.penalty_range},
          {"k", p.k},
          {"e_floor", p.e_floor},
          {"vdw_sign", to_string(p.sign)}};
}

json limits_json(const SideLimits& l) {
  return {{"min_groups", l.bounds.min_groups}, {"max_groups", l.bounds.max_groups}, {"major_axis", l.major_axis}};
}

json config_json(const ExperimentSpec& spec, LengthMode mode, const DockingProblem& problem,
                 std::optional<std::uint64_t> seed) {
  json j;
  j["tool"] = "ligpso";
  j["mode"] = to_string(mode);
  j["swarm"] = swarm_json(spec.swarm_config(seed.value_or(0), problem.dimension()));
  j["energy"] = energy_json(spec.energy);
  j["site"] = {{"name", problem.site().name},
               {"source", spec.site_path ? *spec.site_path : to_string(spec.profile)},
               {"site_seed", spec.site_seed},
               {"residues", problem.site().residues.size()}};
  j["topology"] = {{"right", spec.topology_right_path.value_or("default")},
                   {"left", spec.topology_left_path.value_or("default")},
                   {"branch_spacing", spec.layout.branch_spacing}};
  j["bounds"] = {{"right", limits_json(problem.limits(Side::right))}, {"left", limits_json(problem.limits(Side::left))}};
  if (seed) {
    j["seed"] = *seed;
  } else {
    j["seeds"] = spec.seeds;
  }
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot open for writing");
  out << text;
  if (!out) throw std::runtime_error(path.string() + ": write failed");
}

std::string trace_csv(const json& config, const SeedRun& run) {
  std::ostringstream os;
  os << "# config: " << config.dump() << "\n";
  os << "generation,best_fitness,best_energy\n";
  for (std::size_t g = 0; g < run.result.trace.size(); ++g) {
    os << (g + 1) << ',' << num(run.result.trace[g]) << ',' << num(run.energy_trace[g]) << "\n";
  }
  return os.str();
}

json run_json(const json& config, const DockingProblem& problem, const SeedRun& run) {
  json j;
  j["config"] = config;
  j["seed"] = run.seed;
  j["best_chromosome"] = run.result.best_position.to_string();
  j["best_fitness"] = run.result.best_fitness;
  j["best_energy"] = run.best_energy;
  j["evaluations"] = run.result.evaluations;
  j["generations"] = run.result.trace.size();

  const EnergyReport report = problem.energy_report(run.result.best_position);
  const LigandTree tree = problem.decode(run.result.best_position);
  json groups = json::array();
  for (const auto& g : report.groups) {
    const Point p = tree.coords.at(g.node);
    groups.push_back({{"side", to_string(g.node.side)},
                      {"node", g.node.node},
                      {"group", std::string(group_info(g.group).name)},
                      {"x", p.x},
                      {"y", p.y},
                      {"residue", g.residue_id},
                      {"distance", g.distance},
                      {"pair_energy", g.pair_energy},
                      {"polarity_penalty", g.polarity_penalty},
                      {"range_penalty", g.range_penalty}});
  }
  j["groups"] = std::move(groups);
  return j;
}

struct Batch {
  std::vector<SeedRun> runs;  // completed runs, in seed-list order
  std::vector<std::uint64_t> failed;
  std::string message;

  void throw_if_failed() const {
    if (!failed.empty()) throw RunFailure(message, failed);
  }
};

// Runs every seed, `jobs` at a time. Results are ordered like spec.seeds.
Batch run_all(const DockingProblem& problem, const ExperimentSpec& spec) {
  const std::size_t n = spec.seeds.size();
  std::vector<SeedRun> runs(n);
  std::vector<std::string> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        runs[i] = run_seed(problem, spec, spec.seeds[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  {
    std::vector<std::jthread> threads;
    const std::size_t jobs = std::clamp<std::size_t>(spec.jobs, 1, n);
    for (std::size_t t = 1; t < jobs; ++t) threads.emplace_back(worker);
    worker();
  }

  Batch batch;
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i].empty()) {
      batch.runs.push_back(std::move(runs[i]));
    } else {
      batch.failed.push_back(spec.seeds[i]);
      batch.message += "seed " + std::to_string(spec.seeds[i]) + " failed: " + errors[i] + "\n";
    }
  }
  return batch;
}

DockingProblem make_problem(const ExperimentSpec& spec, LengthMode mode) {
  return DockingProblem(resolve_model(spec), resolve_site(spec), spec.energy, mode);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

void ExperimentSpec::validate() const {
  if (seeds.empty()) throw std::invalid_argument("at least one seed is required");
  if (jobs == 0) throw std::invalid_argument("jobs must be at least 1");
  energy.validate();
  if (algorithm == Algorithm::bpso) {
    bpso.validate();
  } else {
    qbpso.validate();
  }
}

SwarmConfig ExperimentSpec::swarm_config(std::uint64_t seed, std::size_t dimension) const {
  if (algorithm == Algorithm::bpso) {
    BpsoConfig c = bpso;
    c.seed = seed;
    c.dimension = dimension;
    return c;
  }
  QbpsoConfig c = qbpso;
  c.seed = seed;
  c.dimension = dimension;
  return c;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  auto parse_u64 = [&](std::string_view s) {
    if (s.empty() || s.size() > 19 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw std::invalid_argument("bad seed '" + std::string(s) + "' in seed list '" + std::string(text) + "'");
    }
    return std::stoull(std::string(s));
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::string_view item = text.substr(pos, comma - pos);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    const std::size_t dash = item.find('-');
    if (dash == std::string_view::npos) {
      out.push_back(parse_u64(item));
    } else {
      const std::uint64_t lo = parse_u64(item.substr(0, dash));
      const std::uint64_t hi = parse_u64(item.substr(dash + 1));
      if (hi < lo) throw std::invalid_argument("descending seed range '" + std::string(item) + "'");
      if (hi - lo >= 100000) throw std::invalid_argument("seed range '" + std::string(item) + "' is too long");
      for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    }
    pos = comma + 1;
  }
  std::set<std::uint64_t> seen;
  for (std::uint64_t s : out)
    if (!seen.insert(s).second) throw std::invalid_argument("seed " + std::to_string(s) + " listed twice");
  return out;
}

ActiveSite resolve_site(const ExperimentSpec& spec) {
  if (spec.site_path) return load_site(*spec.site_path);
  return generate_site(spec.profile, spec.site_seed);
}

LigandModel resolve_model(const ExperimentSpec& spec) {
  TreeTopology right = spec.topology_right_path ? load_topology(*spec.topology_right_path) : TreeTopology::default_right();
  TreeTopology left = spec.topology_left_path ? load_topology(*spec.topology_left_path) : TreeTopology::default_left();
  return LigandModel(std::move(right), std::move(left), spec.layout);
}

SeedRun run_seed(const DockingProblem& problem, const ExperimentSpec& spec, std::uint64_t seed) {
  SeedRun run;
  run.seed = seed;
  run.result = run_optimizer(spec.swarm_config(seed, problem.dimension()), problem.fitness_fn(), problem.repair_fn());
  run.energy_trace.reserve(run.result.best_history.size());
  for (const auto& best : run.result.best_history) run.energy_trace.push_back(problem.energy(best));
  run.best_energy = run.energy_trace.back();
  return run;
}

OptimizeOutcome cmd_optimize(const ExperimentSpec& spec) {
  spec.validate();
  const DockingProblem problem = make_problem(spec, spec.mode);
  fs::create_directories(spec.out_dir);

  OptimizeOutcome outcome;
  auto write = [&](const std::vector<SeedRun>& runs) {
    for (const auto& run : runs) {
      const json config = config_json(spec, spec.mode, problem, run.seed);
      const std::string stem = to_string(spec.mode) + "_seed" + std::to_string(run.seed);
      const fs::path trace = fs::path(spec.out_dir) / ("trace_" + stem + ".csv");
      const fs::path record = fs::path(spec.out_dir) / ("run_" + stem + ".json");
      write_text(trace, trace_csv(config, run));
      write_text(record, run_json(config, problem, run).dump(2) + "\n");
      outcome.files.push_back(trace.string());
      outcome.files.push_back(record.string());
    }
  };

  Batch batch = run_all(problem, spec);
  outcome.runs = std::move(batch.runs);
  write(outcome.runs);
  batch.throw_if_failed();
  return outcome;
}

ModeSummary summarize(LengthMode mode, const std::vector<SeedRun>& runs) {
  ModeSummary s;
  s.mode = mode;
  s.runs = runs.size();
  if (runs.empty()) return s;
  std::vector<double> e;
  for (const auto& r : runs) e.push_back(r.best_energy);
  s.median_energy = median(e);
  s.mean_energy = std::accumulate(e.begin(), e.end(), 0.0) / static_cast<double>(e.size());
  s.min_energy = *std::min_element(e.begin(), e.end());
  s.max_energy = *std::max_element(e.begin(), e.end());
  return s;
}

CompareOutcome cmd_compare(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.seeds.size() < kMinCompareSeeds) {
    throw std::invalid_argument("compare needs at least " + std::to_string(kMinCompareSeeds) + " seeds, got " +
                                std::to_string(spec.seeds.size()));
  }
  const DockingProblem fixed = make_problem(spec, LengthMode::fixed);
  const DockingProblem variable = make_problem(spec, LengthMode::variable);

  CompareOutcome out;
  const Batch fixed_batch = run_all(fixed, spec);
  fixed_batch.throw_if_failed();
  const Batch variable_batch = run_all(variable, spec);
  variable_batch.throw_if_failed();
  out.fixed_runs = fixed_batch.runs;
  out.variable_runs = variable_batch.runs;
  out.fixed = summarize(LengthMode::fixed, out.fixed_runs);
  out.variable = summarize(LengthMode::variable, out.variable_runs);

  json config = config_json(spec, LengthMode::variable, variable, std::nullopt);
  config["mode"] = "fixed,variable";
  config["bounds"] = {{"fixed", {{"right", limits_json(fixed.limits(Side::right))},
                                 {"left", limits_json(fixed.limits(Side::left))}}},
                      {"variable", config["bounds"]}};

  fs::create_directories(spec.out_dir);
  std::ostringstream runs;
  runs << "# config: " << config.dump() << "\n";
  runs << "mode,seed,best_energy,best_fitness,evaluations,best_chromosome\n";
  for (const auto* set : {&out.fixed_runs, &out.variable_runs}) {
    const std::string mode = set == &out.fixed_runs ? "fixed" : "variable";
    for (const auto& r : *set) {
      runs << mode << ',' << r.seed << ',' << num(r.best_energy) << ',' << num(r.result.best_fitness) << ','
           << r.result.evaluations << ',' << r.result.best_position.to_string() << "\n";
    }
  }
  std::ostringstream summary;
  summary << "# config: " << config.dump() << "\n";
  summary << "mode,runs,median_energy,mean_energy,min_energy,max_energy\n";
  for (const ModeSummary& s : {out.variable, out.fixed}) {
    summary << to_string(s.mode) << ',' << s.runs << ',' << num(s.median_energy) << ',' << num(s.mean_energy)
            << ',' << num(s.min_energy) << ',' << num(s.max_energy) << "\n";
  }
  const fs::path runs_path = fs::path(spec.out_dir) / "compare_runs.csv";
  const fs::path summary_path = fs::path(spec.out_dir) / "compare_summary.csv";
  write_text(runs_path, runs.str());
  write_text(summary_path, summary.str());
  out.files = {runs_path.string(), summary_path.string()};
  return out;
}

std::string format_summary_table(const CompareOutcome& outcome) {
  std::string algorithm = outcome.variable_runs.empty() ? "" : to_string(outcome.variable_runs.front().result.algorithm);
  std::transform(algorithm.begin(), algorithm.end(), algorithm.begin(), [](unsigned char c) { return std::toupper(c); });
  std::ostringstream os;
  os << std::left << std::setw(22) << "Algorithm" << std::right << std::setw(8) << "runs" << std::setw(16)
     << "median E" << std::setw(16) << "mean E" << std::setw(16) << "min E" << "\n";
  os << std::string(78, '-') << "\n";
  for (const ModeSummary* s : {&outcome.variable, &outcome.fixed}) {
    const std::string name = (s->mode == LengthMode::variable ? "Variable length " : "Fixed length ") + algorithm;
    os << std::left << std::setw(22) << name << std::right << std::setw(8) << s->runs << std::fixed
       << std::setprecision(4) << std::setw(16) << s->median_energy << std::setw(16) << s->mean_energy
       << std::setw(16) << s->min_energy << "\n";
    os.unsetf(std::ios::floatfield);
  }
  os << "(energies in kcal/mol)\n";
  return os.str();
}

void cmd_gen_site(SiteProfile profile, std::uint64_t seed, const std::string& path, bool force) {
  if (!force && fs::exists(path)) {
    throw std::runtime_error(path + ": file exists (pass --force to overwrite)");
  }
  save_site(generate_site(profile, seed), path);
}

std::string resolved_config_json(const ExperimentSpec& spec, LengthMode mode, const DockingProblem& problem) {
  return config_json(spec, mode, problem, std::nullopt).dump();
}

}  // namespace ligpso
