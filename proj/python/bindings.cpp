// Python bindings. Chromosomes cross the boundary as '0'/'1' strings and
// sites as JSON documents, so results can be compared with CLI output
// directly.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ligpso/experiment.hpp"
#include "ligpso/oracle.hpp"

namespace py = pybind11;
using namespace ligpso;

namespace {

ActiveSite site_from(const std::optional<std::string>& site_json) {
  return site_json ? parse_site(*site_json) : generate_site(SiteProfile::barrel_default);
}

EnergyParams params_from(const py::dict& overrides) {
  EnergyParams p;
  for (const auto& [key, value] : overrides) {
    const auto k = key.cast<std::string>();
    if (k == "c_n") p.c_n = value.cast<double>();
    else if (k == "c_m") p.c_m = value.cast<double>();
    else if (k == "r_min") p.r_min = value.cast<double>();
    else if (k == "r_max") p.r_max = value.cast<double>();
    else if (k == "penalty_polarity") p.penalty_polarity = value.cast<double>();
    else if (k == "penalty_range") p.penalty_range = value.cast<double>();
    else if (k == "k") p.k = value.cast<double>();
    else if (k == "e_floor") p.e_floor = value.cast<double>();
    else if (k == "sign") p.sign = parse_vdw_sign(value.cast<std::string>());
    else throw std::invalid_argument("unknown energy parameter '" + k + "'");
  }
  p.validate();
  return p;
}

DockingProblem problem_from(const std::optional<std::string>& site_json, const std::string& mode,
                            const py::dict& energy) {
  return DockingProblem(LigandModel(), site_from(site_json), params_from(energy), parse_length_mode(mode));
}

py::dict run_dict(const RunResult& r) {
  py::dict d;
  d["best"] = r.best_position.to_string();
  d["best_fitness"] = r.best_fitness;
  d["trace"] = r.trace;
  d["evaluations"] = r.evaluations;
  d["seed"] = r.seed;
  d["algorithm"] = to_string(r.algorithm);
  return d;
}

SwarmConfig swarm_from(const std::string& algorithm, std::size_t dimension, std::size_t population,
                       std::size_t generations, std::uint64_t seed) {
  if (parse_algorithm(algorithm) == Algorithm::bpso) {
    BpsoConfig c;
    c.dimension = dimension;
    c.population = population;
    c.generations = generations;
    c.seed = seed;
    return c;
  }
  QbpsoConfig c;
  c.dimension = dimension;
  c.population = population;
  c.generations = generations;
  c.seed = seed;
  return c;
}

ExperimentSpec spec_from(const std::string& algorithm, const std::string& mode, std::vector<std::uint64_t> seeds,
                         std::size_t population, std::size_t generations, const std::string& out_dir,
                         const std::optional<std::string>& site_path, const py::dict& energy) {
  ExperimentSpec s;
  s.algorithm = parse_algorithm(algorithm);
  s.mode = parse_length_mode(mode);
  s.seeds = std::move(seeds);
  s.bpso.population = s.qbpso.population = population;
  s.bpso.generations = s.qbpso.generations = generations;
  s.out_dir = out_dir;
  s.site_path = site_path;
  s.energy = params_from(energy);
  s.validate();
  return s;
}

py::dict seed_run_dict(const SeedRun& run) {
  py::dict d = run_dict(run.result);
  d["best_energy"] = run.best_energy;
  d["energy_trace"] = run.energy_trace;
  return d;
}

}  // namespace

PYBIND11_MODULE(_ligpso, m) {
  m.doc() = "Binary and quantum binary PSO for tree-encoded ligand design";

  py::register_exception<SiteError>(m, "SiteError", PyExc_ValueError);
  py::register_exception<FitnessError>(m, "FitnessError", PyExc_ArithmeticError);
  py::register_exception<SearchSpaceTooLarge>(m, "SearchSpaceTooLarge", PyExc_ValueError);

  m.attr("CHROMOSOME_BITS") = LigandModel().chromosome_bits();

  m.def("sigmoid", &sigmoid, py::arg("v"));

  m.def(
      "generate_site",
      [](const std::string& profile, std::uint64_t seed) {
        return serialize_site(generate_site(parse_site_profile(profile), seed));
      },
      py::arg("profile") = "barrel-default", py::arg("seed") = 0, "Site JSON for a generated profile.");

  m.def(
      "compute_bounds",
      [](double axis, std::size_t nodes) {
        const auto b = compute_bounds(axis, nodes);
        return std::pair{b.min_groups, b.max_groups};
      },
      py::arg("major_axis"), py::arg("node_count"), "(min_groups, max_groups) for one side.");

  m.def(
      "decode",
      [](const std::string& bits) {
        const LigandModel model;
        const LigandTree t = model.decode(BitString::from_string(bits));
        py::dict d;
        for (Side s : {Side::right, Side::left}) {
          py::list names;
          for (GroupCode g : t.groups(s)) names.append(std::string(group_info(g).name));
          d[py::str(to_string(s))] = names;
        }
        py::dict coords;
        for (const auto& [k, p] : t.coords)
          coords[py::str((k.side == Side::right ? "R" : "L") + std::to_string(k.node))] = py::make_tuple(p.x, p.y);
        d["coords"] = coords;
        return d;
      },
      py::arg("chromosome"), "Group names per side and coordinates of occupied nodes.");

  m.def(
      "correct",
      [](const std::string& bits, const std::string& mode, const std::optional<std::string>& site) {
        return problem_from(site, mode, {}).repair(BitString::from_string(bits)).to_string();
      },
      py::arg("chromosome"), py::arg("mode") = "variable", py::arg("site") = py::none(),
      "Repaired chromosome under the site's length bounds.");

  m.def(
      "energy",
      [](const std::string& bits, const std::optional<std::string>& site, const py::dict& params) {
        const auto prob = problem_from(site, "variable", params);
        const double e = prob.energy(BitString::from_string(bits));
        return std::pair{e, fitness(e, prob.params())};
      },
      py::arg("chromosome"), py::arg("site") = py::none(), py::arg("params") = py::dict(),
      "(energy, fitness) of the chromosome as given, without repair.");

  m.def(
      "run_optimizer",
      [](const std::function<double(const std::string&)>& fn, std::size_t dimension, const std::string& algorithm,
         std::size_t population, std::size_t generations, std::uint64_t seed) {
        const FitnessFn f = [&fn](const BitString& b) { return fn(b.to_string()); };
        return run_dict(run_optimizer(swarm_from(algorithm, dimension, population, generations, seed), f));
      },
      py::arg("fitness"), py::arg("dimension"), py::arg("algorithm") = "qbpso", py::arg("population") = 40,
      py::arg("generations") = 100, py::arg("seed") = 1, "Maximise a Python fitness over bit strings.");

  m.def(
      "optimize",
      [](const std::string& algorithm, const std::string& mode, std::uint64_t seed, std::size_t population,
         std::size_t generations, const std::optional<std::string>& site, const py::dict& params) {
        const auto prob = problem_from(site, mode, params);
        ExperimentSpec spec;
        spec.algorithm = parse_algorithm(algorithm);
        spec.mode = prob.mode();
        spec.bpso.population = spec.qbpso.population = population;
        spec.bpso.generations = spec.qbpso.generations = generations;
        spec.energy = prob.params();
        spec.validate();
        return seed_run_dict(run_seed(prob, spec, seed));
      },
      py::arg("algorithm") = "qbpso", py::arg("mode") = "variable", py::arg("seed") = 1, py::arg("population") = 40,
      py::arg("generations") = 100, py::arg("site") = py::none(), py::arg("params") = py::dict(),
      "One docking run in memory.");

  m.def(
      "oracle",
      [](const std::string& active, const std::string& mode, const std::optional<std::string>& site,
         std::size_t workers) {
        const ReducedProblem prob(parse_node_list(active), LigandModel(), site_from(site), EnergyParams{},
                                  parse_length_mode(mode));
        OracleResult r;
        {
          py::gil_scoped_release release;
          r = exhaustive_best(prob, {.workers = workers});
        }
        py::dict d;
        d["chromosome"] = r.chromosome.to_string();
        d["energy"] = r.energy;
        d["evaluations"] = r.evaluations;
        return d;
      },
      py::arg("active") = "R1,R3,R6", py::arg("mode") = "variable", py::arg("site") = py::none(),
      py::arg("workers") = 1, "Exhaustive optimum with only the listed nodes active.");

  m.def(
      "cmd_optimize",
      [](const std::string& out_dir, const std::string& algorithm, const std::string& mode, const std::string& seeds,
         std::size_t population, std::size_t generations, const std::optional<std::string>& site_path,
         const py::dict& params) {
        auto spec = spec_from(algorithm, mode, parse_seed_list(seeds), population, generations, out_dir, site_path,
                              params);
        OptimizeOutcome out;
        {
          py::gil_scoped_release release;
          out = cmd_optimize(spec);
        }
        return out.files;
      },
      py::arg("out_dir"), py::arg("algorithm") = "qbpso", py::arg("mode") = "variable", py::arg("seeds") = "1",
      py::arg("population") = 40, py::arg("generations") = 100, py::arg("site_path") = py::none(),
      py::arg("params") = py::dict(), "Same as `ligpso optimize`; returns the written paths.");

  m.def(
      "cmd_compare",
      [](const std::string& out_dir, const std::string& algorithm, const std::string& seeds, std::size_t population,
         std::size_t generations, const std::optional<std::string>& site_path, const py::dict& params) {
        auto spec = spec_from(algorithm, "variable", parse_seed_list(seeds), population, generations, out_dir,
                              site_path, params);
        CompareOutcome out;
        {
          py::gil_scoped_release release;
          out = cmd_compare(spec);
        }
        py::dict d;
        for (const ModeSummary* s : {&out.fixed, &out.variable}) {
          d[py::str(to_string(s->mode))] = py::dict(py::arg("runs") = s->runs, py::arg("median") = s->median_energy,
                                                    py::arg("mean") = s->mean_energy, py::arg("min") = s->min_energy,
                                                    py::arg("max") = s->max_energy);
        }
        d["files"] = out.files;
        return d;
      },
      py::arg("out_dir"), py::arg("algorithm") = "qbpso", py::arg("seeds") = "1-20", py::arg("population") = 40,
      py::arg("generations") = 100, py::arg("site_path") = py::none(), py::arg("params") = py::dict(),
      "Same as `ligpso compare`; returns per-mode summaries.");
}
