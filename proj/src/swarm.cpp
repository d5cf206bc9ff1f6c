#include "ligpso/swarm.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace ligpso {

namespace {

constexpr double kSumTolerance = 1e-9;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

bool open_unit(double x) { return x > 0.0 && x < 1.0; }

void check_dimensions(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw std::invalid_argument(std::string("dimension mismatch: ") + what + " has " + std::to_string(got) +
                                " components, expected " + std::to_string(expected));
  }
}

BitString random_position(std::size_t n, Rng& rng) {
  BitString x(n);
  for (std::size_t d = 0; d < n; ++d) x.set(d, rng.uniform() < 0.5);
  return x;
}

// Evaluates every position, possibly across threads. The returned vector is
// indexed like `positions`, so scheduling cannot influence the result.
std::vector<double> evaluate_all(const std::vector<BitString>& positions, const FitnessFn& fitness,
                                 std::size_t threads) {
  std::vector<double> out(positions.size());
  threads = std::clamp<std::size_t>(threads, 1, positions.size());
  if (threads == 1) {
    for (std::size_t i = 0; i < positions.size(); ++i) out[i] = fitness(positions[i]);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> workers;
      workers.reserve(threads);
      for (std::size_t t = 0; t < threads; ++t) {
        workers.emplace_back([&, t] {
          try {
            for (std::size_t i = t; i < positions.size(); i += threads) out[i] = fitness(positions[i]);
          } catch (...) {
            errors[t] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!std::isfinite(out[i])) {
      throw FitnessError("fitness function returned non-finite value " + std::to_string(out[i]) +
                             " for chromosome " + positions[i].to_string(),
                         positions[i]);
    }
  }
  return out;
}

// Shared generation loop. `advance(particle, global_best, rng)` applies the
// algorithm's update rule and writes the next position into the particle.
template <class Velocity, class Advance>
RunResult run_swarm(std::size_t population, std::size_t dimension, std::size_t generations, std::uint64_t seed,
                    const Velocity& initial_velocity, const FitnessFn& fitness, const RepairFn& repair,
                    const RunOptions& options, Advance advance) {
  if (!fitness) throw std::invalid_argument("fitness function is empty");

  std::vector<Rng> rngs;
  std::vector<ParticleState<Velocity>> swarm(population);
  rngs.reserve(population);
  for (std::size_t i = 0; i < population; ++i) {
    rngs.push_back(Rng::substream(seed, i));
    swarm[i].position = random_position(dimension, rngs[i]);
    swarm[i].velocity = initial_velocity;
  }

  RunResult result;
  result.seed = seed;
  result.trace.reserve(generations);
  result.best_history.reserve(generations);
  bool have_best = false;

  std::vector<BitString> positions(population);
  for (std::size_t g = 0; g < generations; ++g) {
    for (std::size_t i = 0; i < population; ++i) {
      if (repair) {
        swarm[i].position = repair(swarm[i].position);
        check_dimensions(dimension, swarm[i].position.size(), "repaired chromosome");
      }
      positions[i] = swarm[i].position;
    }

    const std::vector<double> values = evaluate_all(positions, fitness, options.eval_threads);
    result.evaluations += population;

    // Strict improvement only; ties keep the incumbent.
    for (std::size_t i = 0; i < population; ++i) {
      auto& p = swarm[i];
      if (g == 0 || values[i] > p.personal_best_fitness) {
        p.personal_best = p.position;
        p.personal_best_fitness = values[i];
      }
      if (!have_best || values[i] > result.best_fitness) {
        result.best_position = p.position;
        result.best_fitness = values[i];
        have_best = true;
      }
    }
    result.trace.push_back(result.best_fitness);
    result.best_history.push_back(result.best_position);

    if (options.on_generation) {
      std::vector<BitString> pbest;
      std::vector<double> pbest_fitness;
      for (const auto& p : swarm) {
        pbest.push_back(p.personal_best);
        pbest_fitness.push_back(p.personal_best_fitness);
      }
      options.on_generation({g, pbest, pbest_fitness, result.best_position, result.best_fitness});
    }

    if (g + 1 == generations) break;
    for (std::size_t i = 0; i < population; ++i) advance(swarm[i], result.best_position, rngs[i]);
  }
  return result;
}

}  // namespace

std::string to_string(Algorithm a) { return a == Algorithm::bpso ? "bpso" : "qbpso"; }

Algorithm parse_algorithm(std::string_view text) {
  if (text == "bpso") return Algorithm::bpso;
  if (text == "qbpso") return Algorithm::qbpso;
  throw std::invalid_argument("unknown algorithm '" + std::string(text) + "' (expected bpso or qbpso)");
}

void BpsoConfig::validate() const {
  require(population >= 2, "population must be at least 2");
  require(dimension >= 1, "dimension must be at least 1");
  require(generations >= 1, "generations must be at least 1");
  require(std::isfinite(inertia) && std::isfinite(phi1) && std::isfinite(phi2), "BPSO weights must be finite");
  require(std::isfinite(v_max) && v_max > 0.0, "v_max must be positive");
}

void QbpsoConfig::validate() const {
  require(population >= 2, "population must be at least 2");
  require(dimension >= 1, "dimension must be at least 1");
  require(generations >= 1, "generations must be at least 1");
  require(open_unit(alpha) && open_unit(beta), "alpha and beta must lie strictly between 0 and 1");
  require(std::abs(alpha + beta - 1.0) <= kSumTolerance, "alpha + beta must equal 1");
  require(open_unit(inertia) && open_unit(c1) && open_unit(c2), "w, c1 and c2 must lie strictly between 0 and 1");
  require(std::abs(inertia + c1 + c2 - 1.0) <= kSumTolerance, "w + c1 + c2 must equal 1");
}

double sigmoid(double v) {
  if (!std::isfinite(v)) throw std::domain_error("invalid velocity: " + std::to_string(v));
  return 1.0 / (1.0 + std::exp(-v));
}

std::vector<double> bpso_velocity_update(std::span<const double> velocity, const BitString& position,
                                         const BitString& personal_best, const BitString& global_best,
                                         const BpsoConfig& cfg, std::span<const double> r1,
                                         std::span<const double> r2) {
  const std::size_t n = velocity.size();
  check_dimensions(n, position.size(), "position");
  check_dimensions(n, personal_best.size(), "personal best");
  check_dimensions(n, global_best.size(), "global best");
  check_dimensions(n, r1.size(), "r1");
  check_dimensions(n, r2.size(), "r2");

  std::vector<double> out(n);
  for (std::size_t d = 0; d < n; ++d) {
    const double x = position[d] ? 1.0 : 0.0;
    const double pb = personal_best[d] ? 1.0 : 0.0;
    const double gb = global_best[d] ? 1.0 : 0.0;
    const double v = cfg.inertia * velocity[d] + cfg.phi1 * r1[d] * (pb - x) + cfg.phi2 * r2[d] * (gb - x);
    out[d] = std::clamp(v, -cfg.v_max, cfg.v_max);
  }
  return out;
}

std::vector<double> bpso_velocity_update(const BpsoParticle& state, const BitString& global_best,
                                         const BpsoConfig& cfg, Rng& rng) {
  const std::size_t n = state.velocity.size();
  std::vector<double> r1(n), r2(n);
  for (std::size_t d = 0; d < n; ++d) {
    r1[d] = rng.uniform();
    r2[d] = rng.uniform();
  }
  return bpso_velocity_update(state.velocity, state.position, state.personal_best, global_best, cfg, r1, r2);
}

BitString bpso_position_sample(std::span<const double> velocity, Rng& rng) {
  BitString x(velocity.size());
  for (std::size_t d = 0; d < velocity.size(); ++d) x.set(d, rng.uniform() < sigmoid(velocity[d]));
  return x;
}

BitString qbpso_flip(const QuantumVector& quantum, Rng& rng) {
  BitString x(quantum.size());
  for (std::size_t j = 0; j < quantum.size(); ++j) {
    const double p = quantum[j];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::domain_error("corrupted quantum state: component " + std::to_string(j) + " = " +
                              std::to_string(p));
    }
    x.set(j, rng.uniform() < p);
  }
  return x;
}

QuantumVector qbpso_quantum_update(const QuantumVector& v_old, const BitString& local_best,
                                   const BitString& global_best, const QbpsoConfig& cfg) {
  const std::size_t n = v_old.size();
  check_dimensions(n, local_best.size(), "local best");
  check_dimensions(n, global_best.size(), "global best");

  std::vector<double> out(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double v_lb = local_best[j] ? cfg.alpha : cfg.beta;
    const double v_gb = global_best[j] ? cfg.alpha : cfg.beta;
    // Exact arithmetic keeps this inside [0,1]; the clamp only absorbs
    // rounding when the coefficient sums land a few ulps above 1.
    out[j] = std::clamp(cfg.inertia * v_old[j] + cfg.c1 * v_lb + cfg.c2 * v_gb, 0.0, 1.0);
  }
  return QuantumVector(std::move(out));
}

RunResult run_bpso(const BpsoConfig& cfg, const FitnessFn& fitness, const RepairFn& repair,
                   const RunOptions& options) {
  cfg.validate();
  RunResult r = run_swarm(cfg.population, cfg.dimension, cfg.generations, cfg.seed,
                          std::vector<double>(cfg.dimension, 0.0), fitness, repair, options,
                          [&cfg](BpsoParticle& p, const BitString& gbest, Rng& rng) {
                            p.velocity = bpso_velocity_update(p, gbest, cfg, rng);
                            p.position = bpso_position_sample(p.velocity, rng);
                          });
  r.algorithm = Algorithm::bpso;
  r.config = cfg;
  return r;
}

RunResult run_qbpso(const QbpsoConfig& cfg, const FitnessFn& fitness, const RepairFn& repair,
                    const RunOptions& options) {
  cfg.validate();
  RunResult r = run_swarm(cfg.population, cfg.dimension, cfg.generations, cfg.seed,
                          QuantumVector(cfg.dimension, 0.5), fitness, repair, options,
                          [&cfg](QbpsoParticle& p, const BitString& gbest, Rng& rng) {
                            p.velocity = qbpso_quantum_update(p.velocity, p.personal_best, gbest, cfg);
                            p.position = qbpso_flip(p.velocity, rng);
                          });
  r.algorithm = Algorithm::qbpso;
  r.config = cfg;
  return r;
}

RunResult run_optimizer(const SwarmConfig& cfg, const FitnessFn& fitness, const RepairFn& repair,
                        const RunOptions& options) {
  return std::visit(
      [&](const auto& c) {
        if constexpr (std::is_same_v<std::decay_t<decltype(c)>, BpsoConfig>)
          return run_bpso(c, fitness, repair, options);
        else
          return run_qbpso(c, fitness, repair, options);
      },
      cfg);
}

}  // namespace ligpso
