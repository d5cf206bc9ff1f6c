#pragma once

// Seeded binary particle swarm optimizers over arbitrary BitString -> real
// fitness functions. Higher fitness is better.
//
// Two algorithms are provided:
//   - BPSO: real-valued velocities squashed through a sigmoid, every bit
//     resampled each generation.
//   - QBPSO: a paired population of per-bit probability vectors updated by a
//     convex combination and sampled with a flipping rule.
//
// Every particle owns an Rng substream derived from the master seed, so a
// run is a pure function of (config, fitness, repair) regardless of how many
// threads evaluate fitness.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ligpso/bitstring.hpp"
#include "ligpso/rng.hpp"

namespace ligpso {

enum class Algorithm { bpso, qbpso };

std::string to_string(Algorithm a);
/// Accepts "bpso" or "qbpso". Throws std::invalid_argument otherwise.
Algorithm parse_algorithm(std::string_view text);

struct BpsoConfig {
  std::size_t population = 40;
  std::size_t dimension = 51;
  double inertia = 1.0;
  double phi1 = 2.0;
  double phi2 = 2.0;
  double v_max = 4.0;
  std::size_t generations = 100;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument on M < 2, N < 1, G < 1, v_max <= 0 or
  /// non-finite weights.
  void validate() const;
};

struct QbpsoConfig {
  std::size_t population = 40;
  std::size_t dimension = 51;
  double inertia = 0.4;
  double c1 = 0.3;
  double c2 = 0.3;
  double alpha = 0.9;
  double beta = 0.1;
  std::size_t generations = 100;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument unless alpha + beta = 1 and
  /// inertia + c1 + c2 = 1 (to 1e-9), every term strictly inside (0, 1),
  /// M >= 2, N >= 1 and G >= 1.
  void validate() const;
};

using SwarmConfig = std::variant<BpsoConfig, QbpsoConfig>;

template <class Velocity>
struct ParticleState {
  BitString position;
  Velocity velocity;
  BitString personal_best;
  double personal_best_fitness = 0.0;
};

using BpsoParticle = ParticleState<std::vector<double>>;
using QbpsoParticle = ParticleState<QuantumVector>;

struct RunResult {
  BitString best_position;
  double best_fitness = 0.0;
  /// Global-best fitness after each generation; size == generations.
  std::vector<double> trace;
  /// Global-best chromosome after each generation; parallel to `trace`.
  std::vector<BitString> best_history;
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
  Algorithm algorithm = Algorithm::qbpso;
  SwarmConfig config;
};

using FitnessFn = std::function<double(const BitString&)>;
using RepairFn = std::function<BitString(const BitString&)>;

/// Snapshot handed to RunOptions::on_generation after each generation's
/// best-so-far update.
struct GenerationView {
  std::size_t generation = 0;  // 0-based
  std::span<const BitString> personal_best;
  std::span<const double> personal_best_fitness;
  const BitString& global_best;
  double global_best_fitness;
};

struct RunOptions {
  /// Worker threads used for fitness evaluation within a generation.
  std::size_t eval_threads = 1;
  std::function<void(const GenerationView&)> on_generation;
};

/// Thrown when the fitness function returns NaN or infinity.
class FitnessError : public std::runtime_error {
 public:
  FitnessError(const std::string& what, BitString chromosome)
      : std::runtime_error(what), chromosome_(std::move(chromosome)) {}
  const BitString& chromosome() const noexcept { return chromosome_; }

 private:
  BitString chromosome_;
};

/// 1 / (1 + e^-v). Throws std::domain_error on non-finite v.
double sigmoid(double v);

/// Velocity update with caller-supplied random coefficients r1, r2 (one per
/// dimension). Result is clamped to [-v_max, v_max].
std::vector<double> bpso_velocity_update(std::span<const double> velocity, const BitString& position,
                                         const BitString& personal_best, const BitString& global_best,
                                         const BpsoConfig& cfg, std::span<const double> r1,
                                         std::span<const double> r2);

/// Draws r1, r2 per dimension (r1 then r2) from `rng`.
std::vector<double> bpso_velocity_update(const BpsoParticle& state, const BitString& global_best,
                                         const BpsoConfig& cfg, Rng& rng);

/// Bit d is 1 iff a fresh uniform draw < sigmoid(velocity[d]).
BitString bpso_position_sample(std::span<const double> velocity, Rng& rng);

/// Bit j is 1 iff a fresh uniform draw < probs[j].
BitString qbpso_flip(const QuantumVector& quantum, Rng& rng);

/// v_new = w * v_old + c1 * (alpha x_lb + beta (1 - x_lb)) + c2 * (alpha x_gb + beta (1 - x_gb)).
QuantumVector qbpso_quantum_update(const QuantumVector& v_old, const BitString& local_best,
                                   const BitString& global_best, const QbpsoConfig& cfg);

RunResult run_bpso(const BpsoConfig& cfg, const FitnessFn& fitness, const RepairFn& repair = {},
                   const RunOptions& options = {});
RunResult run_qbpso(const QbpsoConfig& cfg, const FitnessFn& fitness, const RepairFn& repair = {},
                    const RunOptions& options = {});
RunResult run_optimizer(const SwarmConfig& cfg, const FitnessFn& fitness, const RepairFn& repair = {},
                        const RunOptions& options = {});

}  // namespace ligpso
