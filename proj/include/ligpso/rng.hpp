#pragma once

#include <cstdint>
#include <random>

namespace ligpso {

/// SplitMix64 step. Used only to derive substream seeds from a master seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Portable random stream: std::mt19937_64 (output sequence fixed by the
/// C++ standard) with a hand-rolled uniform mapping, so draws are
/// bit-identical across compilers and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Substream `stream` of `master_seed`. Streams are independent of each
  /// other and of how many draws any other stream consumes.
  static Rng substream(std::uint64_t master_seed, std::uint64_t stream) {
    return Rng(splitmix64(splitmix64(master_seed) + 0x9E3779B97F4A7C15ULL * (stream + 1)));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ligpso
