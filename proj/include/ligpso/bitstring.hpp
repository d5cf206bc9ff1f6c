#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ligpso {

/// Fixed-length string of bits; a candidate chromosome.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t size, bool value = false) : bits_(size, value ? 1 : 0) {}

  /// Parses a string of '0'/'1' characters. Throws std::invalid_argument otherwise.
  static BitString from_string(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  bool operator[](std::size_t i) const noexcept { return bits_[i] != 0; }
  bool at(std::size_t i) const { return bits_.at(i) != 0; }
  void set(std::size_t i, bool value) { bits_.at(i) = value ? 1 : 0; }

  /// Number of 1 bits.
  std::size_t count() const noexcept;

  /// Reads `width` bits starting at `offset`, most significant bit first.
  unsigned field(std::size_t offset, std::size_t width) const;
  void set_field(std::size_t offset, std::size_t width, unsigned value);

  std::string to_string() const;
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString& a, const BitString& b) { return a.bits_ <=> b.bits_; }

 private:
  std::vector<std::uint8_t> bits_;
};

/// Per-bit probability vector. Every component stays in [0, 1].
class QuantumVector {
 public:
  QuantumVector() = default;
  QuantumVector(std::size_t size, double value);
  /// Throws std::domain_error if any component lies outside [0, 1] or is NaN.
  explicit QuantumVector(std::vector<double> probs);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const noexcept { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

  friend bool operator==(const QuantumVector&, const QuantumVector&) = default;

 private:
  std::vector<double> probs_;
};

}  // namespace ligpso
