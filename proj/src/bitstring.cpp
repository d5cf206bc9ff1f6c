#include "ligpso/bitstring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ligpso {

BitString BitString::from_string(std::string_view text) {
  BitString out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') {
      throw std::invalid_argument("bit string contains '" + std::string(1, text[i]) + "' at position " +
                                  std::to_string(i));
    }
    out.bits_[i] = text[i] == '1' ? 1 : 0;
  }
  return out;
}

std::size_t BitString::count() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

unsigned BitString::field(std::size_t offset, std::size_t width) const {
  if (offset + width > bits_.size()) throw std::out_of_range("bit field past end of string");
  unsigned value = 0;
  for (std::size_t i = 0; i < width; ++i) value = (value << 1) | bits_[offset + i];
  return value;
}

void BitString::set_field(std::size_t offset, std::size_t width, unsigned value) {
  if (offset + width > bits_.size()) throw std::out_of_range("bit field past end of string");
  for (std::size_t i = 0; i < width; ++i) bits_[offset + i] = (value >> (width - 1 - i)) & 1U;
}

std::string BitString::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) s[i] = '1';
  return s;
}

QuantumVector::QuantumVector(std::size_t size, double value) : QuantumVector(std::vector<double>(size, value)) {}

QuantumVector::QuantumVector(std::vector<double> probs) : probs_(std::move(probs)) {
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!(probs_[i] >= 0.0 && probs_[i] <= 1.0)) {
      throw std::domain_error("corrupted quantum state: component " + std::to_string(i) + " = " +
                              std::to_string(probs_[i]) + " outside [0,1]");
    }
  }
}

}  // namespace ligpso
