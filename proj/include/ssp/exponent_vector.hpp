// Normal-form elements g_1^{e_1} ... g_n^{e_n} as vectors of residues.
#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "ssp/zp.hpp"

namespace ssp {

// Exponent vector of a normal-form word.  Position i (0-based) holds the
// exponent of generator g_{i+1}; entries are residues in {0, ..., p-1}.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t n) : e_(n, 0) {}
  ExponentVector(std::initializer_list<int> init) {
    e_.reserve(init.size());
    for (int v : init) e_.push_back(static_cast<std::uint8_t>(v));
  }

  std::size_t size() const { return e_.size(); }
  std::uint8_t operator[](std::size_t i) const { return e_[i]; }
  std::uint8_t& operator[](std::size_t i) { return e_[i]; }

  // Exponent of generator g (1-based).
  int exp_of(int g) const { return e_[static_cast<std::size_t>(g - 1)]; }
  void set_exp(int g, int v) {
    e_[static_cast<std::size_t>(g - 1)] = static_cast<std::uint8_t>(v);
  }

  bool is_identity() const {
    for (auto v : e_)
      if (v != 0) return false;
    return true;
  }

  // Smallest 1-based generator index with nonzero exponent, or 0 if identity.
  int leading_generator() const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] != 0) return static_cast<int>(i + 1);
    return 0;
  }

  // Largest 1-based generator index with nonzero exponent, or 0 if identity.
  int trailing_generator() const {
    for (std::size_t i = e_.size(); i > 0; --i)
      if (e_[i - 1] != 0) return static_cast<int>(i);
    return 0;
  }

  void validate(const PrimeModulus& p, std::size_t n) const {
    if (e_.size() != n)
      throw validation_error("exponent vector has length " +
                             std::to_string(e_.size()) + ", expected " +
                             std::to_string(n));
    for (auto v : e_)
      if (v >= p.value())
        throw validation_error("exponent " + std::to_string(int(v)) +
                               " out of range mod " +
                               std::to_string(p.value()));
  }

  // Mixed-radix index in [0, p^n); used by exhaustive checks.
  std::size_t to_index(int p) const {
    std::size_t idx = 0;
    for (std::size_t i = e_.size(); i > 0; --i)
      idx = idx * static_cast<std::size_t>(p) + e_[i - 1];
    return idx;
  }

  static ExponentVector from_index(std::size_t idx, int p, std::size_t n) {
    ExponentVector x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x.e_[i] = static_cast<std::uint8_t>(idx % static_cast<std::size_t>(p));
      idx /= static_cast<std::size_t>(p);
    }
    return x;
  }

  static ExponentVector generator(int g, std::size_t n) {
    ExponentVector x(n);
    x.set_exp(g, 1);
    return x;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(int(e_[i]));
    }
    return s + ")";
  }

  const std::vector<std::uint8_t>& data() const { return e_; }

  friend bool operator==(const ExponentVector&, const ExponentVector&) =
      default;
  friend auto operator<=>(const ExponentVector&, const ExponentVector&) =
      default;

 private:
  std::vector<std::uint8_t> e_;
};

}  // namespace ssp
