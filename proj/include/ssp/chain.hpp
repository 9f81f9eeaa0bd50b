// Essential relation chains: the compact canonical encoding of an SSP
// presentation.  The chain stores, for j = 3..n, the coefficient vector of
// [g_1, g_j] on g_2 .. g_{j-1}; every other relation of the presentation is
// forced by the shift rule t[i][j][k] = t[i-1][j-1][k-1].
#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "ssp/zp.hpp"

namespace ssp {

class EssentialChain {
 public:
  // The n = 2 chain (no essential relations, elementary abelian p^2).
  EssentialChain(PrimeModulus p, int n) : p_(p), n_(n) {
    if (n < 2) throw validation_error("chain needs n >= 2");
    rows_.resize(static_cast<std::size_t>(n - 2));
    for (int j = 3; j <= n; ++j)
      rows_[static_cast<std::size_t>(j - 3)].assign(
          static_cast<std::size_t>(j - 2), 0);
  }

  EssentialChain(PrimeModulus p, int n,
                 std::vector<std::vector<std::uint8_t>> rows)
      : p_(p), n_(n), rows_(std::move(rows)) {
    if (n < 2) throw validation_error("chain needs n >= 2");
    if (rows_.size() != static_cast<std::size_t>(n - 2))
      throw validation_error("chain has " + std::to_string(rows_.size()) +
                             " rows, expected " + std::to_string(n - 2));
    for (int j = 3; j <= n; ++j) {
      const auto& row = rows_[static_cast<std::size_t>(j - 3)];
      if (row.size() != static_cast<std::size_t>(j - 2))
        throw validation_error("chain row for [g_1,g_" + std::to_string(j) +
                               "] has length " + std::to_string(row.size()) +
                               ", expected " + std::to_string(j - 2));
      for (auto v : row)
        if (v >= p_.value())
          throw validation_error("chain entry " + std::to_string(int(v)) +
                                 " out of range mod " +
                                 std::to_string(p_.value()));
    }
  }

  const PrimeModulus& prime() const { return p_; }
  int p() const { return p_.value(); }
  int n() const { return n_; }

  // Coefficient vector of [g_1, g_j] on g_2..g_{j-1}, for 3 <= j <= n.
  const std::vector<std::uint8_t>& row(int j) const {
    return rows_[static_cast<std::size_t>(j - 3)];
  }

  bool row_trivial(int j) const {
    for (auto v : row(j))
      if (v != 0) return false;
    return true;
  }

  bool is_abelian() const {
    for (int j = 3; j <= n_; ++j)
      if (!row_trivial(j)) return false;
    return true;
  }

  // Cut-off point: the largest s >= 2 such that [g_1, g_j] is trivial for
  // all j <= s.  Equals n exactly when the chain is abelian.
  int cutoff() const {
    for (int j = 3; j <= n_; ++j)
      if (!row_trivial(j)) return j - 1;
    return n_;
  }

  EssentialChain prefix(int m) const {
    if (m < 2 || m > n_) throw validation_error("prefix length out of range");
    return EssentialChain(
        p_, m,
        std::vector<std::vector<std::uint8_t>>(
            rows_.begin(), rows_.begin() + static_cast<std::ptrdiff_t>(m - 2)));
  }

  // Adjoin g_{n+1} with [g_1, g_{n+1}] given by `a` (length n - 1).
  EssentialChain extended(const std::vector<std::uint8_t>& a) const {
    if (a.size() != static_cast<std::size_t>(n_ - 1))
      throw validation_error("extension vector has length " +
                             std::to_string(a.size()) + ", expected " +
                             std::to_string(n_ - 1));
    auto rows = rows_;
    rows.push_back(a);
    return EssentialChain(p_, n_ + 1, rows);
  }

  // Flat byte encoding, usable as a cache key.
  std::string key() const {
    std::string k;
    k.push_back(static_cast<char>(p_.value()));
    k.push_back(static_cast<char>(n_));
    for (const auto& row : rows_)
      k.append(row.begin(), row.end());
    return k;
  }

  friend bool operator==(const EssentialChain& a, const EssentialChain& b) {
    return a.p_ == b.p_ && a.n_ == b.n_ && a.rows_ == b.rows_;
  }

  // Lexicographic by (n, rows); fixes the canonical enumeration order.
  friend std::strong_ordering operator<=>(const EssentialChain& a,
                                          const EssentialChain& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.rows_ <=> b.rows_;
  }

 private:
  PrimeModulus p_;
  int n_;
  std::vector<std::vector<std::uint8_t>> rows_;
};

}  // namespace ssp
