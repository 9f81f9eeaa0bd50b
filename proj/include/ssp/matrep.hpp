// Affine matrix representations over Z_p for class-2 groups of G(n,c)-type.
//
// A class-2 group factors as V x| K with V = W + Z abelian normal
// (W = <g_1..g_{q-j}>, Z = <g_{q+1-j}..g_c> the center) and
// K = <g_{c+1}..g_n> abelian.  V is written additively as Z_p^c; g_1..g_c
// map to translations by basis vectors and g_{c+k} maps to the linear action
// of conjugation on V, which adds the shifted commutator words
// u_m = [g_1, g_{c+1+m}] along the first k rows.  Matrices act on row
// vectors (1, x) in block form [[1, v], [0, K]].
#pragma once

#include <cstdint>
#include <string>
#include <unordered_set>
#include <vector>

#include "ssp/invariants.hpp"
#include "ssp/subgroup.hpp"

namespace ssp {

class AffineMatrix {
 public:
  AffineMatrix(int dim, PrimeModulus p)
      : dim_(dim), p_(p),
        m_(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), 0) {
    for (int i = 0; i < dim; ++i) at(i, i) = 1;
  }

  int dim() const { return dim_; }
  std::uint8_t& at(int r, int c) {
    return m_[static_cast<std::size_t>(r) * static_cast<std::size_t>(dim_) +
              static_cast<std::size_t>(c)];
  }
  std::uint8_t at(int r, int c) const {
    return m_[static_cast<std::size_t>(r) * static_cast<std::size_t>(dim_) +
              static_cast<std::size_t>(c)];
  }

  AffineMatrix multiply(const AffineMatrix& o) const {
    AffineMatrix out(dim_, p_);
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c) {
        int acc = 0;
        for (int k = 0; k < dim_; ++k) acc += at(r, k) * o.at(k, c);
        out.at(r, c) = static_cast<std::uint8_t>(acc % p_.value());
      }
    return out;
  }

  AffineMatrix pow(int e) const {
    AffineMatrix acc(dim_, p_);
    AffineMatrix base = *this;
    while (e > 0) {
      if (e & 1) acc = acc.multiply(base);
      base = base.multiply(base);
      e >>= 1;
    }
    return acc;
  }

  // Gauss-Jordan inverse mod p.
  AffineMatrix inverse() const {
    AffineMatrix a = *this;
    AffineMatrix inv(dim_, p_);
    for (int col = 0; col < dim_; ++col) {
      int pivot = col;
      while (pivot < dim_ && a.at(pivot, col) == 0) ++pivot;
      if (pivot == dim_) throw validation_error("matrix is singular");
      if (pivot != col)
        for (int c = 0; c < dim_; ++c) {
          std::swap(a.at(pivot, c), a.at(col, c));
          std::swap(inv.at(pivot, c), inv.at(col, c));
        }
      const int scale = p_.inv(a.at(col, col));
      for (int c = 0; c < dim_; ++c) {
        a.at(col, c) = static_cast<std::uint8_t>(p_.mul(a.at(col, c), scale));
        inv.at(col, c) =
            static_cast<std::uint8_t>(p_.mul(inv.at(col, c), scale));
      }
      for (int r = 0; r < dim_; ++r) {
        if (r == col || a.at(r, col) == 0) continue;
        const int f = a.at(r, col);
        for (int c = 0; c < dim_; ++c) {
          a.at(r, c) = static_cast<std::uint8_t>(
              p_.sub(a.at(r, c), p_.mul(f, a.at(col, c))));
          inv.at(r, c) = static_cast<std::uint8_t>(
              p_.sub(inv.at(r, c), p_.mul(f, inv.at(col, c))));
        }
      }
    }
    return inv;
  }

  bool is_identity() const {
    for (int r = 0; r < dim_; ++r)
      for (int c = 0; c < dim_; ++c)
        if (at(r, c) != (r == c ? 1 : 0)) return false;
    return true;
  }

  std::string key() const { return std::string(m_.begin(), m_.end()); }

  friend bool operator==(const AffineMatrix& a, const AffineMatrix& b) {
    return a.dim_ == b.dim_ && a.m_ == b.m_;
  }

 private:
  int dim_;
  PrimeModulus p_;
  std::vector<std::uint8_t> m_;
};

struct AffineRep {
  int dim = 0;                        // c + 1
  std::vector<AffineMatrix> gens;     // index g-1 for generator g
};

// Build the representation; rejects class-3 input.  `class_hint` skips the
// series computation when the caller already classified the group.
inline AffineRep build_affine_rep(const PcPresentation& P,
                                  int class_hint = -1) {
  const EssentialChain& chain = P.chain();
  const int cls = class_hint >= 0
                      ? class_hint
                      : (chain.is_abelian() ? 1 : nilpotency_class(P));
  if (cls > 2)
    throw validation_error(
        "affine representation is defined for class <= 2 groups; input has "
        "class " + std::to_string(cls));
  const int n = P.n();
  const int c = chain.cutoff();
  auto cp = cutoff_params(n, c);
  if (!cp) throw validation_error("cut-off parameters are invalid");

  const int d = c + 1;  // affine coordinate + V basis g_1..g_c
  AffineRep rep;
  rep.dim = d;
  for (int i = 1; i <= c; ++i) {
    AffineMatrix t(d, P.prime());
    t.at(0, i) = 1;  // translation by the i-th basis vector
    rep.gens.push_back(t);
  }
  for (int k = 1; k <= n - c; ++k) {
    AffineMatrix m(d, P.prime());
    // row i (1 <= i <= k) gains u_{k-i} shifted by f^{i-1}
    for (int i = 1; i <= k; ++i) {
      const int mth = k - i;  // index of u_m, 0 <= m <= q-j-1
      if (c + 1 + mth > n) continue;
      const ExponentVector& u = P.comm(1, c + 1 + mth);
      for (int s = 1; s <= n; ++s) {
        if (u.exp_of(s) == 0) continue;
        const int col = s + (i - 1);
        if (col > c)
          throw validation_error("commutator support leaves the V block");
        m.at(i, col) =
            static_cast<std::uint8_t>(P.prime().add(m.at(i, col), u.exp_of(s)));
      }
    }
    rep.gens.push_back(m);
  }
  return rep;
}

// Image of a normal form under the representation.
inline AffineMatrix rep_image(const AffineRep& rep, const PrimeModulus& p,
                              const ExponentVector& x) {
  AffineMatrix m(rep.dim, p);
  for (std::size_t g = 0; g < rep.gens.size(); ++g)
    if (int e = x[g]; e != 0) m = m.multiply(rep.gens[g].pow(e));
  return m;
}

// (a) every defining relation maps to a matrix identity; (b) faithfulness by
// exhaustive image enumeration within the threshold, or by the triangular
// action certificate beyond it.
inline bool verify_representation(const PcPresentation& P,
                                  const AffineRep& rep,
                                  std::size_t faithful_limit = 1000000) {
  const int n = P.n();
  if (rep.gens.size() != static_cast<std::size_t>(n)) return false;
  for (int i = 1; i <= n; ++i)
    if (!rep.gens[static_cast<std::size_t>(i - 1)].pow(P.p()).is_identity())
      return false;
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const AffineMatrix& a = rep.gens[static_cast<std::size_t>(i - 1)];
      const AffineMatrix& b = rep.gens[static_cast<std::size_t>(j - 1)];
      AffineMatrix comm =
          a.inverse().multiply(b.inverse()).multiply(a).multiply(b);
      if (comm != rep_image(rep, P.prime(), P.comm(i, j))) return false;
    }

  if (P.order() <= faithful_limit) {
    // exhaustive: all p^n products of generator powers in normal-form order,
    // sharing prefix products across the depth-first walk
    std::unordered_set<std::string> seen;
    seen.reserve(P.order());
    auto rec = [&](auto&& self, int g, AffineMatrix m) -> void {
      if (g > n) {
        seen.insert(m.key());
        return;
      }
      for (int e = 0;; ++e) {
        self(self, g + 1, m);
        if (e == P.p() - 1) break;
        m = m.multiply(rep.gens[static_cast<std::size_t>(g - 1)]);
      }
    };
    rec(rec, 1, AffineMatrix(rep.dim, P.prime()));
    return seen.size() == P.order();
  }

  // Triangular action certificate.  Generators 1..c must be the exact basis
  // translations, so the translation row recovers e_1..e_c.  The K-block of
  // g_{c+k} is I + N_k where each N_k maps W into the central block and
  // kills it, hence N_a N_b = 0 and the K-image of an exponent vector is
  // I + sum e_k N_k; injectivity reduces to independence of the N_k.
  const EssentialChain& chain = P.chain();
  const int c = chain.is_abelian() ? n : chain.cutoff();
  const int d = rep.dim;
  for (int i = 1; i <= c; ++i) {
    AffineMatrix expect(d, P.prime());
    expect.at(0, i) = 1;
    if (!(rep.gens[static_cast<std::size_t>(i - 1)] == expect)) return false;
  }
  auto is_zero = [&](const AffineMatrix& m) {
    for (int r = 0; r < d; ++r)
      for (int col = 0; col < d; ++col)
        if (m.at(r, col) != 0) return false;
    return true;
  };
  std::vector<AffineMatrix> nilparts;
  for (int k = 1; k <= n - c; ++k) {
    AffineMatrix nk = rep.gens[static_cast<std::size_t>(c + k - 1)];
    for (int r = 0; r < d; ++r)
      nk.at(r, r) = static_cast<std::uint8_t>(P.prime().sub(nk.at(r, r), 1));
    if (is_zero(nk)) return false;  // trivial action cannot separate g_{c+k}
    nilparts.push_back(nk);
  }
  for (const auto& a : nilparts)
    for (const auto& b : nilparts)
      if (!is_zero(a.multiply(b))) return false;
  std::vector<ExponentVector> flat;
  for (const auto& nk : nilparts) {
    ExponentVector v(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
    for (int r = 0; r < d; ++r)
      for (int col = 0; col < d; ++col)
        v[static_cast<std::size_t>(r * d + col)] = nk.at(r, col);
    flat.push_back(v);
  }
  if (!flat.empty() &&
      zp_rank(flat, P.prime()) != static_cast<int>(flat.size()))
    return false;
  return true;
}

}  // namespace ssp
