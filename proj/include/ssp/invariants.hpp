// Structural invariants of consistent SSP groups: cut-off arithmetic, center
// and triple decomposition, shifted-commutator independence, simple-triple
// fixpoints, class-2 presentation shape, and the lift shape for class-2
// prefixes.  Violations are reported as data, never thrown: surfacing a
// counterexample is the point of these checks.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ssp/consistency.hpp"
#include "ssp/subgroup.hpp"

namespace ssp {

inline int q_of(int n) { return n / 3; }
inline int r_of(int n) { return n % 3; }

// The arithmetic n = 3q + r, c = 2q + r + j with 0 <= j <= q.
struct CutoffParams {
  int n = 0;
  int q = 0;
  int r = 0;
  int j = 0;
  int c = 0;
};

// Solve c = c(n, j) for j; nullopt when no j in [0, q(n)] works, which for a
// consistent chain would contradict the cut-off theorem.
inline std::optional<CutoffParams> cutoff_params(int n, int c) {
  CutoffParams cp;
  cp.n = n;
  cp.q = q_of(n);
  cp.r = r_of(n);
  cp.c = c;
  cp.j = c - 2 * cp.q - cp.r;
  if (cp.j < 0 || cp.j > cp.q) return std::nullopt;
  return cp;
}

inline std::optional<CutoffParams> cutoff_params(const EssentialChain& chain) {
  return cutoff_params(chain.n(), chain.cutoff());
}

// Rank of a set of exponent vectors over Z_p.
inline int zp_rank(std::vector<ExponentVector> vecs, const PrimeModulus& p) {
  int rank = 0;
  const std::size_t dim = vecs.empty() ? 0 : vecs[0].size();
  std::size_t col = 0;
  for (; col < dim && rank < static_cast<int>(vecs.size()); ++col) {
    std::size_t pivot = static_cast<std::size_t>(rank);
    while (pivot < vecs.size() && vecs[pivot][col] == 0) ++pivot;
    if (pivot == vecs.size()) continue;
    std::swap(vecs[static_cast<std::size_t>(rank)], vecs[pivot]);
    const int inv = p.inv(vecs[static_cast<std::size_t>(rank)][col]);
    for (std::size_t r = 0; r < vecs.size(); ++r) {
      if (r == static_cast<std::size_t>(rank)) continue;
      int factor = p.mul(vecs[r][col], inv);
      if (factor == 0) continue;
      for (std::size_t cidx = 0; cidx < dim; ++cidx)
        vecs[r][cidx] = static_cast<std::uint8_t>(p.sub(
            vecs[r][cidx], p.mul(factor, vecs[static_cast<std::size_t>(rank)][cidx])));
    }
    ++rank;
  }
  return rank;
}

// Z(G) = <g_{q+1-j}, ..., g_c> exactly, with 3*rank >= n.  Abelian groups
// must have central everything.
inline bool check_center_structure(const PcPresentation& P,
                                   std::size_t brute_force_limit = 1000000) {
  InducedSequence z = center(P, brute_force_limit);
  const EssentialChain& chain = P.chain();
  if (chain.is_abelian())
    return z.same_subgroup(InducedSequence::whole_group(P));
  auto cp = cutoff_params(chain);
  if (!cp) return false;
  InducedSequence expected =
      InducedSequence::generator_range(P, cp->q + 1 - cp->j, cp->c);
  return z.same_subgroup(expected) &&
         3 * static_cast<int>(z.rank()) >= P.n();
}

// G = <g_1..g_{q-j}> * Z * <g_{c+1}..g_n> with abelian factors whose index
// ranges partition 1..n.
inline bool check_triple_decomposition(const PcPresentation& P) {
  const EssentialChain& chain = P.chain();
  int left_end, z_begin, z_end;
  if (chain.is_abelian()) {
    left_end = 0;
    z_begin = 1;
    z_end = P.n();
  } else {
    auto cp = cutoff_params(chain);
    if (!cp) return false;
    left_end = cp->q - cp->j;
    z_begin = cp->q + 1 - cp->j;
    z_end = cp->c;
  }
  if (left_end < 0 || z_begin != left_end + 1 || z_end < z_begin - 1 ||
      z_end > P.n())
    return false;
  auto range_abelian = [&](int a, int b) {
    for (int i = a; i < b; ++i)
      for (int j = i + 1; j <= b; ++j)
        if (!P.comm_trivial(i, j)) return false;
    return true;
  };
  // rank sum left + center + right = n holds by construction of the ranges;
  // the factors must each be abelian.
  return range_abelian(1, left_end) && range_abelian(z_begin, z_end) &&
         range_abelian(z_end + 1, P.n());
}

// [g_1, g_{c+1}] is nontrivial with support inside
// [q+1-j, q+1+r+2j].
inline bool check_commutator_membership(const PcPresentation& P) {
  const EssentialChain& chain = P.chain();
  if (chain.is_abelian()) return true;
  auto cp = cutoff_params(chain);
  if (!cp) return false;
  const auto& row = chain.row(cp->c + 1);
  bool nontrivial = false;
  for (std::size_t t = 0; t < row.size(); ++t) {
    if (row[t] == 0) continue;
    nontrivial = true;
    const int gen = static_cast<int>(t) + 2;
    if (gen < cp->q + 1 - cp->j || gen > cp->q + 1 + cp->r + 2 * cp->j)
      return false;
  }
  return nontrivial;
}

// The shifted commutators f^k([g_1, g_{c+1}]), 0 <= k <= q-j-1, are linearly
// independent; they all lie in the abelian center, so Z_p-independence is
// well-defined.
inline bool check_independence(const PcPresentation& P) {
  const EssentialChain& chain = P.chain();
  if (chain.is_abelian()) return true;
  auto cp = cutoff_params(chain);
  if (!cp) return false;
  ExponentVector w = P.comm(1, cp->c + 1);
  std::vector<ExponentVector> shifted;
  for (int k = 0; k < cp->q - cp->j; ++k) {
    shifted.push_back(w);
    if (k + 1 < cp->q - cp->j) w = P.apply_f(w);
  }
  if (shifted.empty()) return true;
  return zp_rank(shifted, P.prime()) == static_cast<int>(shifted.size());
}

// Largest subset of H = <g_1..g_{n-1}> closed under x -> f(x) and x -> x^g;
// parametrized over the f-image so tests can probe non-examples.
// f_image(index) returns the image's index, or SIZE_MAX when the image
// leaves H.
template <typename FImage>
std::size_t invariant_subset_size(const PcPresentation& P, FImage f_image,
                                  std::size_t brute_force_limit = 1000000) {
  if (P.order() > brute_force_limit)
    throw capacity_error("simple-triple fixpoint: order exceeds threshold");
  const std::size_t h_order =
      P.order() / static_cast<std::size_t>(P.p());  // |H| = p^{n-1}
  const std::size_t n = static_cast<std::size_t>(P.n());

  // H = normal forms with trivial top exponent; index them by their full
  // group index, which enumerates H first.
  std::vector<std::size_t> conj(h_order * n);
  std::vector<std::size_t> fimg(h_order);
  for (std::size_t i = 0; i < h_order; ++i) {
    ExponentVector x = ExponentVector::from_index(i, P.p(), n);
    fimg[i] = f_image(i);
    for (int g = 1; g <= P.n(); ++g) {
      ExponentVector xg =
          P.conjugate(x, ExponentVector::generator(g, n));
      std::size_t at = xg.to_index(P.p());
      conj[i * n + static_cast<std::size_t>(g - 1)] =
          at < h_order ? at : SIZE_MAX;  // H is normal, so this stays in H
    }
  }
  std::vector<char> in(h_order, 1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < h_order; ++i) {
      if (!in[i]) continue;
      bool keep = fimg[i] != SIZE_MAX && fimg[i] < h_order && in[fimg[i]];
      for (std::size_t g = 0; keep && g < n; ++g) {
        std::size_t c = conj[i * n + g];
        keep = c != SIZE_MAX && in[c];
      }
      if (!keep) {
        in[i] = 0;
        changed = true;
      }
    }
  }
  std::size_t count = 0;
  for (char v : in) count += static_cast<std::size_t>(v);
  return count;
}

// True iff the only f-invariant subgroup of H normal in G is trivial.
inline bool verify_simple_triple(const PcPresentation& P,
                                 std::size_t brute_force_limit = 1000000) {
  const std::size_t n = static_cast<std::size_t>(P.n());
  auto shift = [&](std::size_t i) -> std::size_t {
    ExponentVector x = ExponentVector::from_index(i, P.p(), n);
    if (x.exp_of(P.n()) != 0) return SIZE_MAX;
    return P.apply_f(x).to_index(P.p());
  };
  return invariant_subset_size(P, shift, brute_force_limit) == 1;
}

// Presentation shape of class-2 groups: every essential relation
// [g_1, g_{c+1+k}] is supported in [q+1-j, q+1+r+2j+k] and the first one is
// nontrivial.
inline bool check_class2_presentation_shape(const PcPresentation& P) {
  const EssentialChain& chain = P.chain();
  if (chain.is_abelian()) return true;
  auto cp = cutoff_params(chain);
  if (!cp) return false;
  for (int k = 0; cp->c + 1 + k <= P.n(); ++k) {
    const auto& row = chain.row(cp->c + 1 + k);
    for (std::size_t t = 0; t < row.size(); ++t) {
      if (row[t] == 0) continue;
      const int gen = static_cast<int>(t) + 2;
      if (gen < cp->q + 1 - cp->j || gen > cp->q + 1 + cp->r + 2 * cp->j + k)
        return false;
    }
  }
  return check_commutator_membership(P);
}

// Lift shape for a chain whose n-generator prefix has class <= 2: the top
// relation is supported in [q(n)+1-j, c(n,j)+1], and gamma_3 of the full
// group is generated by [g_1, g_{n+1}, g_1] and [g_1, g_{n+1}, g_{n+1}]
// (hence the class is at most 3).  `prefix_class_hint` skips recomputing the
// prefix class when the caller already knows it.
inline bool check_lift_shape(const PcPresentation& P,
                             int prefix_class_hint = -1) {
  const EssentialChain& chain = P.chain();
  const int ntop = P.n();
  const EssentialChain prefix = chain.prefix(ntop - 1);
  const int prefix_class =
      prefix_class_hint >= 0
          ? prefix_class_hint
          : (prefix.is_abelian()
                 ? 1
                 : nilpotency_class(PcPresentation::compile(prefix)));
  if (prefix_class > 2)
    throw validation_error("check_lift_shape: prefix has class > 2");

  const int n = prefix.n();
  const int c = prefix.cutoff();
  auto cp = cutoff_params(n, c);
  if (!cp) return false;
  const auto& top = chain.row(ntop);
  for (std::size_t t = 0; t < top.size(); ++t) {
    if (top[t] == 0) continue;
    const int gen = static_cast<int>(t) + 2;
    if (gen < cp->q + 1 - cp->j || gen > cp->c + 1) return false;
  }

  const std::size_t dim = static_cast<std::size_t>(ntop);
  ExponentVector g1 = ExponentVector::generator(1, dim);
  ExponentVector gtop = ExponentVector::generator(ntop, dim);
  ExponentVector w = P.commutator(g1, gtop);
  std::vector<ExponentVector> gens{P.commutator(w, g1), P.commutator(w, gtop)};
  InducedSequence expected = InducedSequence::closure(P, gens, /*normal=*/true);
  auto series = lower_central_series(P);
  if (series.size() < 3) return expected.is_trivial();
  if (series.size() > 4) return false;  // class > 3
  return expected.same_subgroup(series[2]);
}

// The Heisenberg-power chain P_k on n = 3k generators:
// [g_1, g_{2k+1}] = g_{k+1}, all other essential relations trivial.
inline EssentialChain build_heisenberg_power(int p, int k) {
  if (k < 1) throw validation_error("heisenberg power needs k >= 1");
  const int n = 3 * k;
  EssentialChain chain(PrimeModulus(p), n);
  std::vector<std::vector<std::uint8_t>> rows;
  for (int j = 3; j <= n; ++j) {
    std::vector<std::uint8_t> row(static_cast<std::size_t>(j - 2), 0);
    if (j == 2 * k + 1) row[static_cast<std::size_t>(k - 1)] = 1;
    rows.push_back(std::move(row));
  }
  return EssentialChain(PrimeModulus(p), n, std::move(rows));
}

// Free-module property: for nontrivial w supported on 1..s, 1 <= t <= n-s
// and (u, v) != (0, 0), the vector u*w + v*shift^t(w) is nonzero.  Property
// tested by random sampling; returns false on any counterexample.
inline bool f_equation_property(int p, int n, std::size_t trials,
                                std::uint64_t seed = 20240801) {
  PrimeModulus prime(p);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(0, p - 1);
  std::uniform_int_distribution<int> support(1, n - 1);
  std::uniform_int_distribution<int> nonzero_coord(1, p - 1);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const int s = support(rng);
    std::vector<int> w(static_cast<std::size_t>(n), 0);
    bool nonzero = false;
    for (int i = 0; i < s; ++i) {
      w[static_cast<std::size_t>(i)] = coord(rng);
      nonzero |= w[static_cast<std::size_t>(i)] != 0;
    }
    if (!nonzero)
      w[rng() % static_cast<std::uint64_t>(s)] = nonzero_coord(rng);
    std::uniform_int_distribution<int> tdist(1, n - s);
    const int t = tdist(rng);
    int u = coord(rng), v = coord(rng);
    if (u == 0 && v == 0) {
      if (rng() & 1)
        u = nonzero_coord(rng);
      else
        v = nonzero_coord(rng);
    }
    bool all_zero = true;
    for (int i = 0; i < n && all_zero; ++i) {
      int val = prime.mul(u, w[static_cast<std::size_t>(i)]);
      if (i - t >= 0)
        val = prime.add(val, prime.mul(v, w[static_cast<std::size_t>(i - t)]));
      if (val != 0) all_zero = false;
    }
    if (all_zero) return false;
  }
  return true;
}

// Aggregated per-group analysis.
struct StructureReport {
  int p = 0;
  int n = 0;
  bool consistent = false;
  int cutoff = 0;
  bool abelian = false;
  std::optional<CutoffParams> params;
  int nilpotency_class = 0;
  bool metabelian = false;
  std::vector<ExponentVector> center_sequence;
  std::vector<std::vector<ExponentVector>> decomposition;  // three factors
  std::optional<bool> center_matches;   // within brute-force threshold only
  bool triple_decomposition_ok = false;
  bool commutator_membership_ok = false;
  bool independence_ok = false;
  std::optional<bool> simple_triple;    // within brute-force threshold only
  std::optional<bool> class2_shape_ok;  // class-2 groups only
  std::optional<bool> lift_shape_ok;    // class <= 2 prefix only
  std::vector<std::string> violations;
};

struct Thresholds {
  std::size_t brute_force = 1000000;
};

// Run every applicable check on one chain.  Failed theorem checks land in
// `violations` so a counterexample would surface in the report instead of
// aborting the sweep.
inline StructureReport analyze_structure(const EssentialChain& chain,
                                         const Thresholds& th = {},
                                         ConsistencyCache* cache = nullptr) {
  StructureReport rep;
  rep.p = chain.p();
  rep.n = chain.n();
  rep.consistent = is_consistent(chain, cache);
  rep.cutoff = chain.cutoff();
  rep.abelian = chain.is_abelian();
  rep.params = cutoff_params(chain.n(), rep.cutoff);
  if (!rep.params)
    rep.violations.push_back("cut-off " + std::to_string(rep.cutoff) +
                             " admits no j with c = 2q+r+j, 0 <= j <= q");
  if (!rep.consistent) return rep;

  PcPresentation P = PcPresentation::compile(chain);
  rep.nilpotency_class = rep.abelian ? 1 : nilpotency_class(P);
  rep.metabelian = derived_subgroup(P).is_abelian();
  if (!rep.metabelian) rep.violations.push_back("derived subgroup is not abelian");

  if (rep.params) {
    const CutoffParams& cp = *rep.params;
    const int left_end = rep.abelian ? 0 : cp.q - cp.j;
    const int z_begin = rep.abelian ? 1 : cp.q + 1 - cp.j;
    const int z_end = rep.abelian ? rep.n : cp.c;
    auto range_vectors = [&](int a, int b) {
      std::vector<ExponentVector> out;
      for (int g = a; g <= b; ++g)
        out.push_back(
            ExponentVector::generator(g, static_cast<std::size_t>(rep.n)));
      return out;
    };
    rep.decomposition = {range_vectors(1, left_end),
                         range_vectors(z_begin, z_end),
                         range_vectors(z_end + 1, rep.n)};
  }

  if (P.order() <= th.brute_force) {
    rep.center_sequence = center(P, th.brute_force).elements();
    rep.center_matches = check_center_structure(P, th.brute_force);
    if (!*rep.center_matches)
      rep.violations.push_back("center differs from <g_{q+1-j}..g_c>");
    rep.simple_triple = verify_simple_triple(P, th.brute_force);
    if (!*rep.simple_triple)
      rep.violations.push_back("nontrivial f-invariant normal subgroup found");
  }

  rep.triple_decomposition_ok = check_triple_decomposition(P);
  if (!rep.triple_decomposition_ok)
    rep.violations.push_back("triple decomposition check failed");
  rep.commutator_membership_ok = check_commutator_membership(P);
  if (!rep.commutator_membership_ok)
    rep.violations.push_back("[g_1, g_{c+1}] support window violated");
  rep.independence_ok = check_independence(P);
  if (!rep.independence_ok)
    rep.violations.push_back("shifted commutators are dependent");

  if (rep.nilpotency_class <= 2) {
    rep.class2_shape_ok = check_class2_presentation_shape(P);
    if (!*rep.class2_shape_ok)
      rep.violations.push_back("class-2 presentation shape violated");
  }
  if (rep.n >= 3) {
    PcPresentation H = PcPresentation::compile(chain.prefix(rep.n - 1));
    if (chain.prefix(rep.n - 1).is_abelian() || nilpotency_class(H) <= 2) {
      rep.lift_shape_ok = check_lift_shape(P);
      if (!*rep.lift_shape_ok)
        rep.violations.push_back("lift shape (class <= 3 window) violated");
    }
  }
  return rep;
}

}  // namespace ssp
