// Compiled power-commutator presentations and normal-form arithmetic.
//
// A presentation holds the full relation table [g_i, g_j] = c[i][j] for
// 1 <= i < j <= n together with the implicit power relations g_i^p = e.
// Products are computed by collection from the left: the leftmost
// out-of-order adjacent pair g_j^a g_i^b (j > i) is rewritten through
// g_j g_i -> g_i g_j [g_j, g_i], where [g_j, g_i] is the inverse word of
// c[i][j].  Power relations have trivial tails, so exponents are reduced
// mod p as soon as syllables merge.
//
// Presentations are immutable after construction and safe to share across
// threads; collection scratch space is thread-local.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ssp/chain.hpp"
#include "ssp/exponent_vector.hpp"
#include "ssp/word.hpp"
#include "ssp/zp.hpp"

namespace ssp {

class PcPresentation {
 public:
  // Table constructor.  `comms` maps each pair i < j to the normal form of
  // [g_i, g_j]; entries must be supported on i+1 .. j-1.  Used directly by
  // tests that corrupt tables; regular construction goes through compile().
  PcPresentation(PrimeModulus p, int n, std::vector<ExponentVector> comms)
      : p_(p), n_(n), comm_(std::move(comms)) {
    if (n < 2) throw validation_error("presentation needs n >= 2");
    if (comm_.size() !=
        static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
      throw validation_error("relation table has wrong size");
    for (int i = 1; i < n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const ExponentVector& c = comm_[idx(i, j)];
        c.validate(p_, static_cast<std::size_t>(n));
        for (int k = 1; k <= n; ++k)
          if (c.exp_of(k) != 0 && (k <= i || k >= j))
            throw validation_error("[g_" + std::to_string(i) + ",g_" +
                                   std::to_string(j) +
                                   "] not supported strictly between the pair");
      }
    build_rewrites();
  }

  // Compile a chain into its full table: the chain gives row c[1][j], every
  // other entry is the shift c[i][j] = f(c[i-1][j-1]).
  static PcPresentation compile(const EssentialChain& chain) {
    const int n = chain.n();
    std::vector<ExponentVector> comms(
        static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
        ExponentVector(static_cast<std::size_t>(n)));
    for (int j = 3; j <= n; ++j) {
      const auto& row = chain.row(j);
      for (int k = 2; k <= j - 1; ++k)
        comms[idx_of(1, j, n)].set_exp(k, row[static_cast<std::size_t>(k - 2)]);
    }
    for (int i = 2; i < n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const ExponentVector& prev = comms[idx_of(i - 1, j - 1, n)];
        ExponentVector& cur = comms[idx_of(i, j, n)];
        for (int k = i + 1; k <= j - 1; ++k) cur.set_exp(k, prev.exp_of(k - 1));
      }
    PcPresentation result(chain.prime(), n, std::move(comms));
    result.chain_ = chain;
    return result;
  }

  const PrimeModulus& prime() const { return p_; }
  int p() const { return p_.value(); }
  int n() const { return n_; }

  const EssentialChain& chain() const {
    if (!chain_)
      throw validation_error("presentation was not compiled from a chain");
    return *chain_;
  }

  // [g_i, g_j] in normal form, i < j.
  const ExponentVector& comm(int i, int j) const { return comm_[idx(i, j)]; }
  bool comm_trivial(int i, int j) const { return trivial_[idx(i, j)] != 0; }

  ExponentVector identity() const {
    return ExponentVector(static_cast<std::size_t>(n_));
  }

  // Group order p^n, saturating at SIZE_MAX.
  std::size_t order() const {
    std::size_t o = 1;
    for (int i = 0; i < n_; ++i) {
      if (o > SIZE_MAX / static_cast<std::size_t>(p())) return SIZE_MAX;
      o *= static_cast<std::size_t>(p());
    }
    return o;
  }

  // Collect an arbitrary word to normal form.
  ExponentVector collect(const GroupWord& word) const {
    word.validate(static_cast<std::size_t>(n_));
    auto& buf = work_buffer();
    buf.clear();
    for (const Letter& l : word.letters) {
      int e = p_.reduce(l.exp);
      if (e != 0) push_merged(buf, l.gen, e);
    }
    run_collection(buf);
    return fold(buf);
  }

  ExponentVector multiply(const ExponentVector& x,
                          const ExponentVector& y) const {
    check_element(x);
    check_element(y);
    auto& buf = work_buffer();
    buf.clear();
    for (int g = 1; g <= n_; ++g)
      if (int e = x.exp_of(g); e != 0) buf.push_back({g, e});
    for (int g = 1; g <= n_; ++g)
      if (int e = y.exp_of(g); e != 0) push_merged(buf, g, e);
    run_collection(buf);
    return fold(buf);
  }

  ExponentVector inverse(const ExponentVector& x) const {
    check_element(x);
    auto& buf = work_buffer();
    buf.clear();
    for (int g = n_; g >= 1; --g)
      if (int e = x.exp_of(g); e != 0) buf.push_back({g, p() - e});
    run_collection(buf);
    return fold(buf);
  }

  ExponentVector power(const ExponentVector& x, long long m) const {
    ExponentVector base = m < 0 ? inverse(x) : x;
    unsigned long long k =
        m < 0 ? static_cast<unsigned long long>(-(m + 1)) + 1
              : static_cast<unsigned long long>(m);
    ExponentVector acc = identity();
    while (k > 0) {
      if (k & 1) acc = multiply(acc, base);
      base = multiply(base, base);
      k >>= 1;
    }
    return acc;
  }

  // x^{-1} y^{-1} x y = (yx)^{-1} (xy).
  ExponentVector commutator(const ExponentVector& x,
                            const ExponentVector& y) const {
    return multiply(inverse(multiply(y, x)), multiply(x, y));
  }

  ExponentVector conjugate(const ExponentVector& x,
                           const ExponentVector& y) const {
    return multiply(inverse(y), multiply(x, y));
  }

  // The shift g_i -> g_{i+1} on normal forms; a homomorphism from
  // <g_1..g_{n-1}> into the group when the presentation is shift-closed.
  ExponentVector apply_f(const ExponentVector& x) const {
    check_element(x);
    if (x.exp_of(n_) != 0)
      throw validation_error("apply_f: element not supported on 1..n-1");
    ExponentVector y(static_cast<std::size_t>(n_));
    for (int g = 1; g < n_; ++g) y.set_exp(g + 1, x.exp_of(g));
    return y;
  }

 private:
  static std::size_t idx_of(int i, int j, int n) {
    return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) +
           static_cast<std::size_t>(j - 1);
  }
  std::size_t idx(int i, int j) const { return idx_of(i, j, n_); }

  static std::vector<Letter>& work_buffer() {
    static thread_local std::vector<Letter> buf;
    return buf;
  }

  void check_element(const ExponentVector& x) const {
    if (x.size() != static_cast<std::size_t>(n_))
      throw validation_error("element has wrong dimension");
  }

  void build_rewrites() {
    trivial_.assign(comm_.size(), 1);
    rewrite_.assign(comm_.size(), {});
    for (int i = 1; i < n_; ++i)
      for (int j = i + 1; j <= n_; ++j) {
        const ExponentVector& c = comm_[idx(i, j)];
        std::vector<Letter> rw;
        for (int k = j - 1; k >= i + 1; --k)
          if (int e = c.exp_of(k); e != 0) rw.push_back({k, p() - e});
        if (!rw.empty()) trivial_[idx(i, j)] = 0;
        rewrite_[idx(i, j)] = std::move(rw);
      }
  }

  void push_merged(std::vector<Letter>& buf, int gen, int exp) const {
    if (!buf.empty() && buf.back().gen == gen) {
      buf.back().exp = (buf.back().exp + exp) % p();
      if (buf.back().exp == 0) buf.pop_back();
      return;
    }
    buf.push_back({gen, exp});
  }

  // Collection from the left: everything before the cursor is strictly
  // ascending; each step merges or rewrites the pair at the cursor and backs
  // up one position.
  void run_collection(std::vector<Letter>& buf) const {
    std::size_t t = 0;
    while (buf.size() >= 2 && t + 1 < buf.size()) {
      const int gj = buf[t].gen;
      const int gi = buf[t + 1].gen;
      if (gj < gi) {
        ++t;
        continue;
      }
      if (gj == gi) {
        buf[t].exp = (buf[t].exp + buf[t + 1].exp) % p();
        buf.erase(buf.begin() + static_cast<std::ptrdiff_t>(t) + 1);
        if (buf[t].exp == 0)
          buf.erase(buf.begin() + static_cast<std::ptrdiff_t>(t));
        if (t > 0) --t;
        continue;
      }
      // descent: buf[t] = g_j^a, buf[t+1] = g_i^b with j > i
      const std::vector<Letter>& rw = rewrite_[idx(gi, gj)];
      if (rw.empty()) {
        std::swap(buf[t], buf[t + 1]);
      } else {
        // g_j^a g_i^b -> g_j^{a-1} g_i g_j (rw) g_i^{b-1}
        const int a = buf[t].exp;
        const int b = buf[t + 1].exp;
        Letter head[2];
        std::size_t heads = 0;
        if (a > 1) head[heads++] = {gj, a - 1};
        head[heads++] = {gi, 1};
        buf[t] = head[0];
        buf[t + 1] = heads == 2 ? head[1] : Letter{gj, 1};
        auto at = buf.begin() + static_cast<std::ptrdiff_t>(t) + 2;
        std::size_t extra = rw.size() + (heads == 2 ? 1 : 0) + (b > 1 ? 1 : 0);
        if (extra > 0) {
          at = buf.insert(at, extra, Letter{0, 0});
          if (heads == 2) *at++ = {gj, 1};
          for (const Letter& l : rw) *at++ = l;
          if (b > 1) *at++ = {gi, b - 1};
        }
      }
      if (t > 0) --t;
    }
  }

  ExponentVector fold(const std::vector<Letter>& buf) const {
    ExponentVector r(static_cast<std::size_t>(n_));
    for (const Letter& l : buf)
      r.set_exp(l.gen, (r.exp_of(l.gen) + l.exp) % p());
    return r;
  }

  PrimeModulus p_;
  int n_;
  std::vector<ExponentVector> comm_;
  std::vector<char> trivial_;
  std::vector<std::vector<Letter>> rewrite_;
  std::optional<EssentialChain> chain_;
};

}  // namespace ssp
