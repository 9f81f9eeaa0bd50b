// Consistency of SSP chains: does the presentation define a group of order
// exactly p^n?
//
// The inductive criterion: the 2-generator chain is consistent; a chain on n
// generators is consistent iff its (n-1)-prefix is and the candidate map
// alpha : g_i -> g_i w_i extends to an automorphism of the prefix group,
// where w_1 carries the new essential relation and w_i (i > 1) is the shift
// of the prefix's [g_{i-1}, g_{n-1}].  On top of the relation checks we
// require alpha^p = id: the extension adjoins a generator of order p acting
// by alpha, so the action must have order dividing p.  Chains where the
// relations hold but the order check fails are recorded through
// ConsistencyLog.
//
// The independent oracle checks (xy)z = x(yz) over all (or sampled) triples
// of normal forms under collection; exhaustive success is ground truth for
// consistency at small orders.
#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "ssp/chain.hpp"
#include "ssp/presentation.hpp"

namespace ssp {

// Unitriangular candidate map g_i -> g_i * w_i on a base presentation.
class CandidateAutomorphism {
 public:
  CandidateAutomorphism(const PcPresentation& base,
                        std::vector<ExponentVector> images)
      : base_(&base), images_(std::move(images)) {
    const int n = base.n();
    if (images_.size() != static_cast<std::size_t>(n))
      throw validation_error("need one image per generator");
    for (int i = 1; i <= n; ++i) {
      const ExponentVector& im = images_[static_cast<std::size_t>(i - 1)];
      im.validate(base.prime(), static_cast<std::size_t>(n));
      if (im.exp_of(i) != 1)
        throw validation_error("image of g_" + std::to_string(i) +
                               " must have leading syllable g_" +
                               std::to_string(i));
      for (int k = 1; k < i; ++k)
        if (im.exp_of(k) != 0)
          throw validation_error("image of g_" + std::to_string(i) +
                                 " is not unitriangular");
    }
  }

  const PcPresentation& base() const { return *base_; }
  const ExponentVector& image(int i) const {
    return images_[static_cast<std::size_t>(i - 1)];
  }

  // Image of a normal form: product of generator images in word order.
  ExponentVector apply(const ExponentVector& x) const {
    ExponentVector y = base_->identity();
    for (int g = 1; g <= base_->n(); ++g)
      if (int e = x.exp_of(g); e != 0)
        y = base_->multiply(y, base_->power(image(g), e));
    return y;
  }

 private:
  const PcPresentation* base_;
  std::vector<ExponentVector> images_;
};

// The candidate map of the appendix extension step: `a` is the coefficient
// vector of the adjoined relation [g_1, g_{n+1}] on g_2 .. g_n.
inline CandidateAutomorphism build_alpha(const PcPresentation& base,
                                         const std::vector<std::uint8_t>& a) {
  const int n = base.n();
  if (a.size() != static_cast<std::size_t>(n - 1))
    throw validation_error("extension vector must have length n-1");
  std::vector<ExponentVector> images;
  images.reserve(static_cast<std::size_t>(n));
  ExponentVector first(static_cast<std::size_t>(n));
  first.set_exp(1, 1);
  for (int k = 2; k <= n; ++k) first.set_exp(k, a[static_cast<std::size_t>(k - 2)]);
  first.validate(base.prime(), static_cast<std::size_t>(n));
  images.push_back(first);
  for (int i = 2; i <= n; ++i) {
    // w_i = f([g_{i-1}, g_n]) read from the base table
    ExponentVector im(static_cast<std::size_t>(n));
    im.set_exp(i, 1);
    const ExponentVector& c = base.comm(i - 1, n);
    for (int k = i; k <= n - 1; ++k)
      if (int e = c.exp_of(k); e != 0) im.set_exp(k + 1, e);
    images.push_back(im);
  }
  return CandidateAutomorphism(base, std::move(images));
}

struct AlphaVerdict {
  bool relations_hold = false;  // defining relations verified at the images
  bool order_divides_p = false; // alpha^p is the identity map
  bool ok() const { return relations_hold && order_divides_p; }
};

inline AlphaVerdict check_automorphism(const CandidateAutomorphism& alpha) {
  const PcPresentation& P = alpha.base();
  const int n = P.n();
  AlphaVerdict v;
  for (int i = 1; i <= n; ++i)
    if (!P.power(alpha.image(i), P.p()).is_identity()) return v;
  for (int i = 1; i < n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      ExponentVector lhs = P.commutator(alpha.image(i), alpha.image(j));
      if (lhs != alpha.apply(P.comm(i, j))) return v;
    }
  v.relations_hold = true;
  for (int i = 1; i <= n; ++i) {
    ExponentVector x = alpha.image(i);
    for (int step = 1; step < P.p(); ++step) x = alpha.apply(x);
    if (x != ExponentVector::generator(i, static_cast<std::size_t>(n)))
      return v;
  }
  v.order_divides_p = true;
  return v;
}

inline bool is_automorphism(const CandidateAutomorphism& alpha) {
  return check_automorphism(alpha).ok();
}

// Thread-safe memo of consistency verdicts keyed by chain bytes.
class ConsistencyCache {
 public:
  std::optional<bool> lookup(const std::string& key) const {
    std::lock_guard<std::mutex> lock(m_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  void store(const std::string& key, bool value) {
    std::lock_guard<std::mutex> lock(m_);
    map_.emplace(key, value);
  }

 private:
  mutable std::mutex m_;
  std::unordered_map<std::string, bool> map_;
};

// Records chains whose extension map satisfies the defining relations but
// has order > p.  Whether this ever happens is deliberately instrumented
// rather than assumed; see the enumeration report.
class ConsistencyLog {
 public:
  void record(const EssentialChain& chain) {
    std::lock_guard<std::mutex> lock(m_);
    ++count_;
    if (entries_.size() < keep_) entries_.push_back(chain);
  }
  std::uint64_t count() const {
    std::lock_guard<std::mutex> lock(m_);
    return count_;
  }
  std::vector<EssentialChain> entries() const {
    std::lock_guard<std::mutex> lock(m_);
    return entries_;
  }

 private:
  mutable std::mutex m_;
  std::uint64_t count_ = 0;
  std::size_t keep_ = 64;
  std::vector<EssentialChain> entries_;
};

// Inductive consistency test, memoized per prefix when a cache is supplied.
inline bool is_consistent(const EssentialChain& chain,
                          ConsistencyCache* cache = nullptr,
                          ConsistencyLog* log = nullptr) {
  for (int m = 3; m <= chain.n(); ++m) {
    EssentialChain pre = chain.prefix(m);
    std::string key;
    if (cache) {
      key = pre.key();
      if (auto hit = cache->lookup(key)) {
        if (*hit) continue;
        return false;
      }
    }
    PcPresentation base = PcPresentation::compile(chain.prefix(m - 1));
    AlphaVerdict v = check_automorphism(build_alpha(base, pre.row(m)));
    if (log && v.relations_hold && !v.order_divides_p) log->record(pre);
    if (cache) cache->store(key, v.ok());
    if (!v.ok()) return false;
  }
  return true;
}

struct OracleMode {
  enum class Kind { exhaustive, sampled } kind = Kind::exhaustive;
  std::size_t samples = 100000;
  std::uint64_t seed = 12345;

  static OracleMode exhaustive() { return {}; }
  static OracleMode sampled(std::size_t k, std::uint64_t seed = 12345) {
    return {Kind::sampled, k, seed};
  }
};

// Associativity of collection over the table, checked on all (or sampled)
// triples of normal forms.  Exhaustive success certifies that the normal
// forms with collection form a group of order p^n satisfying the relations,
// i.e. that the presentation is consistent.
inline bool check_associativity(const PcPresentation& P,
                                const OracleMode& mode = OracleMode(),
                                std::size_t exhaustive_limit = 243) {
  const std::size_t n = static_cast<std::size_t>(P.n());
  if (mode.kind == OracleMode::Kind::exhaustive) {
    const std::size_t total = P.order();
    if (total > exhaustive_limit)
      throw capacity_error("exhaustive oracle: order " + std::to_string(total) +
                           " exceeds limit " + std::to_string(exhaustive_limit));
    std::vector<ExponentVector> elems;
    elems.reserve(total);
    for (std::size_t i = 0; i < total; ++i)
      elems.push_back(ExponentVector::from_index(i, P.p(), n));
    std::vector<std::uint32_t> table(total * total);
    for (std::size_t x = 0; x < total; ++x)
      for (std::size_t y = 0; y < total; ++y)
        table[x * total + y] = static_cast<std::uint32_t>(
            P.multiply(elems[x], elems[y]).to_index(P.p()));
    for (std::size_t x = 0; x < total; ++x)
      for (std::size_t y = 0; y < total; ++y) {
        const std::size_t xy = table[x * total + y];
        for (std::size_t z = 0; z < total; ++z)
          if (table[xy * total + z] != table[x * total + table[y * total + z]])
            return false;
      }
    return true;
  }
  std::mt19937_64 rng(mode.seed);
  std::uniform_int_distribution<int> coord(0, P.p() - 1);
  auto random_element = [&] {
    ExponentVector v(n);
    for (std::size_t i = 0; i < n; ++i)
      v[i] = static_cast<std::uint8_t>(coord(rng));
    return v;
  };
  for (std::size_t s = 0; s < mode.samples; ++s) {
    ExponentVector x = random_element(), y = random_element(),
                   z = random_element();
    if (P.multiply(P.multiply(x, y), z) != P.multiply(x, P.multiply(y, z)))
      return false;
  }
  return true;
}

inline bool associativity_oracle(const EssentialChain& chain,
                                 const OracleMode& mode = OracleMode(),
                                 std::size_t exhaustive_limit = 243) {
  return check_associativity(PcPresentation::compile(chain), mode,
                             exhaustive_limit);
}

}  // namespace ssp
