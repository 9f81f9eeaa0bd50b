// Subgroup arithmetic via echelonized induced generating sequences.
//
// An induced sequence lists subgroup elements with strictly increasing
// leading generator indices and leading exponent 1.  Membership reduces to
// sifting: cancel the leading syllable against the matching sequence element
// until the residue is the identity or has no matching leader.  Since the
// entry at the minimal index of a product is additive, sifting strictly
// increases the lead and terminates.
#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <vector>

#include "ssp/presentation.hpp"

namespace ssp {

class InducedSequence {
 public:
  explicit InducedSequence(const PcPresentation& parent)
      : parent_(&parent), slot_(static_cast<std::size_t>(parent.n()) + 1, -1) {}

  const PcPresentation& parent() const { return *parent_; }
  const std::vector<ExponentVector>& elements() const { return elems_; }
  std::size_t rank() const { return elems_.size(); }

  // Subgroup order p^rank.
  std::size_t order() const {
    std::size_t o = 1;
    for (std::size_t i = 0; i < elems_.size(); ++i)
      o *= static_cast<std::size_t>(parent_->p());
    return o;
  }

  bool is_trivial() const { return elems_.empty(); }

  // Residue of x after cancelling leading syllables; identity iff x is a
  // member, provided the sequence is closed.
  ExponentVector sift(const ExponentVector& x) const {
    ExponentVector r = x;
    while (true) {
      int l = r.leading_generator();
      if (l == 0) return r;
      int at = slot_[static_cast<std::size_t>(l)];
      if (at < 0) return r;
      int e = r.exp_of(l);
      r = parent_->multiply(
          parent_->power(elems_[static_cast<std::size_t>(at)], -e), r);
    }
  }

  bool contains(const ExponentVector& x) const { return sift(x).is_identity(); }

  bool contains_all(const InducedSequence& other) const {
    for (const auto& s : other.elems_)
      if (!contains(s)) return false;
    return true;
  }

  bool same_subgroup(const InducedSequence& other) const {
    return rank() == other.rank() && contains_all(other);
  }

  // All sequence elements pairwise commute.
  bool is_abelian() const {
    for (std::size_t a = 0; a < elems_.size(); ++a)
      for (std::size_t b = a + 1; b < elems_.size(); ++b)
        if (!parent_->commutator(elems_[a], elems_[b]).is_identity())
          return false;
    return true;
  }

  // Sift x; insert the normalized residue if nontrivial.  Returns true when
  // the sequence grew.  add() alone does not re-close the sequence, so use
  // closure() unless the inputs are known to form one (e.g. g_a .. g_b).
  bool add(const ExponentVector& x) {
    ExponentVector r = sift(x);
    int l = r.leading_generator();
    if (l == 0) return false;
    int e = r.exp_of(l);
    if (e != 1) r = parent_->power(r, parent_->prime().inv(e));
    insert_echelon(r);
    return true;
  }

  // Smallest closed sequence containing `generators`; with `normal` also
  // closes under conjugation by every generator of the parent group.
  // New residues are processed FIFO, so the result is deterministic.
  static InducedSequence closure(const PcPresentation& P,
                                 const std::vector<ExponentVector>& generators,
                                 bool normal = false) {
    InducedSequence seq(P);
    std::deque<ExponentVector> queue(generators.begin(), generators.end());
    while (!queue.empty()) {
      ExponentVector x = queue.front();
      queue.pop_front();
      ExponentVector r = seq.sift(x);
      int l = r.leading_generator();
      if (l == 0) continue;
      if (int e = r.exp_of(l); e != 1)
        r = P.power(r, P.prime().inv(e));
      seq.insert_echelon(r);
      // obligations involving the new element; pairs among older elements
      // were queued when they were inserted
      queue.push_back(P.power(r, P.p()));
      for (const auto& s : seq.elems_) {
        queue.push_back(P.multiply(r, s));
        queue.push_back(P.multiply(s, r));
      }
      if (normal)
        for (int g = 1; g <= P.n(); ++g)
          queue.push_back(P.conjugate(
              r,
              ExponentVector::generator(g, static_cast<std::size_t>(P.n()))));
    }
    return seq;
  }

  // The sequence {g_a, ..., g_b}; already echelonized and closed whenever
  // the generator range is commutator-closed, which holds for every range
  // in a shift-closed table.
  static InducedSequence generator_range(const PcPresentation& P, int a,
                                         int b) {
    InducedSequence seq(P);
    for (int g = a; g <= b; ++g)
      seq.add(ExponentVector::generator(g, static_cast<std::size_t>(P.n())));
    return seq;
  }

  static InducedSequence whole_group(const PcPresentation& P) {
    return generator_range(P, 1, P.n());
  }

  static InducedSequence trivial(const PcPresentation& P) {
    return InducedSequence(P);
  }

 private:
  void insert_echelon(const ExponentVector& r) {
    auto at = std::lower_bound(
        elems_.begin(), elems_.end(), r,
        [](const ExponentVector& a, const ExponentVector& b) {
          return a.leading_generator() < b.leading_generator();
        });
    elems_.insert(at, r);
    std::fill(slot_.begin(), slot_.end(), -1);
    for (std::size_t i = 0; i < elems_.size(); ++i)
      slot_[static_cast<std::size_t>(elems_[i].leading_generator())] =
          static_cast<int>(i);
  }

  const PcPresentation* parent_;
  std::vector<ExponentVector> elems_;
  std::vector<int> slot_;  // leading generator index -> position, -1 if absent
};

// Normal closure of all [g_i, g_j].
inline InducedSequence derived_subgroup(const PcPresentation& P) {
  std::vector<ExponentVector> gens;
  for (int i = 1; i < P.n(); ++i)
    for (int j = i + 1; j <= P.n(); ++j)
      if (!P.comm_trivial(i, j)) gens.push_back(P.comm(i, j));
  return InducedSequence::closure(P, gens, /*normal=*/true);
}

// gamma_1 = G, gamma_{k+1} = <[x, g] : x in gamma_k, g generator>^G, down to
// the trivial subgroup.  SSP groups are nilpotent so the series terminates;
// a non-descending step raises instead of looping.
inline std::vector<InducedSequence> lower_central_series(
    const PcPresentation& P) {
  std::vector<InducedSequence> series;
  series.push_back(InducedSequence::whole_group(P));
  while (!series.back().is_trivial()) {
    const InducedSequence& prev = series.back();
    std::vector<ExponentVector> gens;
    for (const auto& x : prev.elements())
      for (int g = 1; g <= P.n(); ++g) {
        ExponentVector c = P.commutator(
            x, ExponentVector::generator(g, static_cast<std::size_t>(P.n())));
        if (!c.is_identity()) gens.push_back(c);
      }
    InducedSequence next = InducedSequence::closure(P, gens, /*normal=*/true);
    if (next.rank() >= prev.rank())
      throw validation_error("lower central series is not strictly descending");
    series.push_back(next);
  }
  return series;
}

// Number of nontrivial terms of the lower central series.
inline int nilpotency_class(const PcPresentation& P) {
  return static_cast<int>(lower_central_series(P).size()) - 1;
}

// Brute-force center: filter all p^n elements for commutation with every
// generator.  Guarded by a capacity threshold; structural checks take over
// beyond it.
inline InducedSequence center(const PcPresentation& P,
                              std::size_t max_elements = 1000000) {
  if (P.order() > max_elements)
    throw capacity_error("center: group order exceeds brute-force threshold");
  const std::size_t total = P.order();
  std::vector<ExponentVector> gen_vecs;
  for (int g = 1; g <= P.n(); ++g)
    gen_vecs.push_back(
        ExponentVector::generator(g, static_cast<std::size_t>(P.n())));
  std::vector<ExponentVector> central;
  for (std::size_t i = 0; i < total; ++i) {
    ExponentVector x =
        ExponentVector::from_index(i, P.p(), static_cast<std::size_t>(P.n()));
    bool ok = true;
    for (const auto& g : gen_vecs)
      if (P.multiply(x, g) != P.multiply(g, x)) {
        ok = false;
        break;
      }
    if (ok) central.push_back(x);
  }
  return InducedSequence::closure(P, central, /*normal=*/false);
}

}  // namespace ssp
