// Theorem sweep over an enumeration range: every consistent chain is checked
// against the structural results that apply to it, violations are counted,
// and the per-level counts are compared to the stored reference tables.
#pragma once

#include <atomic>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "ssp/enumerate.hpp"
#include "ssp/golden.hpp"
#include "ssp/invariants.hpp"
#include "ssp/matrep.hpp"

namespace ssp {

struct SweepThresholds {
  // brute-force order ceiling for the center / simple-triple / faithfulness
  // checks during sweeps; single-chain analysis uses Thresholds instead
  std::size_t structural_order_limit = 729;
};

struct VerifyOutcome {
  EnumerationReport report;
  std::uint64_t chains_checked = 0;
  std::uint64_t cutoff_violations = 0;
  std::uint64_t metabelian_failures = 0;
  std::uint64_t class_bound_failures = 0;
  std::uint64_t p2_class_failures = 0;
  std::uint64_t n4_cutoff_failures = 0;
  std::uint64_t center_failures = 0;
  std::uint64_t triple_failures = 0;
  std::uint64_t membership_failures = 0;
  std::uint64_t independence_failures = 0;
  std::uint64_t simple_triple_failures = 0;
  std::uint64_t class2_shape_failures = 0;
  std::uint64_t lift_shape_failures = 0;
  std::uint64_t matrep_failures = 0;
  std::uint64_t alpha_order_failures = 0;
  std::uint64_t structural_checked = 0;  // chains within the brute-force limit
  bool golden_available = false;
  bool golden_match = true;

  bool ok() const {
    return cutoff_violations == 0 && metabelian_failures == 0 &&
           class_bound_failures == 0 && p2_class_failures == 0 &&
           n4_cutoff_failures == 0 && center_failures == 0 &&
           triple_failures == 0 && membership_failures == 0 &&
           independence_failures == 0 && simple_triple_failures == 0 &&
           class2_shape_failures == 0 && lift_shape_failures == 0 &&
           matrep_failures == 0 && golden_match;
  }
};

namespace detail {

struct SweepCounters {
  std::uint64_t checked = 0, cutoff = 0, metabelian = 0, class_bound = 0,
                p2_class = 0, n4_cutoff = 0, center = 0, triple = 0,
                membership = 0, independence = 0, simple_triple = 0,
                class2_shape = 0, lift_shape = 0, matrep = 0, structural = 0;
  std::uint64_t class_counts[5] = {0, 0, 0, 0, 0};  // [1..4+] at index 1..4

  void merge(const SweepCounters& o) {
    checked += o.checked;
    cutoff += o.cutoff;
    metabelian += o.metabelian;
    class_bound += o.class_bound;
    p2_class += o.p2_class;
    n4_cutoff += o.n4_cutoff;
    center += o.center;
    triple += o.triple;
    membership += o.membership;
    independence += o.independence;
    simple_triple += o.simple_triple;
    class2_shape += o.class2_shape;
    lift_shape += o.lift_shape;
    matrep += o.matrep;
    structural += o.structural;
    for (int i = 1; i <= 4; ++i) class_counts[i] += o.class_counts[i];
  }
};

inline void sweep_chain(const EssentialChain& chain, int parent_class,
                        const SweepThresholds& th, SweepCounters& ctr) {
  PcPresentation P = PcPresentation::compile(chain);
  const int cls = chain.is_abelian() ? 1 : nilpotency_class(P);
  ++ctr.checked;
  ++ctr.class_counts[cls >= 4 ? 4 : cls];

  if (!chain.is_abelian() && !cutoff_params(chain)) ++ctr.cutoff;
  if (!derived_subgroup(P).is_abelian()) ++ctr.metabelian;
  if (cls > 3) ++ctr.class_bound;
  if (chain.p() == 2 && cls > 2) ++ctr.p2_class;
  if (chain.n() == 4 && !chain.is_abelian() && chain.cutoff() != 3)
    ++ctr.n4_cutoff;

  if (!check_triple_decomposition(P)) ++ctr.triple;
  if (!check_commutator_membership(P)) ++ctr.membership;
  if (!check_independence(P)) ++ctr.independence;
  if (cls <= 2 && !check_class2_presentation_shape(P)) ++ctr.class2_shape;
  if (chain.n() >= 3 && parent_class <= 2 &&
      !check_lift_shape(P, parent_class))
    ++ctr.lift_shape;
  if (cls <= 2 && !verify_representation(P, build_affine_rep(P, cls),
                                          th.structural_order_limit))
    ++ctr.matrep;

  if (P.order() <= th.structural_order_limit) {
    ++ctr.structural;
    if (!check_center_structure(P, th.structural_order_limit)) ++ctr.center;
    if (!verify_simple_triple(P, th.structural_order_limit))
      ++ctr.simple_triple;
  }
}

}  // namespace detail

inline VerifyOutcome verify_sweep(int p, int n_max,
                                  const SweepThresholds& th = {},
                                  unsigned threads = 1) {
  VerifyOutcome out;
  out.report.p = p;
  out.report.n_max = n_max;
  ConsistencyLog log;

  std::vector<EssentialChain> frontier{EssentialChain(PrimeModulus(p), 2)};
  {
    detail::SweepCounters ctr;
    detail::sweep_chain(frontier[0], 1, th, ctr);
    EnumerationRow row;
    row.n = 2;
    row.class1 = 1;
    row.tested = 1;
    out.report.rows.push_back(row);
    out.report.total_tested = 1;
    out.chains_checked = 1;
    out.structural_checked = ctr.structural;
    out.cutoff_violations = ctr.cutoff;
    out.metabelian_failures = ctr.metabelian;
    out.center_failures = ctr.center;
    out.triple_failures = ctr.triple;
    out.simple_triple_failures = ctr.simple_triple;
  }

  for (int n = 3; n <= n_max; ++n) {
    std::uint64_t per_parent = 1;
    for (int i = 0; i < n - 2; ++i) per_parent *= static_cast<std::uint64_t>(p);

    struct Slot {
      std::vector<EssentialChain> children;
      detail::SweepCounters ctr;
      int parent_class = 1;
    };
    std::vector<Slot> slots(frontier.size());
    auto work = [&](std::size_t i) {
      const EssentialChain& parent = frontier[i];
      Slot& slot = slots[i];
      slot.parent_class =
          parent.is_abelian()
              ? 1
              : nilpotency_class(PcPresentation::compile(parent));
      slot.children = extend_all(parent, &log);
      for (const auto& child : slot.children)
        detail::sweep_chain(child, slot.parent_class, th, slot.ctr);
    };
    const unsigned nthreads =
        threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                     : threads;
    if (nthreads <= 1 || frontier.size() <= 1) {
      for (std::size_t i = 0; i < frontier.size(); ++i) work(i);
    } else {
      std::atomic<std::size_t> cursor{0};
      auto runner = [&] {
        while (true) {
          std::size_t i = cursor.fetch_add(1);
          if (i >= frontier.size()) break;
          work(i);
        }
      };
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(runner);
      for (auto& t : pool) t.join();
    }

    detail::SweepCounters level;
    std::vector<EssentialChain> next;
    for (auto& slot : slots) {
      level.merge(slot.ctr);
      for (auto& child : slot.children) next.push_back(std::move(child));
    }
    frontier = std::move(next);

    EnumerationRow row;
    row.n = n;
    row.tested = static_cast<std::uint64_t>(slots.size()) * per_parent;
    row.class1 = level.class_counts[1];
    row.class2 = level.class_counts[2];
    row.class3 = level.class_counts[3];
    row.class4plus = level.class_counts[4];
    out.report.rows.push_back(row);
    out.report.total_tested += row.tested;

    out.chains_checked += level.checked;
    out.cutoff_violations += level.cutoff;
    out.metabelian_failures += level.metabelian;
    out.class_bound_failures += level.class_bound;
    out.p2_class_failures += level.p2_class;
    out.n4_cutoff_failures += level.n4_cutoff;
    out.center_failures += level.center;
    out.triple_failures += level.triple;
    out.membership_failures += level.membership;
    out.independence_failures += level.independence;
    out.simple_triple_failures += level.simple_triple;
    out.class2_shape_failures += level.class2_shape;
    out.lift_shape_failures += level.lift_shape;
    out.matrep_failures += level.matrep;
    out.structural_checked += level.structural;
  }

  out.alpha_order_failures = log.count();
  out.report.alpha_order_failures = log.count();

  if (has_golden_rows(p)) {
    out.golden_available = true;
    const auto& golden = golden_rows(p);
    for (const auto& row : out.report.rows)
      for (const auto& g : golden)
        if (g.n == row.n &&
            (row.class1 != g.class1 || row.class2 != g.class2 ||
             row.class3 != g.class3 || row.class4plus != 0))
          out.golden_match = false;
  }
  return out;
}

}  // namespace ssp
