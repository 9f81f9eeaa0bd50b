// Exhaustive enumeration of consistent SSP chains, counted by nilpotency
// class per generator count.
//
// Breadth-first over n: every consistent chain on n-1 generators is extended
// by all p^{n-2} candidate relations [g_1, g_n] = g_2^{a_2} .. g_{n-1}^{a_{n-1}}
// in lexicographic order, keeping the candidates whose extension map passes
// the automorphism test.  The relation checks that do not involve g_1 are
// independent of the candidate vector, so they are hoisted out and evaluated
// once per parent.
//
// Work is partitioned over parent chains; results land in per-parent slots
// and are merged in parent order, so reports are identical for any thread
// count.
#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include "ssp/consistency.hpp"
#include "ssp/invariants.hpp"
#include "ssp/subgroup.hpp"

namespace ssp {

// True when the candidate chain's cut-off cannot satisfy c = 2q + r + j for
// any 0 <= j <= q, so the consistency test is guaranteed to fail.  Abelian
// chains are never pruned.
inline bool prune_predicate(const EssentialChain& chain) {
  if (chain.is_abelian()) return false;
  return !cutoff_params(chain).has_value();
}

// Per-parent extension tester with the candidate-independent work hoisted.
class ExtensionTester {
 public:
  explicit ExtensionTester(const EssentialChain& parent)
      : base_(PcPresentation::compile(parent)) {
    precompute();
  }

  const PcPresentation& base() const { return base_; }
  bool parent_relations_ok() const { return viable_; }

  // Run the automorphism test for one extension vector.  `a` has length
  // n-1 for a base on n generators (coefficients on g_2 .. g_n).
  AlphaVerdict test(const std::vector<std::uint8_t>& a) const {
    AlphaVerdict v;
    if (!viable_) return v;
    const int n = base_.n();
    ExponentVector img1(static_cast<std::size_t>(n));
    img1.set_exp(1, 1);
    for (int k = 2; k <= n; ++k)
      img1.set_exp(k, a[static_cast<std::size_t>(k - 2)]);

    if (!base_.power(img1, base_.p()).is_identity()) return v;
    for (int j = 2; j <= n; ++j) {
      // [img1, img_j] must match the image of [g_1, g_j]
      const ExponentVector& imgj = img_[static_cast<std::size_t>(j)];
      if (base_.commutator(img1, imgj) != rhs_[static_cast<std::size_t>(j)])
        return v;
    }
    v.relations_hold = true;

    // alpha^p fixes g_1; the other generators were checked per parent.
    ExponentVector x = img1;
    for (int step = 1; step < base_.p(); ++step) {
      ExponentVector y = img1;  // x always has exponent 1 on g_1
      for (int k = 2; k <= n; ++k)
        if (int e = x.exp_of(k); e != 0)
          y = base_.multiply(y, img_pow_[static_cast<std::size_t>(k)]
                                        [static_cast<std::size_t>(e)]);
      x = y;
    }
    if (x != ExponentVector::generator(1, static_cast<std::size_t>(n))) return v;
    v.order_divides_p = true;
    return v;
  }

 private:
  // Image of a vector supported on g_2..g_n under the fixed part of alpha.
  ExponentVector apply_fixed(const ExponentVector& x) const {
    ExponentVector y = base_.identity();
    for (int k = 2; k <= base_.n(); ++k)
      if (int e = x.exp_of(k); e != 0)
        y = base_.multiply(
            y, img_pow_[static_cast<std::size_t>(k)][static_cast<std::size_t>(e)]);
    return y;
  }

  void precompute() {
    const int n = base_.n();
    const int p = base_.p();
    img_.assign(static_cast<std::size_t>(n) + 1, base_.identity());
    img_pow_.assign(static_cast<std::size_t>(n) + 1, {});
    for (int i = 2; i <= n; ++i) {
      // w_i = f([g_{i-1}, g_n]); never depends on the candidate vector
      ExponentVector im(static_cast<std::size_t>(n));
      im.set_exp(i, 1);
      const ExponentVector& c = base_.comm(i - 1, n);
      for (int k = i; k <= n - 1; ++k)
        if (int e = c.exp_of(k); e != 0) im.set_exp(k + 1, e);
      img_[static_cast<std::size_t>(i)] = im;
    }
    for (int i = 2; i <= n; ++i) {
      auto& powers = img_pow_[static_cast<std::size_t>(i)];
      powers.assign(static_cast<std::size_t>(p), base_.identity());
      for (int e = 1; e < p; ++e)
        powers[static_cast<std::size_t>(e)] = base_.multiply(
            powers[static_cast<std::size_t>(e - 1)],
            img_[static_cast<std::size_t>(i)]);
    }

    viable_ = true;
    for (int i = 2; viable_ && i <= n; ++i)
      viable_ = base_.power(img_[static_cast<std::size_t>(i)], p).is_identity();
    for (int i = 2; viable_ && i < n; ++i)
      for (int j = i + 1; viable_ && j <= n; ++j)
        viable_ = base_.commutator(img_[static_cast<std::size_t>(i)],
                                   img_[static_cast<std::size_t>(j)]) ==
                  apply_fixed(base_.comm(i, j));
    for (int i = 2; viable_ && i <= n; ++i) {
      ExponentVector x = img_[static_cast<std::size_t>(i)];
      for (int step = 1; step < p; ++step) x = apply_fixed(x);
      viable_ = x == ExponentVector::generator(i, static_cast<std::size_t>(n));
    }
    if (viable_) {
      rhs_.assign(static_cast<std::size_t>(n) + 1, base_.identity());
      for (int j = 2; j <= n; ++j)
        rhs_[static_cast<std::size_t>(j)] = apply_fixed(base_.comm(1, j));
    }
  }

  PcPresentation base_;
  bool viable_ = false;
  std::vector<ExponentVector> img_;                    // fixed images, index i
  std::vector<std::vector<ExponentVector>> img_pow_;   // img_[i]^e
  std::vector<ExponentVector> rhs_;                    // image of [g_1, g_j]
};

// Advance `a` to the next vector in lexicographic order (rightmost digit
// least significant); false after the last vector.
inline bool next_extension_vector(std::vector<std::uint8_t>& a, int p) {
  for (std::size_t i = a.size(); i > 0; --i) {
    if (a[i - 1] + 1 < p) {
      ++a[i - 1];
      return true;
    }
    a[i - 1] = 0;
  }
  return false;
}

// All consistent one-generator extensions of a consistent chain, in
// lexicographic candidate order.
inline std::vector<EssentialChain> extend_all(const EssentialChain& parent,
                                              ConsistencyLog* log = nullptr,
                                              bool prune = false) {
  std::vector<EssentialChain> out;
  if (prune && !parent.is_abelian() &&
      !cutoff_params(parent.n() + 1, parent.cutoff()).has_value()) {
    // every candidate inherits the parent's cut-off, so the whole batch is
    // rejected by the arithmetic; equivalent to prune_predicate per child
    return out;
  }
  ExtensionTester tester(parent);
  std::vector<std::uint8_t> a(static_cast<std::size_t>(parent.n() - 1), 0);
  do {
    AlphaVerdict v = tester.test(a);
    if (v.ok()) {
      out.push_back(parent.extended(a));
    } else if (log && v.relations_hold && !v.order_divides_p) {
      log->record(parent.extended(a));
    }
  } while (next_extension_vector(a, parent.p()));
  return out;
}

struct EnumerationRow {
  int n = 0;
  std::uint64_t class1 = 0;
  std::uint64_t class2 = 0;
  std::uint64_t class3 = 0;
  std::uint64_t class4plus = 0;
  double seconds = 0.0;
  std::uint64_t tested = 0;  // candidate chains examined at this level
};

struct EnumerationReport {
  int p = 0;
  int n_max = 0;
  std::vector<EnumerationRow> rows;
  std::uint64_t total_tested = 0;
  bool truncated = false;
  // instrumentation for the alpha-order question: candidates whose relation
  // checks passed but whose extension map had order > p
  std::uint64_t alpha_order_failures = 0;
};

struct EnumerateOptions {
  unsigned threads = 1;
  bool prune = false;
  std::uint64_t test_budget = 0;       // 0 = unlimited; deterministic cut
  std::string spill_path;              // non-empty: keep frontiers on disk
  std::size_t spill_block = 4096;      // parents per in-memory block
};

namespace detail {

struct ParentResult {
  std::vector<EssentialChain> children;  // kept only when a next level needs them
  std::uint64_t by_class[5] = {0, 0, 0, 0, 0};  // index 1..4 = class 1..4+
};

inline int classify(const EssentialChain& chain) {
  if (chain.is_abelian()) return 1;
  return nilpotency_class(PcPresentation::compile(chain));
}

inline ParentResult process_parent(const EssentialChain& parent,
                                   const EnumerateOptions& opts,
                                   ConsistencyLog* log, bool keep_children) {
  ParentResult result;
  auto children = extend_all(parent, log, opts.prune);
  for (const auto& child : children) {
    int cls = classify(child);
    ++result.by_class[cls >= 4 ? 4 : cls];
  }
  if (keep_children) result.children = std::move(children);
  return result;
}

// Deterministic parallel map over parents: slot per parent, atomic cursor.
inline std::vector<ParentResult> process_level(
    const std::vector<EssentialChain>& parents, const EnumerateOptions& opts,
    ConsistencyLog* log, bool keep_children) {
  std::vector<ParentResult> slots(parents.size());
  const unsigned threads =
      opts.threads == 0
          ? std::max(1u, std::thread::hardware_concurrency())
          : opts.threads;
  if (threads <= 1 || parents.size() <= 1) {
    for (std::size_t i = 0; i < parents.size(); ++i)
      slots[i] = process_parent(parents[i], opts, log, keep_children);
    return slots;
  }
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= parents.size()) break;
      slots[i] = process_parent(parents[i], opts, log, keep_children);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return slots;
}

// Binary frontier files for the disk-spill option.
inline void write_frontier(const std::string& path,
                           const std::vector<EssentialChain>& chains) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw capacity_error("cannot open spill file " + path);
  for (const auto& chain : chains) {
    std::string k = chain.key();
    out.write(k.data(), static_cast<std::streamsize>(k.size()));
  }
}

inline std::vector<EssentialChain> read_frontier_block(std::ifstream& in,
                                                       int p, int n,
                                                       std::size_t count) {
  std::vector<EssentialChain> chains;
  const std::size_t bytes =
      2 + static_cast<std::size_t>((n - 1) * (n - 2) / 2);
  std::string buf(bytes, '\0');
  while (chains.size() < count &&
         in.read(buf.data(), static_cast<std::streamsize>(bytes))) {
    if (buf[0] != static_cast<char>(p) || buf[1] != static_cast<char>(n))
      throw parse_error("spill file corrupted");
    std::vector<std::vector<std::uint8_t>> rows;
    std::size_t at = 2;
    for (int j = 3; j <= n; ++j) {
      std::vector<std::uint8_t> row(static_cast<std::size_t>(j - 2));
      for (auto& v : row) v = static_cast<std::uint8_t>(buf[at++]);
      rows.push_back(std::move(row));
    }
    chains.emplace_back(PrimeModulus(p), n, std::move(rows));
  }
  return chains;
}

}  // namespace detail

// Breadth-first enumeration up to n_max; rows match the consistent-chain
// counts per level, split by nilpotency class.
inline EnumerationReport enumerate_chains(int p, int n_max,
                                          const EnumerateOptions& opts = {},
                                          ConsistencyLog* log = nullptr) {
  if (n_max < 2) throw validation_error("enumeration needs n_max >= 2");
  PrimeModulus prime(p);
  EnumerationReport report;
  report.p = p;
  report.n_max = n_max;

  ConsistencyLog local_log;
  ConsistencyLog* use_log = log ? log : &local_log;

  std::vector<EssentialChain> frontier{EssentialChain(prime, 2)};
  EnumerationRow base_row;
  base_row.n = 2;
  base_row.class1 = 1;
  base_row.tested = 1;
  report.rows.push_back(base_row);
  report.total_tested = 1;

  const bool spill = !opts.spill_path.empty();
  if (spill) detail::write_frontier(opts.spill_path, frontier);

  std::uint64_t frontier_size = frontier.size();
  for (int n = 3; n <= n_max; ++n) {
    std::uint64_t per_parent = 1;
    for (int i = 0; i < n - 2; ++i) per_parent *= static_cast<std::uint64_t>(p);
    const std::uint64_t level_tests = frontier_size * per_parent;
    if (opts.test_budget != 0 &&
        report.total_tested + level_tests > opts.test_budget) {
      report.truncated = true;
      break;
    }

    EnumerationRow row;
    row.n = n;
    row.tested = level_tests;
    const auto t0 = std::chrono::steady_clock::now();

    // the last level's chains are only counted, never extended
    const bool keep_children = n < n_max;
    std::vector<EssentialChain> next;
    auto accumulate = [&](std::vector<detail::ParentResult>& slots,
                          std::ofstream* writer) {
      for (auto& slot : slots) {
        row.class1 += slot.by_class[1];
        row.class2 += slot.by_class[2];
        row.class3 += slot.by_class[3];
        row.class4plus += slot.by_class[4];
        for (auto& child : slot.children) {
          if (writer) {
            std::string k = child.key();
            writer->write(k.data(), static_cast<std::streamsize>(k.size()));
          } else {
            next.push_back(std::move(child));
          }
        }
        slot.children.clear();
      }
    };

    std::uint64_t produced = 0;
    if (spill) {
      std::ifstream reader(opts.spill_path, std::ios::binary);
      if (!reader) throw capacity_error("cannot read spill file");
      const std::string next_path = opts.spill_path + ".next";
      std::ofstream writer(next_path, std::ios::binary | std::ios::trunc);
      while (true) {
        auto block =
            detail::read_frontier_block(reader, p, n - 1, opts.spill_block);
        if (block.empty()) break;
        auto slots =
            detail::process_level(block, opts, use_log, keep_children);
        accumulate(slots, &writer);
      }
      writer.close();
      reader.close();
      std::remove(opts.spill_path.c_str());
      std::rename(next_path.c_str(), opts.spill_path.c_str());
    } else {
      auto slots =
          detail::process_level(frontier, opts, use_log, keep_children);
      accumulate(slots, nullptr);
      frontier = std::move(next);
    }
    produced = row.class1 + row.class2 + row.class3 + row.class4plus;
    frontier_size = produced;

    row.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    report.total_tested += level_tests;
    report.rows.push_back(row);
  }
  if (spill) std::remove(opts.spill_path.c_str());
  report.alpha_order_failures = use_log->count();
  return report;
}

}  // namespace ssp
