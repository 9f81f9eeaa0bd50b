// The inductive consistency criterion against the independent associativity
// oracle.
#include <catch2/catch_amalgamated.hpp>

#include <thread>

#include "ssp/consistency.hpp"
#include "ssp/enumerate.hpp"

using namespace ssp;

namespace {

EssentialChain heisenberg_chain(int p) {
  return EssentialChain(PrimeModulus(p), 3, {{1}});
}

// Every chain with 2 <= generators <= n for a prime p, lexicographic per
// level.
std::vector<EssentialChain> all_chains(int p, int n) {
  std::vector<EssentialChain> level{EssentialChain(PrimeModulus(p), 2)};
  std::vector<EssentialChain> out = level;
  for (int m = 3; m <= n; ++m) {
    std::vector<EssentialChain> next;
    for (const auto& parent : level) {
      std::vector<std::uint8_t> a(static_cast<std::size_t>(m - 2), 0);
      do {
        next.push_back(parent.extended(a));
      } while (next_extension_vector(a, p));
    }
    level = next;
    out.insert(out.end(), next.begin(), next.end());
  }
  return out;
}

}  // namespace

TEST_CASE("build_alpha") {
  SECTION("zero vector over a trivial top column gives the identity map") {
    auto base = PcPresentation::compile(EssentialChain(PrimeModulus(3), 3));
    auto alpha = build_alpha(base, {0, 0});
    for (int i = 1; i <= 3; ++i)
      CHECK(alpha.image(i) == ExponentVector::generator(i, 3));
  }
  SECTION("zero vector over the Heisenberg base still shifts g_2") {
    // w_2 = f([g_1, g_3]) = g_3 comes from the base table, not from `a`
    auto base = PcPresentation::compile(heisenberg_chain(3));
    auto alpha = build_alpha(base, {0, 0});
    CHECK(alpha.image(1) == ExponentVector::generator(1, 3));
    CHECK(alpha.image(2) == ExponentVector{0, 1, 1});
    CHECK(alpha.image(3) == ExponentVector::generator(3, 3));
  }
  SECTION("rank-2 base: g_1 -> g_1 g_2^x, g_2 fixed") {
    auto base = PcPresentation::compile(EssentialChain(PrimeModulus(3), 2));
    auto alpha = build_alpha(base, {2});
    CHECK(alpha.image(1) == ExponentVector{1, 2});
    CHECK(alpha.image(2) == ExponentVector{0, 1});
  }
  SECTION("higher images come from the base table, shifted") {
    auto base = PcPresentation::compile(heisenberg_chain(3));
    auto alpha = build_alpha(base, {1, 2});
    CHECK(alpha.image(1) == ExponentVector{1, 1, 2});
    // w_2 = f([g_1, g_3]) = g_3
    CHECK(alpha.image(2) == ExponentVector{0, 1, 1});
    CHECK(alpha.image(3) == ExponentVector{0, 0, 1});
  }
  SECTION("abelian base fixes all higher generators") {
    auto base = PcPresentation::compile(EssentialChain(PrimeModulus(5), 4));
    auto alpha = build_alpha(base, {1, 2, 3});
    CHECK(alpha.image(1) == ExponentVector{1, 1, 2, 3});
    for (int i = 2; i <= 4; ++i)
      CHECK(alpha.image(i) == ExponentVector::generator(i, 4));
  }
  SECTION("wrong vector length is rejected") {
    auto base = PcPresentation::compile(heisenberg_chain(3));
    CHECK_THROWS_AS(build_alpha(base, {1}), validation_error);
  }
}

TEST_CASE("is_automorphism") {
  SECTION("identity map is an automorphism") {
    auto base = PcPresentation::compile(EssentialChain(PrimeModulus(3), 3));
    CHECK(is_automorphism(build_alpha(base, {0, 0})));
  }
  SECTION("no extension of the Heisenberg group keeps cut-off 2") {
    // relation [g_1, g_3] = g_2 forces [g_1 w_1, g_3 w_3] = (g_2 w_2) to
    // fail for every candidate: G(4,2) groups do not exist
    auto base = PcPresentation::compile(heisenberg_chain(3));
    std::vector<std::uint8_t> a(2, 0);
    do {
      auto verdict = check_automorphism(build_alpha(base, a));
      CHECK_FALSE(verdict.ok());
      // cross-check against the exhaustive oracle on the extended chain
      CHECK_FALSE(associativity_oracle(heisenberg_chain(3).extended(a)));
    } while (next_extension_vector(a, 3));
  }
  SECTION("relations can hold while the map order exceeds p") {
    // explicit 4x4 unitriangular shift on the elementary abelian group of
    // rank 4: (I+N)^3 = I + N^3 != I over Z_3
    auto base = PcPresentation::compile(EssentialChain(PrimeModulus(3), 4));
    std::vector<ExponentVector> images{
        ExponentVector{1, 1, 0, 0}, ExponentVector{0, 1, 1, 0},
        ExponentVector{0, 0, 1, 1}, ExponentVector{0, 0, 0, 1}};
    CandidateAutomorphism alpha(base, images);
    auto verdict = check_automorphism(alpha);
    CHECK(verdict.relations_hold);
    CHECK_FALSE(verdict.order_divides_p);
    CHECK_FALSE(is_automorphism(alpha));
  }
  SECTION("non-unitriangular images are rejected at construction") {
    auto base = PcPresentation::compile(EssentialChain(PrimeModulus(3), 3));
    CHECK_THROWS_AS(
        CandidateAutomorphism(base, {ExponentVector{1, 0, 0},
                                     ExponentVector{1, 1, 0},
                                     ExponentVector{0, 0, 1}}),
        validation_error);
  }
}

TEST_CASE("is_consistent") {
  SECTION("abelian chains are consistent") {
    for (int p : {2, 3, 5, 7})
      for (int n = 2; n <= 5; ++n)
        CHECK(is_consistent(EssentialChain(PrimeModulus(p), n)));
  }
  SECTION("the Heisenberg chain is consistent") {
    CHECK(is_consistent(heisenberg_chain(3)));
    CHECK(is_consistent(heisenberg_chain(2)));
    CHECK(is_consistent(heisenberg_chain(7)));
  }
  SECTION("no G(4,2): every n=4 chain with nontrivial a[3] is inconsistent") {
    for (int p : {2, 3, 5}) {
      for (int u = 1; u < p; ++u) {
        std::vector<std::uint8_t> a3{static_cast<std::uint8_t>(u)};
        std::vector<std::uint8_t> a4(2, 0);
        do {
          EssentialChain chain(PrimeModulus(p), 4, {a3, a4});
          CHECK_FALSE(is_consistent(chain));
        } while (next_extension_vector(a4, p));
      }
    }
  }
  SECTION("consistency is prefix-monotone") {
    for (const auto& chain : all_chains(3, 4))
      if (is_consistent(chain))
        for (int m = 2; m <= chain.n(); ++m)
          CHECK(is_consistent(chain.prefix(m)));
  }
  SECTION("memoized calls agree with plain calls") {
    ConsistencyCache cache;
    for (const auto& chain : all_chains(3, 4)) {
      bool plain = is_consistent(chain);
      CHECK(is_consistent(chain, &cache) == plain);
      CHECK(is_consistent(chain, &cache) == plain);  // cache hit path
    }
  }
  SECTION("a shared cache gives the same verdicts under concurrency") {
    auto chains = all_chains(2, 6);
    std::vector<char> expected;
    for (const auto& chain : chains)
      expected.push_back(is_consistent(chain) ? 1 : 0);
    ConsistencyCache cache;
    std::vector<std::vector<char>> got(4, std::vector<char>(chains.size(), 0));
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t i = 0; i < chains.size(); ++i)
          got[static_cast<std::size_t>(t)][i] =
              is_consistent(chains[i], &cache) ? 1 : 0;
      });
    for (auto& th : pool) th.join();
    for (int t = 0; t < 4; ++t)
      CHECK(got[static_cast<std::size_t>(t)] == expected);
  }
}

TEST_CASE("oracle equivalence (central correctness property)") {
  SECTION("p = 3, all chains with n <= 4") {
    for (const auto& chain : all_chains(3, 4))
      CHECK(is_consistent(chain) ==
            associativity_oracle(chain, OracleMode::exhaustive()));
  }
  SECTION("p = 2, all chains with n <= 5") {
    for (const auto& chain : all_chains(2, 5))
      CHECK(is_consistent(chain) ==
            associativity_oracle(chain, OracleMode::exhaustive()));
  }
}

TEST_CASE("associativity oracle") {
  SECTION("elementary abelian is associative") {
    CHECK(associativity_oracle(EssentialChain(PrimeModulus(5), 3)));
  }
  SECTION("Heisenberg exhaustive") {
    CHECK(associativity_oracle(heisenberg_chain(3)));
  }
  SECTION("a corrupted non-shift-closed table fails") {
    // start from the consistent table with [g_1,g_3] = g_2 shifted into
    // [g_2,g_4] = g_3, then break the shift: [g_2,g_4] := g_3^2.  Conjugation
    // by g_4 then fixes g_1, g_3 but moves g_2, collapsing the group.
    const int n = 4;
    std::vector<ExponentVector> comms(16, ExponentVector(4));
    comms[0 * n + 2].set_exp(2, 1);  // [g_1, g_3] = g_2
    comms[1 * n + 3].set_exp(3, 2);  // [g_2, g_4] = g_3^2 (shift would give g_3)
    PcPresentation broken(PrimeModulus(3), n, comms);
    CHECK_FALSE(check_associativity(broken));
    // the honest shift-closed version is consistent but defines G(4,2),
    // which cannot exist either
    std::vector<ExponentVector> ssp_comms(16, ExponentVector(4));
    ssp_comms[0 * n + 2].set_exp(2, 1);
    ssp_comms[1 * n + 3].set_exp(3, 1);
    CHECK_FALSE(check_associativity(PcPresentation(PrimeModulus(3), n, ssp_comms)));
  }
  SECTION("sampled mode is deterministic in the seed") {
    auto chain = heisenberg_chain(3);
    CHECK(associativity_oracle(chain, OracleMode::sampled(5000, 99)));
    CHECK(associativity_oracle(chain, OracleMode::sampled(5000, 99)));
  }
  SECTION("exhaustive beyond the limit raises a capacity error") {
    CHECK_THROWS_AS(
        associativity_oracle(EssentialChain(PrimeModulus(3), 6),
                             OracleMode::exhaustive()),
        capacity_error);
  }
}

TEST_CASE("candidate images generate the whole base group") {
  // surjectivity is not checked by the automorphism test; the unitriangular
  // shape guarantees it, spot-checked here
  for (const auto& chain : all_chains(3, 4)) {
    if (!is_consistent(chain) || chain.n() < 3) continue;
    auto base = PcPresentation::compile(chain.prefix(chain.n() - 1));
    auto alpha = build_alpha(base, chain.row(chain.n()));
    std::vector<ExponentVector> images;
    for (int i = 1; i <= base.n(); ++i) images.push_back(alpha.image(i));
    CHECK(InducedSequence::closure(base, images).order() == base.order());
  }
}

TEST_CASE("order-check instrumentation fires for p = 2") {
  // the relation checks alone admit maps of order 4 over Z_2; the first
  // cases appear at n = 6 (the would-be class-3 chains that cannot exist
  // for p = 2); the oracle confirms every logged chain is inconsistent
  ConsistencyLog log;
  ConsistencyCache cache;
  for (const auto& chain : all_chains(2, 6)) {
    is_consistent(chain, &cache, &log);
  }
  CHECK(log.count() >= 4);
  for (const auto& offender : log.entries()) {
    CHECK_FALSE(is_consistent(offender));
    CHECK_FALSE(associativity_oracle(offender, OracleMode::exhaustive()));
  }
}
