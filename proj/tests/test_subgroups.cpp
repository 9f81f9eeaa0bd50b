// Induced sequences: sifting, closure, derived and lower central series,
// brute-force centers.
#include <catch2/catch_amalgamated.hpp>

#include <unordered_set>

#include "ssp/subgroup.hpp"

using namespace ssp;

namespace {

EssentialChain heisenberg_chain(int p) {
  return EssentialChain(PrimeModulus(p), 3, {{1}});
}

EssentialChain g64_chain(int p, int u3, int x2, int x5) {
  return EssentialChain(
      PrimeModulus(p), 6,
      {{0},
       {0, 0},
       {0, static_cast<std::uint8_t>(u3), 0},
       {static_cast<std::uint8_t>(x2), 0, 0, static_cast<std::uint8_t>(x5)}});
}

}  // namespace

TEST_CASE("sifting") {
  auto P = PcPresentation::compile(heisenberg_chain(3));
  auto full = InducedSequence::whole_group(P);
  auto g2 = InducedSequence::generator_range(P, 2, 2);

  CHECK(full.sift(P.identity()).is_identity());
  CHECK(g2.sift(P.identity()).is_identity());
  SECTION("the full-group sequence absorbs everything") {
    for (std::size_t i = 0; i < 27; ++i)
      CHECK(full.sift(ExponentVector::from_index(i, 3, 3)).is_identity());
  }
  SECTION("leading-index mismatch returns the element") {
    ExponentVector g1 = ExponentVector::generator(1, 3);
    CHECK(g2.sift(g1) == g1);
  }
}

TEST_CASE("closure") {
  auto P = PcPresentation::compile(heisenberg_chain(3));
  SECTION("single generator gives order p") {
    auto s = InducedSequence::closure(
        P, {ExponentVector::generator(1, 3)});
    CHECK(s.rank() == 1);
    CHECK(s.order() == 3);
  }
  SECTION("all generators give the whole group") {
    std::vector<ExponentVector> gens;
    for (int g = 1; g <= 3; ++g) gens.push_back(ExponentVector::generator(g, 3));
    auto s = InducedSequence::closure(P, gens);
    CHECK(s.order() == 27);
  }
  SECTION("the commutator [g_1, g_3] generates the center of Heisenberg") {
    auto s = InducedSequence::closure(
        P, {P.commutator(ExponentVector::generator(1, 3),
                         ExponentVector::generator(3, 3))});
    CHECK(s.rank() == 1);
    CHECK(s.contains(ExponentVector::generator(2, 3)));
  }
}

TEST_CASE("membership agrees with exhaustive enumeration") {
  // spot-check on the 3^6 group: the set of elements a closed sequence
  // generates equals the set accepted by sifting
  auto P = PcPresentation::compile(g64_chain(3, 1, 1, 0));
  auto sub = InducedSequence::closure(
      P, {ExponentVector::generator(2, 6), ExponentVector::generator(5, 6)},
      /*normal=*/true);
  std::unordered_set<std::size_t> by_products;
  // breadth-first product closure from the generators
  std::vector<ExponentVector> frontier{P.identity()};
  by_products.insert(P.identity().to_index(3));
  while (!frontier.empty()) {
    std::vector<ExponentVector> next;
    for (const auto& x : frontier)
      for (const auto& s : sub.elements()) {
        ExponentVector y = P.multiply(x, s);
        if (by_products.insert(y.to_index(3)).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  CHECK(by_products.size() == sub.order());
  for (std::size_t i = 0; i < P.order(); ++i) {
    ExponentVector x = ExponentVector::from_index(i, 3, 6);
    CHECK(sub.contains(x) == (by_products.count(i) != 0));
  }
}

TEST_CASE("derived subgroup") {
  SECTION("abelian groups have trivial derived subgroup") {
    auto A = PcPresentation::compile(EssentialChain(PrimeModulus(5), 4));
    CHECK(derived_subgroup(A).is_trivial());
  }
  SECTION("Heisenberg derived subgroup is <g_2>") {
    auto P = PcPresentation::compile(heisenberg_chain(3));
    auto d = derived_subgroup(P);
    CHECK(d.rank() == 1);
    CHECK(d.contains(ExponentVector::generator(2, 3)));
  }
  SECTION("G(6,4) with u3=1, x2=x5=0 has derived subgroup <g_3, g_4>") {
    auto P = PcPresentation::compile(g64_chain(3, 1, 0, 0));
    auto d = derived_subgroup(P);
    CHECK(d.same_subgroup(InducedSequence::generator_range(P, 3, 4)));
  }
}

TEST_CASE("lower central series and class") {
  SECTION("abelian is class 1") {
    auto A = PcPresentation::compile(EssentialChain(PrimeModulus(3), 4));
    CHECK(nilpotency_class(A) == 1);
  }
  SECTION("Heisenberg is class 2") {
    auto P = PcPresentation::compile(heisenberg_chain(3));
    auto series = lower_central_series(P);
    REQUIRE(series.size() == 3);
    CHECK(series[1].rank() == 1);
    CHECK(series[2].is_trivial());
    CHECK(nilpotency_class(P) == 2);
  }
  SECTION("G(6,4) reaches class 3 exactly when (x2, x5) != (0, 0)") {
    CHECK(nilpotency_class(PcPresentation::compile(g64_chain(3, 1, 0, 0))) == 2);
    CHECK(nilpotency_class(PcPresentation::compile(g64_chain(3, 1, 1, 0))) == 3);
    CHECK(nilpotency_class(PcPresentation::compile(g64_chain(3, 1, 0, 2))) == 3);
    CHECK(nilpotency_class(PcPresentation::compile(g64_chain(3, 2, 2, 1))) == 3);
  }
  SECTION("gamma_3 of the class-3 instance matches the hand computation") {
    // gamma_3 = <g_3^{-u3 x5}, g_4^{u3 x2}> for u3=1, x2=1, x5=0: <g_4>
    auto P = PcPresentation::compile(g64_chain(3, 1, 1, 0));
    auto series = lower_central_series(P);
    REQUIRE(series.size() == 4);
    CHECK(series[2].same_subgroup(InducedSequence::generator_range(P, 4, 4)));
  }
  SECTION("series orders strictly decrease") {
    auto P = PcPresentation::compile(g64_chain(3, 1, 2, 1));
    auto series = lower_central_series(P);
    for (std::size_t i = 1; i < series.size(); ++i)
      CHECK(series[i].rank() < series[i - 1].rank());
  }
}

TEST_CASE("center by brute force") {
  SECTION("abelian center is everything") {
    auto A = PcPresentation::compile(EssentialChain(PrimeModulus(3), 3));
    CHECK(center(A).same_subgroup(InducedSequence::whole_group(A)));
  }
  SECTION("Heisenberg center is <g_2>, rank 1") {
    auto P = PcPresentation::compile(heisenberg_chain(3));
    auto z = center(P);
    CHECK(z.rank() == 1);
    CHECK(z.contains(ExponentVector::generator(2, 3)));
  }
  SECTION("<g_3, g_4> is exactly the center in the G(6,4) family") {
    for (auto [x2, x5] : {std::pair{0, 0}, {1, 0}, {0, 1}, {2, 2}}) {
      auto P = PcPresentation::compile(g64_chain(3, 1, x2, x5));
      CHECK(center(P).same_subgroup(InducedSequence::generator_range(P, 3, 4)));
    }
  }
  SECTION("threshold exceeded raises a capacity error") {
    auto P = PcPresentation::compile(heisenberg_chain(3));
    CHECK_THROWS_AS(center(P, 10), capacity_error);
  }
}

TEST_CASE("metabelian property on sample chains") {
  for (const auto& chain :
       {heisenberg_chain(3), heisenberg_chain(2), g64_chain(3, 1, 1, 2),
        g64_chain(5, 3, 2, 1)}) {
    auto P = PcPresentation::compile(chain);
    auto d = derived_subgroup(P);
    CHECK(d.is_abelian());
    // literal second derived subgroup: commutators of derived generators
    std::vector<ExponentVector> gens2;
    for (std::size_t a = 0; a < d.elements().size(); ++a)
      for (std::size_t b = 0; b < d.elements().size(); ++b) {
        ExponentVector c = P.commutator(d.elements()[a], d.elements()[b]);
        if (!c.is_identity()) gens2.push_back(c);
      }
    CHECK(InducedSequence::closure(P, gens2, true).is_trivial());
  }
}
