#include "doctest.h"

#include "sspec/exactpoly.hpp"
#include "sspec/util.hpp"

using namespace sspec::exactpoly;

namespace {
IntPoly P(const char* s) { return IntPoly::parse(s); }

IntPoly random_monic(sspec::SplitMix64& rng, int deg, long coeff_bound) {
  std::vector<Int> c(static_cast<std::size_t>(deg) + 1);
  for (int i = 0; i < deg; ++i)
    c[static_cast<std::size_t>(i)] =
        static_cast<long>(rng.below(static_cast<std::uint64_t>(2 * coeff_bound + 1))) - coeff_bound;
  c[static_cast<std::size_t>(deg)] = 1;
  return IntPoly(std::move(c));
}
}  // namespace

TEST_CASE("factor: spec examples") {
  // t^4 - 4 t^2 -> {t:2, t-2:1, t+2:1}
  FactoredPoly f = factor(P("t^4 - 4*t^2"));
  CHECK(f.expand() == P("t^4 - 4*t^2"));
  CHECK(f.remainder == P("1"));
  CHECK(f.multiplicity_of(P("t")) == 2);
  CHECK(f.multiplicity_of(P("t - 2")) == 1);
  CHECK(f.multiplicity_of(P("t + 2")) == 1);
  CHECK(f.factors.size() == 3);

  // Phi_12 stays whole
  FactoredPoly f2 = factor(P("t^4 - t^2 + 1"));
  REQUIRE(f2.factors.size() == 1);
  CHECK(f2.factors[0].first == cyclotomic(12));
  CHECK(f2.factors[0].second == 1);

  // t^2 - t - 1 irreducible, not cyclotomic
  FactoredPoly f3 = factor(P("t^2 - t - 1"));
  REQUIRE(f3.factors.size() == 1);
  CHECK(f3.factors[0].first == P("t^2 - t - 1"));
  CHECK(cyclotomic_index(f3.factors[0].first) == 0);
}

TEST_CASE("factor: mixed products with multiplicities") {
  IntPoly p = P("t + 3").pow(2) * P("t^2 + 1") * P("t^2 - 2") * P("t");
  FactoredPoly f = factor(p);
  CHECK(f.expand() == p);
  CHECK(f.remainder == P("1"));
  CHECK(f.multiplicity_of(P("t + 3")) == 2);
  CHECK(f.multiplicity_of(P("t^2 + 1")) == 1);
  CHECK(f.multiplicity_of(P("t^2 - 2")) == 1);
  CHECK(f.multiplicity_of(P("t")) == 1);
}

TEST_CASE("factor: content, sign, non-monic remainder") {
  FactoredPoly f = factor(P("2*t^2 - 2"));
  CHECK(f.expand() == P("2*t^2 - 2"));
  CHECK(f.multiplicity_of(P("t - 1")) == 1);
  CHECK(f.multiplicity_of(P("t + 1")) == 1);
  CHECK(f.remainder == P("2"));

  FactoredPoly g = factor(-P("t^2 - 1"));
  CHECK(g.unit == -1);
  CHECK(g.expand() == -P("t^2 - 1"));
}

TEST_CASE("factor: swinnerton-dyer style hard recombination") {
  // minimal polynomial of sqrt(2)+sqrt(3): t^4 - 10 t^2 + 1, splits into four
  // linears mod every prime but is irreducible over Z.
  FactoredPoly f = factor(P("t^4 - 10*t^2 + 1"));
  REQUIRE(f.factors.size() == 1);
  CHECK(f.factors[0].first == P("t^4 - 10*t^2 + 1"));

  // (t^4 - 10 t^2 + 1)(t^2 - 2): recombination across unequal pieces
  IntPoly p = P("t^4 - 10*t^2 + 1") * P("t^2 - 2");
  FactoredPoly g = factor(p);
  CHECK(g.expand() == p);
  CHECK(g.multiplicity_of(P("t^4 - 10*t^2 + 1")) == 1);
  CHECK(g.multiplicity_of(P("t^2 - 2")) == 1);
}

TEST_CASE("factor: degree cap routes leftovers to remainder") {
  // restrict the cap so a degree-4 irreducible cannot be processed fully
  IntPoly hard = P("t^4 - 10*t^2 + 1");
  IntPoly p = hard * P("t - 5");
  FactoredPoly f = factor(p, 3);
  CHECK(f.expand() == p);
  CHECK(f.multiplicity_of(P("t - 5")) == 1);
  // the quartic is above the cap: either factored by the bounded pass into
  // nothing (remainder) but never mislabeled
  CHECK(f.remainder == hard);
}

TEST_CASE("factor: randomized expand-identity property") {
  sspec::SplitMix64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    int nf = 1 + static_cast<int>(rng.below(3));
    IntPoly p(1L);
    for (int i = 0; i < nf; ++i) {
      int deg = 1 + static_cast<int>(rng.below(4));
      unsigned mult = 1 + static_cast<unsigned>(rng.below(2));
      p *= random_monic(rng, deg, 4).pow(mult);
    }
    FactoredPoly f = factor(p);
    CHECK(f.expand() == p);
    CHECK(f.remainder == P("1"));  // within cap, always fully split
    for (auto& [g, m] : f.factors) {
      CHECK(g.is_monic());
      CHECK(m >= 1);
      // emitted factors are irreducible: factoring them again is a fixpoint
      FactoredPoly again = factor(g);
      CHECK(again.factors.size() == 1);
      CHECK(again.factors[0].second == 1);
    }
  }
}

TEST_CASE("factor: cyclotomic products of many indices") {
  IntPoly p = cyclotomic(1) * cyclotomic(8) * cyclotomic(15) * cyclotomic(30);
  FactoredPoly f = factor(p);
  CHECK(f.expand() == p);
  CHECK(f.multiplicity_of(cyclotomic(30)) == 1);
  CHECK(f.multiplicity_of(cyclotomic(15)) == 1);
  CHECK(f.multiplicity_of(cyclotomic(8)) == 1);
  CHECK(f.remainder == P("1"));
}
