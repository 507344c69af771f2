#include "doctest.h"

#include "sspec/rootlab.hpp"
#include "sspec/util.hpp"

#include <cmath>

using namespace sspec::rootlab;
using sspec::exactpoly::IntPoly;

namespace {
IntPoly P(const char* s) { return IntPoly::parse(s); }
constexpr double kGolden = 1.6180339887498948482;
}  // namespace

TEST_CASE("isolate_roots: quadratics and roots of unity") {
  RootSet rs = isolate_roots(P("t^2 - 2"));
  REQUIRE(rs.roots.size() == 2);
  CHECK(rs.fully_certified);
  CHECK(rs.roots[0].center.real() == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-13));
  CHECK(rs.roots[1].center.real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  CHECK(rs.roots[0].radius <= 1e-12);

  RootSet ru = isolate_roots(P("t^3 - 1"));
  REQUIRE(ru.roots.size() == 3);
  for (const auto& r : ru.roots) CHECK(std::abs(r.center) == doctest::Approx(1.0).epsilon(1e-12));

  RootSet g = isolate_roots(P("t^2 - t - 1"));
  REQUIRE(g.roots.size() == 2);
  CHECK(g.roots[1].center.real() == doctest::Approx(kGolden).epsilon(1e-13));
  CHECK(g.roots[0].center.real() == doctest::Approx(1 - kGolden).epsilon(1e-13));
}

TEST_CASE("isolate_roots: multiplicities from the squarefree split") {
  RootSet rs = isolate_roots(P("t^2 - 2*t + 1"));  // (t-1)^2
  REQUIRE(rs.roots.size() == 1);
  CHECK(rs.roots[0].multiplicity == 2);
  CHECK(rs.roots[0].center.real() == doctest::Approx(1.0));

  // t^2 (t-2)(t+2): zero root is exact with radius 0
  RootSet z = isolate_roots(P("t^4 - 4*t^2"));
  int total = 0;
  for (const auto& r : z.roots) total += r.multiplicity;
  CHECK(total == 4);
  bool saw_exact_zero = false;
  for (const auto& r : z.roots)
    if (r.center == std::complex<double>(0, 0) && r.radius == 0 && r.multiplicity == 2)
      saw_exact_zero = true;
  CHECK(saw_exact_zero);
}

TEST_CASE("isolate_roots: high degree cyclotomic stays certified") {
  RootSet rs = isolate_roots(sspec::exactpoly::cyclotomic(32));
  CHECK(rs.fully_certified);
  CHECK(rs.roots.size() == 16);
}

TEST_CASE("count_zeros_in_disk") {
  CHECK(count_zeros_in_disk(P("t^3 - 2*t^2"), {0, 0}, 0.5) == 2);  // t^2 (t-2)
  CHECK(count_zeros_in_disk(P("t^3 - 1"), {1, 0}, 0.1) == 1);
  // Phi_5: all roots on the unit circle
  CHECK(count_zeros_in_disk(sspec::exactpoly::cyclotomic(5), {0, 0}, 0.99) == 0);
  CHECK(count_zeros_in_disk(sspec::exactpoly::cyclotomic(5), {0, 0}, 1.001) == 4);
  // closed-disk boundary: root at distance exactly eps counts
  CHECK(count_zeros_in_disk(P("t - 1"), {0, 0}, 1.0) == 1);
  // monotone in eps
  IntPoly p = P("t^4 - 2*t^2 - 3");
  long prev = 0;
  for (double eps : {0.2, 0.7, 1.3, 2.6}) {
    long z = count_zeros_in_disk(p, {0.3, 0.1}, eps);
    CHECK(z >= prev);
    prev = z;
  }
}

TEST_CASE("mahler_measure: cyclotomic pin, golden ratio, Lehmer") {
  MahlerResult one = mahler_measure(sspec::exactpoly::cyclotomic(12) * P("t^2"));
  CHECK(one.exactly_one);
  CHECK(one.value == 1.0);

  MahlerResult g = mahler_measure(P("t^2 - t - 1"));
  CHECK(g.value == doctest::Approx(kGolden).epsilon(1e-9));
  CHECK(g.lower <= kGolden);
  CHECK(g.upper >= kGolden);
  CHECK(g.upper - g.lower < 1e-9);

  // Lehmer's polynomial
  MahlerResult l = mahler_measure(P("t^10 + t^9 - t^7 - t^6 - t^5 - t^4 - t^3 + t + 1"));
  CHECK(l.value == doctest::Approx(1.17628081825991750).epsilon(1e-8));

  // high-precision path agrees; enclosure tight to a few double ulps
  MahlerResult lh = mahler_measure(P("t^10 + t^9 - t^7 - t^6 - t^5 - t^4 - t^3 + t + 1"), true);
  CHECK(lh.value == doctest::Approx(l.value).epsilon(1e-12));
  CHECK(lh.upper - lh.lower < 1e-13);
}

TEST_CASE("mahler_measure: multiplicativity and the (1+lambda)^deg bound") {
  sspec::SplitMix64 rng(1234);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<sspec::exactpoly::Int> ca(4), cb(4);
    for (int i = 0; i < 3; ++i) {
      ca[static_cast<std::size_t>(i)] = static_cast<long>(rng.below(9)) - 4;
      cb[static_cast<std::size_t>(i)] = static_cast<long>(rng.below(9)) - 4;
    }
    ca[3] = 1;
    cb[3] = 1;
    IntPoly a{std::vector<sspec::exactpoly::Int>(ca)}, b{std::vector<sspec::exactpoly::Int>(cb)};
    MahlerResult ma = mahler_measure(a), mb = mahler_measure(b), mab = mahler_measure(a * b);
    CHECK(mab.value == doctest::Approx(ma.value * mb.value).epsilon(1e-8));
    // all roots within B(0, lambda): M <= (1+lambda)^deg
    double lambda = 0;
    for (const auto& r : isolate_roots(a * b).roots)
      lambda = std::max(lambda, std::abs(r.center) + r.radius);
    CHECK(mab.value <= std::pow(1 + lambda, (a * b).degree()) * (1 + 1e-9));
  }
}

TEST_CASE("separation_bound: plug-in value and the randomized inequality") {
  // p = t^2 - 2, t = 2: disc = 8, M = sqrt 2, bound = 8^{-1/2} (2 * 2)^{-1}
  double b = separation_bound(P("t^2 - 2"), {0, 0}, 2);
  CHECK(b == doctest::Approx(std::pow(8.0, -0.5) / 4.0).epsilon(1e-6));

  // t = n with disc term dropped: bound = (2 M^{2/n})^{-1}
  IntPoly p = P("t^2 - t - 1");
  double bc = separation_bound(p, {0, 0}, 2, true);
  CHECK(bc == doctest::Approx(1.0 / (2.0 * kGolden)).epsilon(1e-6));

  // randomized: the theorem inequality must hold with zero violations
  sspec::SplitMix64 rng(555);
  int tested = 0;
  while (tested < 150) {
    int deg = 2 + static_cast<int>(rng.below(7));
    std::vector<sspec::exactpoly::Int> c(static_cast<std::size_t>(deg) + 1);
    for (int i = 0; i < deg; ++i)
      c[static_cast<std::size_t>(i)] = static_cast<long>(rng.below(11)) - 5;
    c[static_cast<std::size_t>(deg)] = 1;
    IntPoly q{std::move(c)};
    if (sspec::exactpoly::discriminant(q) == 0) continue;
    std::complex<double> beta(3.0 * (static_cast<double>(rng.below(2000)) / 1000 - 1),
                              3.0 * (static_cast<double>(rng.below(2000)) / 1000 - 1));
    RootSet rs = isolate_roots(q);
    REQUIRE(rs.fully_certified);
    std::vector<double> dists;
    for (const auto& r : rs.roots) dists.push_back(std::abs(r.center - beta));
    std::sort(dists.begin(), dists.end());
    for (int t = 2; t <= deg; ++t) {
      double bound = separation_bound(q, beta, t);
      // max over any t distinct roots is minimized by the t nearest
      CHECK(dists[static_cast<std::size_t>(t - 1)] >= bound);
    }
    ++tested;
  }
}

TEST_CASE("certify_atom: integer atom at 0 from the cyclic(4) charpoly") {
  // chi of s + s^-1 on cyclic(4): t^4 - 4 t^2, proportion 1/2 at beta = 0
  std::vector<std::pair<IntPoly, long>> obs{{P("t^4 - 4*t^2"), 4}};
  AtomCertificate c = certify_atom(obs, {0, 0}, 2.0);
  CHECK(c.verdict == AtomCertificate::Verdict::Certified);
  CHECK(c.delta_prime == doctest::Approx(0.5));
  CHECK(c.degree_bound == 3);
  REQUIRE(c.minimal_poly.has_value());
  CHECK(*c.minimal_poly == P("t"));
}

TEST_CASE("certify_atom: golden-ratio conjugate from cyclic(5)") {
  // chi of s + s^-1 on cyclic(5): (t - 2)(t^2 + t - 1)^2
  IntPoly chi = P("t - 2") * P("t^2 + t - 1") * P("t^2 + t - 1");
  std::vector<std::pair<IntPoly, long>> obs{{chi, 5}};
  AtomCertificate c = certify_atom(obs, {(std::sqrt(5.0) - 1) / 2, 0}, 2.0);
  CHECK(c.verdict == AtomCertificate::Verdict::Certified);
  CHECK(c.delta_prime == doctest::Approx(0.4));
  CHECK(c.degree_bound == 4);
  REQUIRE(c.minimal_poly.has_value());
  CHECK(*c.minimal_poly == P("t^2 + t - 1"));

  // atom at 2 with small density still certifies algebraicity
  AtomCertificate c2 = certify_atom(obs, {2, 0}, 2.0);
  CHECK(c2.verdict == AtomCertificate::Verdict::Certified);
  REQUIRE(c2.minimal_poly.has_value());
  CHECK(*c2.minimal_poly == P("t - 2"));
}

TEST_CASE("certify_atom: rational non-integer is refuted") {
  IntPoly chi = P("t - 2") * P("t^2 + t - 1") * P("t^2 + t - 1");
  std::vector<std::pair<IntPoly, long>> obs{{chi, 5}, {chi * chi, 10}};
  AtomCertificate c = certify_atom(obs, {1.0 / 3.0, 0}, 2.0);
  CHECK(c.verdict == AtomCertificate::Verdict::Refuted);
}

TEST_CASE("enumerate_Pn") {
  using sspec::exactpoly::enumerate_Pn;
  auto p1 = enumerate_Pn(1, 1.0);
  REQUIRE(p1.size() == 3);  // t-1, t, t+1
  CHECK(p1[0] == P("t - 1"));
  CHECK(p1[1] == P("t"));
  CHECK(p1[2] == P("t + 1"));

  auto p_half = enumerate_Pn(1, 0.5);
  REQUIRE(p_half.size() == 1);
  CHECK(p_half[0] == P("t"));

  auto p2 = enumerate_Pn(2, 1.0);
  bool has_phi4 = false;
  for (const auto& q : p2) has_phi4 |= (q == P("t^2 + 1"));
  CHECK(has_phi4);
  // spot-check: degree <= 2 entries with conjugates in the unit disk are
  // exactly products of t and cyclotomics (Kronecker)
  for (const auto& q : p2) {
    if (q.degree() != 2) continue;
    IntPoly core = q;
    while (core.constant() == 0 && core.degree() > 0) {
      IntPoly quo;
      core.divide_exact(P("t"), quo);
      core = quo;
    }
    if (core.degree() == 0) continue;
    CHECK(sspec::exactpoly::cyclotomic_test(core) ==
          sspec::exactpoly::CyclotomicStatus::CyclotomicProduct);
  }
  CHECK_THROWS(enumerate_Pn(4, 100.0, 1000));  // budget
}
