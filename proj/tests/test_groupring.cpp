#include "doctest.h"

#include "sspec/groupring.hpp"
#include "sspec/util.hpp"

#include <memory>

using namespace sspec::groupring;
using namespace sspec::groups;
using sspec::exactpoly::Int;

namespace {
SpecPtr make(GroupSpec s) { return std::make_shared<const GroupSpec>(std::move(s)); }
}  // namespace

TEST_CASE("parse and print group-ring elements") {
  SpecPtr c2 = make(GroupSpec::cyclic(2));
  GroupRingElement e = GroupRingElement::parse(c2, "1 + s");
  CHECK(e.to_string() == "1 + s");
  CHECK(e.is_integer());

  SpecPtr f2 = make(GroupSpec::free_group(2));
  GroupRingElement g = GroupRingElement::parse(f2, "2*a*b + 3 - a");
  CHECK(g.one_norm() == 6);
  CHECK(g.terms().size() == 3);

  GroupRingElement h = GroupRingElement::parse(f2, "1/2*a + 1/2*A");
  CHECK_FALSE(h.is_integer());
  CHECK(h.one_norm() == 1);

  // uppercase inverse, exponent syntax
  SpecPtr c12 = make(GroupSpec::cyclic(12));
  GroupRingElement p = GroupRingElement::parse(c12, "s + S");
  CHECK(p == GroupRingElement::parse(c12, "s + s^-1"));
  CHECK(GroupRingElement::parse(c12, "s^3") ==
        GroupRingElement::parse(c12, "s*s*s"));
  CHECK_THROWS(GroupRingElement::parse(c12, "q + 1"));
}

TEST_CASE("ring operations: spec examples") {
  // (s + s^-1)* = s^-1 + s
  SpecPtr c5 = make(GroupSpec::cyclic(5));
  GroupRingElement x = GroupRingElement::parse(c5, "s + S");
  CHECK(x.adjoint() == x);

  // cyclic(2): (1 + s)(1 + s) = 2 + 2s
  SpecPtr c2 = make(GroupSpec::cyclic(2));
  GroupRingElement y = GroupRingElement::parse(c2, "1 + s");
  CHECK(y * y == GroupRingElement::parse(c2, "2 + 2*s"));

  // free(2): (a + b)(a^-1 + b^-1) = 2 + a b^-1 + b a^-1
  SpecPtr f2 = make(GroupSpec::free_group(2));
  GroupRingElement u = GroupRingElement::parse(f2, "a + b");
  GroupRingElement v = GroupRingElement::parse(f2, "A + B");
  CHECK(u * v == GroupRingElement::parse(f2, "2 + a*B + b*A"));

  // adjoint anti-homomorphism (xy)* = y* x*
  GroupRingElement w = GroupRingElement::parse(f2, "a + 2*b*a - 3");
  CHECK((u * w).adjoint() == w.adjoint() * u.adjoint());

  // mixed contexts rejected (structurally identical specs are the same group)
  CHECK_NOTHROW(u + GroupRingElement::parse(make(GroupSpec::free_group(2)), "a"));
  CHECK_THROWS(x + GroupRingElement::parse(c2, "s"));
}

TEST_CASE("one_norm") {
  SpecPtr c4 = make(GroupSpec::cyclic(4));
  GroupRingMatrix a(c4, 1);
  a.set(0, 0, GroupRingElement::parse(c4, "s + S"));
  CHECK(one_norm(a) == 2);

  GroupRingMatrix z(c4, 2);
  CHECK(one_norm(z) == 0);

  // [[s, 1+s],[0, 3 s^2]]: max(1+2, 3) = 3
  GroupRingMatrix m(c4, 2);
  m.set(0, 0, GroupRingElement::parse(c4, "s"));
  m.set(0, 1, GroupRingElement::parse(c4, "1 + s"));
  m.set(1, 1, GroupRingElement::parse(c4, "3*s^2"));
  CHECK(one_norm(m) == 3);
}

TEST_CASE("realize: cyclic permutation blocks") {
  SpecPtr c3 = make(GroupSpec::cyclic(3));
  GroupRingMatrix a(c3, 1);
  a.set(0, 0, GroupRingElement::parse(c3, "s"));
  SoficMap map = build_sofic_map(*c3, 3, 0);
  RealizedMatrix r = realize(a, map);
  CHECK(r.dim == 3);
  CHECK(r.denom == 1);
  // permutation matrix of the 3-cycle: entry (sigma(x), x) = 1
  CHECK(r.mat.at(1, 0) == 1);
  CHECK(r.mat.at(2, 1) == 1);
  CHECK(r.mat.at(0, 2) == 1);
  CHECK(r.mat.nnz() == 3);

  // circulant of s + s^-1 on cyclic(4)
  SpecPtr c4 = make(GroupSpec::cyclic(4));
  GroupRingMatrix b(c4, 1);
  b.set(0, 0, GroupRingElement::parse(c4, "s + S"));
  RealizedMatrix rb = realize(b, build_sofic_map(*c4, 4, 0));
  for (long i = 0; i < 4; ++i) {
    CHECK(rb.mat.at((i + 1) % 4, i) == 1);
    CHECK(rb.mat.at((i + 3) % 4, i) == 1);
  }
  CHECK(rb.mat.is_symmetric());
}

TEST_CASE("realize: denominator clearing") {
  SpecPtr c2 = make(GroupSpec::cyclic(2));
  GroupRingMatrix a(c2, 1);
  a.set(0, 0, GroupRingElement::parse(c2, "1/2 + 1/3*s"));
  RealizedMatrix r = realize(a, build_sofic_map(*c2, 2, 0));
  CHECK(r.denom == 6);
  CHECK(r.mat.at(0, 0) == 3);
  CHECK(r.mat.at(1, 0) == 2);
}

TEST_CASE("realize: linearity and adjoint-transpose") {
  SpecPtr f2 = make(GroupSpec::free_group(2));
  SoficMap map = build_sofic_map(*f2, 40, 11);
  GroupRingElement x = GroupRingElement::parse(f2, "a + 2*b - 3*a*b");
  GroupRingElement y = GroupRingElement::parse(f2, "1 - b*A");
  auto realize1 = [&](const GroupRingElement& e) {
    GroupRingMatrix m(f2, 1);
    m.set(0, 0, e);
    return realize(m, map);
  };
  RealizedMatrix rx = realize1(x), ry = realize1(y), rsum = realize1(x + y);
  CHECK(rsum.mat.add_scaled(rx.mat.add_scaled(ry.mat, Int(1)), Int(-1)).nnz() == 0);

  // adjoint realizes to the transpose
  RealizedMatrix radj = realize1(x.adjoint());
  CHECK(radj.mat.add_scaled(rx.mat.transpose(), Int(-1)).nnz() == 0);

  // self-adjoint element realizes symmetric
  GroupRingElement sa = x + x.adjoint();
  CHECK(realize1(sa).mat.is_symmetric());
}

TEST_CASE("self-adjoint matrix over free(2) realizes symmetric") {
  SpecPtr f2 = make(GroupSpec::free_group(2));
  GroupRingMatrix m(f2, 2);
  m.set(0, 0, GroupRingElement::parse(f2, "a + A"));
  m.set(0, 1, GroupRingElement::parse(f2, "1 + 2*a*b"));
  m.set(1, 0, GroupRingElement::parse(f2, "1 + 2*B*A"));
  m.set(1, 1, GroupRingElement::parse(f2, "b + B"));
  CHECK(m.is_self_adjoint());
  RealizedMatrix r = realize(m, build_sofic_map(*f2, 25, 3));
  CHECK(r.dim == 50);
  CHECK(r.mat.is_symmetric());
}

TEST_CASE("multiplicative_defect") {
  // exact quotient: zero defect for all pairs
  SpecPtr c6 = make(GroupSpec::cyclic(6));
  SoficMap m6 = build_sofic_map(*c6, 6, 0);
  GroupRingElement x = GroupRingElement::parse(c6, "1 + 2*s - s^3");
  GroupRingElement y = GroupRingElement::parse(c6, "s^2 - 5");
  CHECK(multiplicative_defect(x, y, m6) == 0);

  // free group: inverse pairs are exact
  SpecPtr f2 = make(GroupSpec::free_group(2));
  SoficMap mf = build_sofic_map(*f2, 60, 17);
  GroupRingElement a = GroupRingElement::parse(f2, "a");
  GroupRingElement ai = GroupRingElement::parse(f2, "A");
  CHECK(multiplicative_defect(a, ai, mf) == 0);

  // words evaluated as products stay exact too
  GroupRingElement b = GroupRingElement::parse(f2, "b");
  CHECK(multiplicative_defect(a, b, mf) == 0);

  // a genuinely non-multiplicative case: x = a + A, y = a (the sum maps to
  // a sum of permutation matrices, products pick up rank defects)
  GroupRingElement s = GroupRingElement::parse(f2, "a + A");
  mpq_class d = multiplicative_defect(s, s, mf);
  CHECK(d >= 0);
  CHECK(d <= 1);
}

TEST_CASE("matrix market export") {
  SpecPtr c2 = make(GroupSpec::cyclic(2));
  GroupRingMatrix a(c2, 1);
  a.set(0, 0, GroupRingElement::parse(c2, "1 + s"));
  std::string mm = to_matrix_market(realize(a, build_sofic_map(*c2, 2, 0)));
  CHECK(mm.find("%%MatrixMarket matrix coordinate integer general") == 0);
  CHECK(mm.find("2 2 4") != std::string::npos);
}
