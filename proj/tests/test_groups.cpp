#include "doctest.h"

#include "sspec/groups.hpp"
#include "sspec/util.hpp"

using namespace sspec::groups;

namespace {
std::vector<int> eval(const GroupSpec& s, const SoficMap& m, const std::string& w) {
  return word_evaluate(s, m, parse_word(s, w));
}
}  // namespace

TEST_CASE("spec validation") {
  CHECK_THROWS(GroupSpec::cyclic(0));
  CHECK_THROWS(GroupSpec::free_group(0));
  CHECK_THROWS(GroupSpec::finite_perm(3, {{0, 1}}));        // wrong point count
  CHECK_THROWS(GroupSpec::finite_perm(2, {{0, 0}}));        // not a permutation
  CHECK_NOTHROW(GroupSpec::finite_perm(3, {{1, 2, 0}}));
}

TEST_CASE("word parsing and canonical forms") {
  GroupSpec f2 = GroupSpec::free_group(2);
  Word w = parse_word(f2, "abA");
  CHECK(word_to_string(f2, w) == "abA");
  // free reduction
  CHECK(word_to_string(f2, parse_word(f2, "aA")) == "e");
  CHECK(word_to_string(f2, parse_word(f2, "abBA")) == "e");
  CHECK(word_to_string(f2, parse_word(f2, "abBaA")) == "a");

  GroupSpec c5 = GroupSpec::cyclic(5);
  CHECK(element_key(c5, parse_word(c5, "ssssss")) == std::vector<long>{1});
  CHECK(element_key(c5, parse_word(c5, "S")) == std::vector<long>{4});
  CHECK(is_identity(c5, parse_word(c5, "sssss")));

  GroupSpec z2 = GroupSpec::free_abelian(2);
  CHECK(element_key(z2, parse_word(z2, "ba")) == element_key(z2, parse_word(z2, "ab")));
  CHECK(element_key(z2, parse_word(z2, "abA")) == element_key(z2, parse_word(z2, "b")));
}

TEST_CASE("word algebra") {
  GroupSpec f2 = GroupSpec::free_group(2);
  Word a = parse_word(f2, "ab"), b = parse_word(f2, "Ba");
  CHECK(word_to_string(f2, word_mul(f2, a, b)) == "aa");
  CHECK(is_identity(f2, word_mul(f2, a, word_inverse(f2, a))));
}

TEST_CASE("build_sofic_map: cyclic quotient is the regular representation") {
  GroupSpec c5 = GroupSpec::cyclic(5);
  SoficMap m = build_sofic_map(c5, 5, 0);
  CHECK(eval(c5, m, "s") == std::vector<int>{1, 2, 3, 4, 0});
  CHECK(word_evaluate(c5, m, Word::identity()) == std::vector<int>{0, 1, 2, 3, 4});
  CHECK_THROWS(build_sofic_map(c5, 3, 0));
  // divisor quotient
  GroupSpec c6 = GroupSpec::cyclic(6);
  SoficMap q = build_sofic_map(c6, 3, 0);
  CHECK(eval(c6, q, "sss") == std::vector<int>{0, 1, 2});
}

TEST_CASE("build_sofic_map: free-abelian torus, exact homomorphism") {
  GroupSpec z2 = GroupSpec::free_abelian(2);
  SoficMap m = build_sofic_map(z2, 9, 0);
  CHECK(m.scale == 9);
  CHECK_THROWS(build_sofic_map(z2, 8, 0));
  // generators commute exactly
  CHECK(eval(z2, m, "ab") == eval(z2, m, "ba"));
  DefectReport r = measure_defect(z2, m, {parse_word(z2, "a"), parse_word(z2, "b"),
                                          parse_word(z2, "ab")});
  for (const auto& p : r.pairs) CHECK(p.multiplicativity == 1.0);
}

TEST_CASE("build_sofic_map: free group random permutations are reproducible") {
  GroupSpec f2 = GroupSpec::free_group(2);
  SoficMap m1 = build_sofic_map(f2, 100, 7);
  SoficMap m2 = build_sofic_map(f2, 100, 7);
  CHECK(m1.gen_images == m2.gen_images);
  SoficMap m3 = build_sofic_map(f2, 100, 8);
  CHECK(m1.gen_images != m3.gen_images);
  // inverse images really are inverses
  const auto& g = m1.gen_images[0];
  const auto& gi = m1.gen_inverse_images[0];
  for (int x = 0; x < 100; ++x) CHECK(gi[static_cast<std::size_t>(g[static_cast<std::size_t>(x)])] == x);
}

TEST_CASE("word_evaluate: composition against independent permutation oracle") {
  GroupSpec f2 = GroupSpec::free_group(2);
  SoficMap m = build_sofic_map(f2, 50, 42);
  // aba^-1b^-1 composed by hand
  auto a = m.gen_images[0];
  auto b = m.gen_images[1];
  auto ai = m.gen_inverse_images[0];
  auto bi = m.gen_inverse_images[1];
  std::vector<int> expect(50);
  for (int x = 0; x < 50; ++x)
    expect[static_cast<std::size_t>(x)] =
        a[static_cast<std::size_t>(b[static_cast<std::size_t>(
            ai[static_cast<std::size_t>(bi[static_cast<std::size_t>(x)])])])];
  CHECK(eval(f2, m, "abAB") == expect);
  // empty word -> identity
  std::vector<int> id(50);
  for (int x = 0; x < 50; ++x) id[static_cast<std::size_t>(x)] = x;
  CHECK(word_evaluate(f2, m, Word::identity()) == id);
}

TEST_CASE("exact homomorphism property: eval(w1 w2) = eval(w1) o eval(w2)") {
  GroupSpec c12 = GroupSpec::cyclic(12);
  SoficMap m = build_sofic_map(c12, 12, 0);
  sspec::SplitMix64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::string w1(1 + rng.below(5), 's'), w2(1 + rng.below(5), 's');
    auto e1 = eval(c12, m, w1), e2 = eval(c12, m, w2);
    auto both = eval(c12, m, w1 + w2);
    for (int x = 0; x < 12; ++x)
      CHECK(both[static_cast<std::size_t>(x)] ==
            e1[static_cast<std::size_t>(e2[static_cast<std::size_t>(x)])]);
  }
}

TEST_CASE("measure_defect: cyclic quotient exactness and freeness") {
  GroupSpec c4 = GroupSpec::cyclic(4);
  SoficMap m = build_sofic_map(c4, 4, 0);
  std::vector<Word> F{parse_word(c4, "s"), parse_word(c4, "ss"), parse_word(c4, "ssss")};
  DefectReport r = measure_defect(c4, m, F);
  for (const auto& p : r.pairs) CHECK(p.multiplicativity == 1.0);
  // s and s^2 are fixed-point free; s^4 = e excluded from freeness list
  REQUIRE(r.freeness.size() == 2);
  for (const auto& f : r.freeness) CHECK(f.fixed_fraction == 0.0);
  // identity-only F: empty freeness
  DefectReport r2 = measure_defect(c4, m, {parse_word(c4, "ssss")});
  CHECK(r2.freeness.empty());
}

TEST_CASE("free(2) random maps: defect concentrated on relators, not products") {
  GroupSpec f2 = GroupSpec::free_group(2);
  SoficMap m = build_sofic_map(f2, 1000, 3);
  std::vector<Word> F{parse_word(f2, "a"), parse_word(f2, "b"), parse_word(f2, "ab")};
  DefectReport r = measure_defect(f2, m, F);
  // images are defined as products, multiplicativity is exact
  for (const auto& p : r.pairs) CHECK(p.multiplicativity == 1.0);
  for (const auto& f : r.freeness) CHECK(f.fixed_fraction <= 0.02);
}

TEST_CASE("free(k) mean fixed-point fraction over 100 seeds is <= 3/n") {
  GroupSpec f2 = GroupSpec::free_group(2);
  const long n = 1000;
  double total_a = 0, total_b = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SoficMap m = build_sofic_map(f2, n, seed);
    long fa = 0, fb = 0;
    for (long x = 0; x < n; ++x) {
      if (m.gen_images[0][static_cast<std::size_t>(x)] == x) ++fa;
      if (m.gen_images[1][static_cast<std::size_t>(x)] == x) ++fb;
    }
    total_a += static_cast<double>(fa) / n;
    total_b += static_cast<double>(fb) / n;
  }
  CHECK(total_a / 100 <= 3.0 / n);
  CHECK(total_b / 100 <= 3.0 / n);
}

TEST_CASE("finite_perm: given action and regular representation") {
  // S_3 generated by a 3-cycle and a transposition
  GroupSpec s3 = GroupSpec::finite_perm(3, {{1, 2, 0}, {1, 0, 2}});
  CHECK(finite_perm_group_order(s3) == 6);
  SoficMap given = build_sofic_map(s3, 3, 0);
  CHECK(given.scale == 3);
  SoficMap reg = build_sofic_map(s3, 6, 0);
  CHECK(reg.scale == 6);
  // regular representation of any non-identity element is fixed-point free
  DefectReport r = measure_defect(s3, reg, {parse_word(s3, "a"), parse_word(s3, "b"),
                                            parse_word(s3, "ab")});
  for (const auto& f : r.freeness) CHECK(f.fixed_fraction == 0.0);
  for (const auto& p : r.pairs) CHECK(p.multiplicativity == 1.0);
  CHECK_THROWS(build_sofic_map(s3, 4, 0));
}

TEST_CASE("product groups compose coordinatewise") {
  GroupSpec prod = GroupSpec::product({GroupSpec::cyclic(2), GroupSpec::cyclic(3)});
  CHECK(natural_scale(prod) == 6);
  SoficMap m = build_sofic_map(prod, 6, 0);
  // generator a (first factor) and b (second factor) commute
  CHECK(eval(prod, m, "ab") == eval(prod, m, "ba"));
  DefectReport r = measure_defect(prod, m, {parse_word(prod, "a"), parse_word(prod, "b")});
  for (const auto& p : r.pairs) CHECK(p.multiplicativity == 1.0);
  // C2 x C3 is cyclic of order 6: ab has order 6, acts freely
  for (const auto& f : r.freeness) CHECK(f.fixed_fraction == 0.0);
}
