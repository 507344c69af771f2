#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace sspec::groups {

enum class Variant { FinitePerm, Cyclic, FreeAbelian, Free, Product };

/// A supported group presentation. Generator names are single lowercase
/// letters; in word strings the uppercase letter denotes the inverse
/// ("abA" = a b a^-1).
struct GroupSpec {
  Variant variant = Variant::Cyclic;
  long m = 1;                                    // cyclic modulus
  int rank = 0;                                  // free / free-abelian rank
  long points = 0;                               // finite-perm point count
  std::vector<std::vector<int>> perm_generators; // finite-perm images
  std::vector<GroupSpec> factors;                // product
  std::vector<std::string> generator_names;

  static GroupSpec cyclic(long m);
  static GroupSpec free_abelian(int d);
  static GroupSpec free_group(int k);
  static GroupSpec finite_perm(long points, std::vector<std::vector<int>> generators,
                               std::vector<std::string> names = {});
  static GroupSpec product(std::vector<GroupSpec> factors);

  int generator_count() const { return static_cast<int>(generator_names.size()); }
  int generator_index(char name) const;  // -1 if unknown
  void validate() const;
  bool operator==(const GroupSpec& o) const;
};

/// Letters are signed generator references: +k is generator k-1, -k its
/// inverse. canonical means the group normal form has been applied.
struct Word {
  std::vector<int> letters;
  bool canonical = false;

  static Word identity() { return Word{{}, true}; }
  bool empty() const { return letters.empty(); }
};

Word parse_word(const GroupSpec& spec, const std::string& text);
std::string word_to_string(const GroupSpec& spec, const Word& w);

/// Group normal form: residue exponent (cyclic), sorted exponent vector
/// (free-abelian), free reduction (free, finite-perm, product).
Word canonicalize(const GroupSpec& spec, const Word& w);
Word word_mul(const GroupSpec& spec, const Word& a, const Word& b);
Word word_inverse(const GroupSpec& spec, const Word& w);

/// Total-order key deciding equality of group elements: exponents for
/// abelian variants, reduced letters for free groups, the image permutation
/// for finite-perm, concatenated factor keys for products.
std::vector<long> element_key(const GroupSpec& spec, const Word& w);
bool is_identity(const GroupSpec& spec, const Word& w);

/// Generator-to-permutation assignment at one scale. Inverse generators are
/// stored explicitly and are exact inverses by construction.
struct SoficMap {
  long scale = 0;
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> gen_images;
  std::vector<std::vector<int>> gen_inverse_images;

  const std::vector<int>& image(int letter) const;  // signed letter
};

/// Natural finite scale: points for finite-perm (given action), m for
/// cyclic, product of factor scales for products. Throws for free and
/// free-abelian variants (their scale is caller-chosen).
long natural_scale(const GroupSpec& spec);

/// Order of the subgroup of S_points generated by a finite-perm spec,
/// enumerated breadth-first (throws if the budget is exceeded).
long finite_perm_group_order(const GroupSpec& spec, long budget = 2'000'000);

/// Concrete sofic approximations:
///  - cyclic(m): quotient C_m -> C_n for n | m (exact homomorphism);
///  - free-abelian(d): torus quotient at n = m0^d (exact homomorphism);
///  - free(k): k independent seeded Fisher-Yates permutations;
///  - finite-perm: the given action at n = points, or the regular
///    representation of the generated subgroup at n = its order;
///  - product: coordinatewise on the product of the factors' natural scales.
SoficMap build_sofic_map(const GroupSpec& spec, long n, std::uint64_t seed);

std::vector<int> word_evaluate(const GroupSpec& spec, const SoficMap& map, const Word& w);

struct DefectReport {
  struct PairStat {
    Word g, h;
    double multiplicativity = 1;  // #fix(phi(g)phi(h)phi(gh)^-1) / n
  };
  struct FreenessStat {
    Word g;
    double fixed_fraction = 0;  // #fix(phi(g)) / n
  };
  std::vector<PairStat> pairs;
  std::vector<FreenessStat> freeness;
};

DefectReport measure_defect(const GroupSpec& spec, const SoficMap& map,
                            const std::vector<Word>& test_set);

}  // namespace sspec::groups
