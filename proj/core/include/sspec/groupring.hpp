#pragma once

#include "sspec/groups.hpp"
#include "sspec/intmat.hpp"

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

namespace sspec::groupring {

using SpecPtr = std::shared_ptr<const groups::GroupSpec>;

struct Term {
  groups::Word word;       // canonical form
  std::vector<long> key;   // element key deciding term identity
  mpq_class coeff;         // exact rational, never zero
};

/// Formal rational combination of group elements. Terms are kept sorted by
/// element key with no zero coefficients; the coefficient ring tag (integer
/// vs rational) is derivable from the denominators.
class GroupRingElement {
 public:
  explicit GroupRingElement(SpecPtr spec) : spec_(std::move(spec)) {}
  static GroupRingElement zero(SpecPtr spec) { return GroupRingElement(std::move(spec)); }
  static GroupRingElement constant(SpecPtr spec, mpq_class c);
  static GroupRingElement from_word(SpecPtr spec, const groups::Word& w, mpq_class c);
  /// "2*a*b + 3 - a", "s + S", coefficients "p/q" allowed, uppercase = inverse.
  static GroupRingElement parse(SpecPtr spec, const std::string& text);

  const SpecPtr& spec() const { return spec_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_integer() const;  // all denominators 1

  GroupRingElement operator+(const GroupRingElement& o) const;
  GroupRingElement operator-(const GroupRingElement& o) const;
  GroupRingElement operator*(const GroupRingElement& o) const;
  GroupRingElement operator*(const mpq_class& s) const;
  GroupRingElement adjoint() const;  // words inverted, coefficients kept
  bool operator==(const GroupRingElement& o) const;

  /// Sum of |coefficients|.
  mpq_class one_norm() const;
  std::string to_string() const;

 private:
  void add_term(const groups::Word& w, const mpq_class& c);
  SpecPtr spec_;
  std::vector<Term> terms_;
};

class GroupRingMatrix {
 public:
  GroupRingMatrix(SpecPtr spec, long n);
  static GroupRingMatrix parse(SpecPtr spec, const std::vector<std::vector<std::string>>& entries);

  long size() const { return n_; }
  const SpecPtr& spec() const { return spec_; }
  const GroupRingElement& at(long i, long j) const;
  void set(long i, long j, GroupRingElement e);

  GroupRingMatrix operator+(const GroupRingMatrix& o) const;
  GroupRingMatrix operator*(const GroupRingMatrix& o) const;
  GroupRingMatrix adjoint() const;  // entrywise adjoint + transpose
  bool is_self_adjoint() const;
  bool is_integer() const;

 private:
  SpecPtr spec_;
  long n_;
  std::vector<GroupRingElement> entries_;
};

/// max over rows of sum_entries sum_terms |coefficient|; dominates the
/// realized operator norm at every scale.
mpq_class one_norm(const GroupRingMatrix& a);

/// Integer matrix realization of A through a sofic map: each group-ring
/// entry becomes a scale x scale sum of coefficient * permutation matrix;
/// rational coefficients are cleared by the least common denominator.
struct RealizedMatrix {
  long dim = 0;           // n * scale
  long block = 0;         // scale
  mpz_class denom = 1;    // D: entries are D * (true operator)
  exactpoly::SparseIntMat mat;
};

RealizedMatrix realize(const GroupRingMatrix& a, const groups::SoficMap& map);

/// rank(phi(xy) - phi(x)phi(y)) / scale, rank over Q via fraction-free
/// elimination. Zero for exact quotient maps.
mpq_class multiplicative_defect(const GroupRingElement& x, const GroupRingElement& y,
                                const groups::SoficMap& map);

/// Matrix Market coordinate format (integer, general).
std::string to_matrix_market(const RealizedMatrix& m);

}  // namespace sspec::groupring
