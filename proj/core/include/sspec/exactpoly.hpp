#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sspec::exactpoly {

using Int = mpz_class;
using Rat = mpq_class;

/// Univariate polynomial with arbitrary-precision integer coefficients,
/// constant term first. The zero polynomial has an empty coefficient vector
/// and degree -1.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(Int constant);
  explicit IntPoly(long constant) : IntPoly(Int(constant)) {}
  explicit IntPoly(std::vector<Int> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly variable();                    // t
  static IntPoly monomial(Int coeff, int deg);  // coeff * t^deg

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  bool is_constant() const { return c_.size() <= 1; }

  /// Coefficient of t^k; zero beyond the degree.
  const Int& operator[](int k) const;
  const std::vector<Int>& coeffs() const { return c_; }
  const Int& leading() const;
  const Int& constant() const;

  bool operator==(const IntPoly& o) const { return c_ == o.c_; }
  bool operator!=(const IntPoly& o) const { return c_ != o.c_; }
  // Lexicographic on (degree, coefficients); a deterministic total order.
  bool operator<(const IntPoly& o) const;

  IntPoly operator-() const;
  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  IntPoly operator*(const Int& s) const;
  IntPoly& operator+=(const IntPoly& o) { return *this = *this + o; }
  IntPoly& operator-=(const IntPoly& o) { return *this = *this - o; }
  IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }

  IntPoly derivative() const;
  IntPoly pow(unsigned e) const;
  IntPoly shift_up(int k) const;  // * t^k
  /// p(-t)
  IntPoly compose_neg() const;
  /// Reverse of the coefficient vector: t^deg * p(1/t).
  IntPoly reversed() const;

  Int eval(const Int& x) const;

  /// Exact division test: if d | *this over Z, set q and return true.
  bool divide_exact(const IntPoly& d, IntPoly& q) const;
  /// Quotient/remainder by a monic divisor (exact integer arithmetic).
  void divmod_monic(const IntPoly& d, IntPoly& q, IntPoly& r) const;

  /// "t^4 - 4*t^2 + 1" rendering.
  std::string to_string() const;
  /// Parses the to_string format: signed integer literals, 't', '^', '*'.
  static IntPoly parse(const std::string& text);

 private:
  void normalize();
  std::vector<Int> c_;
};

Int content(const IntPoly& p);
IntPoly primitive_part(const IntPoly& p);
/// Primitive gcd with positive leading coefficient (subresultant PRS).
IntPoly gcd(const IntPoly& a, const IntPoly& b);
Int resultant(const IntPoly& a, const IntPoly& b);
/// disc(p) = (-1)^{n(n-1)/2} Res(p, p') / lc(p); exact. Requires degree >= 1.
Int discriminant(const IntPoly& p);

/// Factorization container: unit * remainder * prod factors[i].first^factors[i].second
/// reproduces the original exactly. Emitted factors are monic; whenever a
/// factor is produced by factor() it is irreducible over Z. The remainder
/// collects whatever a pipeline stage declined to split (monic, or 1).
struct FactoredPoly {
  int unit = 1;
  std::vector<std::pair<IntPoly, int>> factors;
  IntPoly remainder = IntPoly(1L);

  IntPoly expand() const;
  /// Multiplicity of a given monic factor, 0 if absent.
  int multiplicity_of(const IntPoly& p) const;
  void sort_factors();
};

/// Yun squarefree decomposition: factors are squarefree, pairwise coprime,
/// paired with their multiplicity in p.
FactoredPoly squarefree_decomposition(const IntPoly& p);
/// Product of the distinct irreducible factors (radical), monic for monic input.
IntPoly squarefree_part(const IntPoly& p);

inline constexpr int kDefaultDegreeCap = 24;

/// Full factorization pipeline over Z for monic p: content/primitive,
/// squarefree split, cyclotomic sweep, small linear factor extraction, then
/// Zassenhaus (Berlekamp mod p, Hensel lifting, subset recombination) on
/// pieces of degree <= degree_cap. Larger pieces go to the remainder after a
/// bounded-degree recombination pass that still extracts their linear and
/// quadratic factors.
FactoredPoly factor(const IntPoly& p, int degree_cap = kDefaultDegreeCap);

/// Largest m with p^m | q, by repeated exact division. p monic nonconstant.
int multiplicity(const IntPoly& p, const IntPoly& q);

/// k-th cyclotomic polynomial (memoized).
IntPoly cyclotomic(unsigned k);
unsigned euler_phi(unsigned n);
/// Largest k worth testing when sweeping factors of the given degree:
/// phi(k) >= sqrt(k/2), so phi(k) <= d forces k <= 2 d^2.
unsigned cyclotomic_sweep_limit(int degree);
/// If p is +-Phi_k for some k, returns k, else 0.
unsigned cyclotomic_index(const IntPoly& p);

enum class CyclotomicStatus { CyclotomicProduct, HasNonCyclotomicFactor };
/// Kronecker test: does every irreducible factor of p divide some t^k - 1?
/// Graeffe root-squaring cycle detection with an exact division sweep as the
/// complete fallback. Requires monic p with nonzero constant term.
CyclotomicStatus cyclotomic_test(const IntPoly& p);

/// All monic integer polynomials of degree in [1, n] whose roots all lie in
/// the closed disk |z| <= lambda. Coefficient k (from the leading end) is
/// enumerated within the Lemma bound binom(n,k) lambda^k; the root condition
/// is then checked with certified root isolation. Throws if the raw
/// enumeration count exceeds the budget.
std::vector<IntPoly> enumerate_Pn(int n, double lambda,
                                  std::uint64_t budget = 10'000'000);

}  // namespace sspec::exactpoly
