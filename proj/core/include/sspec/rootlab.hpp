#pragma once

#include "sspec/exactpoly.hpp"

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

namespace sspec::rootlab {

using exactpoly::IntPoly;

struct Root {
  std::complex<double> center;
  double radius = 0;     // certified inclusion radius: >= 1 true root inside
  int multiplicity = 1;
  bool certified = true;
};

/// Certified root approximations. Distinct roots carry pairwise disjoint
/// disks when fully_certified; multiplicities come from the squarefree
/// decomposition and sum to the source degree (zero roots included).
struct RootSet {
  std::vector<Root> roots;  // sorted by (re, im)
  int source_degree = 0;
  bool fully_certified = true;
};

/// Aberth-Ehrlich simultaneous iteration per squarefree factor, certified
/// inclusion radii via the deg * |p(z)/p'(z)| bound, GMP-float Newton
/// polishing until disks are disjoint and within target_radius.
RootSet isolate_roots(const IntPoly& p, double target_radius = 1e-12);

struct BoundaryAmbiguous : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IsolationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Z(beta, eps, p): roots of p inside the closed disk B(beta, eps), counted
/// with multiplicity. Straddling disks are refined at higher precision;
/// throws BoundaryAmbiguous when refinement cannot settle the boundary.
long count_zeros_in_disk(const IntPoly& p, std::complex<double> beta, double eps);

struct MahlerResult {
  double value = 1;
  double lower = 1, upper = 1;  // certified enclosure
  bool exactly_one = false;     // pinned by the Kronecker branch
};

/// M(p) = prod max(1, |root|) with multiplicity. Cyclotomic products (times
/// powers of t) return exactly 1. high_precision polishes the roots first.
MahlerResult mahler_measure(const IntPoly& p, bool high_precision = false);

/// The zero-separation lower bound
///   max_{i<=t} |alpha_i - beta| >= |disc(p)|^{-1/t(t-1)} (2 M^{2/n})^{-n(n-1)/t(t-1)}
/// for squarefree monic p and any t distinct roots. The value is uniform in
/// beta; the parameter is kept to mirror the statement being tested.
/// corollary_variant drops the |disc| term (valid for irreducible p over Z).
double separation_bound(const IntPoly& p, std::complex<double> beta, int t,
                        bool corollary_variant = false);

struct AtomCertificate {
  enum class Verdict { Certified, Refuted, Inconclusive };
  std::complex<double> beta{0, 0};
  double lambda = 0;
  double delta_prime = 0;  // stabilized cluster proportion
  double epsilon_used = 0;
  int degree_bound = 0;    // floor((2 - delta') / delta') when certified
  std::optional<IntPoly> minimal_poly;
  Verdict verdict = Verdict::Inconclusive;
  long certifying_scale = 0;
};

/// Finite-scale reading of the eta-criterion: iterates
/// delta' -> min-tail of Z(beta, eps(delta'), chi)/deg(chi) with
/// eps(d) = exp(-2 log(2 (1+lambda)^2) / d^2) until it stabilizes, then
/// hunts for a monic integer minimal polynomial of degree
/// <= floor((2-delta')/delta') vanishing inside the certified disk.
/// observations: (characteristic polynomial, scale), scales increasing.
AtomCertificate certify_atom(const std::vector<std::pair<IntPoly, long>>& observations,
                             std::complex<double> beta, double lambda);

/// eps(delta') threshold from the atom-certification argument.
double atom_epsilon_threshold(double delta_prime, double lambda);

}  // namespace sspec::rootlab
