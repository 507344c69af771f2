#pragma once

#include "sspec/groupring.hpp"
#include "sspec/rootlab.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sspec::spectra {

/// Full spectrum of a dense symmetric matrix (row-major), ascending order.
/// Householder reduction to tridiagonal form followed by the implicit-shift
/// QL iteration, eigenvalues only.
std::vector<double> symmetric_eigenvalues_dense(std::vector<double> a, long n);

/// Eigenvalues of the realized operator (integer matrix / denom).
/// Throws if the realized matrix is not symmetric.
std::vector<double> eigenvalues_symmetric(const groupring::RealizedMatrix& m);

struct Schedule {
  std::vector<long> scales;  // strictly increasing
  std::uint64_t seed = 0;
  void validate() const;
};

struct ComputeOptions {
  long exact_cap = 256;     // largest dimension for exact charpoly work
  int jobs = 1;             // parallel schedule evaluation
  bool high_precision = false;
  double tolerance = 1e-3;  // convergence diagnostics target
};

/// Query point: exact rational or algebraic (monic minimal polynomial plus a
/// root selector indexing the (re, im)-sorted roots).
struct LambdaSpec {
  enum class Kind { Rational, Algebraic };
  Kind kind = Kind::Rational;
  mpq_class rational = 0;
  exactpoly::IntPoly minpoly;
  int root_index = 0;

  static LambdaSpec from_rational(mpq_class q);
  static LambdaSpec algebraic(exactpoly::IntPoly minpoly, int root_index);
  std::complex<double> value() const;
  std::string to_string() const;
};

struct KernelPoint {
  long scale = 0;
  long dim = 0;       // realized dimension N
  long count = 0;     // dim ker(lambda - A) at this scale
  bool exact = true;  // charpoly-multiplicity path vs numeric counting
  mpq_class value;    // count / N
};

struct KernelTrace {
  std::vector<KernelPoint> points;
  double headline = 0;      // mean of the last <= 3 points
  double cesaro = 0;        // mean over all points
  bool non_cauchy = false;  // last-3 spread exceeds 10x the target tolerance
};

/// Theorem-4.3(ii) sequence dim ker(lambda - phi(A)) / N over the schedule.
/// Rational non-integer lambda short-circuits to 0 at every scale: a monic
/// integer characteristic polynomial has no such roots.
KernelTrace kernel_dim_sequence(const groupring::GroupRingMatrix& a, const LambdaSpec& lambda,
                                const Schedule& schedule, const ComputeOptions& opts = {});

struct SpectralSample {
  long scale = 0;
  long dim = 0;
  mpz_class denom = 1;
  bool self_adjoint = true;
  std::vector<double> eigenvalues;  // operator eigenvalues (of A*A when not self-adjoint)
  std::optional<exactpoly::IntPoly> charpoly;        // exact path only
  std::optional<exactpoly::FactoredPoly> factors;    // factorization of charpoly
};

SpectralSample sample_spectrum(const groupring::GroupRingMatrix& a, const groups::SoficMap& map,
                               const ComputeOptions& opts = {});
/// Schedule points are independent; runs them on opts.jobs threads.
std::vector<SpectralSample> sample_schedule(const groupring::GroupRingMatrix& a,
                                            const Schedule& schedule,
                                            const ComputeOptions& opts = {});

struct Atom {
  exactpoly::IntPoly minpoly;
  mpq_class weight = 0;  // per-root spectral mass, exact on the exact path
  std::vector<std::complex<double>> roots;
};

struct GaloisRow {
  exactpoly::IntPoly minpoly;
  std::vector<double> per_root_weights;
  double max_deviation = 0;
};

struct SpectralReport {
  double one_norm = 0;
  std::vector<Atom> atoms;
  std::vector<double> continuous_values;    // atom-stripped spectrum, top scale
  double continuous_mass = 0;               // fraction of total mass
  std::vector<double> polya_sup_distances;  // successive-scale CDF distances
  std::vector<GaloisRow> galois;
};

/// Atomic/continuous split: atoms take their minimal polynomials from the
/// certificates (or, on the exact path, from factors with stable density);
/// weights are multiplicity densities averaged over the top of the schedule;
/// the continuous part is the top sample with atom roots stripped.
SpectralReport decompose_spectrum(const std::vector<SpectralSample>& samples,
                                  const std::vector<rootlab::AtomCertificate>& certificates,
                                  double one_norm_bound);

/// Per-root kernel-density comparison across each atom's Galois orbit.
std::vector<GaloisRow> galois_conjugate_check(const std::vector<SpectralSample>& samples,
                                              const std::vector<Atom>& atoms,
                                              double one_norm_bound);

struct FkScalePoint {
  long scale = 0;
  double mahler = 0;        // Mahler measure of the atom-stripped charpoly
  double det_estimate = 0;  // normalized: M^(1/deg), the determinant estimate
  bool exact = true;
};

struct FkResult {
  std::vector<FkScalePoint> points;
  double running_max = 0;        // limsup-style over det_estimate
  bool flag_applicable = false;  // no atoms at 0, +-1 detected
  bool smyth_flag = false;       // running_max >= sqrt((1+sqrt5)/2) - 1e-6
};

inline constexpr double kSmythBound = 1.2720196495140689;  // sqrt((1+sqrt 5)/2)

/// Fuglede-Kadison determinant estimate per scale: Mahler measure of the
/// charpoly with the 0, +-1 atoms stripped (exact path) or the log-mean of
/// max(1, |eigenvalue|) outside the atom excisions (numeric path). The Smyth
/// flag needs 0, +-1 absent from the spectrum and throws if they are atoms.
FkResult fk_determinant(const groupring::GroupRingMatrix& a, const Schedule& schedule,
                        const ComputeOptions& opts = {}, bool want_flag = true);

/// sup_x |F_emp(x) - F(x)| for a sorted sample against a reference CDF.
double ks_distance(const std::vector<double>& sorted_values,
                   const std::function<double(double)>& cdf);

/// Pushforward of the unit-circle equilibrium measure under t + 1/t:
/// F(x) = 1 - arccos(x/2)/pi on [-2, 2].
double arcsine_cdf(double x);

}  // namespace sspec::spectra
