#pragma once

#include "sspec/spectra.hpp"

#include <string>
#include <vector>

namespace sspec::quantize {

using exactpoly::IntPoly;

/// t^deg(p) * p(t + 1/t), exact. Roots of p in [-2, 2] become conjugate
/// pairs on the unit circle; roots outside become real pairs (r, 1/r).
IntPoly kronecker_transform(const IntPoly& p);

/// 2cos(pi * num/den) with the fraction reduced, 0 <= num/den <= 1.
struct AtomPosition {
  long num = 0;
  long den = 1;
  double value = 2;
  mpq_class weight = 0;  // per-root spectral mass
  IntPoly minpoly;
};

struct QuantizationVerdict {
  enum class Regime { GridValue, NormAtLeastTwo, Indeterminate };
  Regime regime = Regime::Indeterminate;
  double norm_estimate = 0;   // numeric spectral-radius estimate (top scale)
  double enclosure = 0;       // radius on the numeric estimate
  long grid_q = 0;            // norm = 2cos(pi / grid_q) in the GridValue regime
  long lattice_q = 0;         // lcm of atom denominators
  std::vector<AtomPosition> atoms;
  std::vector<std::pair<long, double>> stripped_proportion;  // per scale
  std::vector<std::string> evidence;
};

/// Norm quantization below 2: strips factors with roots outside
/// [-2cos(phi), 2cos(phi)] (their density must vanish), pushes the survivors
/// through the Kronecker transform and the cyclotomic test, certifies atoms
/// on the 2cos(pi p/q) grid and snaps the norm to 2cos(pi/q).
QuantizationVerdict norm_quantize(const groupring::GroupRingMatrix& a,
                                  const spectra::Schedule& schedule,
                                  const spectra::ComputeOptions& opts = {});

struct Sqrt2Outcome {
  enum class Kind { ProjectionCase, NormAtLeastSqrt2, Violation };
  Kind kind = Kind::Violation;
  double norm_estimate = 0;
  bool spectrum_in_minus1_0_1 = false;
};

/// Either the norm is 1 and A^2 is a projection (spectrum in {-1, 0, 1}), or
/// the norm is at least sqrt(2). Violation must never fire.
Sqrt2Outcome sqrt2_gap_check(const groupring::GroupRingMatrix& a,
                             const spectra::Schedule& schedule,
                             const spectra::ComputeOptions& opts = {});

struct DiscrepancyReport {
  double alpha = 0, beta = 0;   // sector [alpha, beta], angles in (-pi, pi]
  int degree = 0;
  long roots_in_sector = 0;
  double observed = 0;          // proportion of roots with arg in the sector
  double uniform = 0;           // |alpha - beta| / 2 pi
  double l_value = 0;           // L(p) = |a0|^{-1/2} sum |a_i|
  double erdos_turan_bound = 0; // 16 sqrt(log L / deg)
  bool erdos_turan_holds = false;
  bool dubickas_applicable = false;  // 0 < log M / deg < 5/6, deg >= 2
  double log_mahler_over_deg = 0;
  double dubickas_bound = 0;    // 6 (log M/deg)^{1/3} log(deg / log M)
  bool dubickas_holds = false;
};

/// Angular root-distribution discrepancy against the uniform law, with the
/// Erdos-Turan bound and, where applicable, the Dubickas bound. In certified
/// mode the input must be irreducible (the bounds assume it).
DiscrepancyReport discrepancy_report(const IntPoly& p, double alpha, double beta,
                                     bool certified_mode = true);

struct SectorReport {
  double phi = 0, lambda = 0;
  bool cyclotomic_branch = false;
  double observed_delta = 0;     // proportion of roots in the double sector
  double mahler = 1;
  double mahler_bound = 1;       // lambda^{delta * deg}
  bool mahler_chain_holds = false;
  bool dubickas_applicable = false;
  double dubickas_bound = 0;
  bool contradiction_triggered = false;  // bound < phi / (2 pi)
};

/// Observed sector proportion plus the proof-side inequality chain for the
/// positive-sector-density lemma. Requires all roots on the unit circle or in
/// the sector {arg in [-phi, phi] u [pi-phi, pi+phi]}, moduli <= lambda.
SectorReport sector_proportion_bound(const IntPoly& p, double phi, double lambda);

struct EquilibriumReport {
  bool applicable = false;
  std::string refusal;
  double ks_distance = 1;
  double continuous_mass = 0;
  double mahler_delta = 0;  // log M(q) / (log lambda_kron * deg q); 0 on the circle
};

/// Kolmogorov-Smirnov distance of the continuous part against the arcsine
/// law on [-2, 2] (pushforward of the circle equilibrium measure under
/// t + 1/t), plus the Mahler zero-sequence diagnostic.
EquilibriumReport equilibrium_check(const spectra::SpectralReport& report, double one_norm);

}  // namespace sspec::quantize
