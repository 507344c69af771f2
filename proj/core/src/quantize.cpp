#include "sspec/quantize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sspec::quantize {

using exactpoly::FactoredPoly;
using exactpoly::Int;
using spectra::SpectralSample;

IntPoly kronecker_transform(const IntPoly& p) {
  if (!p.is_monic()) throw std::invalid_argument("kronecker_transform needs a monic polynomial");
  const int d = p.degree();
  // t^d p(t + 1/t) = sum_k c_k t^{d-k} (t^2 + 1)^k
  IntPoly tsq_plus_1({1, 0, 1});
  IntPoly out;
  IntPoly power(1L);  // (t^2+1)^k
  for (int k = 0; k <= d; ++k) {
    if (p[k] != 0) out += power.shift_up(d - k) * p[k];
    if (k < d) power *= tsq_plus_1;
  }
  return out;
}

namespace {

long gcd_long(long a, long b) {
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

// positions 2cos(pi p/q) of the roots of the minimal polynomial attached to
// Phi_k (k >= 3: fractions 2j/k for j coprime to k, j < k/2)
std::vector<std::pair<long, long>> grid_fractions_for(unsigned k) {
  std::vector<std::pair<long, long>> out;
  if (k == 1) {
    out.emplace_back(0, 1);  // 2cos(0) = 2
    return out;
  }
  if (k == 2) {
    out.emplace_back(1, 1);  // 2cos(pi) = -2
    return out;
  }
  for (unsigned j = 1; 2 * j < k; ++j) {
    if (gcd_long(static_cast<long>(j), static_cast<long>(k)) != 1) continue;
    long num = 2 * static_cast<long>(j), den = static_cast<long>(k);
    long g = gcd_long(num, den);
    out.emplace_back(num / g, den / g);
  }
  return out;
}

double solver_enclosure(double one_norm) { return 1e-9 * std::max(1.0, one_norm); }

// exact per-root density of the (operator-scale) factor p in the sample
mpq_class density_of(const SpectralSample& s, const IntPoly& p) {
  if (!s.factors || s.denom != 1) return 0;
  mpq_class q(s.factors->multiplicity_of(p), s.dim);
  q.canonicalize();
  return q;
}

}  // namespace

QuantizationVerdict norm_quantize(const groupring::GroupRingMatrix& a,
                                  const spectra::Schedule& schedule,
                                  const spectra::ComputeOptions& opts) {
  if (!a.is_self_adjoint()) throw std::invalid_argument("norm_quantize needs a self-adjoint operator");
  QuantizationVerdict verdict;
  const double norm_bound = groupring::one_norm(a).get_d();
  if (norm_bound == 0) throw std::invalid_argument("norm_quantize: zero operator");

  std::vector<SpectralSample> samples = spectra::sample_schedule(a, schedule, opts);
  const SpectralSample& top = samples.back();
  double radius = 0;
  for (double x : top.eigenvalues) radius = std::max(radius, std::fabs(x));
  verdict.norm_estimate = radius;
  verdict.enclosure = solver_enclosure(norm_bound);

  if (radius >= 2.0 - verdict.enclosure - 1e-9) {
    verdict.regime = QuantizationVerdict::Regime::NormAtLeastTwo;
    verdict.evidence.push_back("spectral radius estimate reaches 2 within tolerance");
    return verdict;
  }

  // exact certification path
  std::vector<const SpectralSample*> exact;
  for (const auto& s : samples)
    if (s.factors && s.denom == 1) exact.push_back(&s);
  if (!exact.empty()) {
    const SpectralSample& cert = *exact.back();
    const double cut = (radius + 2.0) / 2.0;  // 2cos(phi): midpoint of estimate and 2

    // strip factors with any certified root outside [-cut, cut]
    std::vector<IntPoly> survivors;
    for (const auto& [f, mult] : cert.factors->factors) {
      (void)mult;
      rootlab::RootSet rs = rootlab::isolate_roots(f);
      bool outside = false;
      for (const auto& r : rs.roots)
        if (std::abs(r.center) - r.radius > cut) outside = true;
      if (!outside) survivors.push_back(f);
    }
    // stripped proportion per exact scale
    for (const SpectralSample* s : exact) {
      mpq_class stripped = 0;
      for (const auto& [f, mult] : s->factors->factors) {
        (void)mult;
        if (std::find(survivors.begin(), survivors.end(), f) == survivors.end())
          stripped += density_of(*s, f) * f.degree();
      }
      verdict.stripped_proportion.emplace_back(s->scale, stripped.get_d());
    }

    bool all_cyclotomic = true;
    std::size_t avg_from = exact.size() > 3 ? exact.size() - 3 : 0;
    for (const IntPoly& f : survivors) {
      IntPoly kf = kronecker_transform(f);
      auto status = exactpoly::cyclotomic_test(kf);
      if (status != exactpoly::CyclotomicStatus::CyclotomicProduct) {
        all_cyclotomic = false;
        verdict.evidence.push_back("non-cyclotomic Kronecker transform: " + f.to_string());
        continue;
      }
      verdict.evidence.push_back("cyclotomic: transform of " + f.to_string());
      // identify the cyclotomic index: deg kf = phi(k)
      unsigned k_found = 0;
      unsigned limit = exactpoly::cyclotomic_sweep_limit(kf.degree());
      for (unsigned k = 1; k <= limit; ++k) {
        if (static_cast<int>(exactpoly::euler_phi(k)) != kf.degree()) continue;
        if (exactpoly::cyclotomic(k) == kf) {
          k_found = k;
          break;
        }
      }
      if (k_found == 0) {
        // t -+ 2 transform to Phi_1^2 / Phi_2^2
        if (kf == exactpoly::cyclotomic(1) * exactpoly::cyclotomic(1)) k_found = 1;
        if (kf == exactpoly::cyclotomic(2) * exactpoly::cyclotomic(2)) k_found = 2;
      }
      if (k_found == 0) {
        all_cyclotomic = false;
        verdict.evidence.push_back("could not identify the cyclotomic index of " + f.to_string());
        continue;
      }
      mpq_class weight = 0;
      long used = 0;
      for (std::size_t i = avg_from; i < exact.size(); ++i) {
        weight += density_of(*exact[i], f);
        ++used;
      }
      weight /= used;
      weight.canonicalize();
      for (auto [num, den] : grid_fractions_for(k_found)) {
        AtomPosition atom;
        atom.num = num;
        atom.den = den;
        atom.value = 2.0 * std::cos(M_PI * static_cast<double>(num) / static_cast<double>(den));
        atom.weight = weight;
        atom.minpoly = f;
        verdict.atoms.push_back(std::move(atom));
      }
    }

    if (all_cyclotomic && !verdict.atoms.empty()) {
      // norm = max |2cos(pi p/q)| = 2cos(pi r) for r = min min(p/q, 1 - p/q)
      long rn = 1, rd = 1;  // r = 1 -> value -2 magnitude 2 (sentinel max)
      rn = verdict.atoms[0].num;
      rd = verdict.atoms[0].den;
      auto mag_frac = [](long n, long d) {  // min(n/d, 1 - n/d) as a pair
        if (2 * n <= d) return std::make_pair(n, d);
        long nn = d - n;
        long g = gcd_long(nn, d);
        return std::make_pair(nn / g, d / g);
      };
      auto [bn, bd] = mag_frac(verdict.atoms[0].num, verdict.atoms[0].den);
      for (const auto& atom : verdict.atoms) {
        auto [n2, d2] = mag_frac(atom.num, atom.den);
        if (static_cast<long long>(n2) * bd < static_cast<long long>(bn) * d2) {
          bn = n2;
          bd = d2;
        }
      }
      (void)rn;
      (void)rd;
      long lattice = 1;
      for (const auto& atom : verdict.atoms) lattice = lattice / gcd_long(lattice, atom.den) * atom.den;
      verdict.lattice_q = lattice;
      double exact_norm = 2.0 * std::cos(M_PI * static_cast<double>(bn) / static_cast<double>(bd));
      if (bn == 1 && std::fabs(exact_norm - radius) <= verdict.enclosure + 1e-6) {
        verdict.grid_q = bd;
        verdict.norm_estimate = exact_norm;
        verdict.regime = QuantizationVerdict::Regime::GridValue;
      } else {
        verdict.regime = QuantizationVerdict::Regime::Indeterminate;
        verdict.evidence.push_back("largest atom magnitude is not of the form 2cos(pi/q)");
      }
      return verdict;
    }
    if (!all_cyclotomic) {
      verdict.regime = QuantizationVerdict::Regime::Indeterminate;
      return verdict;
    }
  }

  // numeric snapping fallback: nearest grid point within min(gap/4, 1e-6)
  for (long q = 200; q >= 3; --q) {
    double v = 2.0 * std::cos(M_PI / static_cast<double>(q));
    double next = 2.0 * std::cos(M_PI / static_cast<double>(q + 1));
    double gap = next - v;
    double tol = std::min(gap / 4.0, 1e-6);
    if (std::fabs(radius - v) <= tol) {
      verdict.grid_q = q;
      verdict.regime = QuantizationVerdict::Regime::GridValue;
      verdict.evidence.push_back("numeric snap to 2cos(pi/q)");
      return verdict;
    }
  }
  verdict.regime = QuantizationVerdict::Regime::Indeterminate;
  verdict.evidence.push_back("no exact path and no grid point within the snapping tolerance");
  return verdict;
}

Sqrt2Outcome sqrt2_gap_check(const groupring::GroupRingMatrix& a,
                             const spectra::Schedule& schedule,
                             const spectra::ComputeOptions& opts) {
  if (!a.is_self_adjoint())
    throw std::invalid_argument("sqrt2_gap_check needs a self-adjoint operator");
  const double norm_bound = groupring::one_norm(a).get_d();
  if (norm_bound == 0) throw std::invalid_argument("sqrt2_gap_check: zero operator");
  std::vector<SpectralSample> samples = spectra::sample_schedule(a, schedule, opts);
  const SpectralSample& top = samples.back();
  double radius = 0;
  for (double x : top.eigenvalues) radius = std::max(radius, std::fabs(x));
  double tol = solver_enclosure(norm_bound) + 1e-9;

  Sqrt2Outcome out;
  out.norm_estimate = radius;
  if (std::fabs(radius - 1.0) <= tol) {
    // verify spectrum within {-1, 0, 1}
    bool ok = true;
    if (top.factors && top.denom == 1) {
      for (const auto& [f, m] : top.factors->factors) {
        (void)m;
        if (!(f == IntPoly({0, 1}) || f == IntPoly({-1, 1}) || f == IntPoly({1, 1}))) ok = false;
      }
    } else {
      for (double x : top.eigenvalues)
        if (std::fabs(x) > tol && std::fabs(std::fabs(x) - 1.0) > tol) ok = false;
    }
    out.spectrum_in_minus1_0_1 = ok;
    out.kind = ok ? Sqrt2Outcome::Kind::ProjectionCase : Sqrt2Outcome::Kind::Violation;
    return out;
  }
  if (radius >= std::sqrt(2.0) - tol - 1e-6) {
    out.kind = Sqrt2Outcome::Kind::NormAtLeastSqrt2;
    return out;
  }
  out.kind = Sqrt2Outcome::Kind::Violation;
  return out;
}

DiscrepancyReport discrepancy_report(const IntPoly& p, double alpha, double beta,
                                     bool certified_mode) {
  if (!p.is_monic() || p.degree() < 1)
    throw std::invalid_argument("discrepancy_report needs a monic nonconstant polynomial");
  if (!(alpha < beta))
    throw std::invalid_argument("discrepancy_report: need alpha < beta");
  if (certified_mode) {
    if (p.constant() == 0)
      throw std::invalid_argument("discrepancy_report: zero constant term (reducible by t)");
    FactoredPoly f = exactpoly::factor(p);
    bool irreducible =
        f.factors.size() == 1 && f.factors[0].second == 1 && f.remainder == IntPoly(1L);
    if (!irreducible)
      throw std::invalid_argument("discrepancy_report: certified mode needs an irreducible input");
  }
  DiscrepancyReport rep;
  rep.alpha = alpha;
  rep.beta = beta;
  rep.degree = p.degree();
  rep.uniform = (beta - alpha) / (2.0 * M_PI);

  rootlab::RootSet rs = rootlab::isolate_roots(p);
  long count = 0;
  for (const auto& r : rs.roots) {
    double arg = std::atan2(r.center.imag(), r.center.real());
    if (arg >= alpha && arg <= beta) count += r.multiplicity;
  }
  rep.roots_in_sector = count;
  rep.observed = static_cast<double>(count) / rep.degree;

  double sum_abs = 0;
  for (const Int& c : p.coeffs()) sum_abs += std::fabs(c.get_d());
  double a0 = std::fabs(p.constant().get_d());
  rep.l_value = sum_abs / std::sqrt(std::max(a0, 1e-300));
  rep.erdos_turan_bound = 16.0 * std::sqrt(std::log(rep.l_value) / rep.degree);
  rep.erdos_turan_holds = std::fabs(rep.observed - rep.uniform) <= rep.erdos_turan_bound;

  rootlab::MahlerResult m = rootlab::mahler_measure(p);
  double log_m = m.exactly_one ? 0.0 : std::log(m.value);
  rep.log_mahler_over_deg = log_m / rep.degree;
  rep.dubickas_applicable =
      p.degree() >= 2 && rep.log_mahler_over_deg > 0 && rep.log_mahler_over_deg < 5.0 / 6.0;
  if (rep.dubickas_applicable) {
    rep.dubickas_bound = 6.0 * std::cbrt(rep.log_mahler_over_deg) * std::log(rep.degree / log_m);
    rep.dubickas_holds = std::fabs(rep.observed - rep.uniform) <= rep.dubickas_bound;
  }
  return rep;
}

SectorReport sector_proportion_bound(const IntPoly& p, double phi, double lambda) {
  if (!p.is_monic() || p.degree() < 1)
    throw std::invalid_argument("sector_proportion_bound needs a monic nonconstant polynomial");
  if (!(phi > 0 && phi < M_PI)) throw std::invalid_argument("phi must lie in (0, pi)");
  SectorReport rep;
  rep.phi = phi;
  rep.lambda = lambda;

  rootlab::RootSet rs = rootlab::isolate_roots(p);
  auto in_sector = [&](std::complex<double> z) {
    double arg = std::atan2(z.imag(), z.real());
    return (arg >= -phi && arg <= phi) || arg >= M_PI - phi || arg <= -(M_PI - phi);
  };

  if (p.constant() != 0 &&
      exactpoly::cyclotomic_test(p) == exactpoly::CyclotomicStatus::CyclotomicProduct) {
    rep.cyclotomic_branch = true;
    long count = 0;
    for (const auto& r : rs.roots)
      if (in_sector(r.center)) count += r.multiplicity;
    rep.observed_delta = static_cast<double>(count) / p.degree();
    rep.mahler = 1.0;
    rep.mahler_bound = 1.0;
    rep.mahler_chain_holds = true;
    return rep;
  }

  // hypothesis: irreducible, every root on the unit circle or in the sector,
  // moduli <= lambda
  FactoredPoly f = exactpoly::factor(p);
  bool irreducible = f.factors.size() == 1 && f.factors[0].second == 1 && f.remainder == IntPoly(1L);
  if (!irreducible)
    throw std::invalid_argument("sector_proportion_bound: input must be irreducible");
  long in_count = 0;
  for (const auto& r : rs.roots) {
    double mag = std::abs(r.center);
    if (mag - r.radius > lambda * (1 + 1e-9))
      throw std::invalid_argument("sector_proportion_bound: root modulus exceeds lambda");
    bool on_circle = std::fabs(mag - 1.0) <= r.radius + 1e-12;
    bool sector = in_sector(r.center);
    if (!on_circle && !sector)
      throw std::invalid_argument("sector_proportion_bound: root outside circle and sector");
    if (sector) in_count += r.multiplicity;
  }
  rep.observed_delta = static_cast<double>(in_count) / p.degree();

  rootlab::MahlerResult m = rootlab::mahler_measure(p);
  rep.mahler = m.value;
  rep.mahler_bound = std::pow(lambda, rep.observed_delta * p.degree());
  rep.mahler_chain_holds = m.value <= rep.mahler_bound * (1 + 1e-9);

  double r = std::log(m.value) / p.degree();
  rep.dubickas_applicable = p.degree() >= 2 && r > 0 && r < 5.0 / 6.0;
  if (rep.dubickas_applicable) {
    rep.dubickas_bound = 6.0 * std::cbrt(r) * std::log(p.degree() / std::log(m.value));
    rep.contradiction_triggered = rep.dubickas_bound < phi / (2.0 * M_PI);
  }
  return rep;
}

EquilibriumReport equilibrium_check(const spectra::SpectralReport& report, double one_norm) {
  EquilibriumReport rep;
  rep.continuous_mass = report.continuous_mass;
  if (report.continuous_mass < 0.5) {
    rep.refusal = "insufficient continuous mass (< 0.5)";
    return rep;
  }
  double radius = 0;
  for (double x : report.continuous_values) radius = std::max(radius, std::fabs(x));
  if (radius > 2.0 + 1e-6) {
    rep.refusal = "continuous spectrum exceeds [-2, 2]; equilibrium reference not applicable";
    return rep;
  }
  rep.applicable = true;
  rep.ks_distance = spectra::ks_distance(report.continuous_values, spectra::arcsine_cdf);

  // Mahler zero-sequence diagnostic: all transformed roots confined to the
  // unit circle force lambda_kron = 1, reported as 0
  double lambda_kron = one_norm >= 2.0
                           ? (one_norm + std::sqrt(one_norm * one_norm - 4.0)) / 2.0
                           : 1.0;
  if (lambda_kron <= 1.0 + 1e-12) {
    rep.mahler_delta = 0;
  } else {
    double log_m = 0;
    for (double x : report.continuous_values) log_m += std::log(std::max(1.0, std::fabs(x)));
    rep.mahler_delta =
        log_m / (std::log(lambda_kron) *
                 std::max<std::size_t>(report.continuous_values.size(), 1));
  }
  return rep;
}

}  // namespace sspec::quantize
