#include "sspec/spectra.hpp"

#include "sspec/util.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <atomic>
#include <thread>

namespace sspec::spectra {

using exactpoly::FactoredPoly;
using exactpoly::Int;
using exactpoly::IntPoly;
using groupring::GroupRingMatrix;
using groupring::RealizedMatrix;

void Schedule::validate() const {
  if (scales.empty()) throw std::invalid_argument("schedule must not be empty");
  for (std::size_t i = 0; i + 1 < scales.size(); ++i)
    if (scales[i] >= scales[i + 1])
      throw std::invalid_argument("schedule must be strictly increasing");
  if (scales.front() < 1) throw std::invalid_argument("scales must be >= 1");
}

LambdaSpec LambdaSpec::from_rational(mpq_class q) {
  LambdaSpec l;
  l.kind = Kind::Rational;
  q.canonicalize();
  l.rational = std::move(q);
  return l;
}

LambdaSpec LambdaSpec::algebraic(IntPoly minpoly, int root_index) {
  if (!minpoly.is_monic() || minpoly.degree() < 1)
    throw std::invalid_argument("algebraic lambda needs a monic nonconstant minimal polynomial");
  LambdaSpec l;
  l.kind = Kind::Algebraic;
  l.minpoly = std::move(minpoly);
  l.root_index = root_index;
  return l;
}

std::complex<double> LambdaSpec::value() const {
  if (kind == Kind::Rational) return {rational.get_d(), 0.0};
  rootlab::RootSet rs = rootlab::isolate_roots(minpoly);
  std::vector<std::complex<double>> roots;
  for (const auto& r : rs.roots)
    for (int m = 0; m < r.multiplicity; ++m) roots.push_back(r.center);
  if (root_index < 0 || root_index >= static_cast<int>(roots.size()))
    throw std::out_of_range("lambda root index out of range");
  return roots[static_cast<std::size_t>(root_index)];
}

std::string LambdaSpec::to_string() const {
  if (kind == Kind::Rational) return rational.get_str();
  return minpoly.to_string() + " [root " + std::to_string(root_index) + "]";
}

namespace {

// roots of m scaled by D: D^deg * m(t/D), monic integer again
IntPoly scale_roots(const IntPoly& m, const Int& d) {
  std::vector<Int> c(m.coeffs());
  Int pw = 1;
  for (int k = m.degree(); k >= 0; --k) {
    c[static_cast<std::size_t>(k)] *= pw;
    if (k > 0) pw *= d;
  }
  return IntPoly(std::move(c));
}

Int denominator_lcm(const GroupRingMatrix& a) {
  Int d = 1;
  for (long i = 0; i < a.size(); ++i)
    for (long j = 0; j < a.size(); ++j)
      for (const auto& t : a.at(i, j).terms())
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), t.coeff.get_den().get_mpz_t());
  return d;
}

// numeric eigenvalue-counting window: the atom-certification threshold at the
// running density estimate, floored at the eigensolver's resolution
double counting_window(double one_norm, double running_delta) {
  double eps = rootlab::atom_epsilon_threshold(std::max(running_delta, 1e-6),
                                               std::max(one_norm, 1.0));
  double solver_floor = 1e-9 * std::max(1.0, one_norm);
  return std::max(eps, solver_floor);
}

long count_near(const std::vector<double>& sorted_eigs, double x, double window) {
  auto lo = std::lower_bound(sorted_eigs.begin(), sorted_eigs.end(), x - window);
  auto hi = std::upper_bound(sorted_eigs.begin(), sorted_eigs.end(), x + window);
  return static_cast<long>(hi - lo);
}

void run_jobs(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t stride = static_cast<std::size_t>(jobs);
  for (std::size_t w = 0; w < stride && w < count; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += stride) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

KernelTrace kernel_dim_sequence(const GroupRingMatrix& a, const LambdaSpec& lambda,
                                const Schedule& schedule, const ComputeOptions& opts) {
  schedule.validate();
  KernelTrace trace;
  trace.points.resize(schedule.scales.size());

  const Int denom = denominator_lcm(a);
  // Rational gate: D*lambda not an integer means the monic integer charpoly
  // cannot vanish there, at any scale.
  bool gated_zero = false;
  Int integer_target = 0;
  if (lambda.kind == LambdaSpec::Kind::Rational) {
    mpq_class dl = lambda.rational * mpq_class(denom);
    dl.canonicalize();
    if (dl.get_den() != 1) {
      gated_zero = true;
    } else {
      integer_target = dl.get_num();
    }
  }
  const bool self_adjoint = a.is_self_adjoint();
  const double norm_bound = groupring::one_norm(a).get_d();
  const std::complex<double> lv = gated_zero ? std::complex<double>(0, 0) : lambda.value();

  // exact-capable scales run first (sequentially; they are the cheap ones):
  // the largest exact value seeds the numeric counting window
  double running_estimate = 0.0;
  for (std::size_t idx = 0; idx < schedule.scales.size(); ++idx) {
    long scale = schedule.scales[idx];
    KernelPoint& pt = trace.points[idx];
    pt.scale = scale;
    pt.dim = scale * a.size();
    if (gated_zero) {
      pt.count = 0;
      pt.exact = true;
      pt.value = 0;
      continue;
    }
    if (pt.dim > opts.exact_cap) continue;  // numeric phase below
    groups::SoficMap map =
        groups::build_sofic_map(*a.spec(), scale, split_seed(schedule.seed, idx));
    RealizedMatrix rm = groupring::realize(a, map);
    IntPoly chi = exactpoly::charpoly(rm.mat);
    long mult;
    if (lambda.kind == LambdaSpec::Kind::Rational) {
      // realize() recomputes the same lcm over the same coefficients
      IntPoly lin(std::vector<Int>{-integer_target * (rm.denom / denom), Int(1)});
      mult = exactpoly::multiplicity(lin, chi);
    } else {
      IntPoly md = scale_roots(lambda.minpoly, rm.denom);
      mult = exactpoly::multiplicity(md, chi);
    }
    pt.count = mult;
    pt.exact = true;
    pt.value = mpq_class(pt.count, pt.dim);
    pt.value.canonicalize();
    running_estimate = pt.value.get_d();
  }

  const double window = counting_window(norm_bound, running_estimate);
  run_jobs(schedule.scales.size(), opts.jobs, [&](std::size_t idx) {
    KernelPoint& pt = trace.points[idx];
    if (gated_zero || pt.dim <= opts.exact_cap) return;  // already done
    groups::SoficMap map =
        groups::build_sofic_map(*a.spec(), pt.scale, split_seed(schedule.seed, idx));
    if (!self_adjoint) {
      if (lambda.kind != LambdaSpec::Kind::Rational)
        throw std::runtime_error(
            "kernel_dim_sequence: exact cap exceeded and no numeric path for algebraic "
            "lambda on a non-self-adjoint operator");
      // dim ker(lambda - A) = dim ker((lambda - A)* (lambda - A))
      auto spec = a.spec();
      GroupRingMatrix shifted(spec, a.size());
      for (long i = 0; i < a.size(); ++i)
        for (long j = 0; j < a.size(); ++j) {
          groupring::GroupRingElement e = a.at(i, j) * mpq_class(-1);
          if (i == j) e = e + groupring::GroupRingElement::constant(spec, lambda.rational);
          shifted.set(i, j, std::move(e));
        }
      GroupRingMatrix b = shifted.adjoint() * shifted;
      RealizedMatrix rb = groupring::realize(b, map);
      std::vector<double> eigs = eigenvalues_symmetric(rb);
      pt.count = count_near(eigs, 0.0, window * window);
    } else {
      RealizedMatrix rm = groupring::realize(a, map);
      std::vector<double> eigs = eigenvalues_symmetric(rm);
      pt.count = count_near(eigs, lv.real(), window);
    }
    pt.exact = false;
    pt.value = mpq_class(pt.count, pt.dim);
    pt.value.canonicalize();
  });

  // extrapolation diagnostics
  double sum = 0;
  for (const auto& p : trace.points) sum += p.value.get_d();
  trace.cesaro = sum / static_cast<double>(trace.points.size());
  std::size_t k = std::min<std::size_t>(3, trace.points.size());
  double tail = 0, lo = 1e300, hi = -1e300;
  for (std::size_t i = trace.points.size() - k; i < trace.points.size(); ++i) {
    double v = trace.points[i].value.get_d();
    tail += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  trace.headline = tail / static_cast<double>(k);
  trace.non_cauchy = (hi - lo) > 10.0 * opts.tolerance;
  return trace;
}

SpectralSample sample_spectrum(const GroupRingMatrix& a, const groups::SoficMap& map,
                               const ComputeOptions& opts) {
  RealizedMatrix rm = groupring::realize(a, map);
  SpectralSample s;
  s.scale = map.scale;
  s.dim = rm.dim;
  s.denom = rm.denom;
  if (rm.mat.is_symmetric()) {
    s.self_adjoint = true;
    s.eigenvalues = eigenvalues_symmetric(rm);
  } else {
    // non-self-adjoint: spectral sample of A*A (squared singular values)
    s.self_adjoint = false;
    exactpoly::SparseIntMat b = rm.mat.transpose().multiply(rm.mat);
    RealizedMatrix rb;
    rb.dim = rm.dim;
    rb.block = rm.block;
    rb.denom = rm.denom * rm.denom;
    rb.mat = std::move(b);
    s.eigenvalues = eigenvalues_symmetric(rb);
  }
  if (rm.dim <= opts.exact_cap) {
    s.charpoly = exactpoly::charpoly(rm.mat);
    s.factors = exactpoly::factor(*s.charpoly);
  }
  return s;
}

std::vector<SpectralSample> sample_schedule(const GroupRingMatrix& a, const Schedule& schedule,
                                            const ComputeOptions& opts) {
  schedule.validate();
  std::vector<SpectralSample> out(schedule.scales.size());
  run_jobs(schedule.scales.size(), opts.jobs, [&](std::size_t idx) {
    groups::SoficMap map =
        groups::build_sofic_map(*a.spec(), schedule.scales[idx], split_seed(schedule.seed, idx));
    out[idx] = sample_spectrum(a, map, opts);
  });
  return out;
}

namespace {

// operator-scaled roots of an irreducible charpoly factor: roots(p)/denom
std::vector<std::complex<double>> factor_roots(const IntPoly& p, const Int& denom) {
  rootlab::RootSet rs = rootlab::isolate_roots(p);
  std::vector<std::complex<double>> roots;
  double d = denom.get_d();
  for (const auto& r : rs.roots)
    for (int m = 0; m < r.multiplicity; ++m) roots.push_back(r.center / d);
  return roots;
}

// per-root multiplicity density of factor p in sample (exact path)
mpq_class factor_density(const SpectralSample& s, const IntPoly& p) {
  if (!s.factors) return 0;
  int mult = s.factors->multiplicity_of(p);
  mpq_class q(mult, s.dim);
  q.canonicalize();
  return q;
}

// Exact-path atom stripping: the roots of q = chi / prod p^n(p,chi) are the
// eigenvalue multiset minus exactly n(p,chi) copies of each atom root, so we
// delete the nearest eigenvalues instead of re-isolating a huge charpoly.
std::vector<double> strip_atoms_exact(const SpectralSample& s, const std::vector<Atom>& atoms) {
  std::vector<double> vals = s.eigenvalues;  // sorted
  for (const Atom& atom : atoms) {
    IntPoly scaled = scale_roots(atom.minpoly, s.denom);
    int mult = s.factors->multiplicity_of(scaled);
    if (mult == 0) continue;
    for (const std::complex<double>& root : atom.roots) {
      double v = root.real();
      for (int m = 0; m < mult && !vals.empty(); ++m) {
        std::size_t best = 0;
        double bd = 1e300;
        auto it = std::lower_bound(vals.begin(), vals.end(), v);
        for (long off = -1; off <= 1; ++off) {
          auto jt = it + off;
          if (jt < vals.begin() || jt >= vals.end()) continue;
          double d = std::fabs(*jt - v);
          if (d < bd) {
            bd = d;
            best = static_cast<std::size_t>(jt - vals.begin());
          }
        }
        vals.erase(vals.begin() + static_cast<long>(best));
      }
    }
  }
  return vals;
}

std::vector<double> strip_atoms_numeric(const SpectralSample& s, const std::vector<Atom>& atoms,
                                        double one_norm_bound) {
  std::vector<std::pair<double, double>> holes;
  for (const Atom& atom : atoms) {
    double w = counting_window(one_norm_bound, atom.weight.get_d());
    for (const std::complex<double>& r : atom.roots) holes.emplace_back(r.real() - w, r.real() + w);
  }
  std::vector<double> kept;
  for (double x : s.eigenvalues) {
    bool excised = false;
    for (const auto& [lo, hi] : holes)
      if (x >= lo && x <= hi) {
        excised = true;
        break;
      }
    if (!excised) kept.push_back(x);
  }
  return kept;
}

double cdf_sup_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return a.empty() == b.empty() ? 0.0 : 1.0;
  // sup over jump points of |F_a - F_b|
  double best = 0;
  auto fa = [&](double x) {
    return static_cast<double>(std::upper_bound(a.begin(), a.end(), x) - a.begin()) /
           static_cast<double>(a.size());
  };
  auto fb = [&](double x) {
    return static_cast<double>(std::upper_bound(b.begin(), b.end(), x) - b.begin()) /
           static_cast<double>(b.size());
  };
  for (double x : a) best = std::max(best, std::fabs(fa(x) - fb(x)));
  for (double x : b) best = std::max(best, std::fabs(fa(x) - fb(x)));
  return best;
}

}  // namespace

SpectralReport decompose_spectrum(const std::vector<SpectralSample>& samples,
                                  const std::vector<rootlab::AtomCertificate>& certificates,
                                  double one_norm_bound) {
  if (samples.empty()) throw std::invalid_argument("decompose_spectrum: no samples");
  for (std::size_t i = 0; i + 1 < samples.size(); ++i)
    if (samples[i].scale >= samples[i + 1].scale)
      throw std::invalid_argument("decompose_spectrum: samples must have increasing scales");
  for (const auto& s : samples)
    if (!s.self_adjoint)
      throw std::invalid_argument("decompose_spectrum: samples must come from a self-adjoint operator");
  SpectralReport report;
  report.one_norm = one_norm_bound;

  // atom minimal polynomials: certified ones, or (fallback) every factor of
  // the top exact sample when no certificates were computed
  std::vector<IntPoly> atom_polys;
  for (const auto& c : certificates)
    if (c.verdict == rootlab::AtomCertificate::Verdict::Certified && c.minimal_poly)
      if (std::find(atom_polys.begin(), atom_polys.end(), *c.minimal_poly) == atom_polys.end())
        atom_polys.push_back(*c.minimal_poly);
  std::vector<const SpectralSample*> exact_samples;
  for (const auto& s : samples)
    if (s.factors) exact_samples.push_back(&s);
  const SpectralSample* top_exact = exact_samples.empty() ? nullptr : exact_samples.back();
  if (certificates.empty() && top_exact && top_exact->denom == 1) {
    // certificate-free fallback: keep only factors whose multiplicity
    // density is stable across the top two exact scales (a vanishing
    // density marks continuous spectrum, not an atom)
    const SpectralSample* prev =
        exact_samples.size() >= 2 ? exact_samples[exact_samples.size() - 2] : nullptr;
    for (const auto& [p, m] : top_exact->factors->factors) {
      (void)m;
      if (std::find(atom_polys.begin(), atom_polys.end(), p) != atom_polys.end()) continue;
      if (prev) {
        mpq_class d_top = factor_density(*top_exact, p);
        mpq_class d_prev = factor_density(*prev, scale_roots(p, prev->denom));
        if (d_prev == 0 || d_top * 4 < d_prev * 3) continue;
      }
      atom_polys.push_back(p);
    }
  }

  // weights: multiplicity density averaged over the top <= 3 exact samples
  std::size_t avg_from = exact_samples.size() > 3 ? exact_samples.size() - 3 : 0;

  for (const IntPoly& p : atom_polys) {
    Atom atom;
    atom.minpoly = p;
    if (!exact_samples.empty()) {
      mpq_class acc = 0;
      long used = 0;
      for (std::size_t i = avg_from; i < exact_samples.size(); ++i) {
        IntPoly scaled = scale_roots(p, exact_samples[i]->denom);
        acc += factor_density(*exact_samples[i], scaled);
        ++used;
      }
      atom.weight = acc / used;
      atom.weight.canonicalize();
    } else {
      // numeric weights: window counting on the top sample
      const SpectralSample& s = samples.back();
      rootlab::RootSet rs = rootlab::isolate_roots(p);
      long total = 0;
      double w = counting_window(one_norm_bound, 0.0);
      for (const auto& r : rs.roots) total += count_near(s.eigenvalues, r.center.real(), w);
      atom.weight = mpq_class(total, s.dim * static_cast<long>(std::max<std::size_t>(
                                                 rs.roots.size(), 1)));
      atom.weight.canonicalize();
    }
    atom.roots = factor_roots(p, Int(1));
    if (atom.weight > 0) report.atoms.push_back(std::move(atom));
  }

  // continuous part from the top sample
  const SpectralSample& top = samples.back();
  if (top.charpoly) {
    report.continuous_values = strip_atoms_exact(top, report.atoms);
  } else {
    report.continuous_values = strip_atoms_numeric(top, report.atoms, one_norm_bound);
  }
  report.continuous_mass =
      static_cast<double>(report.continuous_values.size()) / static_cast<double>(top.dim);

  // Polya diagnostic: sup distance between successive atom-stripped CDFs
  std::vector<std::vector<double>> stripped;
  for (const auto& s : samples) {
    if (s.charpoly)
      stripped.push_back(strip_atoms_exact(s, report.atoms));
    else
      stripped.push_back(strip_atoms_numeric(s, report.atoms, one_norm_bound));
  }
  for (std::size_t i = 0; i + 1 < stripped.size(); ++i)
    report.polya_sup_distances.push_back(cdf_sup_distance(stripped[i], stripped[i + 1]));

  report.galois = galois_conjugate_check(samples, report.atoms, one_norm_bound);
  return report;
}

std::vector<GaloisRow> galois_conjugate_check(const std::vector<SpectralSample>& samples,
                                              const std::vector<Atom>& atoms,
                                              double one_norm_bound) {
  std::vector<GaloisRow> rows;
  if (samples.empty()) return rows;
  const SpectralSample& top = samples.back();
  for (const Atom& atom : atoms) {
    GaloisRow row;
    row.minpoly = atom.minpoly;
    if (top.factors) {
      // exact path: every root of the factor shares one multiplicity
      IntPoly scaled = scale_roots(atom.minpoly, top.denom);
      mpq_class w = factor_density(top, scaled);
      row.per_root_weights.assign(static_cast<std::size_t>(atom.minpoly.degree()), w.get_d());
      row.max_deviation = 0;
    } else {
      double w = counting_window(one_norm_bound, atom.weight.get_d());
      double lo = 1e300, hi = -1e300;
      for (const std::complex<double>& r : atom.roots) {
        double v = static_cast<double>(count_near(top.eigenvalues, r.real(), w)) /
                   static_cast<double>(top.dim);
        row.per_root_weights.push_back(v);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      row.max_deviation = row.per_root_weights.empty() ? 0 : hi - lo;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

FkResult fk_determinant(const GroupRingMatrix& a, const Schedule& schedule,
                        const ComputeOptions& opts, bool want_flag) {
  schedule.validate();
  FkResult result;
  result.points.resize(schedule.scales.size());
  const double norm_bound = groupring::one_norm(a).get_d();
  std::atomic<bool> atoms_at_bad_points{false};

  run_jobs(schedule.scales.size(), opts.jobs, [&](std::size_t idx) {
    groups::SoficMap map =
        groups::build_sofic_map(*a.spec(), schedule.scales[idx], split_seed(schedule.seed, idx));
    RealizedMatrix rm = groupring::realize(a, map);
    FkScalePoint& pt = result.points[idx];
    pt.scale = schedule.scales[idx];
    if (rm.dim <= opts.exact_cap && rm.denom == 1) {
      IntPoly chi = exactpoly::charpoly(rm.mat);
      // strip the 0, +-1 atoms
      IntPoly q = chi;
      for (long r : {0L, 1L, -1L}) {
        IntPoly lin(std::vector<Int>{Int(-r), Int(1)});
        IntPoly quo;
        bool saw = false;
        while (q.degree() >= 1 && q.divide_exact(lin, quo)) {
          q = quo;
          saw = true;
        }
        if (saw) atoms_at_bad_points = true;
      }
      pt.exact = true;
      if (q.degree() == 0) {
        pt.mahler = 1.0;
        pt.det_estimate = 1.0;
      } else {
        rootlab::MahlerResult m = rootlab::mahler_measure(q, opts.high_precision);
        pt.mahler = m.value;
        pt.det_estimate = std::exp(std::log(std::max(m.value, 1e-300)) / q.degree());
      }
    } else {
      std::vector<double> eigs = eigenvalues_symmetric(rm);
      double w = counting_window(norm_bound, 0.0);
      double logsum = 0;
      long kept = 0;
      long excised = 0;
      for (double x : eigs) {
        if (std::fabs(x) <= w || std::fabs(x - 1) <= w || std::fabs(x + 1) <= w) {
          ++excised;
          continue;
        }
        logsum += std::log(std::max(1.0, std::fabs(x)));
        ++kept;
      }
      if (excised > 0) atoms_at_bad_points = true;
      pt.exact = false;
      pt.det_estimate = kept > 0 ? std::exp(logsum / kept) : 1.0;
      pt.mahler = kept > 0 ? std::exp(logsum) : 1.0;
    }
  });

  for (const auto& pt : result.points) result.running_max = std::max(result.running_max, pt.det_estimate);
  result.flag_applicable = want_flag && !atoms_at_bad_points;
  result.smyth_flag = result.flag_applicable && result.running_max >= kSmythBound - 1e-6;
  return result;
}

double ks_distance(const std::vector<double>& sorted_values,
                   const std::function<double(double)>& cdf) {
  if (sorted_values.empty()) return 1.0;
  double n = static_cast<double>(sorted_values.size());
  double best = 0;
  for (std::size_t i = 0; i < sorted_values.size(); ++i) {
    double f = cdf(sorted_values[i]);
    best = std::max(best, std::fabs(static_cast<double>(i + 1) / n - f));
    best = std::max(best, std::fabs(static_cast<double>(i) / n - f));
  }
  return best;
}

double arcsine_cdf(double x) {
  if (x <= -2) return 0;
  if (x >= 2) return 1;
  return 1.0 - std::acos(x / 2.0) / M_PI;
}

}  // namespace sspec::spectra
