#include "sspec/rootlab.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>

namespace sspec::rootlab {

using exactpoly::FactoredPoly;
using exactpoly::Int;

namespace {

// ---------- complex arithmetic over GMP floats ----------

struct CF {
  mpf_class re, im;
  CF() = default;
  CF(mpf_class r, mpf_class i) : re(std::move(r)), im(std::move(i)) {}
};

CF cf_from(std::complex<double> z, mp_bitcnt_t prec) {
  return CF(mpf_class(z.real(), prec), mpf_class(z.imag(), prec));
}

CF cf_mul(const CF& a, const CF& b) {
  return CF(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}

CF cf_sub(const CF& a, const CF& b) { return CF(a.re - b.re, a.im - b.im); }

mpf_class cf_abs2(const CF& a) { return a.re * a.re + a.im * a.im; }

mpf_class cf_abs(const CF& a) {
  mpf_class s = cf_abs2(a);
  mpf_class r(0, s.get_prec());
  mpf_sqrt(r.get_mpf_t(), s.get_mpf_t());
  return r;
}

CF cf_div(const CF& a, const CF& b) {
  mpf_class d = cf_abs2(b);
  return CF((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
}

// Horner with exact integer coefficients promoted to the working precision.
CF cf_eval(const IntPoly& p, const CF& z, mp_bitcnt_t prec) {
  CF acc(mpf_class(0, prec), mpf_class(0, prec));
  for (int k = p.degree(); k >= 0; --k) {
    acc = cf_mul(acc, z);
    acc.re += mpf_class(p[k], prec);
  }
  return acc;
}

// mpf values are dyadic rationals, so "is z exactly a root" is decidable in
// exact rational arithmetic.
bool is_exact_root(const IntPoly& p, const CF& z) {
  mpq_class re, im;
  mpq_set_f(re.get_mpq_t(), z.re.get_mpf_t());
  mpq_set_f(im.get_mpq_t(), z.im.get_mpf_t());
  mpq_class ar = 0, ai = 0;
  for (int k = p.degree(); k >= 0; --k) {
    mpq_class nr = ar * re - ai * im + p[k];
    mpq_class ni = ar * im + ai * re;
    ar = std::move(nr);
    ai = std::move(ni);
  }
  return ar == 0 && ai == 0;
}

double to_double_up(const mpf_class& x) {
  double d = x.get_d();  // mpf_get_d truncates toward zero
  while (mpf_cmp_d(x.get_mpf_t(), d) > 0) d = std::nextafter(d, HUGE_VAL);
  return d;
}

double to_double_down(const mpf_class& x) {
  double d = x.get_d();
  while (mpf_cmp_d(x.get_mpf_t(), d) < 0) d = std::nextafter(d, -HUGE_VAL);
  return d;
}

// ---------- initial guesses from the Newton polygon ----------

// Bini-style starting radii: the upper convex hull of (k, log2 |c_k|)
// assigns k_{i+1} - k_i roots of radius 2^{slope} per hull segment. This
// copes with the huge dynamic range of charpoly coefficients, where a single
// Cauchy circle is useless.
std::vector<double> newton_polygon_radii(const IntPoly& f) {
  const int d = f.degree();
  std::vector<double> lg(static_cast<std::size_t>(d) + 1, -1e9);
  for (int k = 0; k <= d; ++k) {
    const Int& c = f[k];
    if (c != 0) {
      signed long e = 0;
      double m = mpz_get_d_2exp(&e, c.get_mpz_t());
      lg[static_cast<std::size_t>(k)] = std::log2(std::fabs(m)) + static_cast<double>(e);
    }
  }
  // upper convex hull from k = 0 to d
  std::vector<int> hull;
  for (int k = 0; k <= d; ++k) {
    if (lg[static_cast<std::size_t>(k)] < -1e8) continue;
    while (hull.size() >= 2) {
      int a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      double s1 = (lg[static_cast<std::size_t>(b)] - lg[static_cast<std::size_t>(a)]) / (b - a);
      double s2 = (lg[static_cast<std::size_t>(k)] - lg[static_cast<std::size_t>(b)]) / (k - b);
      if (s2 >= s1)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(k);
  }
  std::vector<double> radii;
  radii.reserve(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    int ka = hull[i], kb = hull[i + 1];
    double slope = (lg[static_cast<std::size_t>(ka)] - lg[static_cast<std::size_t>(kb)]) / (kb - ka);
    double r = std::pow(2.0, std::clamp(slope, -300.0, 300.0));
    for (int j = 0; j < kb - ka; ++j) radii.push_back(r);
  }
  while (static_cast<int>(radii.size()) < d) radii.push_back(1.0);
  return radii;
}

long max_coeff_bits(const IntPoly& f) {
  long maxbits = 0;
  for (const Int& x : f.coeffs())
    if (x != 0) maxbits = std::max(maxbits, static_cast<long>(mpz_sizeinbase(x.get_mpz_t(), 2)));
  return maxbits;
}

// ---------- Aberth-Ehrlich on one squarefree factor ----------

std::vector<std::complex<double>> aberth_double(const IntPoly& f) {
  const int d = f.degree();
  std::vector<double> c(static_cast<std::size_t>(d) + 1), cd(static_cast<std::size_t>(d));
  for (int k = 0; k <= d; ++k) c[static_cast<std::size_t>(k)] = f[k].get_d();
  for (int k = 1; k <= d; ++k) cd[static_cast<std::size_t>(k - 1)] = k * c[static_cast<std::size_t>(k)];
  auto horner = [](const std::vector<double>& p, std::complex<double> z) {
    std::complex<double> acc = 0;
    for (std::size_t k = p.size(); k-- > 0;) acc = acc * z + p[k];
    return acc;
  };
  std::vector<double> r0 = newton_polygon_radii(f);
  double rmax = 1;
  for (double r : r0) rmax = std::max(rmax, r);

  std::vector<std::complex<double>> z(static_cast<std::size_t>(d));
  double offset = 0.39996;
  for (int restart = 0; restart < 4; ++restart) {
    for (int j = 0; j < d; ++j)
      z[static_cast<std::size_t>(j)] =
          std::polar(r0[static_cast<std::size_t>(j)] * (1.0 + 1e-3 * j), 2.0 * M_PI * j / d + offset);
    bool converged = false;
    for (int iter = 0; iter < 60 + 30 * d && !converged; ++iter) {
      double worst = 0;
      for (int j = 0; j < d; ++j) {
        std::complex<double>& zj = z[static_cast<std::size_t>(j)];
        std::complex<double> pv = horner(c, zj);
        std::complex<double> pd = horner(cd, zj);
        if (pd == std::complex<double>(0, 0)) {
          zj += std::complex<double>(1e-8 * (1 + std::abs(zj)), 1e-8);
          worst = 1;
          continue;
        }
        std::complex<double> nwt = pv / pd;
        std::complex<double> s = 0;
        for (int k = 0; k < d; ++k)
          if (k != j) s += 1.0 / (zj - z[static_cast<std::size_t>(k)]);
        std::complex<double> denom = 1.0 - nwt * s;
        std::complex<double> w = (std::abs(denom) > 1e-12) ? nwt / denom : nwt;
        zj -= w;
        if (!std::isfinite(zj.real()) || !std::isfinite(zj.imag()) || std::abs(zj) > 4 * rmax + 10)
          zj = std::polar(r0[static_cast<std::size_t>(j)], 2.0 * M_PI * j / d + offset + 1.1);
        worst = std::max(worst, std::abs(w) / (1.0 + std::abs(zj)));
      }
      converged = worst < 1e-15;
    }
    if (converged) return z;
    offset += 0.731;
  }
  return z;  // best effort; certification decides what is trustworthy
}

// High-precision variant for polynomials whose coefficients overwhelm double
// evaluation (charpolys of realized operators reach thousands of bits).
std::vector<std::complex<double>> aberth_mpf(const IntPoly& f, mp_bitcnt_t prec) {
  const int d = f.degree();
  IntPoly fd = f.derivative();
  std::vector<double> r0 = newton_polygon_radii(f);
  std::vector<CF> z;
  z.reserve(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    double th = 2.0 * M_PI * j / d + 0.39996;
    std::complex<double> zz = std::polar(r0[static_cast<std::size_t>(j)] * (1.0 + 1e-3 * j), th);
    z.push_back(cf_from(zz, prec));
  }
  mpf_class tol(0, prec);
  mpf_set_ui(tol.get_mpf_t(), 1);
  mpf_div_2exp(tol.get_mpf_t(), tol.get_mpf_t(), prec / 2);
  for (int iter = 0; iter < 80 + 10 * d; ++iter) {
    mpf_class worst(0, prec);
    for (int j = 0; j < d; ++j) {
      CF pv = cf_eval(f, z[static_cast<std::size_t>(j)], prec);
      CF pd = cf_eval(fd, z[static_cast<std::size_t>(j)], prec);
      if (pd.re == 0 && pd.im == 0) {
        z[static_cast<std::size_t>(j)].re += mpf_class(1e-8, prec);
        continue;
      }
      CF nwt = cf_div(pv, pd);
      CF s(mpf_class(0, prec), mpf_class(0, prec));
      for (int k = 0; k < d; ++k) {
        if (k == j) continue;
        CF diff = cf_sub(z[static_cast<std::size_t>(j)], z[static_cast<std::size_t>(k)]);
        mpf_class n2 = cf_abs2(diff);
        if (n2 == 0) {
          diff.re += mpf_class(1e-10, prec);
          n2 = cf_abs2(diff);
        }
        s.re += diff.re / n2;
        s.im += -diff.im / n2;
      }
      CF denom(mpf_class(1, prec) - (nwt.re * s.re - nwt.im * s.im),
               -(nwt.re * s.im + nwt.im * s.re));
      CF w = (cf_abs2(denom) > 1e-24) ? cf_div(nwt, denom) : nwt;
      z[static_cast<std::size_t>(j)] = cf_sub(z[static_cast<std::size_t>(j)], w);
      mpf_class rel = cf_abs(w) / (1 + cf_abs(z[static_cast<std::size_t>(j)]));
      if (rel > worst) worst = rel;
    }
    if (worst < tol) break;
  }
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(d));
  for (const CF& zz : z) out.push_back({zz.re.get_d(), zz.im.get_d()});
  return out;
}

std::vector<std::complex<double>> aberth(const IntPoly& f) {
  long bits = max_coeff_bits(f);
  if (bits <= 400 && f.degree() <= 80) return aberth_double(f);
  mp_bitcnt_t prec = static_cast<mp_bitcnt_t>(bits + 2 * f.degree() + 128);
  return aberth_mpf(f, prec);
}

// ---------- high-precision polish and certified radii ----------

struct HpRoot {
  CF z;
  mpf_class radius;
  bool certified = false;
  int factor_index = -1;  // squarefree factor it belongs to; -1 = exact zero
  int multiplicity = 1;
};

// Newton polish, then the radius certificate deg * |f(z)| / |f'(z)|.
void polish_and_certify(const IntPoly& f, HpRoot& r, mp_bitcnt_t prec, int newton_iters) {
  const int d = f.degree();
  IntPoly fd = f.derivative();
  CF z(mpf_class(r.z.re, prec), mpf_class(r.z.im, prec));
  for (int it = 0; it < newton_iters; ++it) {
    CF pv = cf_eval(f, z, prec);
    if (pv.re == 0 && pv.im == 0) break;
    CF pd = cf_eval(fd, z, prec);
    if (pd.re == 0 && pd.im == 0) break;
    z = cf_sub(z, cf_div(pv, pd));
  }
  CF pv = cf_eval(f, z, prec);
  CF pd = cf_eval(fd, z, prec);
  mpf_class apv = cf_abs(pv), apd = cf_abs(pd);
  r.z = z;
  if (apv == 0 && is_exact_root(f, z)) {
    r.radius = mpf_class(0, prec);
    r.certified = true;
    return;
  }
  if (apd == 0) {
    r.certified = false;
    return;
  }
  // inflate for the rounding of the evaluations themselves
  mpf_class eps(0, prec);
  mpf_set_ui(eps.get_mpf_t(), 1);
  mpf_div_2exp(eps.get_mpf_t(), eps.get_mpf_t(), prec / 2);
  r.radius = d * apv / apd * (1 + eps) + cf_abs(z) * eps + eps;
  r.certified = true;
}

struct Isolation {
  std::vector<HpRoot> roots;
  std::vector<IntPoly> factors;  // squarefree pieces (zero roots deflated)
  std::vector<mp_bitcnt_t> factor_prec;
  int source_degree = 0;
  bool fully_certified = true;
};

mpf_class hp_dist(const CF& a, const CF& b) { return cf_abs(cf_sub(a, b)); }

bool disks_disjoint(const Isolation& iso) {
  for (std::size_t i = 0; i < iso.roots.size(); ++i)
    for (std::size_t j = i + 1; j < iso.roots.size(); ++j) {
      mpf_class d = hp_dist(iso.roots[i].z, iso.roots[j].z);
      if (d <= iso.roots[i].radius + iso.roots[j].radius) return false;
    }
  return true;
}

Isolation isolate_internal(const IntPoly& p, double target_radius) {
  if (p.is_zero()) throw std::invalid_argument("isolate_roots of zero polynomial");
  Isolation iso;
  iso.source_degree = p.degree();
  if (p.degree() == 0) return iso;

  FactoredPoly sf = exactpoly::squarefree_decomposition(p);
  for (auto& [piece, mult] : sf.factors) {
    IntPoly a = piece;
    if (a.constant() == 0) {
      IntPoly q;
      a.divide_exact(IntPoly::variable(), q);
      HpRoot zero;
      zero.z = CF(mpf_class(0, 192), mpf_class(0, 192));
      zero.radius = mpf_class(0, 192);
      zero.certified = true;
      zero.multiplicity = mult;
      iso.roots.push_back(std::move(zero));
      a = q;
    }
    if (a.degree() == 0) continue;
    // evaluation precision must dominate the coefficient height
    mp_bitcnt_t prec0 = static_cast<mp_bitcnt_t>(
        std::max<long>(192, max_coeff_bits(a) + 2 * a.degree() + 128));
    int fi = static_cast<int>(iso.factors.size());
    iso.factors.push_back(a);
    iso.factor_prec.push_back(prec0);
    for (std::complex<double> c : aberth(a)) {
      HpRoot r;
      r.z = cf_from(c, prec0);
      r.radius = mpf_class(1, prec0);
      r.factor_index = fi;
      r.multiplicity = mult;
      polish_and_certify(a, r, prec0, 24);
      iso.roots.push_back(std::move(r));
    }
  }

  // refine until disks are disjoint and within target, raising precision
  mpf_class target(target_radius, 64);
  for (int round = 1; round <= 2; ++round) {
    bool ok = disks_disjoint(iso);
    if (ok)
      for (const HpRoot& r : iso.roots)
        if (!r.certified || r.radius > target) ok = false;
    if (ok) break;
    for (HpRoot& r : iso.roots) {
      if (r.factor_index < 0) continue;
      mp_bitcnt_t prec =
          iso.factor_prec[static_cast<std::size_t>(r.factor_index)] * (round == 1 ? 2 : 4);
      polish_and_certify(iso.factors[static_cast<std::size_t>(r.factor_index)], r, prec, 40);
    }
  }
  if (!disks_disjoint(iso)) iso.fully_certified = false;
  for (const HpRoot& r : iso.roots)
    if (!r.certified) iso.fully_certified = false;

  std::sort(iso.roots.begin(), iso.roots.end(), [](const HpRoot& a, const HpRoot& b) {
    int c = mpf_cmp(a.z.re.get_mpf_t(), b.z.re.get_mpf_t());
    if (c != 0) return c < 0;
    return mpf_cmp(a.z.im.get_mpf_t(), b.z.im.get_mpf_t()) < 0;
  });
  return iso;
}

// counting against a closed disk; throws on stubborn boundary overlap
long count_in_disk(Isolation& iso, std::complex<double> beta, double eps) {
  const mp_bitcnt_t prec = 768;
  CF b = cf_from(beta, prec);
  mpf_class e(eps, prec);

  // exact roots (radius 0) admit an exact closed-disk decision in Q
  auto exact_inside = [&](const CF& z) {
    mpq_class zr, zi;
    mpq_set_f(zr.get_mpq_t(), z.re.get_mpf_t());
    mpq_set_f(zi.get_mpq_t(), z.im.get_mpf_t());
    mpq_class dr = zr - mpq_class(beta.real());
    mpq_class di = zi - mpq_class(beta.imag());
    return dr * dr + di * di <= mpq_class(eps) * mpq_class(eps);
  };

  long inside = 0;
  for (HpRoot& r : iso.roots) {
    if (r.radius == 0) {
      if (exact_inside(r.z)) inside += r.multiplicity;
      continue;
    }
    mpf_class dist = hp_dist(r.z, b);
    if (dist + r.radius <= e) {
      inside += r.multiplicity;
      continue;
    }
    if (dist - r.radius > e) continue;
    // straddle: polish harder, then decide
    if (r.factor_index >= 0) {
      mp_bitcnt_t prec =
          std::max<mp_bitcnt_t>(1024, 2 * iso.factor_prec[static_cast<std::size_t>(r.factor_index)]);
      polish_and_certify(iso.factors[static_cast<std::size_t>(r.factor_index)], r, prec, 64);
    }
    if (r.radius == 0) {
      if (exact_inside(r.z)) inside += r.multiplicity;
      continue;
    }
    dist = hp_dist(r.z, b);
    if (dist + r.radius <= e) {
      inside += r.multiplicity;
    } else if (dist - r.radius > e) {
      // outside
    } else {
      throw BoundaryAmbiguous("root disk straddles the counting boundary");
    }
  }
  return inside;
}

double to_double(const mpf_class& x) { return x.get_d(); }

}  // namespace

RootSet isolate_roots(const IntPoly& p, double target_radius) {
  if (target_radius <= 0) throw std::invalid_argument("target_radius must be positive");
  Isolation iso = isolate_internal(p, target_radius);
  RootSet out;
  out.source_degree = iso.source_degree;
  out.fully_certified = iso.fully_certified;
  out.roots.reserve(iso.roots.size());
  for (const HpRoot& r : iso.roots) {
    Root rr;
    rr.center = {to_double(r.z.re), to_double(r.z.im)};
    rr.multiplicity = r.multiplicity;
    rr.certified = r.certified;
    // the double center loses bits; widen the radius to keep the disk valid
    bool center_exact = (mpf_cmp_d(r.z.re.get_mpf_t(), rr.center.real()) == 0 &&
                         mpf_cmp_d(r.z.im.get_mpf_t(), rr.center.imag()) == 0);
    if (r.radius == 0 && center_exact) {
      rr.radius = 0;
    } else {
      mpf_class slack = r.radius + std::abs(rr.center) * 1e-15 + 1e-300;
      rr.radius = to_double_up(slack);
    }
    out.roots.push_back(rr);
  }
  return out;
}

long count_zeros_in_disk(const IntPoly& p, std::complex<double> beta, double eps) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  Isolation iso = isolate_internal(p, 1e-12);
  return count_in_disk(iso, beta, eps);
}

MahlerResult mahler_measure(const IntPoly& p, bool high_precision) {
  if (p.is_zero() || !p.is_monic())
    throw std::invalid_argument("mahler_measure needs a monic nonzero polynomial");
  MahlerResult out;
  if (p.degree() == 0) {
    out.exactly_one = true;
    return out;
  }
  // Kronecker branch: cyclotomic products (times powers of t) pin M = 1.
  IntPoly core = p;
  while (core.constant() == 0 && core.degree() > 0) {
    IntPoly q;
    core.divide_exact(IntPoly::variable(), q);
    core = q;
  }
  if (core.degree() == 0 ||
      exactpoly::cyclotomic_test(core) == exactpoly::CyclotomicStatus::CyclotomicProduct) {
    out.exactly_one = true;
    return out;
  }

  Isolation iso = isolate_internal(p, high_precision ? 1e-40 : 1e-12);
  if (!iso.fully_certified)
    throw IsolationFailure("mahler_measure: root isolation failed to certify");
  const mp_bitcnt_t prec = 256;
  mpf_class value(1, prec), lo(1, prec), hi(1, prec);
  for (const HpRoot& r : iso.roots) {
    mpf_class a = cf_abs(r.z);
    for (int m = 0; m < r.multiplicity; ++m) {
      if (a > 1) value *= a;
      mpf_class al = a - r.radius, ah = a + r.radius;
      if (al > 1) lo *= al;
      if (ah > 1) hi *= ah;
    }
  }
  out.value = to_double(value);
  out.lower = to_double_down(lo);
  out.upper = to_double_up(hi);
  out.exactly_one = false;
  return out;
}

double separation_bound(const IntPoly& p, std::complex<double> beta, int t,
                        bool corollary_variant) {
  (void)beta;  // the bound is uniform over beta
  int n = p.degree();
  if (n < 1) throw std::invalid_argument("separation_bound: degree >= 1 required");
  if (t < 2 || t > n) throw std::invalid_argument("separation_bound: need 2 <= t <= deg");
  Int disc = exactpoly::discriminant(p);
  if (disc == 0) throw std::invalid_argument("separation_bound: repeated roots (disc = 0)");
  double log_disc = 0;
  if (!corollary_variant) {
    signed long exp2 = 0;
    double mant = mpz_get_d_2exp(&exp2, disc.get_mpz_t());
    log_disc = std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
  }
  // conservative direction: a larger Mahler value only weakens the bound
  MahlerResult m = mahler_measure(p);
  double log_m = std::log(std::max(m.upper, 1.0));
  double tt = static_cast<double>(t) * (t - 1);
  double nn = static_cast<double>(n) * (n - 1);
  double log_bound = -log_disc / tt - (nn / tt) * (std::log(2.0) + 2.0 * log_m / n);
  return std::exp(log_bound);
}

double atom_epsilon_threshold(double delta_prime, double lambda) {
  double l = std::log(2.0 * (1.0 + lambda) * (1.0 + lambda));
  return std::exp(-2.0 * l / (delta_prime * delta_prime));
}

AtomCertificate certify_atom(const std::vector<std::pair<IntPoly, long>>& observations,
                             std::complex<double> beta, double lambda) {
  if (observations.empty()) throw std::invalid_argument("certify_atom: no observations");
  AtomCertificate cert;
  cert.beta = beta;
  cert.lambda = lambda;
  cert.certifying_scale = observations.back().second;

  std::vector<Isolation> isos;
  isos.reserve(observations.size());
  for (const auto& [chi, scale] : observations) {
    (void)scale;
    if (!chi.is_monic()) throw std::invalid_argument("certify_atom: observations must be monic");
    Isolation iso = isolate_internal(chi, 1e-12);
    for (const HpRoot& r : iso.roots)
      if (cf_abs(r.z) - r.radius > mpf_class(lambda) * (1 + 1e-9))
        throw std::invalid_argument("certify_atom: observation has a root outside B(0, lambda)");
    isos.push_back(std::move(iso));
  }

  // liminf estimator: min over the tail half of the schedule
  std::size_t tail_start = observations.size() / 2;
  auto proportion_at = [&](double eps) -> double {
    double est = 1.0;
    for (std::size_t i = tail_start; i < isos.size(); ++i) {
      long z = 0;
      bool decided = false;
      for (int k = 0; k < 8 && !decided; ++k) {
        try {
          z = count_in_disk(isos[i], beta, eps * (1.0 + k * 9.5e-7));
          decided = true;
        } catch (const BoundaryAmbiguous&) {
        }
      }
      if (!decided) throw BoundaryAmbiguous("certify_atom: boundary would not settle");
      double prop = static_cast<double>(z) / observations[i].first.degree();
      est = std::min(est, prop);
    }
    return est;
  };

  // delta' -> proportion(eps(delta')) is monotone nonincreasing from 1
  double dp = 1.0;
  double eps = atom_epsilon_threshold(dp, lambda);
  bool inconclusive = false;
  for (int iter = 0; iter < 32; ++iter) {
    double next = 0;
    try {
      next = proportion_at(std::max(eps, 5e-300));
    } catch (const BoundaryAmbiguous&) {
      inconclusive = true;
      break;
    }
    if (next <= 0) {
      dp = 0;
      break;
    }
    if (std::abs(next - dp) <= 1e-12) {
      dp = next;
      break;
    }
    dp = next;
    eps = atom_epsilon_threshold(dp, lambda);
  }
  cert.delta_prime = dp;
  cert.epsilon_used = std::max(atom_epsilon_threshold(std::max(dp, 1e-9), lambda), 5e-300);

  if (inconclusive) {
    cert.verdict = AtomCertificate::Verdict::Inconclusive;
    return cert;
  }
  if (dp <= 0) {
    cert.verdict = AtomCertificate::Verdict::Refuted;
    return cert;
  }

  cert.degree_bound = static_cast<int>(std::floor((2.0 - dp) / dp));

  // minimal polynomial hunt: irreducible factors of the top-scale charpoly
  // first, smallest degree wins, must vanish inside the certified disk
  const mp_bitcnt_t prec = 768;
  CF b = cf_from(beta, prec);
  mpf_class e(cert.epsilon_used, prec);
  std::vector<IntPoly> candidates;
  for (std::size_t i = observations.size(); i-- > 0;) {
    FactoredPoly fp = exactpoly::factor(observations[i].first);
    for (auto& [g, mult] : fp.factors) {
      (void)mult;
      if (g.degree() <= cert.degree_bound &&
          std::find(candidates.begin(), candidates.end(), g) == candidates.end())
        candidates.push_back(g);
    }
    if (!candidates.empty()) break;
  }
  std::sort(candidates.begin(), candidates.end());
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const IntPoly& x, const IntPoly& y) { return x.degree() < y.degree(); });
  for (const IntPoly& cand : candidates) {
    Isolation ci = isolate_internal(cand, 1e-30);
    for (const HpRoot& r : ci.roots) {
      if (hp_dist(r.z, b) - r.radius <= e) {
        cert.minimal_poly = cand;
        cert.verdict = AtomCertificate::Verdict::Certified;
        return cert;
      }
    }
  }
  cert.verdict = AtomCertificate::Verdict::Inconclusive;
  return cert;
}

}  // namespace sspec::rootlab

// enumerate_Pn lives here because the root-in-disk filter needs isolation.
namespace sspec::exactpoly {

std::vector<IntPoly> enumerate_Pn(int n, double lambda, std::uint64_t budget) {
  if (n < 1 || n > 4) throw std::invalid_argument("enumerate_Pn supports 1 <= n <= 4");
  if (lambda <= 0) throw std::invalid_argument("enumerate_Pn: lambda must be positive");

  // coefficient k (from the leading end) is bounded by binom(d,k) lambda^k
  std::uint64_t total = 0;
  std::vector<std::vector<long>> bounds_per_degree(static_cast<std::size_t>(n) + 1);
  for (int d = 1; d <= n; ++d) {
    std::vector<long> b(static_cast<std::size_t>(d) + 1, 0);
    std::uint64_t count = 1;
    for (int k = 1; k <= d; ++k) {
      Int binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(d),
                   static_cast<unsigned long>(k));
      double cap = binom.get_d() * std::pow(lambda, k) * (1 + 1e-12);
      b[static_cast<std::size_t>(k)] = static_cast<long>(std::floor(cap));
      count *= static_cast<std::uint64_t>(2 * b[static_cast<std::size_t>(k)] + 1);
    }
    total += count;
    bounds_per_degree[static_cast<std::size_t>(d)] = std::move(b);
  }
  if (total > budget) throw std::runtime_error("enumerate_Pn: budget exceeded");

  std::vector<IntPoly> out;
  for (int d = 1; d <= n; ++d) {
    const auto& b = bounds_per_degree[static_cast<std::size_t>(d)];
    std::vector<long> a(static_cast<std::size_t>(d));  // a[k-1] = coeff of t^{d-k}
    for (int k = 1; k <= d; ++k)
      a[static_cast<std::size_t>(k - 1)] = -b[static_cast<std::size_t>(k)];
    while (true) {
      std::vector<Int> coeffs(static_cast<std::size_t>(d) + 1, Int(0));
      coeffs[static_cast<std::size_t>(d)] = 1;
      for (int k = 1; k <= d; ++k)
        coeffs[static_cast<std::size_t>(d - k)] = a[static_cast<std::size_t>(k - 1)];
      IntPoly p(std::move(coeffs));
      bool keep = true;
      rootlab::RootSet rs = rootlab::isolate_roots(p, 1e-20);
      for (const auto& r : rs.roots) {
        double mag = std::abs(r.center);
        if (mag - r.radius > lambda * (1 + 1e-9)) {
          keep = false;
          break;
        }
        // ambiguous shell: |root| within 1e-12 of lambda counts as on the
        // circle, hence inside the closed disk
        if (mag + r.radius > lambda * (1 + 1e-9) &&
            mag - lambda > 1e-12 * std::max(1.0, lambda)) {
          keep = false;
          break;
        }
      }
      if (keep) out.push_back(std::move(p));
      // odometer
      int k = d;
      while (k >= 1) {
        if (a[static_cast<std::size_t>(k - 1)] < b[static_cast<std::size_t>(k)]) {
          ++a[static_cast<std::size_t>(k - 1)];
          for (int j = k + 1; j <= d; ++j)
            a[static_cast<std::size_t>(j - 1)] = -b[static_cast<std::size_t>(j)];
          break;
        }
        --k;
      }
      if (k == 0) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace sspec::exactpoly
