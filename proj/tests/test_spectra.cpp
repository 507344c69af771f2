#include "doctest.h"

#include "sspec/spectra.hpp"
#include "sspec/util.hpp"

#include <cmath>
#include <memory>

using namespace sspec::spectra;
using namespace sspec::groups;
using namespace sspec::groupring;
using sspec::exactpoly::IntPoly;

namespace {
SpecPtr make(GroupSpec s) { return std::make_shared<const GroupSpec>(std::move(s)); }

GroupRingMatrix scalar_op(const SpecPtr& spec, const std::string& expr) {
  GroupRingMatrix m(spec, 1);
  m.set(0, 0, GroupRingElement::parse(spec, expr));
  return m;
}

IntPoly P(const char* s) { return IntPoly::parse(s); }

mpq_class frac(long a, long b) {
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}
}  // namespace

TEST_CASE("symmetric eigensolver: closed-form spectra") {
  // circulant of s+s^-1 on cyclic(m): eigenvalues 2cos(2 pi k/m)
  for (long m : {4L, 5L, 12L}) {
    SpecPtr c = make(GroupSpec::cyclic(m));
    RealizedMatrix r = realize(scalar_op(c, "s + S"), build_sofic_map(*c, m, 0));
    std::vector<double> eigs = eigenvalues_symmetric(r);
    std::vector<double> expect;
    for (long k = 0; k < m; ++k) expect.push_back(2 * std::cos(2 * M_PI * k / m));
    std::sort(expect.begin(), expect.end());
    REQUIRE(eigs.size() == expect.size());
    for (std::size_t i = 0; i < eigs.size(); ++i)
      CHECK(eigs[i] == doctest::Approx(expect[i]).epsilon(1e-10));
  }

  // zero matrix
  std::vector<double> z = symmetric_eigenvalues_dense(std::vector<double>(16, 0.0), 4);
  for (double x : z) CHECK(x == 0.0);

  // path-graph adjacency on q-1 vertices: eigenvalues 2cos(k pi / q)
  const long q = 7;
  std::vector<double> path((q - 1) * (q - 1), 0.0);
  for (long i = 0; i + 1 < q - 1; ++i) {
    path[static_cast<std::size_t>(i * (q - 1) + i + 1)] = 1;
    path[static_cast<std::size_t>((i + 1) * (q - 1) + i)] = 1;
  }
  std::vector<double> pe = symmetric_eigenvalues_dense(std::move(path), q - 1);
  std::vector<double> pexp;
  for (long k = 1; k < q; ++k) pexp.push_back(2 * std::cos(k * M_PI / q));
  std::sort(pexp.begin(), pexp.end());
  for (std::size_t i = 0; i < pe.size(); ++i)
    CHECK(pe[i] == doctest::Approx(pexp[i]).epsilon(1e-10));

  // non-symmetric input rejected
  SpecPtr f2 = make(GroupSpec::free_group(2));
  RealizedMatrix bad = realize(scalar_op(f2, "a"), build_sofic_map(*f2, 10, 1));
  CHECK_THROWS(eigenvalues_symmetric(bad));
}

TEST_CASE("eigensolver accuracy on a random symmetric matrix vs charpoly roots") {
  sspec::SplitMix64 rng(31);
  const long n = 20;
  std::vector<std::tuple<long, long, sspec::exactpoly::Int>> trip;
  for (long i = 0; i < n; ++i)
    for (long j = i; j < n; ++j) {
      long v = static_cast<long>(rng.below(7)) - 3;
      if (v) {
        trip.emplace_back(i, j, sspec::exactpoly::Int(v));
        if (i != j) trip.emplace_back(j, i, sspec::exactpoly::Int(v));
      }
    }
  auto mat = sspec::exactpoly::SparseIntMat::from_triplets(n, std::move(trip));
  IntPoly chi = sspec::exactpoly::charpoly(mat);
  auto rs = sspec::rootlab::isolate_roots(chi);
  std::vector<double> roots;
  for (const auto& r : rs.roots)
    for (int m = 0; m < r.multiplicity; ++m) roots.push_back(r.center.real());
  std::sort(roots.begin(), roots.end());
  std::vector<double> eigs = symmetric_eigenvalues_dense(mat.dense_double(), n);
  REQUIRE(eigs.size() == roots.size());
  double norm = mat.inf_norm();
  for (std::size_t i = 0; i < eigs.size(); ++i)
    CHECK(std::fabs(eigs[i] - roots[i]) <= 1e-10 * norm);
}

TEST_CASE("kernel_dim_sequence: cyclic(2), 1 + s, lambda = 0 -> 1/2 at every scale") {
  SpecPtr c2 = make(GroupSpec::cyclic(2));
  GroupRingMatrix a = scalar_op(c2, "1 + s");
  Schedule sched{{2}, 0};
  KernelTrace t = kernel_dim_sequence(a, LambdaSpec::from_rational(mpq_class(0)), sched);
  REQUIRE(t.points.size() == 1);
  CHECK(t.points[0].value == frac(1, 2));
  CHECK(t.points[0].exact);
  CHECK(t.headline == doctest::Approx(0.5));
}

TEST_CASE("kernel_dim_sequence: free-abelian(1) chain, s + s^-1, lambda = 0 -> 2/m") {
  SpecPtr z1 = make(GroupSpec::free_abelian(1));
  GroupRingMatrix a = scalar_op(z1, "s + S");
  Schedule sched{{4, 8, 16, 32, 64}, 0};
  KernelTrace t = kernel_dim_sequence(a, LambdaSpec::from_rational(mpq_class(0)), sched);
  for (const auto& p : t.points) {
    CHECK(p.value == frac(2, p.scale));
    CHECK(p.exact);
  }
  // numeric path beyond a tiny exact cap gives the same exact counts
  ComputeOptions opts;
  opts.exact_cap = 8;
  KernelTrace tn = kernel_dim_sequence(a, LambdaSpec::from_rational(mpq_class(0)), sched, opts);
  for (const auto& p : tn.points) CHECK(p.value == frac(2, p.scale));
  CHECK_FALSE(tn.points.back().exact);
}

TEST_CASE("kernel_dim_sequence: rational non-integer gate") {
  SpecPtr c12 = make(GroupSpec::cyclic(12));
  GroupRingMatrix a = scalar_op(c12, "s + S + 1");
  Schedule sched{{3, 6, 12}, 0};
  for (const char* q : {"1/3", "1/2", "7/10"}) {
    KernelTrace t = kernel_dim_sequence(a, LambdaSpec::from_rational(mpq_class(q)), sched);
    for (const auto& p : t.points) {
      CHECK(p.value == 0);
      CHECK(p.exact);
    }
  }
}

TEST_CASE("kernel_dim_sequence: algebraic lambda (golden conjugate on cyclic(5))") {
  SpecPtr c5 = make(GroupSpec::cyclic(5));
  GroupRingMatrix a = scalar_op(c5, "s + S");
  Schedule sched{{5}, 0};
  LambdaSpec l = LambdaSpec::algebraic(P("t^2 + t - 1"), 0);
  KernelTrace t = kernel_dim_sequence(a, l, sched);
  CHECK(t.points[0].value == frac(2, 5));
  // a minimal polynomial not dividing chi gives zero
  LambdaSpec l2 = LambdaSpec::algebraic(P("t^2 - 3"), 0);
  KernelTrace t2 = kernel_dim_sequence(a, l2, sched);
  CHECK(t2.points[0].value == 0);
}

TEST_CASE("sample_spectrum + decompose: cyclic(5) purely atomic") {
  SpecPtr c5 = make(GroupSpec::cyclic(5));
  GroupRingMatrix a = scalar_op(c5, "s + S");
  Schedule sched{{5}, 0};
  auto samples = sample_schedule(a, sched);
  REQUIRE(samples.size() == 1);
  REQUIRE(samples[0].charpoly.has_value());
  CHECK(samples[0].charpoly->degree() == 5);

  std::vector<std::pair<IntPoly, long>> obs{{*samples[0].charpoly, 5}};
  std::vector<sspec::rootlab::AtomCertificate> certs;
  certs.push_back(sspec::rootlab::certify_atom(obs, {2.0, 0.0}, 2.0));
  certs.push_back(sspec::rootlab::certify_atom(obs, {0.618033988749894848, 0.0}, 2.0));
  SpectralReport rep = decompose_spectrum(samples, certs, 2.0);
  REQUIRE(rep.atoms.size() == 2);
  // weights: t-2 -> 1/5; t^2+t-1 -> 2/5 per root
  for (const auto& atom : rep.atoms) {
    if (atom.minpoly == P("t - 2")) CHECK(atom.weight == frac(1, 5));
    if (atom.minpoly == P("t^2 + t - 1")) CHECK(atom.weight == frac(2, 5));
  }
  CHECK(rep.continuous_mass == 0.0);
  // mass accounting: sum weight * deg + continuous = 1
  mpq_class mass = 0;
  for (const auto& atom : rep.atoms) mass += atom.weight * atom.minpoly.degree();
  CHECK(mass == 1);
  // galois: per-root deviation 0 on the exact path
  for (const auto& row : rep.galois) CHECK(row.max_deviation == 0.0);
}

TEST_CASE("decompose: zero operator is a single atom at 0 with weight 1") {
  SpecPtr c3 = make(GroupSpec::cyclic(3));
  GroupRingMatrix a = scalar_op(c3, "0");
  Schedule sched{{3}, 0};
  auto samples = sample_schedule(a, sched);
  std::vector<std::pair<IntPoly, long>> obs{{*samples[0].charpoly, 3}};
  std::vector<sspec::rootlab::AtomCertificate> certs{
      sspec::rootlab::certify_atom(obs, {0.0, 0.0}, 1.0)};
  SpectralReport rep = decompose_spectrum(samples, certs, 1.0);
  REQUIRE(rep.atoms.size() == 1);
  CHECK(rep.atoms[0].minpoly == P("t"));
  CHECK(rep.atoms[0].weight == 1);
  CHECK(rep.continuous_mass == 0.0);
}

TEST_CASE("decompose: cyclic chain continuous part approaches the arcsine law") {
  SpecPtr z1 = make(GroupSpec::free_abelian(1));
  GroupRingMatrix a = scalar_op(z1, "s + S");
  Schedule sched{{64, 128, 256}, 0};
  ComputeOptions opts;
  opts.exact_cap = 300;
  auto samples = sample_schedule(a, sched, opts);
  // no stable atoms along this chain; pass empty certificates
  SpectralReport rep = decompose_spectrum(samples, {}, 2.0);
  CHECK(rep.continuous_mass >= 0.95);
  double ks = ks_distance(rep.continuous_values, arcsine_cdf);
  CHECK(ks <= 0.05);
  // Polya diagnostic improves along the doubling schedule
  REQUIRE(rep.polya_sup_distances.size() == 2);
  CHECK(rep.polya_sup_distances[1] <= rep.polya_sup_distances[0] + 1e-12);
}

TEST_CASE("fk_determinant: golden-ratio matrix exceeds the Smyth bound") {
  // companion of t^2 - t - 1 over the trivial group
  SpecPtr triv = make(GroupSpec::cyclic(1));
  GroupRingMatrix a(triv, 2);
  a.set(0, 0, GroupRingElement::parse(triv, "0"));
  a.set(0, 1, GroupRingElement::parse(triv, "1"));
  a.set(1, 0, GroupRingElement::parse(triv, "1"));
  a.set(1, 1, GroupRingElement::parse(triv, "1"));
  Schedule sched{{1}, 0};
  FkResult r = fk_determinant(a, sched);
  REQUIRE(r.points.size() == 1);
  CHECK(r.points[0].mahler == doctest::Approx(1.6180339887).epsilon(1e-9));
  CHECK(r.points[0].det_estimate == doctest::Approx(std::sqrt(1.6180339887)).epsilon(1e-9));
  CHECK(r.flag_applicable);
  CHECK(r.smyth_flag);  // det estimate equals the bound; tolerance covers it
}

TEST_CASE("fk_determinant: cyclotomic spectrum returns 1 and refuses the flag") {
  SpecPtr c6 = make(GroupSpec::cyclic(6));
  GroupRingMatrix a = scalar_op(c6, "s");  // spectrum: 6th roots of unity
  Schedule sched{{6}, 0};
  FkResult r = fk_determinant(a, sched);
  CHECK(r.points[0].mahler == doctest::Approx(1.0));
  CHECK(r.points[0].det_estimate == doctest::Approx(1.0));
  CHECK_FALSE(r.flag_applicable);  // atoms at +-1 in the spectrum
  CHECK_FALSE(r.smyth_flag);
}

TEST_CASE("ks_distance and arcsine_cdf basics") {
  CHECK(arcsine_cdf(-2) == 0.0);
  CHECK(arcsine_cdf(2) == 1.0);
  CHECK(arcsine_cdf(0) == doctest::Approx(0.5));
  CHECK(arcsine_cdf(std::sqrt(2.0)) == doctest::Approx(0.75));
  // exact sample from the law itself: distance -> 0
  std::vector<double> sample;
  const int n = 4096;
  for (int k = 0; k < n; ++k) sample.push_back(2 * std::cos(2 * M_PI * k / n));
  std::sort(sample.begin(), sample.end());
  CHECK(ks_distance(sample, arcsine_cdf) <= 0.001);
}

TEST_CASE("spectral radius stays below the one-norm bound at every scale") {
  SpecPtr z1 = make(GroupSpec::free_abelian(1));
  GroupRingMatrix a = scalar_op(z1, "2*s + 3*S - 1");
  double bound = one_norm(a).get_d();
  for (long m : {8L, 32L, 128L}) {
    auto sa = a + a.adjoint();
    RealizedMatrix r = realize(sa, build_sofic_map(*z1, m, 0));
    std::vector<double> eigs = eigenvalues_symmetric(r);
    double rad = std::max(std::fabs(eigs.front()), std::fabs(eigs.back()));
    CHECK(rad <= one_norm(sa).get_d() + 1e-8);
  }
  (void)bound;
}
