#include "sspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sspec::spectra {

namespace {

double hypot2(double a, double b) {
  double absa = std::fabs(a), absb = std::fabs(b);
  if (absa > absb) {
    double r = absb / absa;
    return absa * std::sqrt(1.0 + r * r);
  }
  if (absb == 0.0) return 0.0;
  double r = absa / absb;
  return absb * std::sqrt(1.0 + r * r);
}

// Householder reduction of a symmetric matrix to tridiagonal form,
// eigenvalues-only variant: the orthogonal transform is not accumulated.
void tridiagonalize(std::vector<double>& a, long n, std::vector<double>& d,
                    std::vector<double>& e) {
  auto at = [&](long i, long j) -> double& {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(j)];
  };
  d.assign(static_cast<std::size_t>(n), 0.0);
  e.assign(static_cast<std::size_t>(n), 0.0);
  for (long i = n - 1; i >= 1; --i) {
    long l = i - 1;
    double h = 0.0, scale = 0.0;
    if (l > 0) {
      for (long k = 0; k <= l; ++k) scale += std::fabs(at(i, k));
      if (scale == 0.0) {
        e[static_cast<std::size_t>(i)] = at(i, l);
      } else {
        for (long k = 0; k <= l; ++k) {
          at(i, k) /= scale;
          h += at(i, k) * at(i, k);
        }
        double f = at(i, l);
        double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
        e[static_cast<std::size_t>(i)] = scale * g;
        h -= f * g;
        at(i, l) = f - g;
        f = 0.0;
        for (long j = 0; j <= l; ++j) {
          double gg = 0.0;
          for (long k = 0; k <= j; ++k) gg += at(j, k) * at(i, k);
          for (long k = j + 1; k <= l; ++k) gg += at(k, j) * at(i, k);
          e[static_cast<std::size_t>(j)] = gg / h;
          f += e[static_cast<std::size_t>(j)] * at(i, j);
        }
        double hh = f / (h + h);
        for (long j = 0; j <= l; ++j) {
          f = at(i, j);
          double gg = e[static_cast<std::size_t>(j)] - hh * f;
          e[static_cast<std::size_t>(j)] = gg;
          for (long k = 0; k <= j; ++k) at(j, k) -= f * e[static_cast<std::size_t>(k)] + gg * at(i, k);
        }
      }
    } else {
      e[static_cast<std::size_t>(i)] = at(i, l);
    }
    d[static_cast<std::size_t>(i)] = h;
  }
  for (long i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = at(i, i);
  // shift the off-diagonal into the usual e[0..n-2] convention
  for (long i = 0; i < n - 1; ++i) e[static_cast<std::size_t>(i)] = e[static_cast<std::size_t>(i) + 1];
  e[static_cast<std::size_t>(n - 1)] = 0.0;
}

// Implicit-shift QL iteration on a symmetric tridiagonal matrix.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, long n) {
  for (long l = 0; l < n; ++l) {
    int iter = 0;
    long m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::fabs(d[static_cast<std::size_t>(m)]) +
                    std::fabs(d[static_cast<std::size_t>(m) + 1]);
        if (std::fabs(e[static_cast<std::size_t>(m)]) <= 1e-300 ||
            std::fabs(e[static_cast<std::size_t>(m)]) + dd == dd)
          break;
      }
      if (m != l) {
        if (iter++ == 50) throw std::runtime_error("QL iteration failed to converge");
        double g = (d[static_cast<std::size_t>(l) + 1] - d[static_cast<std::size_t>(l)]) /
                   (2.0 * e[static_cast<std::size_t>(l)]);
        double r = hypot2(g, 1.0);
        g = d[static_cast<std::size_t>(m)] - d[static_cast<std::size_t>(l)] +
            e[static_cast<std::size_t>(l)] / (g + (g >= 0.0 ? std::fabs(r) : -std::fabs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        long i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[static_cast<std::size_t>(i)];
          double b = c * e[static_cast<std::size_t>(i)];
          r = hypot2(f, g);
          e[static_cast<std::size_t>(i) + 1] = r;
          if (r == 0.0) {
            d[static_cast<std::size_t>(i) + 1] -= p;
            e[static_cast<std::size_t>(m)] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[static_cast<std::size_t>(i) + 1] - p;
          r = (d[static_cast<std::size_t>(i)] - g) * s + 2.0 * c * b;
          p = s * r;
          d[static_cast<std::size_t>(i) + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[static_cast<std::size_t>(l)] -= p;
        e[static_cast<std::size_t>(l)] = g;
        e[static_cast<std::size_t>(m)] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

std::vector<double> symmetric_eigenvalues_dense(std::vector<double> a, long n) {
  if (n == 0) return {};
  if (static_cast<long>(a.size()) != n * n) throw std::invalid_argument("bad matrix buffer");
  std::vector<double> d, e;
  if (n == 1) return {a[0]};
  tridiagonalize(a, n, d, e);
  ql_implicit(d, e, n);
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> eigenvalues_symmetric(const groupring::RealizedMatrix& m) {
  if (!m.mat.is_symmetric())
    throw std::invalid_argument("eigenvalues_symmetric: realized matrix is not symmetric");
  std::vector<double> dense = m.mat.dense_double();
  double dd = m.denom.get_d();
  std::vector<double> eigs = symmetric_eigenvalues_dense(std::move(dense), m.dim);
  if (dd != 1.0)
    for (double& x : eigs) x /= dd;
  return eigs;
}

}  // namespace sspec::spectra
