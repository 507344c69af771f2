#include "sspec/intmat.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace sspec::exactpoly {

SparseIntMat SparseIntMat::zero(long n) {
  SparseIntMat m;
  m.n = n;
  m.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  return m;
}

SparseIntMat SparseIntMat::identity(long n) {
  SparseIntMat m;
  m.n = n;
  m.row_ptr.resize(static_cast<std::size_t>(n) + 1);
  m.col.resize(static_cast<std::size_t>(n));
  m.val.assign(static_cast<std::size_t>(n), Int(1));
  for (long i = 0; i <= n; ++i) m.row_ptr[static_cast<std::size_t>(i)] = i;
  for (long i = 0; i < n; ++i) m.col[static_cast<std::size_t>(i)] = i;
  return m;
}

SparseIntMat SparseIntMat::from_triplets(long n, std::vector<std::tuple<long, long, Int>> t) {
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
    return std::get<1>(a) < std::get<1>(b);
  });
  SparseIntMat m;
  m.n = n;
  m.row_ptr.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : t)
    if (std::get<0>(e) < 0 || std::get<0>(e) >= n || std::get<1>(e) < 0 || std::get<1>(e) >= n)
      throw std::out_of_range("triplet outside matrix");
  // merge duplicates (sorted), then drop cancellations
  std::vector<std::tuple<long, long, Int>> merged;
  merged.reserve(t.size());
  for (auto& e : t) {
    if (std::get<2>(e) == 0) continue;
    if (!merged.empty() && std::get<0>(merged.back()) == std::get<0>(e) &&
        std::get<1>(merged.back()) == std::get<1>(e)) {
      std::get<2>(merged.back()) += std::get<2>(e);
    } else {
      merged.push_back(std::move(e));
    }
  }
  // drop entries that cancelled to zero
  std::vector<std::tuple<long, long, Int>> kept;
  kept.reserve(merged.size());
  for (auto& e : merged)
    if (std::get<2>(e) != 0) kept.push_back(std::move(e));

  for (const auto& e : kept) m.row_ptr[static_cast<std::size_t>(std::get<0>(e)) + 1]++;
  for (long i = 0; i < n; ++i)
    m.row_ptr[static_cast<std::size_t>(i) + 1] += m.row_ptr[static_cast<std::size_t>(i)];
  m.col.resize(kept.size());
  m.val.resize(kept.size());
  std::vector<long> cursor(m.row_ptr.begin(), m.row_ptr.end() - 1);
  for (auto& e : kept) {
    long i = std::get<0>(e);
    long pos = cursor[static_cast<std::size_t>(i)]++;
    m.col[static_cast<std::size_t>(pos)] = std::get<1>(e);
    m.val[static_cast<std::size_t>(pos)] = std::move(std::get<2>(e));
  }
  return m;
}

Int SparseIntMat::at(long i, long j) const {
  for (long k = row_ptr[static_cast<std::size_t>(i)]; k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
    if (col[static_cast<std::size_t>(k)] == j) return val[static_cast<std::size_t>(k)];
    if (col[static_cast<std::size_t>(k)] > j) break;
  }
  return Int(0);
}

std::vector<Int> SparseIntMat::dense() const {
  std::vector<Int> d(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), Int(0));
  for (long i = 0; i < n; ++i)
    for (long k = row_ptr[static_cast<std::size_t>(i)]; k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
      d[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
        static_cast<std::size_t>(col[static_cast<std::size_t>(k)])] = val[static_cast<std::size_t>(k)];
  return d;
}

std::vector<double> SparseIntMat::dense_double() const {
  std::vector<double> d(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (long i = 0; i < n; ++i)
    for (long k = row_ptr[static_cast<std::size_t>(i)]; k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
      d[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
        static_cast<std::size_t>(col[static_cast<std::size_t>(k)])] =
          val[static_cast<std::size_t>(k)].get_d();
  return d;
}

bool SparseIntMat::is_symmetric() const {
  for (long i = 0; i < n; ++i) {
    for (long k = row_ptr[static_cast<std::size_t>(i)]; k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
      long j = col[static_cast<std::size_t>(k)];
      if (at(j, i) != val[static_cast<std::size_t>(k)]) return false;
    }
  }
  return true;
}

SparseIntMat SparseIntMat::transpose() const {
  std::vector<std::tuple<long, long, Int>> t;
  t.reserve(col.size());
  for (long i = 0; i < n; ++i)
    for (long k = row_ptr[static_cast<std::size_t>(i)]; k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
      t.emplace_back(col[static_cast<std::size_t>(k)], i, val[static_cast<std::size_t>(k)]);
  return from_triplets(n, std::move(t));
}

SparseIntMat SparseIntMat::multiply(const SparseIntMat& o) const {
  if (n != o.n) throw std::invalid_argument("dimension mismatch");
  std::vector<std::tuple<long, long, Int>> t;
  std::map<long, Int> acc;
  for (long i = 0; i < n; ++i) {
    acc.clear();
    for (long k = row_ptr[static_cast<std::size_t>(i)]; k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
      long j = col[static_cast<std::size_t>(k)];
      const Int& a = val[static_cast<std::size_t>(k)];
      for (long k2 = o.row_ptr[static_cast<std::size_t>(j)]; k2 < o.row_ptr[static_cast<std::size_t>(j) + 1]; ++k2)
        acc[o.col[static_cast<std::size_t>(k2)]] += a * o.val[static_cast<std::size_t>(k2)];
    }
    for (auto& [j, v] : acc)
      if (v != 0) t.emplace_back(i, j, std::move(v));
  }
  return from_triplets(n, std::move(t));
}

SparseIntMat SparseIntMat::add_scaled(const SparseIntMat& o, const Int& s) const {
  if (n != o.n) throw std::invalid_argument("dimension mismatch");
  std::vector<std::tuple<long, long, Int>> t;
  t.reserve(col.size() + o.col.size());
  for (long i = 0; i < n; ++i)
    for (long k = row_ptr[static_cast<std::size_t>(i)]; k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
      t.emplace_back(i, col[static_cast<std::size_t>(k)], val[static_cast<std::size_t>(k)]);
  for (long i = 0; i < n; ++i)
    for (long k = o.row_ptr[static_cast<std::size_t>(i)]; k < o.row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
      t.emplace_back(i, o.col[static_cast<std::size_t>(k)], s * o.val[static_cast<std::size_t>(k)]);
  return from_triplets(n, std::move(t));
}

double SparseIntMat::inf_norm() const {
  double best = 0;
  for (long i = 0; i < n; ++i) {
    double s = 0;
    for (long k = row_ptr[static_cast<std::size_t>(i)]; k < row_ptr[static_cast<std::size_t>(i) + 1]; ++k)
      s += std::abs(val[static_cast<std::size_t>(k)].get_d());
    best = std::max(best, s);
  }
  return best;
}

IntPoly charpoly(const SparseIntMat& m) {
  const long n = m.n;
  if (n == 0) return IntPoly(1L);

  // Berkowitz: c_r (leading-first coefficients of det(tI - A_r)) is obtained
  // from c_{r-1} through a Toeplitz column built from a = A[r-1][r-1] and the
  // Krylov products R A_{r-1}^k S, where R is the last row and S the last
  // column of the leading r x r block. Sparse mat-vec keeps this cheap for
  // permutation-sum matrices.
  std::vector<Int> c{Int(1), -m.at(0, 0)};
  std::vector<Int> v, w;
  for (long r = 2; r <= n; ++r) {
    const long k = r - 1;  // A_{r-1} is k x k
    // t-column: t[0] = 1, t[1] = -a, t[j] = -(R A^{j-2} S) for j = 2..r
    std::vector<Int> tcol(static_cast<std::size_t>(r) + 1, Int(0));
    tcol[0] = 1;
    tcol[1] = -m.at(k, k);
    v.assign(static_cast<std::size_t>(k), Int(0));
    // v = S (the k leading entries of column k)
    for (long i = 0; i < k; ++i) v[static_cast<std::size_t>(i)] = m.at(i, k);
    for (long j = 2; j <= r; ++j) {
      // t[j] = -(R . v)
      Int dot = 0;
      for (long q = m.row_ptr[static_cast<std::size_t>(k)]; q < m.row_ptr[static_cast<std::size_t>(k) + 1]; ++q) {
        long cc = m.col[static_cast<std::size_t>(q)];
        if (cc >= k) break;
        dot += m.val[static_cast<std::size_t>(q)] * v[static_cast<std::size_t>(cc)];
      }
      tcol[static_cast<std::size_t>(j)] = -dot;
      if (j == r) break;
      // v = A_{r-1} * v
      w.assign(static_cast<std::size_t>(k), Int(0));
      for (long i = 0; i < k; ++i) {
        Int s = 0;
        for (long q = m.row_ptr[static_cast<std::size_t>(i)]; q < m.row_ptr[static_cast<std::size_t>(i) + 1]; ++q) {
          long cc = m.col[static_cast<std::size_t>(q)];
          if (cc >= k) break;
          s += m.val[static_cast<std::size_t>(q)] * v[static_cast<std::size_t>(cc)];
        }
        w[static_cast<std::size_t>(i)] = std::move(s);
      }
      v.swap(w);
    }
    // c_new[i] = sum_{j=0..min(i, r)} tcol[j] * c[i-j], c has length r
    std::vector<Int> cn(static_cast<std::size_t>(r) + 1, Int(0));
    for (std::size_t i = 0; i <= static_cast<std::size_t>(r); ++i) {
      Int s = 0;
      std::size_t jlo = (i >= c.size()) ? i - c.size() + 1 : 0;
      for (std::size_t j = jlo; j <= i && j < tcol.size(); ++j) {
        std::size_t idx = i - j;
        if (idx < c.size()) s += tcol[j] * c[idx];
      }
      cn[i] = std::move(s);
    }
    c.swap(cn);
  }
  // c is leading-first; IntPoly wants constant-first.
  std::reverse(c.begin(), c.end());
  return IntPoly(std::move(c));
}

Int bareiss_determinant(std::vector<Int> a, long n) {
  auto at = [&](long i, long j) -> Int& {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
  };
  Int prev = 1;
  int sign = 1;
  for (long k = 0; k < n - 1; ++k) {
    if (at(k, k) == 0) {
      long p = -1;
      for (long i = k + 1; i < n; ++i)
        if (at(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      for (long j = k; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i) {
      for (long j = k + 1; j < n; ++j) {
        Int t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        at(i, j) = t / prev;  // exact by Bareiss
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  Int d = at(n - 1, n - 1);
  return sign < 0 ? Int(-d) : d;
}

long bareiss_rank(std::vector<Int> a, long rows, long cols) {
  auto at = [&](long i, long j) -> Int& {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(j)];
  };
  Int prev = 1;
  long rank = 0;
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long p = -1;
    for (long i = r; i < rows; ++i)
      if (at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (long j = c; j < cols; ++j) std::swap(at(r, j), at(p, j));
    for (long i = r + 1; i < rows; ++i) {
      for (long j = c + 1; j < cols; ++j) {
        Int t = at(i, j) * at(r, c) - at(i, c) * at(r, j);
        at(i, j) = t / prev;
      }
      at(i, c) = 0;
    }
    prev = at(r, c);
    ++rank;
    ++r;
  }
  return rank;
}

}  // namespace sspec::exactpoly
