#include "sspec/exactpoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace sspec::exactpoly {

namespace {
const Int kZero = 0;
}

IntPoly::IntPoly(Int constant) {
  if (constant != 0) c_.push_back(std::move(constant));
}

IntPoly::IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  c_.reserve(coeffs.size());
  for (long v : coeffs) c_.emplace_back(v);
  normalize();
}

void IntPoly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::variable() { return IntPoly(std::vector<Int>{0, 1}); }

IntPoly IntPoly::monomial(Int coeff, int deg) {
  if (coeff == 0) return {};
  std::vector<Int> c(static_cast<std::size_t>(deg) + 1, Int(0));
  c.back() = std::move(coeff);
  return IntPoly(std::move(c));
}

const Int& IntPoly::operator[](int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
  return c_[static_cast<std::size_t>(k)];
}

const Int& IntPoly::leading() const {
  if (c_.empty()) return kZero;
  return c_.back();
}

const Int& IntPoly::constant() const {
  if (c_.empty()) return kZero;
  return c_.front();
}

bool IntPoly::operator<(const IntPoly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (int i = degree(); i >= 0; --i) {
    int c = cmp((*this)[i], o[i]);
    if (c != 0) return c < 0;
  }
  return false;
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator-(const IntPoly& o) const {
  std::vector<Int> r(std::max(c_.size(), o.c_.size()), Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Int> r(c_.size() + o.c_.size() - 1, Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      r[i + j] += c_[i] * o.c_[j];
    }
  }
  return IntPoly(std::move(r));
}

IntPoly IntPoly::operator*(const Int& s) const {
  if (s == 0) return {};
  IntPoly r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Int> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return IntPoly(std::move(r));
}

IntPoly IntPoly::pow(unsigned e) const {
  IntPoly result(1L);
  IntPoly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return result;
}

IntPoly IntPoly::shift_up(int k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<Int> r(c_.size() + static_cast<std::size_t>(k), Int(0));
  for (std::size_t i = 0; i < c_.size(); ++i) r[i + static_cast<std::size_t>(k)] = c_[i];
  return IntPoly(std::move(r));
}

IntPoly IntPoly::compose_neg() const {
  IntPoly r = *this;
  for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
  return r;
}

IntPoly IntPoly::reversed() const {
  std::vector<Int> r(c_.rbegin(), c_.rend());
  return IntPoly(std::move(r));
}

Int IntPoly::eval(const Int& x) const {
  Int acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

bool IntPoly::divide_exact(const IntPoly& d, IntPoly& q) const {
  if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
  if (is_zero()) {
    q = IntPoly();
    return true;
  }
  if (degree() < d.degree()) return false;
  std::vector<Int> rem = c_;
  std::vector<Int> quo(static_cast<std::size_t>(degree() - d.degree()) + 1, Int(0));
  const Int& lead = d.leading();
  for (int k = degree() - d.degree(); k >= 0; --k) {
    Int& top = rem[static_cast<std::size_t>(k + d.degree())];
    if (top == 0) continue;
    Int qk;
    mpz_fdiv_qr(qk.get_mpz_t(), top.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    if (top != 0) return false;  // non-exact leading step
    quo[static_cast<std::size_t>(k)] = qk;
    for (int i = 0; i < d.degree(); ++i)
      rem[static_cast<std::size_t>(k + i)] -= qk * d[i];
  }
  for (const Int& x : rem)
    if (x != 0) return false;
  q = IntPoly(std::move(quo));
  return true;
}

void IntPoly::divmod_monic(const IntPoly& d, IntPoly& q, IntPoly& r) const {
  if (!d.is_monic()) throw std::invalid_argument("divmod_monic needs a monic divisor");
  if (degree() < d.degree()) {
    q = IntPoly();
    r = *this;
    return;
  }
  std::vector<Int> rem = c_;
  std::vector<Int> quo(static_cast<std::size_t>(degree() - d.degree()) + 1, Int(0));
  for (int k = degree() - d.degree(); k >= 0; --k) {
    Int qk = rem[static_cast<std::size_t>(k + d.degree())];
    if (qk == 0) continue;
    quo[static_cast<std::size_t>(k)] = qk;
    for (int i = 0; i <= d.degree(); ++i)
      rem[static_cast<std::size_t>(k + i)] -= qk * d[i];
  }
  q = IntPoly(std::move(quo));
  r = IntPoly(std::move(rem));
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Int& c = (*this)[k];
    if (c == 0) continue;
    Int a = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (k == 0) {
      os << a.get_str();
    } else {
      if (a != 1) os << a.get_str() << "*";
      os << "t";
      if (k > 1) os << "^" << k;
    }
  }
  return os.str();
}

IntPoly IntPoly::parse(const std::string& text) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  std::vector<Int> coeffs;
  auto add_term = [&](const Int& c, int deg) {
    if (deg >= static_cast<int>(coeffs.size())) coeffs.resize(static_cast<std::size_t>(deg) + 1, Int(0));
    coeffs[static_cast<std::size_t>(deg)] += c;
  };
  skip_ws();
  if (i >= text.size()) throw std::invalid_argument("empty polynomial text");
  bool expect_term = true;
  int sign = 1;
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size()) break;
    char ch = text[i];
    if (ch == '+' || ch == '-') {
      if (expect_term && ch == '-') {
        sign = -sign;
        ++i;
        continue;
      }
      if (expect_term) {
        ++i;
        continue;
      }
      sign = (ch == '-') ? -1 : 1;
      expect_term = true;
      ++i;
      continue;
    }
    if (!expect_term) throw std::invalid_argument("malformed polynomial near '" + text.substr(i) + "'");
    // term: [integer] [*] [t [^ exponent]]
    Int coeff = 1;
    bool saw_number = false;
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      coeff = Int(text.substr(i, j - i));
      i = j;
      saw_number = true;
      skip_ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip_ws();
      }
    }
    int deg = 0;
    if (i < text.size() && text[i] == 't') {
      ++i;
      deg = 1;
      skip_ws();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip_ws();
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        if (j == i) throw std::invalid_argument("missing exponent in polynomial text");
        deg = std::stoi(text.substr(i, j - i));
        i = j;
      }
    } else if (!saw_number) {
      throw std::invalid_argument("malformed polynomial near '" + text.substr(i) + "'");
    }
    add_term(sign * coeff, deg);
    sign = 1;
    expect_term = false;
  }
  if (expect_term) throw std::invalid_argument("dangling sign in polynomial text");
  return IntPoly(std::move(coeffs));
}

Int content(const IntPoly& p) {
  Int g = 0;
  for (const Int& c : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly primitive_part(const IntPoly& p) {
  if (p.is_zero()) return p;
  Int c = content(p);
  if (p.leading() < 0) c = -c;
  std::vector<Int> r(p.coeffs());
  for (auto& x : r) x /= c;
  return IntPoly(std::move(r));
}

namespace {

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a  mod b, exactly.
IntPoly pseudo_rem(const IntPoly& a, const IntPoly& b) {
  const int db = b.degree();
  const Int& lb = b.leading();
  int e = a.degree() - db + 1;
  IntPoly r = a;
  while (!r.is_zero() && r.degree() >= db) {
    IntPoly t = b.shift_up(r.degree() - db) * r.leading();
    r = r * lb - t;
    --e;
  }
  if (e > 0) {
    Int pad;
    mpz_pow_ui(pad.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(e));
    r = r * pad;
  }
  return r;
}

}  // namespace

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.is_zero() ? IntPoly() : primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  IntPoly f = primitive_part(a), g = primitive_part(b);
  if (f.degree() < g.degree()) std::swap(f, g);
  // Subresultant PRS.
  Int h = 1, s = 1;
  while (true) {
    int delta = f.degree() - g.degree();
    IntPoly r = pseudo_rem(f, g);
    if (r.is_zero()) return primitive_part(g);
    if (r.degree() == 0) return IntPoly(1L);
    f = g;
    // divide by s * h^delta
    Int hd;
    mpz_pow_ui(hd.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta));
    Int denom = s * hd;
    std::vector<Int> rc(r.coeffs());
    for (auto& x : rc) x /= denom;
    g = IntPoly(std::move(rc));
    s = f.leading();
    // h = s^delta * h^(1-delta)
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = s;
    } else {
      Int sn;
      mpz_pow_ui(sn.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(delta));
      Int hn;
      mpz_pow_ui(hn.get_mpz_t(), h.get_mpz_t(), static_cast<unsigned long>(delta - 1));
      h = sn / hn;
    }
  }
}

Int resultant(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  auto ipow = [](const Int& x, long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(e));
    return r;
  };
  if (a.degree() == 0) return ipow(a.constant(), b.degree());
  if (b.degree() == 0) return ipow(b.constant(), a.degree());

  // Strip contents: Res(cA, B) = c^deg(B) Res(A, B).
  Int ca = content(a), cb = content(b);
  IntPoly f(a.coeffs()), g(b.coeffs());
  {
    std::vector<Int> fc(f.coeffs()), gc(g.coeffs());
    for (auto& x : fc) x /= ca;
    for (auto& x : gc) x /= cb;
    f = IntPoly(std::move(fc));
    g = IntPoly(std::move(gc));
  }
  Int acc = ipow(ca, g.degree()) * ipow(cb, f.degree());

  int sign = 1;
  if (f.degree() < g.degree()) {
    if ((f.degree() & 1) && (g.degree() & 1)) sign = -sign;
    std::swap(f, g);
  }
  // Subresultant PRS (Cohen, Alg. 3.3.7).
  Int gcoef = 1, h = 1;
  while (true) {
    int df = f.degree(), dg = g.degree();
    int delta = df - dg;
    if ((df & 1) && (dg & 1)) sign = -sign;
    IntPoly r = pseudo_rem(f, g);
    if (r.is_zero()) return 0;  // positive-degree common factor
    f = g;
    Int denom = gcoef * ipow(h, delta);
    std::vector<Int> rc(r.coeffs());
    for (auto& x : rc) x /= denom;
    g = IntPoly(std::move(rc));
    gcoef = f.leading();
    if (delta >= 1) h = ipow(gcoef, delta) / ipow(h, delta - 1);
    if (g.degree() == 0) break;
  }
  // res(f, const g) contribution: g^deg(f) / h^(deg(f)-1).
  Int result = ipow(g.constant(), f.degree()) / ipow(h, f.degree() - 1);
  result *= acc;
  return sign < 0 ? Int(-result) : result;
}

Int discriminant(const IntPoly& p) {
  if (p.degree() < 1) throw std::invalid_argument("discriminant needs degree >= 1");
  int n = p.degree();
  Int res = resultant(p, p.derivative());
  Int d = res / p.leading();
  long e = static_cast<long>(n) * (n - 1) / 2;
  return (e % 2 == 0) ? d : Int(-d);
}

IntPoly FactoredPoly::expand() const {
  IntPoly r(static_cast<long>(unit));
  r *= remainder;
  for (const auto& [f, m] : factors) r *= f.pow(static_cast<unsigned>(m));
  return r;
}

int FactoredPoly::multiplicity_of(const IntPoly& p) const {
  for (const auto& [f, m] : factors)
    if (f == p) return m;
  return 0;
}

void FactoredPoly::sort_factors() {
  std::sort(factors.begin(), factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
}

FactoredPoly squarefree_decomposition(const IntPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree decomposition of zero");
  FactoredPoly out;
  out.unit = (p.leading() < 0) ? -1 : 1;
  Int c = abs(content(p));
  IntPoly f = primitive_part(p);  // positive leading coefficient
  if (c != 1) out.remainder = IntPoly(c);
  if (f.degree() == 0) return out;

  // Yun's algorithm.
  IntPoly fp = f.derivative();
  IntPoly a = gcd(f, fp);
  if (a.degree() == 0) {
    out.factors.emplace_back(f, 1);
    return out;
  }
  IntPoly b, d, q;
  f.divide_exact(a, b);
  fp.divide_exact(a, d);
  d = d - b.derivative();
  int i = 1;
  while (true) {
    if (b.degree() == 0) break;
    IntPoly g = gcd(b, d);
    if (g.degree() > 0) out.factors.emplace_back(g, i);
    IntPoly bn, dn;
    if (g.degree() == 0) {
      bn = b;
      dn = d;
    } else {
      b.divide_exact(g, bn);
      d.divide_exact(g, dn);
    }
    b = bn;
    d = dn - b.derivative();
    ++i;
  }
  return out;
}

IntPoly squarefree_part(const IntPoly& p) {
  FactoredPoly sf = squarefree_decomposition(p);
  IntPoly r(1L);
  for (const auto& [f, m] : sf.factors) r *= f;
  return r;
}

int multiplicity(const IntPoly& p, const IntPoly& q) {
  if (!p.is_monic() || p.is_constant())
    throw std::invalid_argument("multiplicity needs monic nonconstant p");
  if (q.is_zero()) throw std::invalid_argument("multiplicity with zero q");
  int m = 0;
  IntPoly cur = q, quo;
  while (cur.degree() >= p.degree() && cur.divide_exact(p, quo)) {
    ++m;
    cur = quo;
  }
  return m;
}

IntPoly cyclotomic(unsigned k) {
  if (k == 0) throw std::invalid_argument("cyclotomic(0)");
  static std::map<unsigned, IntPoly> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
  }
  // Phi_k = prod_{d | k} (t^d - 1)^{mu(k/d)}, assembled by exact division.
  auto xn_minus_1 = [](unsigned d) {
    std::vector<Int> c(d + 1, Int(0));
    c[0] = -1;
    c[d] = 1;
    return IntPoly(std::move(c));
  };
  auto moebius = [](unsigned n) {
    int m = 1;
    for (unsigned p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        m = -m;
      }
    }
    if (n > 1) m = -m;
    return m;
  };
  IntPoly num(1L), den(1L);
  for (unsigned d = 1; d <= k; ++d) {
    if (k % d) continue;
    int mu = moebius(k / d);
    if (mu == 1) num *= xn_minus_1(d);
    else if (mu == -1) den *= xn_minus_1(d);
  }
  IntPoly phi;
  if (!num.divide_exact(den, phi))
    throw std::logic_error("cyclotomic division must be exact");
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(k, phi);
  return phi;
}

unsigned cyclotomic_sweep_limit(int degree) {
  if (degree < 1) return 1;
  // phi(k) >= sqrt(k/2) for all k, hence phi(k) <= d implies k <= 2 d^2.
  return static_cast<unsigned>(2L * degree * degree + 2);
}

unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

// Graeffe step: returns g with g(t^2) = +- p(t) p(-t); roots of g are the
// squares of the roots of p. Exact in integer arithmetic.
IntPoly graeffe(const IntPoly& p) {
  IntPoly prod = p * p.compose_neg();
  // prod has only even-degree terms
  std::vector<Int> c((prod.coeffs().size() + 1) / 2, Int(0));
  for (std::size_t i = 0; i < prod.coeffs().size(); i += 2)
    c[i / 2] = prod.coeffs()[i];
  IntPoly g{std::move(c)};
  if (!g.is_zero() && g.leading() < 0) g = -g;
  return g;
}

Int binom(int n, int k) {
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

bool coefficients_within_unit_disc_bound(const IntPoly& p) {
  int n = p.degree();
  for (int k = 0; k <= n; ++k) {
    if (abs(p[n - k]) > binom(n, k)) return false;
  }
  return true;
}

}  // namespace

unsigned cyclotomic_index(const IntPoly& p) {
  if (!p.is_monic()) return 0;
  int d = p.degree();
  if (d < 1) return 0;
  unsigned limit = cyclotomic_sweep_limit(d);
  for (unsigned k = 1; k <= limit; ++k) {
    if (static_cast<int>(euler_phi(k)) != d) continue;
    if (cyclotomic(k) == p) return k;
  }
  return 0;
}

CyclotomicStatus cyclotomic_test(const IntPoly& p) {
  if (!p.is_monic()) throw std::invalid_argument("cyclotomic_test needs a monic polynomial");
  if (p.constant() == 0)
    throw std::invalid_argument("cyclotomic_test: zero constant term (factor t first)");
  if (p.degree() == 0) return CyclotomicStatus::CyclotomicProduct;
  Int c0 = abs(p.constant());
  if (c0 != 1) return CyclotomicStatus::HasNonCyclotomicFactor;

  // Graeffe cycle detection on the squarefree part: a cycle proves all roots
  // are roots of unity, a violated unit-disc coefficient bound disproves it.
  IntPoly u = squarefree_part(p);
  std::vector<IntPoly> seen;
  for (int iter = 0; iter < 64; ++iter) {
    if (!coefficients_within_unit_disc_bound(u))
      return CyclotomicStatus::HasNonCyclotomicFactor;
    if (std::find(seen.begin(), seen.end(), u) != seen.end())
      return CyclotomicStatus::CyclotomicProduct;
    seen.push_back(u);
    u = squarefree_part(graeffe(u));
    if (u.degree() == 0) return CyclotomicStatus::CyclotomicProduct;
  }

  // Complete fallback: divide out every candidate cyclotomic exactly.
  IntPoly rest = squarefree_part(p);
  unsigned limit = cyclotomic_sweep_limit(rest.degree());
  for (unsigned k = 1; k <= limit && rest.degree() > 0; ++k) {
    if (static_cast<int>(euler_phi(k)) > rest.degree()) continue;
    IntPoly q;
    if (rest.divide_exact(cyclotomic(k), q)) rest = q;
  }
  return rest.degree() == 0 ? CyclotomicStatus::CyclotomicProduct
                            : CyclotomicStatus::HasNonCyclotomicFactor;
}

}  // namespace sspec::exactpoly
