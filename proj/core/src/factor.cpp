#include "sspec/exactpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

// Zassenhaus factorization over Z: Berlekamp mod a small prime, quadratic
// multifactor Hensel lifting to a Landau-Mignotte height, then subset
// recombination in cardinality-ascending order. The prime is the smallest
// p >= 3 at which the squarefree part stays squarefree (equivalently, p does
// not divide its discriminant).

namespace sspec::exactpoly {

namespace {

using u64 = std::uint64_t;

// ---------- arithmetic mod a small prime ----------

struct Fp {
  u64 p;
  u64 sub(u64 a, u64 b) const { return (a + p - b % p) % p; }
  u64 mul(u64 a, u64 b) const { return (a * b) % p; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
};

using PVec = std::vector<u64>;  // constant first

void ptrim(PVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int pdeg(const PVec& a) { return static_cast<int>(a.size()) - 1; }

PVec from_intpoly(const IntPoly& f, const Fp& F) {
  PVec r(static_cast<std::size_t>(f.degree()) + 1);
  for (int i = 0; i <= f.degree(); ++i)
    r[static_cast<std::size_t>(i)] = mpz_fdiv_ui(f[i].get_mpz_t(), F.p);
  ptrim(r);
  return r;
}

PVec pmul(const PVec& a, const PVec& b, const Fp& F) {
  if (a.empty() || b.empty()) return {};
  PVec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % F.p;
  }
  ptrim(r);
  return r;
}

PVec pmonic(PVec a, const Fp& F) {
  ptrim(a);
  if (a.empty()) return a;
  u64 s = F.inv(a.back());
  for (auto& x : a) x = F.mul(x, s);
  return a;
}

// a mod b (b need not be monic)
PVec pmod(PVec a, const PVec& b, const Fp& F) {
  ptrim(a);
  int db = pdeg(b);
  u64 linv = F.inv(b.back());
  while (pdeg(a) >= db) {
    u64 q = F.mul(a.back(), linv);
    int shift = pdeg(a) - db;
    for (int i = 0; i <= db; ++i)
      a[static_cast<std::size_t>(shift + i)] =
          F.sub(a[static_cast<std::size_t>(shift + i)], F.mul(q, b[static_cast<std::size_t>(i)]));
    ptrim(a);
    if (a.empty()) break;
  }
  return a;
}

PVec pdiv(PVec a, const PVec& b, const Fp& F) {
  ptrim(a);
  int db = pdeg(b);
  if (pdeg(a) < db) return {};
  PVec q(static_cast<std::size_t>(pdeg(a) - db) + 1, 0);
  u64 linv = F.inv(b.back());
  while (pdeg(a) >= db) {
    u64 c = F.mul(a.back(), linv);
    int shift = pdeg(a) - db;
    q[static_cast<std::size_t>(shift)] = c;
    for (int i = 0; i <= db; ++i)
      a[static_cast<std::size_t>(shift + i)] =
          F.sub(a[static_cast<std::size_t>(shift + i)], F.mul(c, b[static_cast<std::size_t>(i)]));
    ptrim(a);
    if (a.empty()) break;
  }
  ptrim(q);
  return q;
}

PVec pgcd(PVec a, PVec b, const Fp& F) {
  ptrim(a);
  ptrim(b);
  while (!b.empty()) {
    PVec r = pmod(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return pmonic(std::move(a), F);
}

PVec pderiv(const PVec& a, const Fp& F) {
  if (a.size() <= 1) return {};
  PVec r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = (a[i] * (i % F.p)) % F.p;
  ptrim(r);
  return r;
}

PVec psub(PVec a, const PVec& b, const Fp& F) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = F.sub(a[i], b[i]);
  ptrim(a);
  return a;
}

// t^e mod f
PVec pxpow(u64 e, const PVec& f, const Fp& F) {
  PVec base{0, 1};
  base = pmod(base, f, F);
  PVec r{1};
  while (e) {
    if (e & 1) r = pmod(pmul(r, base, F), f, F);
    base = pmod(pmul(base, base, F), f, F);
    e >>= 1;
  }
  return r;
}

// ---------- Berlekamp ----------

// f monic squarefree mod p. Returns the monic irreducible factors mod p.
std::vector<PVec> berlekamp(const PVec& f, const Fp& F) {
  int n = pdeg(f);
  if (n <= 1) return {f};
  // rows of Q: t^{ip} mod f
  std::vector<PVec> q(static_cast<std::size_t>(n));
  PVec tp = pxpow(F.p, f, F);
  q[0] = PVec{1};
  for (int i = 1; i < n; ++i)
    q[static_cast<std::size_t>(i)] = pmod(pmul(q[static_cast<std::size_t>(i) - 1], tp, F), f, F);
  // A = Q^T - I ; solve A v = 0
  std::vector<std::vector<u64>> a(static_cast<std::size_t>(n),
                                  std::vector<u64>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      u64 qji = (i <= pdeg(q[static_cast<std::size_t>(j)]))
                    ? q[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]
                    : 0;
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = F.sub(qji, i == j ? 1 : 0);
    }
  // Gaussian elimination; record pivot columns, then read off the null space.
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < n && rank < n; ++c) {
    int pr = -1;
    for (int r = rank; r < n; ++r)
      if (a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(a[static_cast<std::size_t>(pr)], a[static_cast<std::size_t>(rank)]);
    u64 inv = F.inv(a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)]);
    for (int j = 0; j < n; ++j)
      a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)] =
          F.mul(a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)], inv);
    for (int r = 0; r < n; ++r) {
      if (r == rank) continue;
      u64 s = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (!s) continue;
      for (int j = 0; j < n; ++j)
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] =
            F.sub(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)],
                  F.mul(s, a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)]));
    }
    pivot_col.push_back(c);
    ++rank;
  }
  int nullity = n - rank;
  if (nullity == 1) return {f};
  std::vector<PVec> basis;
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (int pc : pivot_col) is_pivot[static_cast<std::size_t>(pc)] = true;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[static_cast<std::size_t>(c)]) continue;
    PVec v(static_cast<std::size_t>(n), 0);
    v[static_cast<std::size_t>(c)] = 1;
    for (int r = 0; r < rank; ++r)
      v[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] =
          F.sub(0, a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    ptrim(v);
    basis.push_back(std::move(v));
  }
  // Split with gcd(g, v - c); deterministic sweep over basis vectors and c.
  std::vector<PVec> factors{f};
  for (const PVec& v : basis) {
    if (static_cast<int>(factors.size()) == nullity) break;
    if (pdeg(v) < 1) continue;  // constant vector never splits
    for (u64 c = 0; c < F.p && static_cast<int>(factors.size()) < nullity; ++c) {
      PVec vc = v;
      vc[0] = F.sub(vc[0], c);
      ptrim(vc);
      std::vector<PVec> next;
      for (PVec& g : factors) {
        if (pdeg(g) <= 1) {
          next.push_back(std::move(g));
          continue;
        }
        PVec d = vc.empty() ? PVec{} : pgcd(g, vc, F);
        if (pdeg(d) > 0 && pdeg(d) < pdeg(g)) {
          PVec other = pmonic(pdiv(g, d, F), F);
          next.push_back(std::move(d));
          next.push_back(std::move(other));
        } else {
          next.push_back(std::move(g));
        }
      }
      factors = std::move(next);
    }
  }
  std::sort(factors.begin(), factors.end(), [](const PVec& x, const PVec& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    for (std::size_t i = x.size(); i-- > 0;)
      if (x[i] != y[i]) return x[i] < y[i];
    return false;
  });
  return factors;
}

// ---------- coefficients mod a big lifting modulus ----------

IntPoly reduce_mod(const IntPoly& f, const Int& m) {
  std::vector<Int> c(f.coeffs());
  for (auto& x : c) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return IntPoly(std::move(c));
}

IntPoly symmetric_mod(const IntPoly& f, const Int& m) {
  std::vector<Int> c(f.coeffs());
  Int half = m / 2;
  for (auto& x : c) {
    mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    if (x > half) x -= m;
  }
  return IntPoly(std::move(c));
}

IntPoly mulmod(const IntPoly& a, const IntPoly& b, const Int& m) { return reduce_mod(a * b, m); }

// division by monic d, coefficients mod m
void divmod_monic_mod(const IntPoly& a, const IntPoly& d, const Int& m, IntPoly& q, IntPoly& r) {
  IntPoly cur = reduce_mod(a, m);
  std::vector<Int> quo;
  if (cur.degree() >= d.degree())
    quo.assign(static_cast<std::size_t>(cur.degree() - d.degree()) + 1, Int(0));
  while (cur.degree() >= d.degree()) {
    Int c = cur.leading();
    int k = cur.degree() - d.degree();
    quo[static_cast<std::size_t>(k)] = c;
    cur = reduce_mod(cur - d.shift_up(k) * c, m);
  }
  q = IntPoly(std::move(quo));
  r = cur;
}

// ---------- multifactor quadratic Hensel lifting ----------

struct HenselNode {
  int left = -1, right = -1;
  IntPoly prod;  // product of the leaf factors below, mod current modulus
  IntPoly s, t;  // Bezout pair for (left.prod, right.prod)
};

struct HenselTree {
  std::vector<HenselNode> nodes;
  std::vector<int> leaves;  // node index per modular factor

  int build(std::vector<IntPoly>& fs, int lo, int hi) {
    if (hi - lo == 1) {
      HenselNode n;
      n.prod = fs[static_cast<std::size_t>(lo)];
      nodes.push_back(std::move(n));
      leaves[static_cast<std::size_t>(lo)] = static_cast<int>(nodes.size()) - 1;
      return static_cast<int>(nodes.size()) - 1;
    }
    int mid = (lo + hi) / 2;
    int l = build(fs, lo, mid);
    int r = build(fs, mid, hi);
    HenselNode n;
    n.left = l;
    n.right = r;
    n.prod = nodes[static_cast<std::size_t>(l)].prod * nodes[static_cast<std::size_t>(r)].prod;
    nodes.push_back(std::move(n));
    return static_cast<int>(nodes.size()) - 1;
  }
};

// extended Euclid over F_p: s*a + t*b = 1 for coprime a, b
void bezout_mod_p(const PVec& a, const PVec& b, const Fp& F, PVec& s, PVec& t) {
  PVec r0 = a, r1 = b;
  PVec s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    PVec q = pdiv(r0, r1, F);
    PVec r2 = psub(r0, pmul(q, r1, F), F);
    PVec s2 = psub(s0, pmul(q, s1, F), F);
    PVec t2 = psub(t0, pmul(q, t1, F), F);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (pdeg(r0) != 0) throw std::logic_error("bezout: inputs not coprime mod p");
  u64 inv = F.inv(r0[0]);
  for (auto& x : s0) x = F.mul(x, inv);
  for (auto& x : t0) x = F.mul(x, inv);
  s = std::move(s0);
  t = std::move(t0);
}

IntPoly lift_pvec(const PVec& v) {
  std::vector<Int> c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = Int(static_cast<unsigned long>(v[i]));
  return IntPoly(std::move(c));
}

// One quadratic Hensel step: refresh node data from modulus m to m^2, where f
// is the node's target product mod m^2.
void hensel_step(HenselTree& tree, int node, const IntPoly& f, const Int& m2) {
  HenselNode& nd = tree.nodes[static_cast<std::size_t>(node)];
  nd.prod = reduce_mod(f, m2);
  if (nd.left < 0) return;
  IntPoly g = tree.nodes[static_cast<std::size_t>(nd.left)].prod;
  IntPoly h = tree.nodes[static_cast<std::size_t>(nd.right)].prod;
  IntPoly s = nd.s, t = nd.t;
  IntPoly e = reduce_mod(f - g * h, m2);
  IntPoly q, r;
  divmod_monic_mod(s * e, h, m2, q, r);
  IntPoly gs = reduce_mod(g + t * e + q * g, m2);
  IntPoly hs = reduce_mod(h + r, m2);
  IntPoly b = reduce_mod(s * gs + t * hs - IntPoly(1L), m2);
  IntPoly cq, dq;
  divmod_monic_mod(s * b, hs, m2, cq, dq);
  nd.s = reduce_mod(s - dq, m2);
  nd.t = reduce_mod(t - t * b - cq * gs, m2);
  hensel_step(tree, nd.left, gs, m2);
  hensel_step(tree, nd.right, hs, m2);
}

// Lift the mod-p factorization of monic squarefree f to a modulus >= bound.
std::vector<IntPoly> hensel_lift(const IntPoly& f, const std::vector<PVec>& mod_factors,
                                 const Fp& F, const Int& bound, Int& P) {
  std::vector<IntPoly> fs(mod_factors.size());
  for (std::size_t i = 0; i < mod_factors.size(); ++i) fs[i] = lift_pvec(mod_factors[i]);
  HenselTree tree;
  tree.leaves.assign(fs.size(), -1);
  int root = tree.build(fs, 0, static_cast<int>(fs.size()));
  Int p(static_cast<unsigned long>(F.p));
  for (auto& nd : tree.nodes) {
    nd.prod = reduce_mod(nd.prod, p);
    if (nd.left >= 0) {
      PVec ga = from_intpoly(tree.nodes[static_cast<std::size_t>(nd.left)].prod, F);
      PVec hb = from_intpoly(tree.nodes[static_cast<std::size_t>(nd.right)].prod, F);
      PVec s, t;
      bezout_mod_p(ga, hb, F, s, t);
      nd.s = lift_pvec(s);
      nd.t = lift_pvec(t);
    }
  }
  Int m = p;
  while (m < bound) {
    Int m2 = m * m;
    hensel_step(tree, root, reduce_mod(f, m2), m2);
    m = m2;
  }
  P = m;
  std::vector<IntPoly> out;
  out.reserve(fs.size());
  for (int leaf : tree.leaves) out.push_back(tree.nodes[static_cast<std::size_t>(leaf)].prod);
  return out;
}

// ---------- recombination ----------

Int mignotte_bound(const IntPoly& f) {
  // any monic factor of monic f has |coeff| <= 2^n sqrt(n+1) |f|_inf
  Int h = 0;
  for (const Int& c : f.coeffs())
    if (abs(c) > h) h = abs(c);
  Int b = (h + 1) * (f.degree() + 1);  // crude sqrt(n+1) cover
  mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(f.degree() + 1));
  return b;
}

// Subset recombination over lifted factors. max_degree < 0 means
// unrestricted. Appends irreducible factors to out; returns the unfactored
// leftover (1 when fully split).
IntPoly recombine(const IntPoly& f0, std::vector<IntPoly> lifted, const Int& P,
                  std::vector<IntPoly>& out, int max_degree) {
  IntPoly f = f0;
  std::vector<int> alive(lifted.size());
  for (std::size_t i = 0; i < lifted.size(); ++i) alive[i] = static_cast<int>(i);
  Int half = P / 2;

  auto try_subset = [&](const std::vector<int>& subset) -> bool {
    if (f.constant() != 0) {
      Int c0(1L);
      for (int i : subset) {
        c0 *= lifted[static_cast<std::size_t>(i)].constant();
        mpz_fdiv_r(c0.get_mpz_t(), c0.get_mpz_t(), P.get_mpz_t());
      }
      if (c0 > half) c0 -= P;
      if (c0 == 0 || !mpz_divisible_p(f.constant().get_mpz_t(), c0.get_mpz_t())) return false;
    }
    IntPoly g(1L);
    for (int i : subset) g = mulmod(g, lifted[static_cast<std::size_t>(i)], P);
    g = symmetric_mod(g, P);
    IntPoly q;
    if (!f.divide_exact(g, q)) return false;
    out.push_back(g);
    f = q;
    return true;
  };

  std::size_t card = 1;
  while (card <= alive.size() / 2) {
    bool found = false;
    std::vector<std::size_t> idx(card);
    for (std::size_t i = 0; i < card; ++i) idx[i] = i;
    std::vector<int> pick(card);
    while (true) {
      int deg_sum = 0;
      for (std::size_t i = 0; i < card; ++i) {
        pick[i] = alive[idx[i]];
        deg_sum += lifted[static_cast<std::size_t>(pick[i])].degree();
      }
      if ((max_degree < 0 || deg_sum <= max_degree) && try_subset(pick)) {
        std::vector<int> na;
        for (int v : alive)
          if (std::find(pick.begin(), pick.end(), v) == pick.end()) na.push_back(v);
        alive = std::move(na);
        found = true;
        break;
      }
      // advance lexicographic subset
      std::size_t i = card;
      bool advanced = false;
      while (i-- > 0) {
        if (idx[i] + (card - i) < alive.size()) {
          ++idx[i];
          for (std::size_t j = i + 1; j < card; ++j) idx[j] = idx[j - 1] + 1;
          advanced = true;
          break;
        }
      }
      if (!advanced) break;
    }
    if (!found) ++card;
  }
  if (!alive.empty()) {
    int deg_sum = 0;
    for (int v : alive) deg_sum += lifted[static_cast<std::size_t>(v)].degree();
    if (max_degree < 0 || deg_sum <= max_degree || alive.size() == 1) {
      // all proper subsets failed, so the leftover is irreducible
      out.push_back(f);
      return IntPoly(1L);
    }
    return f;  // above the cap: goes to the remainder, never mislabeled
  }
  return f;  // == 1
}

// Smallest admissible prime: p >= 3 and f squarefree mod p.
Fp pick_prime(const IntPoly& f) {
  static const unsigned primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                    43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  for (unsigned p : primes) {
    Fp F{p};
    PVec fp = from_intpoly(f, F);
    if (pdeg(fp) != f.degree()) continue;
    PVec d = pderiv(fp, F);
    if (d.empty()) continue;
    if (pdeg(pgcd(fp, d, F)) == 0) return F;
  }
  unsigned long candidate = 101;
  while (true) {
    mpz_class c(candidate);
    if (mpz_probab_prime_p(c.get_mpz_t(), 30)) {
      Fp F{candidate};
      PVec fp = from_intpoly(f, F);
      if (pdeg(fp) == f.degree()) {
        PVec d = pderiv(fp, F);
        if (!d.empty() && pdeg(pgcd(fp, d, F)) == 0) return F;
      }
    }
    candidate += 2;
  }
}

// Factor a monic squarefree nonconstant polynomial with nonzero constant
// term. max_degree >= 0 restricts recombination products to that degree (the
// pass used above the cap); the unsplit part lands in `leftover`.
void zassenhaus(const IntPoly& a, std::vector<IntPoly>& out, IntPoly& leftover, int max_degree) {
  leftover = IntPoly(1L);
  if (a.degree() == 1) {
    out.push_back(a);
    return;
  }
  Fp F = pick_prime(a);
  std::vector<PVec> mf = berlekamp(pmonic(from_intpoly(a, F), F), F);
  if (mf.size() == 1) {
    out.push_back(a);
    return;
  }
  Int bound = mignotte_bound(a) * 2 + 1;
  Int P;
  std::vector<IntPoly> lifted = hensel_lift(a, mf, F, bound, P);
  IntPoly rest = recombine(a, std::move(lifted), P, out, max_degree);
  if (rest.degree() > 0) leftover = rest;
}

}  // namespace

FactoredPoly factor(const IntPoly& p, int degree_cap) {
  if (p.is_zero()) throw std::invalid_argument("factor of zero polynomial");
  FactoredPoly out;
  out.unit = (p.leading() < 0) ? -1 : 1;
  Int c = abs(content(p));
  IntPoly f = primitive_part(p);
  if (c != 1) out.remainder = IntPoly(c);
  if (f.degree() == 0) return out;
  if (!f.is_monic()) {
    // non-monic content-free part is out of contract; keep it unfactored
    out.remainder = out.remainder * f;
    return out;
  }

  FactoredPoly sf = squarefree_decomposition(f);
  for (auto& [piece, mult] : sf.factors) {
    IntPoly a = piece;
    // a root at zero (at most one per squarefree piece)
    if (a.constant() == 0) {
      IntPoly q;
      a.divide_exact(IntPoly::variable(), q);
      out.factors.emplace_back(IntPoly::variable(), mult);
      a = q;
    }
    if (a.degree() == 0) continue;
    // cyclotomic sweep; evaluation at two points filters non-divisors cheaply
    unsigned limit = cyclotomic_sweep_limit(a.degree());
    Int v2 = a.eval(Int(2)), v3 = a.eval(Int(-3));
    for (unsigned k = 1; k <= limit && a.degree() > 0; ++k) {
      if (static_cast<int>(euler_phi(k)) > a.degree()) continue;
      IntPoly phi = cyclotomic(k);
      Int p2 = phi.eval(Int(2)), p3 = phi.eval(Int(-3));
      if (p2 != 0 && !mpz_divisible_p(v2.get_mpz_t(), p2.get_mpz_t())) continue;
      if (p3 != 0 && !mpz_divisible_p(v3.get_mpz_t(), p3.get_mpz_t())) continue;
      IntPoly q;
      if (a.divide_exact(phi, q)) {
        out.factors.emplace_back(phi, mult);
        a = q;
        v2 = a.eval(Int(2));
        v3 = a.eval(Int(-3));
      }
    }
    if (a.degree() == 0) continue;
    std::vector<IntPoly> irr;
    IntPoly leftover(1L);
    if (a.degree() <= degree_cap) {
      zassenhaus(a, irr, leftover, -1);
    } else {
      // bounded pass above the cap: still pulls linear/quadratic factors
      zassenhaus(a, irr, leftover, 2);
    }
    for (auto& g : irr) out.factors.emplace_back(std::move(g), mult);
    if (leftover.degree() > 0)
      out.remainder = out.remainder * leftover.pow(static_cast<unsigned>(mult));
  }
  out.sort_factors();
  return out;
}

}  // namespace sspec::exactpoly
