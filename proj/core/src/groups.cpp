#include "sspec/groups.hpp"

#include "sspec/util.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace sspec::groups {

namespace {

std::vector<std::string> default_names(int count) {
  if (count == 1) return {"s"};
  std::vector<std::string> names;
  for (int i = 0; i < count; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  return names;
}

// composition acting on points: (a o b)(x) = a[b[x]]
std::vector<int> perm_compose(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
  return r;
}

std::vector<int> perm_inverse(const std::vector<int>& a) {
  std::vector<int> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
  return r;
}

std::vector<int> perm_identity(long n) {
  std::vector<int> r(static_cast<std::size_t>(n));
  std::iota(r.begin(), r.end(), 0);
  return r;
}

}  // namespace

GroupSpec GroupSpec::cyclic(long m) {
  GroupSpec s;
  s.variant = Variant::Cyclic;
  s.m = m;
  s.generator_names = default_names(1);
  s.validate();
  return s;
}

GroupSpec GroupSpec::free_abelian(int d) {
  GroupSpec s;
  s.variant = Variant::FreeAbelian;
  s.rank = d;
  s.generator_names = default_names(d);
  s.validate();
  return s;
}

GroupSpec GroupSpec::free_group(int k) {
  GroupSpec s;
  s.variant = Variant::Free;
  s.rank = k;
  s.generator_names = default_names(k);
  s.validate();
  return s;
}

GroupSpec GroupSpec::finite_perm(long points, std::vector<std::vector<int>> generators,
                                 std::vector<std::string> names) {
  GroupSpec s;
  s.variant = Variant::FinitePerm;
  s.points = points;
  s.perm_generators = std::move(generators);
  s.generator_names =
      names.empty() ? default_names(static_cast<int>(s.perm_generators.size())) : std::move(names);
  s.validate();
  return s;
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors) {
  GroupSpec s;
  s.variant = Variant::Product;
  s.factors = std::move(factors);
  int total = 0;
  for (const GroupSpec& f : s.factors) total += f.generator_count();
  s.generator_names = default_names(total);
  s.validate();
  return s;
}

int GroupSpec::generator_index(char name) const {
  for (int i = 0; i < generator_count(); ++i)
    if (generator_names[static_cast<std::size_t>(i)].size() == 1 &&
        generator_names[static_cast<std::size_t>(i)][0] == name)
      return i;
  return -1;
}

void GroupSpec::validate() const {
  for (const std::string& n : generator_names) {
    if (n.size() != 1 || !std::islower(static_cast<unsigned char>(n[0])))
      throw std::invalid_argument("generator names must be single lowercase letters");
  }
  for (std::size_t i = 0; i < generator_names.size(); ++i)
    for (std::size_t j = i + 1; j < generator_names.size(); ++j)
      if (generator_names[i] == generator_names[j])
        throw std::invalid_argument("generator names must be distinct");
  switch (variant) {
    case Variant::Cyclic:
      if (m < 1) throw std::invalid_argument("cyclic(m) needs m >= 1");
      if (generator_count() != 1) throw std::invalid_argument("cyclic groups have one generator");
      break;
    case Variant::FreeAbelian:
      if (rank < 1) throw std::invalid_argument("free-abelian(d) needs d >= 1");
      if (generator_count() != rank) throw std::invalid_argument("generator count != rank");
      break;
    case Variant::Free:
      if (rank < 1) throw std::invalid_argument("free(k) needs k >= 1");
      if (generator_count() != rank) throw std::invalid_argument("generator count != rank");
      break;
    case Variant::FinitePerm: {
      if (points < 1) throw std::invalid_argument("finite-perm needs points >= 1");
      if (perm_generators.empty()) throw std::invalid_argument("finite-perm needs generators");
      if (static_cast<int>(perm_generators.size()) != generator_count())
        throw std::invalid_argument("generator count mismatch");
      for (const auto& g : perm_generators) {
        if (static_cast<long>(g.size()) != points)
          throw std::invalid_argument("finite-perm generators must act on the same point count");
        std::vector<bool> seen(static_cast<std::size_t>(points), false);
        for (int x : g) {
          if (x < 0 || x >= points || seen[static_cast<std::size_t>(x)])
            throw std::invalid_argument("finite-perm generator is not a permutation");
          seen[static_cast<std::size_t>(x)] = true;
        }
      }
      break;
    }
    case Variant::Product: {
      if (factors.empty()) throw std::invalid_argument("product needs factors");
      int total = 0;
      for (const GroupSpec& f : factors) {
        f.validate();
        total += f.generator_count();
      }
      if (total != generator_count()) throw std::invalid_argument("generator count mismatch");
      break;
    }
  }
}

bool GroupSpec::operator==(const GroupSpec& o) const {
  return variant == o.variant && m == o.m && rank == o.rank && points == o.points &&
         perm_generators == o.perm_generators && factors == o.factors &&
         generator_names == o.generator_names;
}

Word parse_word(const GroupSpec& spec, const std::string& text) {
  Word w;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    char low = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    int idx = spec.generator_index(low);
    if (idx < 0) throw std::invalid_argument(std::string("unknown generator '") + ch + "'");
    bool inverse = std::isupper(static_cast<unsigned char>(ch));
    w.letters.push_back(inverse ? -(idx + 1) : (idx + 1));
  }
  return canonicalize(spec, w);
}

std::string word_to_string(const GroupSpec& spec, const Word& w) {
  if (w.letters.empty()) return "e";
  std::string out;
  for (int l : w.letters) {
    int idx = std::abs(l) - 1;
    char c = spec.generator_names[static_cast<std::size_t>(idx)][0];
    out.push_back(l > 0 ? c : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

namespace {

std::vector<long> exponent_vector(const GroupSpec& spec, const Word& w) {
  std::vector<long> e(static_cast<std::size_t>(spec.generator_count()), 0);
  for (int l : w.letters) e[static_cast<std::size_t>(std::abs(l) - 1)] += (l > 0 ? 1 : -1);
  return e;
}

Word free_reduce(const Word& w) {
  Word r;
  for (int l : w.letters) {
    if (!r.letters.empty() && r.letters.back() == -l)
      r.letters.pop_back();
    else
      r.letters.push_back(l);
  }
  r.canonical = true;
  return r;
}

// split a product word into per-factor subwords (letters renumbered locally)
std::vector<Word> split_by_factor(const GroupSpec& spec, const Word& w) {
  std::vector<Word> parts(spec.factors.size());
  std::vector<int> base(spec.factors.size() + 1, 0);
  for (std::size_t f = 0; f < spec.factors.size(); ++f)
    base[f + 1] = base[f] + spec.factors[f].generator_count();
  for (int l : w.letters) {
    int idx = std::abs(l) - 1;
    std::size_t f = 0;
    while (idx >= base[f + 1]) ++f;
    int local = idx - base[f] + 1;
    parts[f].letters.push_back(l > 0 ? local : -local);
  }
  return parts;
}

}  // namespace

Word canonicalize(const GroupSpec& spec, const Word& w) {
  switch (spec.variant) {
    case Variant::Cyclic: {
      long e = 0;
      for (int l : w.letters) e += (l > 0 ? 1 : -1);
      e %= spec.m;
      if (e < 0) e += spec.m;
      // shortest residue representative: use inverses above m/2
      Word r;
      if (2 * e > spec.m) {
        for (long i = 0; i < spec.m - e; ++i) r.letters.push_back(-1);
      } else {
        for (long i = 0; i < e; ++i) r.letters.push_back(1);
      }
      r.canonical = true;
      return r;
    }
    case Variant::FreeAbelian: {
      std::vector<long> e = exponent_vector(spec, w);
      Word r;
      for (std::size_t g = 0; g < e.size(); ++g) {
        long v = e[g];
        for (long i = 0; i < std::abs(v); ++i)
          r.letters.push_back(v > 0 ? static_cast<int>(g + 1) : -static_cast<int>(g + 1));
      }
      r.canonical = true;
      return r;
    }
    case Variant::Free:
    case Variant::FinitePerm:
      return free_reduce(w);
    case Variant::Product: {
      // per-factor canonical forms concatenated in factor order
      std::vector<Word> parts = split_by_factor(spec, w);
      Word r;
      int base = 0;
      for (std::size_t f = 0; f < spec.factors.size(); ++f) {
        Word c = canonicalize(spec.factors[f], parts[f]);
        for (int l : c.letters) {
          int idx = std::abs(l) - 1 + base;
          r.letters.push_back(l > 0 ? idx + 1 : -(idx + 1));
        }
        base += spec.factors[f].generator_count();
      }
      r.canonical = true;
      return r;
    }
  }
  throw std::logic_error("unreachable");
}

Word word_mul(const GroupSpec& spec, const Word& a, const Word& b) {
  Word c;
  c.letters = a.letters;
  c.letters.insert(c.letters.end(), b.letters.begin(), b.letters.end());
  return canonicalize(spec, c);
}

Word word_inverse(const GroupSpec& spec, const Word& w) {
  Word r;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) r.letters.push_back(-*it);
  return canonicalize(spec, r);
}

std::vector<long> element_key(const GroupSpec& spec, const Word& w) {
  Word c = w.canonical ? w : canonicalize(spec, w);
  switch (spec.variant) {
    case Variant::Cyclic: {
      long e = 0;
      for (int l : c.letters) e += (l > 0 ? 1 : -1);
      e %= spec.m;
      if (e < 0) e += spec.m;
      return {e};
    }
    case Variant::FreeAbelian:
      return exponent_vector(spec, c);
    case Variant::Free: {
      std::vector<long> k;
      k.reserve(c.letters.size());
      for (int l : c.letters) k.push_back(l);
      return k;
    }
    case Variant::FinitePerm: {
      // the element is the permutation it induces on the defining points
      std::vector<int> p = perm_identity(spec.points);
      for (auto it = c.letters.rbegin(); it != c.letters.rend(); ++it) {
        const auto& g = spec.perm_generators[static_cast<std::size_t>(std::abs(*it) - 1)];
        p = (*it > 0) ? perm_compose(g, p) : perm_compose(perm_inverse(g), p);
      }
      std::vector<long> k;
      k.reserve(p.size());
      for (int x : p) k.push_back(x);
      return k;
    }
    case Variant::Product: {
      std::vector<Word> parts = split_by_factor(spec, c);
      std::vector<long> k;
      for (std::size_t f = 0; f < spec.factors.size(); ++f) {
        std::vector<long> sub = element_key(spec.factors[f], parts[f]);
        k.push_back(static_cast<long>(sub.size()));
        k.insert(k.end(), sub.begin(), sub.end());
      }
      return k;
    }
  }
  throw std::logic_error("unreachable");
}

bool is_identity(const GroupSpec& spec, const Word& w) {
  std::vector<long> k = element_key(spec, w);
  return k == element_key(spec, Word::identity());
}

const std::vector<int>& SoficMap::image(int letter) const {
  std::size_t idx = static_cast<std::size_t>(std::abs(letter) - 1);
  if (idx >= gen_images.size()) throw std::out_of_range("generator index out of range");
  return letter > 0 ? gen_images[idx] : gen_inverse_images[idx];
}

long natural_scale(const GroupSpec& spec) {
  switch (spec.variant) {
    case Variant::Cyclic:
      return spec.m;
    case Variant::FinitePerm:
      return spec.points;
    case Variant::Product: {
      long n = 1;
      for (const GroupSpec& f : spec.factors) n *= natural_scale(f);
      return n;
    }
    default:
      throw std::invalid_argument("no natural scale for free / free-abelian groups");
  }
}

long finite_perm_group_order(const GroupSpec& spec, long budget) {
  if (spec.variant != Variant::FinitePerm)
    throw std::invalid_argument("finite_perm_group_order needs a finite-perm spec");
  std::vector<std::vector<int>> gens;
  for (const auto& g : spec.perm_generators) {
    gens.push_back(g);
    gens.push_back(perm_inverse(g));
  }
  std::map<std::vector<int>, long> seen;
  std::vector<std::vector<int>> frontier{perm_identity(spec.points)};
  seen.emplace(frontier[0], 0);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        std::vector<int> y = perm_compose(g, x);
        if (seen.emplace(y, static_cast<long>(seen.size())).second) {
          next.push_back(std::move(y));
          if (static_cast<long>(seen.size()) > budget)
            throw std::runtime_error("finite_perm_group_order: budget exceeded");
        }
      }
    }
    frontier = std::move(next);
  }
  return static_cast<long>(seen.size());
}

namespace {

SoficMap product_map(const GroupSpec& spec, long n, std::uint64_t seed);

SoficMap regular_representation(const GroupSpec& spec) {
  // enumerate elements breadth-first with a deterministic index order, then
  // act by left multiplication
  std::vector<std::vector<int>> gens;
  for (const auto& g : spec.perm_generators) gens.push_back(g);
  std::vector<std::vector<int>> inv_gens;
  for (const auto& g : spec.perm_generators) inv_gens.push_back(perm_inverse(g));

  std::map<std::vector<int>, long> index;
  std::vector<std::vector<int>> elements{perm_identity(spec.points)};
  index.emplace(elements[0], 0);
  for (std::size_t head = 0; head < elements.size(); ++head) {
    std::vector<int> x = elements[head];
    for (const auto* side : {&gens, &inv_gens}) {
      for (const auto& g : *side) {
        std::vector<int> y = perm_compose(g, x);
        if (index.emplace(y, static_cast<long>(elements.size())).second)
          elements.push_back(std::move(y));
      }
    }
  }
  long order = static_cast<long>(elements.size());
  SoficMap mapping;
  mapping.scale = order;
  for (std::size_t gi = 0; gi < gens.size(); ++gi) {
    std::vector<int> img(static_cast<std::size_t>(order));
    std::vector<int> inv(static_cast<std::size_t>(order));
    for (long e = 0; e < order; ++e) {
      img[static_cast<std::size_t>(e)] = static_cast<int>(
          index.at(perm_compose(gens[gi], elements[static_cast<std::size_t>(e)])));
      inv[static_cast<std::size_t>(e)] = static_cast<int>(
          index.at(perm_compose(inv_gens[gi], elements[static_cast<std::size_t>(e)])));
    }
    mapping.gen_images.push_back(std::move(img));
    mapping.gen_inverse_images.push_back(std::move(inv));
  }
  return mapping;
}

SoficMap product_map(const GroupSpec& spec, long n, std::uint64_t seed) {
  std::vector<SoficMap> sub;
  long expect = 1;
  for (std::size_t f = 0; f < spec.factors.size(); ++f) {
    long nf = natural_scale(spec.factors[f]);
    sub.push_back(build_sofic_map(spec.factors[f], nf, split_seed(seed, f)));
    expect *= nf;
  }
  if (n != expect)
    throw std::invalid_argument("product scale must equal the product of factor scales");
  // mixed-radix index: x = x_0 * (n_1 n_2 ...) + ... + x_{k-1}
  std::vector<long> radix(spec.factors.size());
  for (std::size_t f = 0; f < spec.factors.size(); ++f) radix[f] = sub[f].scale;
  std::vector<long> stride(spec.factors.size(), 1);
  for (std::size_t f = spec.factors.size(); f-- > 1;) stride[f - 1] = stride[f] * radix[f];

  SoficMap mapping;
  mapping.scale = n;
  mapping.seed = seed;
  std::size_t fbase = 0;
  for (std::size_t f = 0; f < spec.factors.size(); ++f) {
    for (int g = 0; g < spec.factors[f].generator_count(); ++g) {
      std::vector<int> img(static_cast<std::size_t>(n)), inv(static_cast<std::size_t>(n));
      for (long x = 0; x < n; ++x) {
        long coord = (x / stride[f]) % radix[f];
        long rest = x - coord * stride[f];
        long y = sub[f].gen_images[static_cast<std::size_t>(g)][static_cast<std::size_t>(coord)];
        long yi =
            sub[f].gen_inverse_images[static_cast<std::size_t>(g)][static_cast<std::size_t>(coord)];
        img[static_cast<std::size_t>(x)] = static_cast<int>(rest + y * stride[f]);
        inv[static_cast<std::size_t>(x)] = static_cast<int>(rest + yi * stride[f]);
      }
      mapping.gen_images.push_back(std::move(img));
      mapping.gen_inverse_images.push_back(std::move(inv));
      (void)fbase;
    }
    fbase += static_cast<std::size_t>(spec.factors[f].generator_count());
  }
  return mapping;
}

}  // namespace

SoficMap build_sofic_map(const GroupSpec& spec, long n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("scale must be >= 1");
  SoficMap mapping;
  mapping.scale = n;
  mapping.seed = seed;
  switch (spec.variant) {
    case Variant::Cyclic: {
      if (spec.m % n != 0)
        throw std::invalid_argument("cyclic(m): scale must divide m (quotient C_m -> C_n)");
      std::vector<int> img(static_cast<std::size_t>(n));
      for (long x = 0; x < n; ++x) img[static_cast<std::size_t>(x)] = static_cast<int>((x + 1) % n);
      mapping.gen_inverse_images.push_back(perm_inverse(img));
      mapping.gen_images.push_back(std::move(img));
      return mapping;
    }
    case Variant::FreeAbelian: {
      // n = m0^d with one modulus per coordinate keeps the quotient chain nested
      long m0 = 0;
      long guess = std::lround(std::pow(static_cast<double>(n), 1.0 / spec.rank));
      for (long cand = std::max(1L, guess - 2); cand <= guess + 2; ++cand) {
        long p = 1;
        for (int i = 0; i < spec.rank; ++i) p *= cand;
        if (p == n) {
          m0 = cand;
          break;
        }
      }
      if (m0 < 1)
        throw std::invalid_argument("free-abelian(d): scale must be m0^d for an integer m0");
      std::vector<long> stride(static_cast<std::size_t>(spec.rank), 1);
      for (int f = spec.rank; f-- > 1;)
        stride[static_cast<std::size_t>(f - 1)] = stride[static_cast<std::size_t>(f)] * m0;
      for (int g = 0; g < spec.rank; ++g) {
        std::vector<int> img(static_cast<std::size_t>(n));
        for (long x = 0; x < n; ++x) {
          long coord = (x / stride[static_cast<std::size_t>(g)]) % m0;
          long rest = x - coord * stride[static_cast<std::size_t>(g)];
          img[static_cast<std::size_t>(x)] =
              static_cast<int>(rest + ((coord + 1) % m0) * stride[static_cast<std::size_t>(g)]);
        }
        mapping.gen_inverse_images.push_back(perm_inverse(img));
        mapping.gen_images.push_back(std::move(img));
      }
      return mapping;
    }
    case Variant::Free: {
      for (int g = 0; g < spec.rank; ++g) {
        std::vector<int> img =
            random_permutation(n, split_seed(seed, static_cast<std::uint64_t>(g)));
        mapping.gen_inverse_images.push_back(perm_inverse(img));
        mapping.gen_images.push_back(std::move(img));
      }
      return mapping;
    }
    case Variant::FinitePerm: {
      if (n == spec.points) {
        for (const auto& g : spec.perm_generators) {
          mapping.gen_images.push_back(g);
          mapping.gen_inverse_images.push_back(perm_inverse(g));
        }
        return mapping;
      }
      SoficMap reg = regular_representation(spec);
      if (reg.scale != n)
        throw std::invalid_argument(
            "finite-perm: scale must be the point count or the group order " +
            std::to_string(reg.scale));
      reg.seed = seed;
      return reg;
    }
    case Variant::Product:
      return product_map(spec, n, seed);
  }
  throw std::logic_error("unreachable");
}

std::vector<int> word_evaluate(const GroupSpec& spec, const SoficMap& map, const Word& w) {
  for (int l : w.letters)
    if (std::abs(l) < 1 || std::abs(l) > spec.generator_count())
      throw std::out_of_range("word contains an invalid generator index");
  std::vector<int> acc = perm_identity(map.scale);
  // right-to-left so that phi(uv) = phi(u) o phi(v) for exact quotients
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
    acc = perm_compose(map.image(*it), acc);
  return acc;
}

DefectReport measure_defect(const GroupSpec& spec, const SoficMap& map,
                            const std::vector<Word>& test_set) {
  DefectReport report;
  const double n = static_cast<double>(map.scale);
  std::vector<std::vector<int>> images;
  images.reserve(test_set.size());
  for (const Word& w : test_set) images.push_back(word_evaluate(spec, map, w));

  for (std::size_t i = 0; i < test_set.size(); ++i) {
    for (std::size_t j = 0; j < test_set.size(); ++j) {
      Word gh = word_mul(spec, test_set[i], test_set[j]);
      std::vector<int> img_gh = word_evaluate(spec, map, gh);
      std::vector<int> lhs = perm_compose(images[i], images[j]);
      long agree = 0;
      for (long x = 0; x < map.scale; ++x)
        if (lhs[static_cast<std::size_t>(x)] == img_gh[static_cast<std::size_t>(x)]) ++agree;
      report.pairs.push_back({test_set[i], test_set[j], agree / n});
    }
  }
  for (std::size_t i = 0; i < test_set.size(); ++i) {
    if (is_identity(spec, test_set[i])) continue;
    long fixed = 0;
    for (long x = 0; x < map.scale; ++x)
      if (images[i][static_cast<std::size_t>(x)] == x) ++fixed;
    report.freeness.push_back({test_set[i], fixed / n});
  }
  return report;
}

}  // namespace sspec::groups
