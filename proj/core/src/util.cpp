#include "sspec/util.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sspec {

std::uint64_t SplitMix64::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("below(0)");
  // Rejection sampling on the top range to avoid modulo bias.
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 g(seed ^ (0x517cc1b727220a95ULL * (stream + 1)));
  return g.next();
}

std::vector<int> random_permutation(long n, std::uint64_t seed) {
  std::vector<int> p(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = static_cast<int>(i);
  SplitMix64 g(seed);
  for (long i = n - 1; i > 0; --i) {
    std::uint64_t j = g.below(static_cast<std::uint64_t>(i) + 1);
    std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
  }
  return p;
}

std::string format_double17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace sspec
