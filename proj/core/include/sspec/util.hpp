#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sspec {

inline constexpr const char* kVersion = "0.1.0";

// Counter-based seed splitting: every randomized computation takes its stream
// from (seed, stream-id) so schedule points are reproducible independently of
// execution order. The generator below is splitmix64; it is also used directly
// as the PRNG because its output is platform-independent, unlike the
// distributions in <random>.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t state_;
};

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

// Seeded Fisher-Yates shuffle of {0,...,n-1}.
std::vector<int> random_permutation(long n, std::uint64_t seed);

// Fixed 17-significant-digit decimal rendering; byte-identical across runs.
std::string format_double17(double v);

}  // namespace sspec
