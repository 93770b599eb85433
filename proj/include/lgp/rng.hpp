#pragma once

#include <cstdint>

namespace lgp {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

enum class Channel : std::uint64_t {
  kIndicator = 1,
  kLui = 2,
  kMlmSelect = 3,
  kMlmSplit = 4,
  kMlmRandom = 5,
};

// Counter-based stream: draw i of (seed, paragraph, channel) is computed
// directly, so results never depend on processing order.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t paragraph, Channel channel) noexcept
      : key_(mix64(mix64(seed ^ 0x6a09e667f3bcc909ULL) ^ paragraph) +
             mix64(static_cast<std::uint64_t>(channel))) {}

  std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix64(key_ + (counter + 1) * 0x9e3779b97f4a7c15ULL);
  }

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  bool bernoulli(std::uint64_t counter, double p) const noexcept {
    return uniform(counter) < p;
  }

  // Uniform in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t counter, std::uint64_t n) const noexcept {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(bits(counter)) * n) >> 64);
  }

 private:
  std::uint64_t key_;
};

}  // namespace lgp
