#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string_view>

namespace lrp {

/// SplitMix64 finaliser; also used to expand seeds into generator state.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Stream seed for one (experiment, trial, purpose) triple:
///
///   s = master; s = splitmix64(s ^ fnv1a64(experiment)); s = splitmix64(s ^ trial);
///   s = splitmix64(s ^ fnv1a64(purpose))
///
/// where splitmix64(v) denotes one SplitMix64 output from state v. The result
/// does not depend on the order in which trials are scheduled.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view experiment, std::uint64_t trial,
                                    std::string_view purpose) noexcept {
  std::uint64_t s = master ^ fnv1a64(experiment);
  s = splitmix64(s);
  s ^= trial;
  s = splitmix64(s);
  s ^= fnv1a64(purpose);
  return splitmix64(s);
}

/// xoshiro256** 1.0. Satisfies UniformRandomBitGenerator, but all samplers in
/// this library draw through the member helpers so results do not depend on
/// the standard library's distribution implementations.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit constexpr Rng(std::uint64_t seed) noexcept {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Standard exponential variate.
  double exponential() noexcept { return -std::log1p(-uniform()); }

  bool bernoulli(double p) noexcept { return uniform() < p; }

  /// Uniform integer in [0, n), n >= 1 (Lemire's nearly-divisionless method).
  std::uint64_t below(std::uint64_t n) noexcept {
    __uint128_t m = static_cast<__uint128_t>((*this)()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<__uint128_t>((*this)()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

  std::uint64_t s_[4]{};
};

}  // namespace lrp
