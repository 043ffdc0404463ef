#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace hj {

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t z)
{
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: output i of the stream keyed by (seed, stream,
/// index) is splitmix64_mix(key + (i + 1) * golden). Streams with different
/// keys are independent for practical purposes, so parallel workers can draw
/// sample j of variable v without coordinating.
class CounterRng {
public:
  static constexpr const char* generator_name = "splitmix64-counter";
  static constexpr const char* keying_scheme = "key=mix(mix(mix(seed)^stream)^index); draw i=mix(key+(i+1)*0x9e3779b97f4a7c15)";

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0, std::uint64_t index = 0)
    : key_{derive_key(seed, stream, index)}
  {}

  static constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
  {
    std::uint64_t k = splitmix64_mix(seed + golden);
    k = splitmix64_mix(k ^ (stream + golden));
    return splitmix64_mix(k ^ (index + golden));
  }

  std::uint64_t next() { return splitmix64_mix(key_ + (++counter_) * golden); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound); rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t bound)
  {
    if (bound <= 1)
      return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi)
  {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin(double p_true = 0.5) { return uniform01() < p_true; }

  /// Box-Muller on two draws; returns a pair of independent standard normals.
  std::pair<double, double> normal_pair()
  {
    const double u1 = 1.0 - uniform01(); // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

private:
  static constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

} // namespace hj
