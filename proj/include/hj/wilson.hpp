#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include <boost/math/distributions/normal.hpp>

#include "hj/errors.hpp"

namespace hj {

struct Interval {
  double lo = 0;
  double hi = 0;
};

/// Two-sided standard normal quantile for confidence `level` in (0, 1).
inline double normal_quantile_two_sided(double level)
{
  if (!(level > 0 && level < 1))
    throw InvalidLevel("confidence level must lie in (0, 1)");
  boost::math::normal_distribution<double> standard;
  return boost::math::quantile(standard, 1 - (1 - level) / 2);
}

/// Wilson score interval for `successes` out of `trials`; never 0/0, and
/// nondegenerate at p_hat = 0 or 1.
inline Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double level)
{
  const double z = normal_quantile_two_sided(level);
  if (trials == 0)
    return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1 + z2 / n;
  const double center = (p + z2 / (2 * n)) / denom;
  const double half = z / denom * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
  Interval iv{std::max(0.0, center - half), std::min(1.0, center + half)};
  // the bounds are exactly 0 / 1 at the boundary; avoid rounding past them
  if (successes == 0)
    iv.lo = 0.0;
  if (successes == trials)
    iv.hi = 1.0;
  return iv;
}

inline bool contains(const Interval& iv, double x)
{
  return iv.lo <= x && x <= iv.hi;
}

} // namespace hj
