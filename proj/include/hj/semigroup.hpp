#pragma once

#include <cmath>
#include <cstdio>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "hj/errors.hpp"
#include "hj/rational.hpp"
#include "hj/rng.hpp"

namespace hj {

// Tolerance for the real-valued families (Euclidean, Circle).
inline constexpr double real_tolerance = 1e-9;

/// A set with an associative operation and a translation-invariant metric.
/// `op` and `dist` are unchecked; the free functions below validate membership.
template <class G>
concept MetricSemigroup = requires(const G& g, const typename G::element_type& a, CounterRng& rng,
                                   std::string_view text) {
  typename G::element_type;
  typename G::distance_type;
  { G::exact } -> std::convertible_to<bool>;
  { g.op(a, a) } -> std::same_as<typename G::element_type>;
  { g.dist(a, a) } -> std::same_as<typename G::distance_type>;
  { g.contains(a) } -> std::same_as<bool>;
  { g.parse(text) } -> std::same_as<typename G::element_type>;
  { g.format(a) } -> std::same_as<std::string>;
  { g.random_element(rng) } -> std::same_as<typename G::element_type>;
  { g.probe_elements() } -> std::same_as<std::vector<typename G::element_type>>;
  { g.name() } -> std::same_as<std::string>;
  { g.has_identity() } -> std::same_as<bool>;
};

template <class G>
concept ExactSemigroup = MetricSemigroup<G> && G::exact && std::same_as<typename G::distance_type, Rational>;

template <MetricSemigroup G>
using element_t = typename G::element_type;

template <MetricSemigroup G>
using scalar_t = typename G::distance_type;

template <MetricSemigroup G>
void require_member(const G& sg, const element_t<G>& a)
{
  if (!sg.contains(a))
    throw InstanceMismatch("element " + sg.format(a) + " does not belong to " + sg.name());
}

template <MetricSemigroup G>
element_t<G> combine(const G& sg, const element_t<G>& a, const element_t<G>& b)
{
  require_member(sg, a);
  require_member(sg, b);
  return sg.op(a, b);
}

template <MetricSemigroup G>
scalar_t<G> distance(const G& sg, const element_t<G>& a, const element_t<G>& b)
{
  require_member(sg, a);
  require_member(sg, b);
  return sg.dist(a, b);
}

/// d(z, z x). Independent of z in any metric semigroup, so it serves as the
/// "norm" of x even when no identity element exists.
template <MetricSemigroup G>
scalar_t<G> norm_increment(const G& sg, const element_t<G>& z, const element_t<G>& x)
{
  require_member(sg, z);
  require_member(sg, x);
  return sg.dist(z, sg.op(z, x));
}

inline bool scalar_equal(const Rational& a, const Rational& b) { return a == b; }
inline bool scalar_equal(double a, double b) { return std::abs(a - b) <= real_tolerance; }
inline bool scalar_le(const Rational& a, const Rational& b) { return a <= b; }
inline bool scalar_le(double a, double b) { return a <= b + real_tolerance; }

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

template <class T>
T scalar_from_string(std::string_view text);

template <>
inline Rational scalar_from_string<Rational>(std::string_view text)
{
  return parse_rational(text);
}

template <>
inline double scalar_from_string<double>(std::string_view text)
{
  std::string s{text};
  if (s.find('/') != std::string::npos)
    return parse_rational(s).get_d();
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("malformed real '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v))
    throw ParseError("malformed real '" + s + "'");
  return v;
}

inline std::string scalar_to_string(const Rational& q) { return to_string(q); }
inline std::string scalar_to_string(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

} // namespace hj
