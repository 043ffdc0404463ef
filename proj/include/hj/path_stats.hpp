#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "hj/enumerate.hpp"
#include "hj/errors.hpp"
#include "hj/semigroup.hpp"

namespace hj {

/// Per-outcome path quantities:
///   S_j = X_1 ... X_j, U = max_j d(z1, z0 S_j), Y_j = d(z0, z0 X_j), M = max_j Y_j.
template <MetricSemigroup G>
struct PathStats {
  using Scalar = scalar_t<G>;

  std::vector<element_t<G>> S;
  std::vector<Scalar> anchor; // anchor[j-1] = d(z1, z0 S_j)
  Scalar U{};
  std::vector<Scalar> Y;
  Scalar M{};
  std::vector<Scalar> Ysorted; // nondecreasing

  /// Sum of the K-1 largest increments, Y_(n-K+2) + ... + Y_(n); zero for K = 1.
  Scalar top_sum(std::size_t K) const
  {
    Scalar sum{0};
    const std::size_t n = Ysorted.size();
    const std::size_t count = K == 0 ? 0 : std::min(K - 1, n);
    for (std::size_t i = 0; i < count; ++i)
      sum += Ysorted[n - 1 - i];
    return sum;
  }
};

template <MetricSemigroup G>
PathStats<G> path_statistics(const G& sg, const element_t<G>& z0, const element_t<G>& z1,
                             const std::vector<element_t<G>>& values)
{
  const std::size_t n = values.size();
  PathStats<G> st;
  st.S.reserve(n);
  st.anchor.reserve(n);
  st.Y.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    st.S.push_back(j == 0 ? values[0] : sg.op(st.S[j - 1], values[j]));
    st.anchor.push_back(sg.dist(z1, sg.op(z0, st.S[j])));
    st.Y.push_back(sg.dist(z0, sg.op(z0, values[j])));
    if (j == 0 || st.anchor[j] > st.U)
      st.U = st.anchor[j];
    if (j == 0 || st.Y[j] > st.M)
      st.M = st.Y[j];
  }
  st.Ysorted = st.Y;
  std::sort(st.Ysorted.begin(), st.Ysorted.end());
  return st;
}

template <MetricSemigroup G>
PathStats<G> path_statistics(const Scenario<G>& sc, const std::vector<element_t<G>>& values)
{
  if (values.size() != sc.n())
    throw InstanceMismatch("outcome has " + std::to_string(values.size()) + " coordinates, scenario has " +
                           std::to_string(sc.n()));
  for (const auto& v : values)
    require_member(sc.sg, v);
  return path_statistics(sc.sg, sc.z0, sc.z1, values);
}

template <MetricSemigroup G>
PathStats<G> path_statistics(const Scenario<G>& sc, const Outcome<G>& out)
{
  return path_statistics(sc, out.values);
}

/// As above, validating K <= n + 1 so that top_sum(K) is meaningful.
template <MetricSemigroup G>
PathStats<G> path_statistics(const Scenario<G>& sc, const Outcome<G>& out, std::size_t K)
{
  if (K < 1 || K > sc.n() + 1)
    throw HypothesisViolated("K = " + std::to_string(K) + " must lie in 1..n+1 = " + std::to_string(sc.n() + 1));
  return path_statistics(sc, out);
}

/// Exact probability of the outcomes satisfying pred(outcome, stats).
template <ExactSemigroup G, class Predicate>
Rational event_probability(const Scenario<G>& sc, Predicate pred, std::uint64_t budget = default_budget)
{
  return parallel_fold<G, Rational>(
      sc, budget, [] { return Rational{0}; },
      [&](Rational& acc, const Outcome<G>& o) {
        if (pred(o, path_statistics(sc, o.values)))
          acc += o.prob;
      },
      [](Rational& acc, Rational&& part) { acc += part; });
}

} // namespace hj
