#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "hj/distribution.hpp"
#include "hj/errors.hpp"
#include "hj/rational.hpp"
#include "hj/rng.hpp"

namespace hj {

inline constexpr std::uint64_t default_budget = 10'000'000;

/// One point of the product space: the values of X_1..X_n and its mass.
template <MetricSemigroup G>
struct Outcome {
  std::vector<element_t<G>> values;
  std::vector<std::size_t> indices; // support index per coordinate
  Rational prob;
};

/// Number of outcomes, or BudgetExceeded if it exceeds `budget`.
template <MetricSemigroup G>
std::uint64_t outcome_count(const Scenario<G>& sc, std::uint64_t budget = default_budget)
{
  std::uint64_t total = 1;
  for (const auto& law : sc.laws) {
    if (total > budget / law.size())
      throw BudgetExceeded("outcome space exceeds budget of " + std::to_string(budget));
    total *= law.size();
  }
  if (total > budget)
    throw BudgetExceeded("outcome space exceeds budget of " + std::to_string(budget));
  return total;
}

/// Visits outcomes with rank in [begin, end) in lexicographic order of their
/// support indices (coordinate 1 most significant).
template <MetricSemigroup G, class Visitor>
void for_each_outcome_in(const Scenario<G>& sc, std::uint64_t begin, std::uint64_t end, Visitor&& visit)
{
  if (begin >= end)
    return;
  const std::size_t n = sc.n();
  Outcome<G> out;
  out.indices.assign(n, 0);
  std::uint64_t rank = begin;
  for (std::size_t j = n; j-- > 0;) {
    out.indices[j] = static_cast<std::size_t>(rank % sc.laws[j].size());
    rank /= sc.laws[j].size();
  }
  out.values.reserve(n);
  for (std::size_t j = 0; j < n; ++j)
    out.values.push_back(sc.laws[j].element(out.indices[j]));
  // prefix[j] = product of the first j coordinate probabilities
  std::vector<Rational> prefix(n + 1, Rational{1});
  std::size_t dirty = 0;
  for (std::uint64_t r = begin; r < end; ++r) {
    for (std::size_t j = dirty; j < n; ++j)
      prefix[j + 1] = prefix[j] * sc.laws[j].probability(out.indices[j]);
    out.prob = prefix[n];
    visit(static_cast<const Outcome<G>&>(out));
    // odometer step
    std::size_t j = n;
    while (j-- > 0) {
      if (++out.indices[j] < sc.laws[j].size()) {
        out.values[j] = sc.laws[j].element(out.indices[j]);
        break;
      }
      out.indices[j] = 0;
      out.values[j] = sc.laws[j].element(0);
    }
    dirty = j == static_cast<std::size_t>(-1) ? 0 : j;
  }
}

/// Streams every outcome exactly once; probabilities sum to exactly one.
template <MetricSemigroup G, class Visitor>
void enumerate_outcomes(const Scenario<G>& sc, Visitor&& visit, std::uint64_t budget = default_budget)
{
  for_each_outcome_in(sc, 0, outcome_count(sc, budget), std::forward<Visitor>(visit));
}

template <MetricSemigroup G>
std::vector<Outcome<G>> collect_outcomes(const Scenario<G>& sc, std::uint64_t budget = default_budget)
{
  std::vector<Outcome<G>> all;
  enumerate_outcomes(sc, [&](const Outcome<G>& o) { all.push_back(o); }, budget);
  return all;
}

/// Worker count from HJ_WORKERS, else the hardware concurrency.
inline unsigned worker_count()
{
  if (const char* env = std::getenv("HJ_WORKERS")) {
    int v = std::atoi(env);
    if (v >= 1)
      return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Splits the outcome space into contiguous chunks, folds each chunk into its
/// own accumulator and merges them in chunk order. `merge` must be associative;
/// with exact rational sums the result does not depend on the worker count.
template <MetricSemigroup G, class Acc, class MakeAcc, class Visit, class Merge>
Acc parallel_fold(const Scenario<G>& sc, std::uint64_t budget, MakeAcc make_acc, Visit visit, Merge merge)
{
  const std::uint64_t total = outcome_count(sc, budget);
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), std::max<std::uint64_t>(1, total / 256)));
  if (workers <= 1) {
    Acc acc = make_acc();
    for_each_outcome_in(sc, 0, total, [&](const Outcome<G>& o) { visit(acc, o); });
    return acc;
  }
  std::vector<Acc> partial;
  partial.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    partial.push_back(make_acc());
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = total * w / workers;
    const std::uint64_t hi = total * (w + 1) / workers;
    threads.emplace_back([&, w, lo, hi] {
      for_each_outcome_in(sc, lo, hi, [&](const Outcome<G>& o) { visit(partial[w], o); });
    });
  }
  for (auto& t : threads)
    t.join();
  Acc acc = std::move(partial[0]);
  for (unsigned w = 1; w < workers; ++w)
    merge(acc, std::move(partial[w]));
  return acc;
}

/// Draws coordinate j of draw `index` from the stream keyed by (seed, j, index).
template <MetricSemigroup G>
std::size_t sample_index(const FiniteDistribution<G>& law, CounterRng& rng)
{
  const double u = rng.uniform01();
  double cumulative = 0;
  for (std::size_t i = 0; i + 1 < law.size(); ++i) {
    cumulative += law.probability(i).get_d();
    if (u < cumulative)
      return i;
  }
  return law.size() - 1;
}

template <MetricSemigroup G>
Outcome<G> sample_outcome(const Scenario<G>& sc, std::uint64_t seed, std::uint64_t draw_index)
{
  Outcome<G> out;
  out.prob = 1;
  for (std::size_t j = 0; j < sc.n(); ++j) {
    CounterRng rng{seed, j, draw_index};
    const auto i = sample_index(sc.laws[j], rng);
    out.indices.push_back(i);
    out.values.push_back(sc.laws[j].element(i));
    out.prob *= sc.laws[j].probability(i);
  }
  return out;
}

} // namespace hj
