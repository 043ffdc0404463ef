#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hj/config.hpp"
#include "hj/hj_engine.hpp"
#include "hj/proof_lab.hpp"
#include "hj/rng.hpp"

namespace hj {

using ExactScenario = std::variant<Scenario<IntLine>, Scenario<PosInts>, Scenario<Cyclic>, Scenario<HammingCube>,
                                   Scenario<SymCayley>, Scenario<SymHamming>>;

struct FuzzLimits {
  std::size_t max_n = 6;
  std::size_t max_support = 3;
  std::size_t max_k = 3;
};

struct FuzzCase {
  std::uint64_t index = 0;
  ExactScenario scenario;
  BoundParams<Rational> params;
};

namespace detail {

// Small element pools keep distances comparable to the drawn thresholds.
inline IntLine::element_type small_element(const IntLine&, CounterRng& rng) { return rng.uniform_int(-3, 3); }
inline PosInts::element_type small_element(const PosInts&, CounterRng& rng) { return rng.uniform_int(1, 4); }
template <class G>
element_t<G> small_element(const G& sg, CounterRng& rng)
{
  return sg.random_element(rng);
}

inline Rational random_threshold(CounterRng& rng, std::int64_t max_num)
{
  return make_rational(rng.uniform_int(0, max_num), rng.uniform_int(1, 3));
}

template <ExactSemigroup G>
Scenario<G> random_scenario(const G& sg, CounterRng& rng, std::size_t n, const FuzzLimits& limits)
{
  std::vector<FiniteDistribution<G>> laws;
  for (std::size_t j = 0; j < n; ++j) {
    const auto want = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(limits.max_support)));
    std::vector<element_t<G>> atoms;
    for (int attempt = 0; attempt < 32 && atoms.size() < want; ++attempt) {
      auto e = small_element(sg, rng);
      bool fresh = true;
      for (const auto& a : atoms)
        fresh = fresh && !(a == e);
      if (fresh)
        atoms.push_back(std::move(e));
    }
    std::vector<std::int64_t> weights;
    std::int64_t total = 0;
    for (std::size_t a = 0; a < atoms.size(); ++a)
      total += weights.emplace_back(rng.uniform_int(1, 9));
    std::vector<std::pair<element_t<G>, Rational>> pairs;
    for (std::size_t a = 0; a < atoms.size(); ++a)
      pairs.emplace_back(atoms[a], make_rational(weights[a], total));
    laws.push_back(make_distribution(sg, std::move(pairs)));
  }
  auto z0 = small_element(sg, rng);
  auto z1 = rng.coin() ? z0 : small_element(sg, rng);
  return Scenario<G>{sg, std::move(laws), std::move(z0), std::move(z1)};
}

inline BoundParams<Rational> random_params(CounterRng& rng, std::size_t n, const FuzzLimits& limits)
{
  const auto k = static_cast<std::size_t>(
      rng.uniform_int(1, static_cast<std::int64_t>(std::min(limits.max_k, n + 1))));
  const auto K = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n + 1)));
  std::vector<std::size_t> n_vec(k, 1);
  for (std::size_t extra = k; extra < K; ++extra)
    ++n_vec[rng.below(k)];
  std::vector<Rational> t_vec;
  for (std::size_t i = 0; i < k; ++i)
    t_vec.push_back(random_threshold(rng, 6));
  Rational s = rng.below(4) == 0 ? Rational{0} : random_threshold(rng, 4);
  return BoundParams<Rational>{std::move(n_vec), std::move(t_vec), std::move(s)};
}

} // namespace detail

/// Case `index` of the stream for `seed`. Each case has its own generator
/// key, so a case does not depend on how many cases precede it.
inline FuzzCase fuzz_case(std::uint64_t seed, std::uint64_t index, const FuzzLimits& limits = {})
{
  if (limits.max_n < 2 || limits.max_support < 1 || limits.max_k < 1)
    throw HypothesisViolated("fuzz limits need max_n >= 2, max_support >= 1, max_k >= 1");
  CounterRng rng{seed, 0x66757a7a, index};
  const auto n = static_cast<std::size_t>(rng.uniform_int(2, static_cast<std::int64_t>(limits.max_n)));
  auto make = [&](const auto& sg) -> ExactScenario { return detail::random_scenario(sg, rng, n, limits); };
  ExactScenario scenario = [&]() -> ExactScenario {
    switch (rng.below(6)) {
    case 0:
      return make(IntLine{});
    case 1:
      return make(PosInts{});
    case 2:
      return make(Cyclic{rng.uniform_int(2, 7)});
    case 3:
      return make(HammingCube{static_cast<std::uint32_t>(rng.uniform_int(2, 5))});
    case 4:
      return make(SymCayley{static_cast<std::size_t>(rng.uniform_int(2, 4))});
    default:
      return make(SymHamming{static_cast<std::size_t>(rng.uniform_int(2, 4))});
    }
  }();
  auto params = detail::random_params(rng, n, limits);
  return {index, std::move(scenario), std::move(params)};
}

inline json case_to_json(const FuzzCase& c)
{
  json out = std::visit([](const auto& sc) { return scenario_to_json(sc); }, c.scenario);
  out["id"] = "fuzz-" + std::to_string(c.index);
  out["params"] = params_to_json(c.params);
  return out;
}

struct FuzzFailure {
  std::uint64_t index = 0;
  std::string what;
  json scenario;
};

struct FuzzSummary {
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
  FuzzLimits limits;
  std::uint64_t holds_max = 0;
  std::uint64_t holds_order = 0;
  std::uint64_t decomposition_passed = 0;
  std::uint64_t domination_passed = 0; // order tail <= max tail, and 0 when K = 1
  std::uint64_t anchor_gap_cases = 0;
  std::optional<Rational> min_slack_max;
  std::optional<Rational> min_slack_order;
  std::vector<FuzzFailure> failures;

  bool all_passed() const { return failures.empty(); }
};

/// Runs both tail variants and the decomposition replay on each case.
inline FuzzSummary run_fuzz(std::uint64_t seed, std::uint64_t count, const FuzzLimits& limits = {},
                            std::uint64_t budget = default_budget)
{
  if (count < 1)
    throw HypothesisViolated("fuzz count must be at least 1");
  FuzzSummary summary;
  summary.seed = seed;
  summary.count = count;
  summary.limits = limits;
  auto keep_min = [](std::optional<Rational>& slot, const Rational& x) {
    if (!slot || x < *slot)
      slot = x;
  };
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto c = fuzz_case(seed, i, limits);
    auto fail = [&](std::string what) { summary.failures.push_back({i, std::move(what), case_to_json(c)}); };
    std::visit(
        [&](const auto& sc) {
          auto [max_r, order_r] = evaluate_hj_both(sc, c.params, budget);
          keep_min(summary.min_slack_max, max_r.slack);
          keep_min(summary.min_slack_order, order_r.slack);
          if (max_r.holds)
            ++summary.holds_max;
          else
            fail("max-increment bound violated: lhs " + to_string(max_r.lhs) + " > rhs " + to_string(max_r.rhs));
          if (order_r.holds)
            ++summary.holds_order;
          else
            fail("order-statistic bound violated: lhs " + to_string(order_r.lhs) + " > rhs " +
                 to_string(order_r.rhs));
          const bool dominated =
              order_r.tail_term <= max_r.tail_term && (c.params.K() != 1 || order_r.tail_term == 0);
          if (dominated)
            ++summary.domination_passed;
          else
            fail("order tail " + to_string(order_r.tail_term) + " vs max tail " + to_string(max_r.tail_term));

          auto dec = verify_decomposition(sc, c.params, budget);
          if (dec.anchor_gap)
            ++summary.anchor_gap_cases;
          if (dec.all_passed()) {
            ++summary.decomposition_passed;
          } else {
            for (const auto& check : dec.checks)
              if (check.applicable && !check.passed) {
                fail("proof check " + check.name + " failed: " + check.detail +
                     (check.witness.empty() ? "" : " at " + check.witness));
                break;
              }
          }
        },
        c.scenario);
  }
  return summary;
}

inline json to_json(const FuzzSummary& s)
{
  json failures = json::array();
  for (const auto& f : s.failures)
    failures.push_back({{"index", f.index}, {"what", f.what}, {"scenario", f.scenario}});
  auto opt = [](const std::optional<Rational>& x) { return x ? json(to_string(*x)) : json(nullptr); };
  return {{"seed", s.seed},
          {"count", s.count},
          {"limits", {{"max_n", s.limits.max_n}, {"max_support", s.limits.max_support}, {"max_k", s.limits.max_k}}},
          {"holds_max", s.holds_max},
          {"holds_order", s.holds_order},
          {"decomposition_passed", s.decomposition_passed},
          {"domination_passed", s.domination_passed},
          {"anchor_gap_cases", s.anchor_gap_cases},
          {"min_slack_max", opt(s.min_slack_max)},
          {"min_slack_order", opt(s.min_slack_order)},
          {"all_passed", s.all_passed()},
          {"failures", failures}};
}

} // namespace hj
