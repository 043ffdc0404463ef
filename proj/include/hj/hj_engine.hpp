#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hj/bound_params.hpp"
#include "hj/enumerate.hpp"
#include "hj/errors.hpp"
#include "hj/path_stats.hpp"
#include "hj/rational.hpp"

namespace hj {

enum class TailVariant { MaxIncrement, OrderStatistic };

inline std::string to_string(TailVariant v)
{
  return v == TailVariant::MaxIncrement ? "max" : "order";
}

inline TailVariant parse_variant(const std::string& text)
{
  if (text == "max" || text == "max-increment")
    return TailVariant::MaxIncrement;
  if (text == "order" || text == "order-statistic")
    return TailVariant::OrderStatistic;
  throw ParseError("unknown tail variant '" + text + "' (expected max|order)");
}

// ---------------------------------------------------------------------------
// Single-pass tallies

/// Everything one enumeration pass can tally: P(U > x) for each requested x,
/// P(M > s) and P(top_sum(K) > (K - 1) s).
struct TailQuery {
  std::vector<Rational> u_thresholds;
  Rational s{0};
  std::size_t K = 1;
};

struct TailTally {
  std::vector<Rational> u_tail;
  Rational max_tail{0};
  Rational order_tail{0};
};

template <ExactSemigroup G>
TailTally tally_tails(const Scenario<G>& sc, const TailQuery& q, std::uint64_t budget = default_budget)
{
  const Rational order_cut = Rational(static_cast<long>(q.K - 1)) * q.s;
  auto make = [&] {
    TailTally t;
    t.u_tail.assign(q.u_thresholds.size(), Rational{0});
    return t;
  };
  return parallel_fold<G, TailTally>(
      sc, budget, make,
      [&](TailTally& acc, const Outcome<G>& o) {
        const auto st = path_statistics(sc, o.values);
        for (std::size_t i = 0; i < q.u_thresholds.size(); ++i)
          if (st.U > q.u_thresholds[i])
            acc.u_tail[i] += o.prob;
        if (st.M > q.s)
          acc.max_tail += o.prob;
        if (st.top_sum(q.K) > order_cut)
          acc.order_tail += o.prob;
      },
      [](TailTally& acc, TailTally&& part) {
        for (std::size_t i = 0; i < acc.u_tail.size(); ++i)
          acc.u_tail[i] += part.u_tail[i];
        acc.max_tail += part.max_tail;
        acc.order_tail += part.order_tail;
      });
}

/// P(U_n > t), strict.
template <ExactSemigroup G>
Rational tail_u(const Scenario<G>& sc, const Rational& t, std::uint64_t budget = default_budget)
{
  return tally_tails(sc, TailQuery{{t}, Rational{0}, 1}, budget).u_tail[0];
}

// ---------------------------------------------------------------------------
// Main term from the tail probabilities alone

/// Exponent n_i - delta_{i1} of the cdf in the I0 test (0-based i).
inline unsigned cdf_exponent(const BoundParams<Rational>& p, std::size_t i)
{
  return static_cast<unsigned>(p.n(i) - (i == 0 ? 1 : 0));
}

/// i in I0 iff P(U <= t_i)^(n_i - delta_{i1}) <= 1/n_i!, with 0^0 = 1.
/// `cdf[i]` = P(U <= t_i). Returns 0-based indices.
inline std::vector<std::size_t> I0_from_cdf(const BoundParams<Rational>& p, const std::vector<Rational>& cdf)
{
  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < p.k(); ++i)
    if (pow(cdf[i], cdf_exponent(p, i)) * factorial(static_cast<unsigned>(p.n(i))) <= 1)
      members.push_back(i);
  return members;
}

inline bool contains_index(const std::vector<std::size_t>& set, std::size_t i)
{
  for (auto v : set)
    if (v == i)
      return true;
  return false;
}

/// P(U <= t_1)^[1 not in I0] * prod_{I0} P(U > t_i)^n_i
///   * prod_{not I0} (1/n_i!) (P(U > t_i) / P(U <= t_i))^n_i
inline Rational main_term_product(const BoundParams<Rational>& p, const std::vector<Rational>& tail,
                                  const std::vector<Rational>& cdf, const std::vector<std::size_t>& I0)
{
  Rational main{1};
  if (!contains_index(I0, 0))
    main *= cdf[0];
  for (std::size_t i = 0; i < p.k(); ++i) {
    const auto ni = static_cast<unsigned>(p.n(i));
    if (contains_index(I0, i)) {
      main *= pow(tail[i], ni);
    } else {
      // outside I0 forces cdf[i] > 0
      main *= pow(tail[i] / cdf[i], ni) / factorial(ni);
    }
  }
  return main;
}

/// prod_i P(U > t_i)^n_i * min(1, 1 / (n_i! P(U <= t_i)^(n_i - delta_{i1}))),
/// reading 1/0 as +infinity.
inline Rational main_term_min(const BoundParams<Rational>& p, const std::vector<Rational>& tail,
                              const std::vector<Rational>& cdf)
{
  Rational main{1};
  for (std::size_t i = 0; i < p.k(); ++i) {
    const auto ni = static_cast<unsigned>(p.n(i));
    main *= pow(tail[i], ni);
    const Rational denom = factorial(ni) * pow(cdf[i], cdf_exponent(p, i));
    if (denom > 1)
      main /= denom;
  }
  return main;
}

// ---------------------------------------------------------------------------
// Reports

struct BlockFactor {
  Rational t;
  std::size_t n = 0;
  Rational tail; // P(U > t_i)
  Rational cdf;  // P(U <= t_i)
  bool in_I0 = false;
  Rational factor; // this block's min-form factor
};

struct EvaluationReport {
  TailVariant variant = TailVariant::MaxIncrement;
  std::size_t K = 0;
  Rational zeta;
  Rational lhs; // P(U > zeta)
  std::vector<std::size_t> I0;
  std::vector<BlockFactor> blocks;
  Rational main_term;
  Rational main_term_min_form;
  Rational tail_term;
  Rational rhs;
  bool holds = false;
  Rational slack; // rhs - lhs
};

struct PriorBoundCheck {
  std::string name;
  bool passed = true;
  bool applicable = true;
  std::string detail;
};

struct PriorBoundReport {
  enum class Which { LT, HM } which = Which::LT;
  Rational lhs;
  std::optional<Rational> rhs; // empty: +infinity
  bool holds = false;
  bool degenerate = false;
  bool zero_parameter = false; // t or s is 0, outside the open range of the classical statements
  std::vector<PriorBoundCheck> checks;

  bool checks_passed() const
  {
    for (const auto& c : checks)
      if (c.applicable && !c.passed)
        return false;
    return true;
  }
};

inline std::string to_string(PriorBoundReport::Which w)
{
  return w == PriorBoundReport::Which::LT ? "LT" : "HM";
}

// ---------------------------------------------------------------------------
// Evaluation

/// Builds the report from already tallied probabilities. `tail[i]` =
/// P(U > t_i); `lhs` = P(U > zeta); `tail_event` = selected tail probability.
inline EvaluationReport assemble_report(const BoundParams<Rational>& p, TailVariant variant, const Rational& lhs,
                                        const std::vector<Rational>& tail, const Rational& tail_event)
{
  EvaluationReport r;
  r.variant = variant;
  r.K = p.K();
  r.zeta = p.zeta();
  r.lhs = lhs;
  std::vector<Rational> cdf;
  for (const auto& q : tail)
    cdf.push_back(1 - q);
  r.I0 = I0_from_cdf(p, cdf);
  r.main_term = main_term_product(p, tail, cdf, r.I0);
  r.main_term_min_form = main_term_min(p, tail, cdf);
  if (r.main_term != r.main_term_min_form)
    throw std::logic_error("product and min forms of the main term disagree: " + to_string(r.main_term) + " vs " +
                           to_string(r.main_term_min_form));
  for (std::size_t i = 0; i < p.k(); ++i) {
    BlockFactor b{p.t(i), p.n(i), tail[i], cdf[i], contains_index(r.I0, i), pow(tail[i], static_cast<unsigned>(p.n(i)))};
    const Rational denom = factorial(static_cast<unsigned>(p.n(i))) * pow(cdf[i], cdf_exponent(p, i));
    if (denom > 1)
      b.factor /= denom;
    r.blocks.push_back(std::move(b));
  }
  r.tail_term = tail_event;
  r.rhs = r.main_term + r.tail_term;
  r.holds = r.lhs <= r.rhs;
  r.slack = r.rhs - r.lhs;
  return r;
}

inline TailQuery make_query(const BoundParams<Rational>& p)
{
  TailQuery q;
  q.u_thresholds.push_back(p.zeta());
  for (const auto& t : p.t_vec())
    q.u_thresholds.push_back(t);
  q.s = p.s();
  q.K = p.K();
  return q;
}

/// Membership of I0 (0-based indices).
template <ExactSemigroup G>
std::vector<std::size_t> compute_I0(const Scenario<G>& sc, const BoundParams<Rational>& p,
                                    std::uint64_t budget = default_budget)
{
  TailQuery q{p.t_vec(), p.s(), 1};
  auto tally = tally_tails(sc, q, budget);
  std::vector<Rational> cdf;
  for (const auto& v : tally.u_tail)
    cdf.push_back(1 - v);
  return I0_from_cdf(p, cdf);
}

template <ExactSemigroup G>
Rational rhs_main(const Scenario<G>& sc, const BoundParams<Rational>& p, std::uint64_t budget = default_budget)
{
  p.require_applicable(sc.n());
  auto tally = tally_tails(sc, TailQuery{p.t_vec(), p.s(), p.K()}, budget);
  return assemble_report(p, TailVariant::MaxIncrement, Rational{0}, tally.u_tail, tally.max_tail).main_term;
}

/// P(M_n > s) or P(top_sum(K) > (K - 1) s).
template <ExactSemigroup G>
Rational tail_term(const Scenario<G>& sc, const BoundParams<Rational>& p, TailVariant variant,
                   std::uint64_t budget = default_budget)
{
  p.require_applicable(sc.n());
  auto tally = tally_tails(sc, TailQuery{{}, p.s(), p.K()}, budget);
  return variant == TailVariant::MaxIncrement ? tally.max_tail : tally.order_tail;
}

/// Both sides of the generalized inequality, exactly.
template <ExactSemigroup G>
EvaluationReport evaluate_hj(const Scenario<G>& sc, const BoundParams<Rational>& p, TailVariant variant,
                             std::uint64_t budget = default_budget)
{
  p.require_applicable(sc.n());
  auto tally = tally_tails(sc, make_query(p), budget);
  std::vector<Rational> tail(tally.u_tail.begin() + 1, tally.u_tail.end());
  return assemble_report(p, variant, tally.u_tail[0], tail,
                         variant == TailVariant::MaxIncrement ? tally.max_tail : tally.order_tail);
}

/// Evaluates both tail variants from a single enumeration pass.
template <ExactSemigroup G>
std::pair<EvaluationReport, EvaluationReport> evaluate_hj_both(const Scenario<G>& sc, const BoundParams<Rational>& p,
                                                               std::uint64_t budget = default_budget)
{
  p.require_applicable(sc.n());
  auto tally = tally_tails(sc, make_query(p), budget);
  std::vector<Rational> tail(tally.u_tail.begin() + 1, tally.u_tail.end());
  return {assemble_report(p, TailVariant::MaxIncrement, tally.u_tail[0], tail, tally.max_tail),
          assemble_report(p, TailVariant::OrderStatistic, tally.u_tail[0], tail, tally.order_tail)};
}

/// P(U > 3t + s) <= P(U > t)^2 + P(M > s), plus the check that the
/// (k=2, n=(1,1), t=(t,t)) instance of the general bound has the same rhs.
template <ExactSemigroup G>
PriorBoundReport lt_bound(const Scenario<G>& sc, const Rational& t, const Rational& s,
                          std::uint64_t budget = default_budget)
{
  if (t < 0 || s < 0)
    throw HypothesisViolated("t and s must be nonnegative");
  auto tally = tally_tails(sc, TailQuery{{3 * t + s, t}, s, 2}, budget);
  PriorBoundReport r;
  r.which = PriorBoundReport::Which::LT;
  r.zero_parameter = t == 0 || s == 0;
  r.lhs = tally.u_tail[0];
  r.rhs = tally.u_tail[1] * tally.u_tail[1] + tally.max_tail;
  r.holds = r.lhs <= *r.rhs;

  PriorBoundCheck agree{"lt-equals-general-specialization", true, true, {}};
  auto general = evaluate_hj(sc, specialize_lt(t, s), TailVariant::MaxIncrement, budget);
  agree.passed = general.rhs == *r.rhs && general.lhs == r.lhs;
  agree.detail = "general rhs " + to_string(general.rhs) + ", LT rhs " + to_string(*r.rhs);
  r.checks.push_back(std::move(agree));
  return r;
}

/// P(U > 2Kt + (K-1)s) <= (1/K!) (P(U > t)/P(U <= t))^K + P(M > s), plus the
/// domination chain through the (k=1, n_1=K, t_1=t) instance of the general bound.
template <ExactSemigroup G>
PriorBoundReport hm_bound(const Scenario<G>& sc, std::size_t K, const Rational& t, const Rational& s,
                          std::uint64_t budget = default_budget)
{
  if (K < 1)
    throw HypothesisViolated("K must be a positive integer");
  if (t < 0 || s < 0)
    throw HypothesisViolated("t and s must be nonnegative");
  const Rational Kq{static_cast<long>(K)};
  const Rational hm_threshold = 2 * Kq * t + (Kq - 1) * s;
  const Rational general_threshold = (2 * Kq - 1) * t + (Kq - 1) * s;
  auto tally = tally_tails(sc, TailQuery{{hm_threshold, general_threshold, t}, s, K}, budget);

  PriorBoundReport r;
  r.which = PriorBoundReport::Which::HM;
  r.zero_parameter = t == 0 || s == 0;
  r.lhs = tally.u_tail[0];
  const Rational tail_t = tally.u_tail[2];
  const Rational cdf_t = 1 - tail_t;
  if (cdf_t == 0) {
    r.degenerate = true;
    r.holds = true;
  } else {
    r.rhs = pow(tail_t / cdf_t, static_cast<unsigned>(K)) / factorial(static_cast<unsigned>(K)) + tally.max_tail;
    r.holds = r.lhs <= *r.rhs;
  }

  const bool applicable = K <= sc.n() + 1;
  PriorBoundCheck thresholds{"threshold-monotonicity", true, true, {}};
  thresholds.passed = tally.u_tail[0] <= tally.u_tail[1];
  thresholds.detail = "P(U > 2Kt+(K-1)s) = " + to_string(tally.u_tail[0]) + ", P(U > (2K-1)t+(K-1)s) = " +
                      to_string(tally.u_tail[1]);
  r.checks.push_back(thresholds);

  PriorBoundCheck general_holds{"general-bound-holds", true, applicable, {}};
  PriorBoundCheck dominated{"general-rhs-at-most-hm-rhs", true, applicable && !r.degenerate, {}};
  if (applicable) {
    auto general = evaluate_hj(sc, specialize_hm(K, t, s), TailVariant::MaxIncrement, budget);
    general_holds.passed = general.holds && general.lhs == tally.u_tail[1];
    general_holds.detail = "lhs " + to_string(general.lhs) + " <= rhs " + to_string(general.rhs);
    if (!r.degenerate) {
      dominated.passed = general.rhs <= *r.rhs;
      dominated.detail = "general rhs " + to_string(general.rhs) + " <= HM rhs " + to_string(*r.rhs);
    }
  }
  r.checks.push_back(general_holds);
  r.checks.push_back(dominated);
  return r;
}

} // namespace hj
