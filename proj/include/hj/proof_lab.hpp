#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hj/bound_params.hpp"
#include "hj/enumerate.hpp"
#include "hj/hj_engine.hpp"
#include "hj/path_stats.hpp"
#include "hj/rational.hpp"

namespace hj {

// Replays the internal objects of the tail-bound argument (first-passage
// decomposition, stopping times, the Omega_m partition and its product
// bounds) on enumerable scenarios and checks every intermediate inequality.

/// Stopping times m_1 < m_2 < ... (1-based path indices). `complete` means
/// all K of them exist.
struct StoppingProfile {
  std::vector<std::size_t> m;
  bool complete = false;
};

struct ProofCheck {
  std::string name;
  bool passed = true;
  bool applicable = true;
  std::string detail;
  std::string witness;
};

inline bool all_applicable_passed(const std::vector<ProofCheck>& checks)
{
  for (const auto& c : checks)
    if (c.applicable && !c.passed)
      return false;
  return true;
}

namespace detail {

/// z0 S_j for j = 0..n (z0 S_0 := z0), with the anchored distance
/// d(z1, z0 S_j) and the pairwise distances d(z0 S_a, z0 S_b).
template <MetricSemigroup G>
struct PathTable {
  std::size_t n = 0;
  std::vector<element_t<G>> pos;
  std::vector<Rational> anchor;
  std::vector<Rational> pair; // (n+1) x (n+1), row-major

  const Rational& d(std::size_t a, std::size_t b) const { return pair[a * (n + 1) + b]; }
};

template <ExactSemigroup G>
PathTable<G> path_table(const Scenario<G>& sc, const std::vector<element_t<G>>& values)
{
  PathTable<G> tab;
  tab.n = values.size();
  tab.pos.reserve(tab.n + 1);
  tab.pos.push_back(sc.z0);
  for (const auto& x : values)
    tab.pos.push_back(sc.sg.op(tab.pos.back(), x));
  for (const auto& p : tab.pos)
    tab.anchor.push_back(sc.sg.dist(sc.z1, p));
  tab.pair.assign((tab.n + 1) * (tab.n + 1), Rational{0});
  for (std::size_t a = 0; a <= tab.n; ++a)
    for (std::size_t b = a + 1; b <= tab.n; ++b) {
      auto dist = sc.sg.dist(tab.pos[a], tab.pos[b]);
      tab.pair[b * (tab.n + 1) + a] = dist;
      tab.pair[a * (tab.n + 1) + b] = std::move(dist);
    }
  return tab;
}

/// First beta in 1..limit with d(z1, z0 S_beta) > t, or 0 if none.
template <MetricSemigroup G>
std::size_t first_passage(const PathTable<G>& tab, const Rational& t, std::size_t limit)
{
  for (std::size_t b = 1; b <= limit; ++b)
    if (tab.anchor[b] > t)
      return b;
  return 0;
}

/// First beta in alpha+1..n with d(z0 S_alpha, z0 S_beta) > 2t, or 0 if none.
template <MetricSemigroup G>
std::size_t first_increment_passage(const PathTable<G>& tab, std::size_t alpha, const Rational& two_t)
{
  for (std::size_t b = alpha + 1; b <= tab.n; ++b)
    if (tab.d(alpha, b) > two_t)
      return b;
  return 0;
}

template <MetricSemigroup G>
std::string format_path(const G& sg, const std::vector<element_t<G>>& values)
{
  std::string s = "(";
  for (std::size_t i = 0; i < values.size(); ++i)
    s += (i ? ";" : "") + sg.format(values[i]);
  return s + ")";
}

inline std::string format_tuple(const std::vector<std::size_t>& m)
{
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i)
    s += (i ? "," : "") + std::to_string(m[i]);
  return s + ")";
}

/// Visits every strictly increasing tuple 1 <= m_1 < ... < m_K <= n.
template <class Visit>
void for_each_increasing(std::size_t K, std::size_t n, Visit&& visit)
{
  if (K == 0 || K > n)
    return;
  std::vector<std::size_t> m(K);
  for (std::size_t i = 0; i < K; ++i)
    m[i] = i + 1;
  while (true) {
    visit(static_cast<const std::vector<std::size_t>&>(m));
    std::size_t i = K;
    while (i-- > 0) {
      if (m[i] < n - (K - 1 - i)) {
        ++m[i];
        for (std::size_t j = i + 1; j < K; ++j)
          m[j] = m[j - 1] + 1;
        break;
      }
    }
    if (i == static_cast<std::size_t>(-1))
      return;
  }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Per-outcome constructions

template <ExactSemigroup G>
StoppingProfile stopping_times(const Scenario<G>& sc, const std::vector<element_t<G>>& values,
                               const BoundParams<Rational>& p)
{
  const auto& sg = sc.sg;
  const std::size_t n = values.size();
  const std::size_t K = p.K();
  StoppingProfile prof;
  std::vector<element_t<G>> S;
  S.reserve(n);
  for (std::size_t j = 0; j < n; ++j)
    S.push_back(j == 0 ? values[0] : sg.op(S.back(), values[j]));
  // m_1: first j with d(z1, z0 S_j) > t'_1
  const Rational& t1 = p.schedule(1);
  for (std::size_t j = 1; j <= n; ++j)
    if (sg.dist(sc.z1, sg.op(sc.z0, S[j - 1])) > t1) {
      prof.m.push_back(j);
      break;
    }
  if (prof.m.empty())
    return prof;
  // m_l: first j > m_{l-1} with d(S_{m_{l-1}}, S_j) > 2 t'_l
  while (prof.m.size() < K) {
    const std::size_t prev = prof.m.back();
    const Rational two_t = 2 * p.schedule(prof.m.size() + 1);
    std::size_t next = 0;
    for (std::size_t j = prev + 1; j <= n; ++j)
      if (sg.dist(S[prev - 1], S[j - 1]) > two_t) {
        next = j;
        break;
      }
    if (next == 0)
      break;
    prof.m.push_back(next);
  }
  prof.complete = prof.m.size() == K;
  return prof;
}

template <ExactSemigroup G>
StoppingProfile stopping_times(const Scenario<G>& sc, const Outcome<G>& out, const BoundParams<Rational>& p)
{
  p.require_applicable(sc.n());
  return stopping_times(sc, out.values, p);
}

/// U > zeta and top_sum(K) <= (K - 1) s.
template <MetricSemigroup G>
bool omega1_membership(const PathStats<G>& stats, const BoundParams<Rational>& p)
{
  return stats.U > p.zeta() && stats.top_sum(p.K()) <= Rational(static_cast<long>(p.K() - 1)) * p.s();
}

/// P(d(z1, z0 S_beta) > t >= d(z1, z0 S_j) for all 1 <= j < beta).
template <ExactSemigroup G>
Rational p_first_passage(const Scenario<G>& sc, std::size_t beta, const Rational& t,
                         std::uint64_t budget = default_budget)
{
  if (beta < 1 || beta > sc.n())
    throw HypothesisViolated("beta must lie in 1..n");
  return parallel_fold<G, Rational>(
      sc, budget, [] { return Rational{0}; },
      [&](Rational& acc, const Outcome<G>& o) {
        if (detail::first_passage(detail::path_table(sc, o.values), t, sc.n()) == beta)
          acc += o.prob;
      },
      [](Rational& acc, Rational&& part) { acc += part; });
}

/// P(d(z0 S_alpha, z0 S_beta) > 2t >= d(z0 S_alpha, z0 S_j) for all alpha <= j < beta).
template <ExactSemigroup G>
Rational p_increment(const Scenario<G>& sc, std::size_t alpha, std::size_t beta, const Rational& t,
                     std::uint64_t budget = default_budget)
{
  if (alpha >= beta || beta > sc.n())
    throw HypothesisViolated("need 0 <= alpha < beta <= n");
  const Rational two_t = 2 * t;
  return parallel_fold<G, Rational>(
      sc, budget, [] { return Rational{0}; },
      [&](Rational& acc, const Outcome<G>& o) {
        if (detail::first_increment_passage(detail::path_table(sc, o.values), alpha, two_t) == beta)
          acc += o.prob;
      },
      [](Rational& acc, Rational&& part) { acc += part; });
}

// ---------------------------------------------------------------------------
// First-passage tallies for one threshold t

/// p_beta[b] = p_{b,t} (b = 1..n), p_inc[a][b] = p_{a,b,t}, u_tail[g] =
/// P(U_g > t) (g = 1..n; u_tail[0] = 0). U_g uses partial products 1..g.
struct PassageTally {
  Rational t;
  std::vector<Rational> p_beta;
  std::vector<std::vector<Rational>> p_inc;
  std::vector<Rational> u_tail;

  PassageTally() = default;
  PassageTally(const Rational& t_, std::size_t n)
    : t{t_}, p_beta(n + 1, Rational{0}), p_inc(n + 1, std::vector<Rational>(n + 1, Rational{0})),
      u_tail(n + 1, Rational{0})
  {}

  template <MetricSemigroup G>
  void add(const detail::PathTable<G>& tab, const Rational& prob)
  {
    const std::size_t n = tab.n;
    if (auto b = detail::first_passage(tab, t, n))
      p_beta[b] += prob;
    const Rational two_t = 2 * t;
    for (std::size_t a = 0; a < n; ++a)
      if (auto b = detail::first_increment_passage(tab, a, two_t))
        p_inc[a][b] += prob;
    Rational running{0};
    for (std::size_t g = 1; g <= n; ++g) {
      if (g == 1 || tab.anchor[g] > running)
        running = tab.anchor[g];
      if (running > t)
        u_tail[g] += prob;
    }
  }

  void merge(PassageTally&& other)
  {
    for (std::size_t i = 0; i < p_beta.size(); ++i) {
      p_beta[i] += other.p_beta[i];
      u_tail[i] += other.u_tail[i];
      for (std::size_t j = 0; j < p_inc[i].size(); ++j)
        p_inc[i][j] += other.p_inc[i][j];
    }
  }
};

namespace detail {

/// The three system inequalities for one (alpha, gamma, t). `anchor_ok` is
/// d(z1, z0) <= t; at alpha = 0 the first and third depend on it.
inline std::vector<ProofCheck> passage_bound_checks(const PassageTally& tally, std::size_t alpha, std::size_t gamma,
                                              bool anchor_ok)
{
  Rational inc_sum{0}, fp_tail_sum{0}, fp_sum{0};
  for (std::size_t b = alpha + 1; b <= gamma; ++b) {
    inc_sum += tally.p_inc[alpha][b];
    fp_tail_sum += tally.p_beta[b];
  }
  for (std::size_t b = 1; b <= gamma; ++b)
    fp_sum += tally.p_beta[b];
  const Rational& u_gamma = tally.u_tail[gamma];
  const Rational cdf_alpha = alpha == 0 ? Rational{1} : 1 - tally.u_tail[alpha];
  const std::string where = "alpha=" + std::to_string(alpha) + ", gamma=" + std::to_string(gamma) +
                            ", t=" + to_string(tally.t);
  std::vector<ProofCheck> out;
  out.push_back({"passage-increment-sum", inc_sum <= u_gamma, alpha > 0 || anchor_ok,
                 where + ": sum p_inc = " + to_string(inc_sum) + " <= P(U_gamma > t) = " + to_string(u_gamma), {}});
  out.push_back({"first-passage-identity", fp_sum == u_gamma, true,
                 where + ": sum p_beta = " + to_string(fp_sum) + " == P(U_gamma > t) = " + to_string(u_gamma), {}});
  ProofCheck cond{"passage-conditioned", true, cdf_alpha > 0 && (alpha > 0 || anchor_ok), {}, {}};
  if (cdf_alpha > 0) {
    const Rational bound = fp_tail_sum / cdf_alpha;
    cond.passed = inc_sum <= bound;
    cond.detail = where + ": sum p_inc = " + to_string(inc_sum) + " <= " + to_string(bound);
  } else {
    cond.detail = where + ": P(U_alpha <= t) = 0, not conditioned";
  }
  out.push_back(std::move(cond));
  return out;
}

} // namespace detail

template <ExactSemigroup G>
PassageTally tally_passages(const Scenario<G>& sc, const Rational& t, std::uint64_t budget = default_budget)
{
  const std::size_t n = sc.n();
  return parallel_fold<G, PassageTally>(
      sc, budget, [&] { return PassageTally{t, n}; },
      [&](PassageTally& acc, const Outcome<G>& o) { acc.add(detail::path_table(sc, o.values), o.prob); },
      [](PassageTally& acc, PassageTally&& part) { acc.merge(std::move(part)); });
}

/// Checks, for 0 <= alpha < gamma <= n:
///   sum_{b=alpha+1}^{gamma} p_{alpha,b,t} <= P(U_gamma > t) = sum_{b=1}^{gamma} p_{b,t}
///   sum_{b=alpha+1}^{gamma} p_{alpha,b,t} <= (1/P(U_alpha <= t)) sum_{b=alpha+1}^{gamma} p_{b,t}
/// the last only when P(U_alpha <= t) > 0.
template <ExactSemigroup G>
std::vector<ProofCheck> verify_passage_bounds(const Scenario<G>& sc, std::size_t alpha, std::size_t gamma, const Rational& t,
                                       std::uint64_t budget = default_budget)
{
  if (alpha >= gamma || gamma > sc.n())
    throw HypothesisViolated("need 0 <= alpha < gamma <= n");
  const auto tally = tally_passages(sc, t, budget);
  return detail::passage_bound_checks(tally, alpha, gamma, sc.sg.dist(sc.z1, sc.z0) <= t);
}

// ---------------------------------------------------------------------------
// Full decomposition

struct DecompositionReport {
  Rational zeta;
  Rational lhs;        // P(U > zeta)
  Rational order_tail; // P(top_sum(K) > (K-1) s)
  Rational p_omega1;
  std::map<std::vector<std::size_t>, Rational> blocks;         // observed complete profiles
  std::map<std::vector<std::size_t>, Rational> product_bounds; // every increasing m
  Rational S_tilde;
  Rational main_term; // min-form main term of the general bound
  Rational anchor_distance; // d(z1, z0)
  bool anchor_gap = false;  // d(z1, z0) > t_1
  std::vector<ProofCheck> checks;

  bool all_passed() const { return all_applicable_passed(checks); }
};

namespace detail {

template <MetricSemigroup G>
struct DecompositionTally {
  Rational lhs{0};
  Rational order_tail{0};
  Rational p_omega1{0};
  Rational incomplete{0};
  std::optional<std::string> incomplete_witness;
  std::map<std::vector<std::size_t>, Rational> blocks;
  std::vector<PassageTally> passages; // one per block threshold t_i
};

/// sum over alpha_0 < alpha_1 < ... < alpha_r <= n of prod p_{alpha_{j-1}, alpha_j, t},
/// for every start alpha_0, as chains[r][alpha_0].
inline std::vector<std::vector<Rational>> chain_sums(const PassageTally& tally, std::size_t n, std::size_t depth)
{
  std::vector<std::vector<Rational>> chains(depth + 1, std::vector<Rational>(n + 1, Rational{0}));
  for (std::size_t a = 0; a <= n; ++a)
    chains[0][a] = 1;
  for (std::size_t r = 1; r <= depth; ++r)
    for (std::size_t a = 0; a <= n; ++a)
      for (std::size_t b = a + 1; b <= n; ++b)
        chains[r][a] += tally.p_inc[a][b] * chains[r - 1][b];
  return chains;
}

} // namespace detail

/// Enumerates Omega_1 = {U > zeta, top_sum(K) <= (K-1) s}, groups it by
/// stopping vector and checks the partition, the per-block product bounds,
/// the summed estimate, the per-block estimates and the passage inequalities.
///
/// When d(z1, z0) > t_1 the stopping times need not all exist on Omega_1;
/// the report flags this as `anchor_gap` and marks the checks that depend on
/// it (profile completeness, the partition identity and the summed estimate)
/// as not applicable. Their computed outcome is still recorded.
template <ExactSemigroup G>
DecompositionReport verify_decomposition(const Scenario<G>& sc, const BoundParams<Rational>& p,
                                         std::uint64_t budget = default_budget)
{
  p.require_applicable(sc.n());
  const std::size_t n = sc.n();
  const std::size_t K = p.K();
  const Rational zeta = p.zeta();
  const Rational order_cut = Rational(static_cast<long>(K - 1)) * p.s();

  using Tally = detail::DecompositionTally<G>;
  auto make = [&] {
    Tally t;
    for (const auto& ti : p.t_vec())
      t.passages.emplace_back(ti, n);
    return t;
  };
  auto tally = parallel_fold<G, Tally>(
      sc, budget, make,
      [&](Tally& acc, const Outcome<G>& o) {
        const auto tab = detail::path_table(sc, o.values);
        for (auto& pt : acc.passages)
          pt.add(tab, o.prob);
        const auto st = path_statistics(sc, o.values);
        const bool big = st.U > zeta;
        const bool small_tail = st.top_sum(K) <= order_cut;
        if (big)
          acc.lhs += o.prob;
        if (!small_tail)
          acc.order_tail += o.prob;
        if (big && small_tail) {
          acc.p_omega1 += o.prob;
          auto prof = stopping_times(sc, o.values, p);
          if (prof.complete) {
            acc.blocks[prof.m] += o.prob;
          } else {
            acc.incomplete += o.prob;
            if (!acc.incomplete_witness)
              acc.incomplete_witness = detail::format_path(sc.sg, o.values) + " stops at " + detail::format_tuple(prof.m);
          }
        }
      },
      [](Tally& acc, Tally&& part) {
        acc.lhs += part.lhs;
        acc.order_tail += part.order_tail;
        acc.p_omega1 += part.p_omega1;
        acc.incomplete += part.incomplete;
        if (!acc.incomplete_witness)
          acc.incomplete_witness = std::move(part.incomplete_witness);
        for (auto& [m, q] : part.blocks)
          acc.blocks[m] += q;
        for (std::size_t i = 0; i < acc.passages.size(); ++i)
          acc.passages[i].merge(std::move(part.passages[i]));
      });

  DecompositionReport r;
  r.zeta = zeta;
  r.lhs = tally.lhs;
  r.order_tail = tally.order_tail;
  r.p_omega1 = tally.p_omega1;
  r.blocks = tally.blocks;
  r.anchor_distance = sc.sg.dist(sc.z1, sc.z0);
  r.anchor_gap = r.anchor_distance > p.t(0);
  const bool step2_applicable = !r.anchor_gap;

  // block index (0-based) of schedule position l (1-based)
  std::vector<std::size_t> block_of(K + 1, 0);
  for (std::size_t i = 0, l = 1; i < p.k(); ++i)
    for (std::size_t j = 0; j < p.n(i); ++j)
      block_of[l++] = i;

  // product bounds and S~
  r.S_tilde = 0;
  detail::for_each_increasing(K, n, [&](const std::vector<std::size_t>& m) {
    Rational bound = tally.passages[block_of[1]].p_beta[m[0]];
    for (std::size_t j = 1; j < K && bound != 0; ++j)
      bound *= tally.passages[block_of[j + 1]].p_inc[m[j - 1]][m[j]];
    r.S_tilde += bound;
    r.product_bounds.emplace(m, std::move(bound));
  });

  std::vector<ProofCheck>& checks = r.checks;
  {
    ProofCheck c{"stopping-profiles-complete", tally.incomplete == 0, step2_applicable, {}, {}};
    c.detail = "mass of Omega_1 with incomplete profile: " + to_string(tally.incomplete);
    if (tally.incomplete_witness)
      c.witness = *tally.incomplete_witness;
    checks.push_back(std::move(c));
  }
  {
    Rational total{0};
    for (const auto& [m, q] : r.blocks)
      total += q;
    checks.push_back({"partition-sum", total == r.p_omega1, step2_applicable,
                      "sum P(Omega_m) = " + to_string(total) + ", P(Omega_1) = " + to_string(r.p_omega1), {}});
  }
  {
    ProofCheck c{"block-product-bounds", true, true, "all observed blocks within their product bound", {}};
    for (const auto& [m, q] : r.blocks) {
      const auto it = r.product_bounds.find(m);
      const Rational bound = it == r.product_bounds.end() ? Rational{0} : it->second;
      if (q > bound) {
        c.passed = false;
        c.detail = "P(Omega_m) = " + to_string(q) + " > " + to_string(bound);
        c.witness = "m=" + detail::format_tuple(m);
        break;
      }
    }
    checks.push_back(std::move(c));
  }
  checks.push_back({"summed-estimate", r.lhs <= r.order_tail + r.S_tilde, step2_applicable,
                    "P(U > zeta) = " + to_string(r.lhs) + " <= P(Y > (K-1)s) + S~ = " +
                        to_string(r.order_tail + r.S_tilde),
                    {}});

  // per-block estimates
  std::vector<Rational> tails, cdfs;
  for (std::size_t i = 0; i < p.k(); ++i) {
    tails.push_back(tally.passages[i].u_tail[n]);
    cdfs.push_back(1 - tails.back());
  }
  r.main_term = main_term_min(p, tails, cdfs);
  for (std::size_t i = 0; i < p.k(); ++i) {
    const auto ni = static_cast<unsigned>(p.n(i));
    const auto chains = detail::chain_sums(tally.passages[i], n, ni);
    Rational bound = pow(tails[i], ni);
    const Rational denom = factorial(ni) * pow(cdfs[i], i == 0 ? ni - 1 : ni);
    if (denom > 1)
      bound /= denom;
    ProofCheck c{"block-estimate-" + std::to_string(i + 1), true, true, {}, {}};
    if (i == 0) {
      // sum_{m_1 < ... < m_{n_1}} p_{m_1,t_1} prod p_{m_{j-1},m_j,t_1}
      Rational sum{0};
      for (std::size_t m1 = 1; m1 <= n; ++m1)
        sum += tally.passages[0].p_beta[m1] * chains[ni - 1][m1];
      c.passed = sum <= bound;
      c.detail = "first block sum " + to_string(sum) + " <= " + to_string(bound);
    } else {
      // later blocks start at an earlier stopping time, so at index >= 1
      c.detail = "inner sums <= " + to_string(bound) + " for every start >= 1";
      for (std::size_t a0 = 1; a0 <= n; ++a0)
        if (chains[ni][a0] > bound) {
          c.passed = false;
          c.detail = "inner sum " + to_string(chains[ni][a0]) + " > " + to_string(bound);
          c.witness = "start=" + std::to_string(a0);
          break;
        }
    }
    checks.push_back(std::move(c));
  }
  checks.push_back({"S-tilde-at-most-main-term", r.S_tilde <= r.main_term, true,
                    "S~ = " + to_string(r.S_tilde) + " <= main term " + to_string(r.main_term), {}});
  checks.push_back({"tail-plus-S-tilde-at-most-rhs", r.order_tail + r.S_tilde <= r.main_term + r.order_tail, true,
                    "P(Y > (K-1)s) + S~ = " + to_string(r.order_tail + r.S_tilde) + " <= rhs " +
                        to_string(r.main_term + r.order_tail),
                    {}});

  // passage system for every 0 <= alpha < gamma <= n and every block threshold
  for (const auto& pt : tally.passages) {
    const bool anchor_ok = r.anchor_distance <= pt.t;
    for (std::size_t gamma = 1; gamma <= n; ++gamma)
      for (std::size_t alpha = 0; alpha < gamma; ++alpha)
        for (auto& c : detail::passage_bound_checks(pt, alpha, gamma, anchor_ok)) {
          // keep one entry per check name: the first failure, else the last pass
          auto it = std::find_if(checks.begin(), checks.end(), [&](const ProofCheck& e) { return e.name == c.name; });
          if (it == checks.end())
            checks.push_back(std::move(c));
          else if (c.applicable && !c.passed && (!it->applicable || it->passed))
            *it = std::move(c);
          else if (c.applicable && !it->applicable)
            *it = std::move(c);
        }
  }
  return r;
}

} // namespace hj
