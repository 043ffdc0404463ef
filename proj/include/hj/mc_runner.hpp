#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include "hj/bound_params.hpp"
#include "hj/distribution.hpp"
#include "hj/enumerate.hpp"
#include "hj/errors.hpp"
#include "hj/families.hpp"
#include "hj/hj_engine.hpp"
#include "hj/path_stats.hpp"
#include "hj/rng.hpp"
#include "hj/wilson.hpp"

namespace hj {

/// Step X = mean + scale * N(0, I) in Euclidean(d), Box-Muller normals.
struct GaussianStep {
  std::vector<double> mean;
  double scale = 1;
};

/// Step angle uniform on [-half_width, half_width] on the circle.
struct ArcStep {
  double half_width = 0;
};

template <MetricSemigroup G>
using SamplableLaw = std::variant<FiniteDistribution<G>, GaussianStep, ArcStep>;

template <MetricSemigroup G>
struct SampledScenario {
  G sg;
  std::vector<SamplableLaw<G>> laws;
  element_t<G> z0;
  element_t<G> z1;

  SampledScenario(G sg_, std::vector<SamplableLaw<G>> laws_, element_t<G> z0_, element_t<G> z1_)
    : sg{std::move(sg_)}, laws{std::move(laws_)}, z0{std::move(z0_)}, z1{std::move(z1_)}
  {
    if (laws.empty())
      throw ParseError("a scenario needs at least one variable");
    require_member(sg, z0);
    require_member(sg, z1);
    for (const auto& law : laws)
      std::visit([&](const auto& l) { validate(l); }, law);
  }

  explicit SampledScenario(const Scenario<G>& sc)
    : SampledScenario(sc.sg, std::vector<SamplableLaw<G>>(sc.laws.begin(), sc.laws.end()), sc.z0, sc.z1)
  {}

  std::size_t n() const { return laws.size(); }

private:
  void validate(const FiniteDistribution<G>&) const {}
  void validate(const GaussianStep& g) const
  {
    if constexpr (std::is_same_v<G, Euclidean>) {
      if (g.mean.size() != sg.dimension())
        throw ParseError("Gaussian mean has the wrong dimension");
      for (double x : g.mean)
        if (!std::isfinite(x))
          throw ParseError("Gaussian mean must be finite");
      if (!(g.scale > 0) || !std::isfinite(g.scale))
        throw ParseError("Gaussian scale must be positive and finite");
    } else {
      throw ParseError("Gaussian steps are only defined on Euclidean(d)");
    }
  }
  void validate(const ArcStep& a) const
  {
    if constexpr (std::is_same_v<G, Circle>) {
      if (!(a.half_width > 0) || !std::isfinite(a.half_width))
        throw ParseError("arc half-width must be positive and finite");
    } else {
      throw ParseError("arc steps are only defined on Circle");
    }
  }
};

/// Draws X_j of sample `index` from the stream keyed by (seed, j, index).
template <MetricSemigroup G>
element_t<G> sample_step(const SampledScenario<G>& sc, std::size_t j, CounterRng& rng)
{
  const auto& law = sc.laws[j];
  if (const auto* fd = std::get_if<FiniteDistribution<G>>(&law))
    return fd->element(sample_index(*fd, rng));
  if constexpr (std::is_same_v<G, Euclidean>) {
    const auto& g = std::get<GaussianStep>(law);
    std::vector<double> x(sc.sg.dimension());
    for (std::size_t i = 0; i < x.size(); i += 2) {
      auto [a, b] = rng.normal_pair();
      x[i] = g.mean[i] + g.scale * a;
      if (i + 1 < x.size())
        x[i + 1] = g.mean[i + 1] + g.scale * b;
    }
    return x;
  } else if constexpr (std::is_same_v<G, Circle>) {
    const auto& a = std::get<ArcStep>(law);
    return Circle::reduce((2 * rng.uniform01() - 1) * a.half_width);
  } else {
    throw ParseError("continuous step on a discrete family");
  }
}

template <MetricSemigroup G>
std::vector<element_t<G>> sample_path(const SampledScenario<G>& sc, std::uint64_t seed, std::uint64_t index)
{
  std::vector<element_t<G>> values;
  values.reserve(sc.n());
  for (std::size_t j = 0; j < sc.n(); ++j) {
    CounterRng rng{seed, j, index};
    values.push_back(sample_step(sc, j, rng));
  }
  return values;
}

enum class Verdict { HoldsWithMargin, Inconclusive, ViolatesWithMargin };

inline std::string to_string(Verdict v)
{
  switch (v) {
  case Verdict::HoldsWithMargin:
    return "holds-with-margin";
  case Verdict::Inconclusive:
    return "inconclusive";
  default:
    return "violates-with-margin";
  }
}

/// holds iff upper(lhs) <= lower(rhs); violates iff lower(lhs) > upper(rhs).
inline Verdict mc_verdict(const Interval& lhs, const Interval& rhs)
{
  if (lhs.hi <= rhs.lo)
    return Verdict::HoldsWithMargin;
  if (lhs.lo > rhs.hi)
    return Verdict::ViolatesWithMargin;
  return Verdict::Inconclusive;
}

struct Estimate {
  std::uint64_t count = 0;
  double p_hat = 0;
  Interval ci;
};

struct McSide {
  double point = 0;
  Interval ci; // conservative interval assembled from the ingredient intervals
};

struct McVariantResult {
  TailVariant variant = TailVariant::MaxIncrement;
  McSide rhs;
  Verdict verdict = Verdict::Inconclusive;
};

struct McReport {
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  double level = 0;
  std::string generator = CounterRng::generator_name;
  std::string keying = CounterRng::keying_scheme;
  std::string zeta;
  Estimate lhs;                    // P(U > zeta)
  std::vector<Estimate> tail;      // P(U > t_i)
  std::vector<Estimate> cdf;       // P(U <= t_i)
  Estimate max_tail;               // P(M > s)
  Estimate order_tail;             // P(top_sum(K) > (K-1) s)
  std::vector<std::size_t> I0;     // by point estimate
  std::vector<double> branch_product; // per block: P(U > t_i)^n_i at the point estimate
  std::vector<double> branch_ratio;   // per block: P(U > t_i)^n_i / (n_i! P(U <= t_i)^e_i), inf if 0 cdf
  McSide main_term;
  std::vector<McVariantResult> variants; // max, order
};

namespace detail {

/// Block factor a^n min(1, 1/(n! (1-a)^e)); increasing in a.
inline double block_factor(double tail, std::size_t n, unsigned e)
{
  double f = std::pow(tail, static_cast<double>(n));
  const double denom = std::tgamma(static_cast<double>(n) + 1) * std::pow(1 - tail, static_cast<double>(e));
  if (denom > 1)
    f /= denom;
  return f;
}

template <class T>
double main_term_at(const BoundParams<T>& p, const std::vector<double>& tails)
{
  double main = 1;
  for (std::size_t i = 0; i < p.k(); ++i)
    main *= block_factor(tails[i], p.n(i), static_cast<unsigned>(p.n(i) - (i == 0 ? 1 : 0)));
  return main;
}

inline Estimate make_estimate(std::uint64_t count, std::uint64_t n, double level)
{
  return {count, static_cast<double>(count) / static_cast<double>(n), wilson_interval(count, n, level)};
}

struct McCounts {
  std::uint64_t lhs = 0, max_tail = 0, order_tail = 0;
  std::vector<std::uint64_t> tail;
};

} // namespace detail

/// Estimates every probability in the general bound from `n_samples`
/// independent paths and assembles the rhs conservatively: the upper rhs bound
/// uses upper tail bounds (and hence lower cdf bounds), the lower rhs bound the
/// reverse. Counts are integers, so the result is independent of worker count.
template <MetricSemigroup G>
McReport mc_estimate(const SampledScenario<G>& sc, const BoundParams<scalar_t<G>>& p, std::uint64_t n_samples,
                     std::uint64_t seed, double level)
{
  using T = scalar_t<G>;
  if (!(level > 0 && level < 1))
    throw InvalidLevel("confidence level must lie in (0, 1)");
  if (n_samples < 100)
    throw HypothesisViolated("need at least 100 samples");
  p.require_applicable(sc.n());
  const T zeta = p.zeta();
  const std::size_t K = p.K();
  const T order_cut = T(static_cast<long>(K - 1)) * p.s();

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
    detail::McCounts c;
    c.tail.assign(p.k(), 0);
    for (std::uint64_t i = lo; i < hi; ++i) {
      const auto st = path_statistics(sc.sg, sc.z0, sc.z1, sample_path(sc, seed, i));
      c.lhs += st.U > zeta;
      for (std::size_t b = 0; b < p.k(); ++b)
        c.tail[b] += st.U > p.t(b);
      c.max_tail += st.M > p.s();
      c.order_tail += st.top_sum(K) > order_cut;
    }
    return c;
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(worker_count(), std::max<std::uint64_t>(1, n_samples / 1024)));
  std::vector<detail::McCounts> parts(workers);
  if (workers == 1) {
    parts[0] = run_range(0, n_samples);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w)
      threads.emplace_back([&, w] { parts[w] = run_range(n_samples * w / workers, n_samples * (w + 1) / workers); });
    for (auto& t : threads)
      t.join();
  }
  detail::McCounts total;
  total.tail.assign(p.k(), 0);
  for (const auto& c : parts) {
    total.lhs += c.lhs;
    total.max_tail += c.max_tail;
    total.order_tail += c.order_tail;
    for (std::size_t b = 0; b < p.k(); ++b)
      total.tail[b] += c.tail[b];
  }

  McReport r;
  r.n_samples = n_samples;
  r.seed = seed;
  r.level = level;
  r.zeta = scalar_to_string(zeta);
  r.lhs = detail::make_estimate(total.lhs, n_samples, level);
  r.max_tail = detail::make_estimate(total.max_tail, n_samples, level);
  r.order_tail = detail::make_estimate(total.order_tail, n_samples, level);
  std::vector<double> tail_point, tail_hi, tail_lo;
  for (std::size_t b = 0; b < p.k(); ++b) {
    r.tail.push_back(detail::make_estimate(total.tail[b], n_samples, level));
    r.cdf.push_back(detail::make_estimate(n_samples - total.tail[b], n_samples, level));
    tail_point.push_back(r.tail.back().p_hat);
    tail_lo.push_back(r.tail.back().ci.lo);
    tail_hi.push_back(r.tail.back().ci.hi);
    const std::size_t nb = p.n(b);
    const unsigned e = static_cast<unsigned>(nb - (b == 0 ? 1 : 0));
    const double cdf_point = r.cdf.back().p_hat;
    r.branch_product.push_back(std::pow(tail_point.back(), static_cast<double>(nb)));
    const double denom = std::tgamma(static_cast<double>(nb) + 1) * std::pow(cdf_point, static_cast<double>(e));
    r.branch_ratio.push_back(denom > 0 ? r.branch_product.back() / denom : INFINITY);
    if (denom <= 1)
      r.I0.push_back(b);
  }
  r.main_term = {detail::main_term_at(p, tail_point),
                 {detail::main_term_at(p, tail_lo), detail::main_term_at(p, tail_hi)}};
  for (TailVariant v : {TailVariant::MaxIncrement, TailVariant::OrderStatistic}) {
    const Estimate& te = v == TailVariant::MaxIncrement ? r.max_tail : r.order_tail;
    McVariantResult vr;
    vr.variant = v;
    vr.rhs = {r.main_term.point + te.p_hat, {r.main_term.ci.lo + te.ci.lo, r.main_term.ci.hi + te.ci.hi}};
    vr.verdict = mc_verdict(r.lhs.ci, vr.rhs.ci);
    r.variants.push_back(vr);
  }
  return r;
}

/// Combined verdict over both tail variants: violates if either does, holds
/// only if both do.
inline Verdict mc_verdict(const McReport& r)
{
  bool all_hold = true;
  for (const auto& v : r.variants) {
    if (v.verdict == Verdict::ViolatesWithMargin)
      return Verdict::ViolatesWithMargin;
    all_hold = all_hold && v.verdict == Verdict::HoldsWithMargin;
  }
  return all_hold ? Verdict::HoldsWithMargin : Verdict::Inconclusive;
}

} // namespace hj
