#include <gtest/gtest.h>

#include <cstdlib>

#include "hj/families.hpp"
#include "hj/mc_runner.hpp"
#include "hj/report_json.hpp"

using namespace hj;

namespace {

FiniteDistribution<IntLine> rademacher()
{
  return make_distribution(IntLine{}, {{-1, make_rational(1, 2)}, {1, make_rational(1, 2)}});
}

SampledScenario<IntLine> sampled_walk(std::size_t n)
{
  return SampledScenario<IntLine>{Scenario<IntLine>{IntLine{}, std::vector(n, rademacher()), 0, 0}};
}

SampledScenario<Euclidean> gaussian_walk(std::size_t n)
{
  Euclidean e{2};
  return {e, std::vector<SamplableLaw<Euclidean>>(n, GaussianStep{{0.0, 0.0}, 1.0}), {0.0, 0.0}, {0.0, 0.0}};
}

BoundParams<Rational> rparams(std::vector<std::size_t> n, std::vector<Rational> t, Rational s)
{
  return {std::move(n), std::move(t), std::move(s)};
}

} // namespace

TEST(McVerdict, Examples)
{
  EXPECT_EQ(mc_verdict({0.10, 0.12}, {0.30, 0.34}), Verdict::HoldsWithMargin);
  EXPECT_EQ(mc_verdict({0.10, 0.31}, {0.30, 0.34}), Verdict::Inconclusive);
  EXPECT_EQ(mc_verdict({0.40, 0.44}, {0.30, 0.34}), Verdict::ViolatesWithMargin);
}

TEST(McEstimate, TwoStepWalkCoversExactTail)
{
  auto r = mc_estimate(sampled_walk(2), rparams({1}, {Rational{1}}, Rational{1}), 100000, 1, 0.99);
  ASSERT_EQ(r.tail.size(), 1u);
  EXPECT_TRUE(contains(r.tail[0].ci, 0.5)) << r.tail[0].p_hat;
  EXPECT_TRUE(contains(r.lhs.ci, 0.5));
  EXPECT_EQ(r.order_tail.count, 0u);
  EXPECT_EQ(r.n_samples, 100000u);
}

TEST(McEstimate, DegenerateLawsGiveZeroOrOne)
{
  IntLine z;
  SampledScenario<IntLine> sc{Scenario<IntLine>{z, {point_mass(z, 2), point_mass(z, 2)}, 0, 0}};
  auto r = mc_estimate(sc, rparams({1}, {Rational{3}}, Rational{1}), 1000, 3, 0.99);
  // U = 4 > 3 and M = 2 > 1 on every path
  EXPECT_EQ(r.tail[0].p_hat, 1.0);
  EXPECT_EQ(r.tail[0].ci.hi, 1.0);
  EXPECT_EQ(r.cdf[0].p_hat, 0.0);
  EXPECT_EQ(r.cdf[0].ci.lo, 0.0);
  EXPECT_EQ(r.max_tail.p_hat, 1.0);
  EXPECT_EQ(r.order_tail.p_hat, 0.0);
  EXPECT_FALSE(std::isnan(r.main_term.point));
  EXPECT_FALSE(std::isnan(r.main_term.ci.lo));
}

TEST(McEstimate, GaussianRunIsReproducible)
{
  auto sc = gaussian_walk(10);
  auto p = specialize_lt(2.0, 3.0);
  auto a = mc_estimate(sc, p, 100000, 5, 0.99);
  auto b = mc_estimate(sc, p, 100000, 5, 0.99);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  EXPECT_NE(mc_verdict(a), Verdict::ViolatesWithMargin);
  EXPECT_EQ(a.variants.size(), 2u);
  EXPECT_EQ(a.generator, "splitmix64-counter");
}

TEST(McEstimate, IndependentOfWorkerCount)
{
  auto sc = gaussian_walk(4);
  auto p = specialize_lt(1.0, 1.0);
  setenv("HJ_WORKERS", "1", 1);
  auto one = to_json(mc_estimate(sc, p, 20000, 9, 0.99)).dump();
  setenv("HJ_WORKERS", "4", 1);
  auto four = to_json(mc_estimate(sc, p, 20000, 9, 0.99)).dump();
  unsetenv("HJ_WORKERS");
  EXPECT_EQ(one, four);
}

TEST(McEstimate, CircleArcSteps)
{
  SampledScenario<Circle> sc{Circle{}, std::vector<SamplableLaw<Circle>>(6, ArcStep{0.5}), 0.0, 0.0};
  auto r = mc_estimate(sc, specialize_lt(0.3, 0.5), 5000, 2, 0.99);
  // every step has norm at most 0.5
  EXPECT_EQ(r.max_tail.count, 0u);
  EXPECT_NE(mc_verdict(r), Verdict::ViolatesWithMargin);
}

TEST(McEstimate, RejectsBadArguments)
{
  auto sc = sampled_walk(2);
  auto p = rparams({1}, {Rational{1}}, Rational{1});
  EXPECT_THROW(mc_estimate(sc, p, 1000, 1, 1.0), InvalidLevel);
  EXPECT_THROW(mc_estimate(sc, p, 1000, 1, 0.0), InvalidLevel);
  EXPECT_THROW(mc_estimate(sc, p, 99, 1, 0.9), HypothesisViolated);
  EXPECT_THROW(mc_estimate(sc, rparams({4}, {Rational{1}}, Rational{1}), 1000, 1, 0.9), HypothesisViolated);
}

TEST(SampledScenario, ValidatesStepLaws)
{
  Euclidean e{2};
  EXPECT_THROW((SampledScenario<Euclidean>{e, {GaussianStep{{0.0}, 1.0}}, {0.0, 0.0}, {0.0, 0.0}}), ParseError);
  EXPECT_THROW((SampledScenario<Euclidean>{e, {GaussianStep{{0.0, 0.0}, 0.0}}, {0.0, 0.0}, {0.0, 0.0}}), ParseError);
  EXPECT_THROW((SampledScenario<Circle>{Circle{}, {ArcStep{-1}}, 0.0, 0.0}), ParseError);
  EXPECT_THROW((SampledScenario<IntLine>{IntLine{}, {ArcStep{1}}, 0, 0}), ParseError);
}

TEST(SamplePath, KeyedByVariableAndSample)
{
  auto sc = gaussian_walk(3);
  auto a = sample_path(sc, 7, 12);
  auto b = sample_path(sc, 7, 12);
  auto c = sample_path(sc, 7, 13);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, c);
}
