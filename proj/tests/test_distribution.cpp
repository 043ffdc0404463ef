#include <gtest/gtest.h>

#include <cstdlib>
#include <map>

#include "hj/distribution.hpp"
#include "hj/enumerate.hpp"
#include "hj/families.hpp"
#include "hj/path_stats.hpp"
#include "hj/wilson.hpp"

using namespace hj;

namespace {

FiniteDistribution<IntLine> rademacher()
{
  return make_distribution(IntLine{}, {{-1, make_rational(1, 2)}, {1, make_rational(1, 2)}});
}

Scenario<IntLine> walk(std::size_t n) { return {IntLine{}, std::vector(n, rademacher()), 0, 0}; }

} // namespace

TEST(MakeDistribution, AcceptsRademacher)
{
  auto law = rademacher();
  ASSERT_EQ(law.size(), 2u);
  EXPECT_EQ(law.probability(0) + law.probability(1), 1);
}

TEST(MakeDistribution, RejectsMassDeficit)
{
  EXPECT_THROW(make_distribution(IntLine{}, {{0, make_rational(1, 2)}, {1, make_rational(1, 3)}}),
               ProbabilitiesDoNotSumToOne);
}

TEST(MakeDistribution, RejectsZeroMass)
{
  EXPECT_THROW(make_distribution(IntLine{}, {{0, Rational{0}}, {1, Rational{1}}}), NonPositiveProbability);
  EXPECT_THROW(make_distribution(IntLine{}, {{0, make_rational(-1, 2)}, {1, make_rational(3, 2)}}),
               NonPositiveProbability);
}

TEST(MakeDistribution, RejectsForeignElementsAndEmptyLists)
{
  EXPECT_THROW(make_distribution(Cyclic{3}, {{4, Rational{1}}}), InstanceMismatch);
  EXPECT_THROW(make_distribution(IntLine{}, {}), ProbabilitiesDoNotSumToOne);
}

TEST(MakeDistribution, MergesDuplicates)
{
  auto law = make_distribution(IntLine{}, {{2, make_rational(1, 4)}, {5, make_rational(1, 2)}, {2, make_rational(1, 4)}});
  ASSERT_EQ(law.size(), 2u);
  EXPECT_EQ(law.element(0), 2);
  EXPECT_EQ(law.probability(0), make_rational(1, 2));
}

TEST(Scenario, ValidatesAnchorsAndLaws)
{
  EXPECT_THROW((Scenario<PosInts>{PosInts{}, {point_mass(PosInts{}, 1)}, 0, 1}), InstanceMismatch);
  EXPECT_THROW((Scenario<IntLine>{IntLine{}, {}, 0, 0}), Error);
}

TEST(Enumerate, FourOutcomesForTwoSigns)
{
  auto outs = collect_outcomes(walk(2));
  ASSERT_EQ(outs.size(), 4u);
  for (const auto& o : outs)
    EXPECT_EQ(o.prob, make_rational(1, 4));
  // last coordinate varies fastest
  EXPECT_EQ(outs[0].values, (std::vector<std::int64_t>{-1, -1}));
  EXPECT_EQ(outs[1].values, (std::vector<std::int64_t>{-1, 1}));
  EXPECT_EQ(outs[3].values, (std::vector<std::int64_t>{1, 1}));
}

TEST(Enumerate, SinglePointLaw)
{
  Scenario<IntLine> sc{IntLine{}, {point_mass(IntLine{}, 5)}, 0, 0};
  auto outs = collect_outcomes(sc);
  ASSERT_EQ(outs.size(), 1u);
  EXPECT_EQ(outs[0].values[0], 5);
  EXPECT_EQ(outs[0].prob, 1);
}

TEST(Enumerate, ProbabilitiesSumToOne)
{
  Cyclic c{7};
  auto a = make_distribution(c, {{1, make_rational(1, 3)}, {2, make_rational(1, 6)}, {6, make_rational(1, 2)}});
  auto b = make_distribution(c, {{0, make_rational(2, 7)}, {3, make_rational(5, 7)}});
  Scenario<Cyclic> sc{c, {a, b, a, b}, 2, 5};
  Rational total{0};
  std::size_t count = 0;
  enumerate_outcomes(sc, [&](const Outcome<Cyclic>& o) {
    total += o.prob;
    ++count;
  });
  EXPECT_EQ(total, 1);
  EXPECT_EQ(count, 36u);
}

TEST(Enumerate, BudgetExceeded)
{
  EXPECT_THROW(outcome_count(walk(10), 1000), BudgetExceeded);
  EXPECT_EQ(outcome_count(walk(10), 1024), 1024u);
  EXPECT_THROW(enumerate_outcomes(walk(12), [](const auto&) {}, 100), BudgetExceeded);
}

TEST(Enumerate, ChunksCoverEveryOutcomeOnce)
{
  auto sc = walk(5);
  std::map<std::vector<std::int64_t>, int> seen;
  for (std::uint64_t lo = 0; lo < 32; lo += 7)
    for_each_outcome_in(sc, lo, std::min<std::uint64_t>(lo + 7, 32), [&](const Outcome<IntLine>& o) { ++seen[o.values]; });
  EXPECT_EQ(seen.size(), 32u);
  for (const auto& [v, c] : seen)
    EXPECT_EQ(c, 1);
}

TEST(PathStatistics, TwoStepExample)
{
  auto sc = walk(2);
  auto st = path_statistics(sc, std::vector<std::int64_t>{1, -1});
  EXPECT_EQ(st.S, (std::vector<std::int64_t>{1, 0}));
  EXPECT_EQ(st.U, 1);
  EXPECT_EQ(st.Y, (std::vector<Rational>{1, 1}));
  EXPECT_EQ(st.M, 1);
  EXPECT_EQ(st.top_sum(2), 1);
}

TEST(PathStatistics, ConstantIdentitySteps)
{
  Scenario<IntLine> sc{IntLine{}, {point_mass(IntLine{}, 0), point_mass(IntLine{}, 0)}, 3, 3};
  auto st = path_statistics(sc, std::vector<std::int64_t>{0, 0});
  EXPECT_EQ(st.U, 0);
  EXPECT_EQ(st.M, 0);
}

TEST(PathStatistics, ThreeStepExample)
{
  auto sc = walk(3);
  auto st = path_statistics(sc, std::vector<std::int64_t>{1, 1, 1});
  EXPECT_EQ(st.S, (std::vector<std::int64_t>{1, 2, 3}));
  EXPECT_EQ(st.U, 3);
  EXPECT_EQ(st.M, 1);
  EXPECT_EQ(st.top_sum(2), 1);
  EXPECT_EQ(st.top_sum(3), 2);
  EXPECT_EQ(st.top_sum(1), 0);
}

TEST(PathStatistics, RejectsLargeK)
{
  auto sc = walk(2);
  auto outs = collect_outcomes(sc);
  EXPECT_NO_THROW(path_statistics(sc, outs[0], 3));
  EXPECT_THROW(path_statistics(sc, outs[0], 4), HypothesisViolated);
  EXPECT_THROW(path_statistics(sc, outs[0], 0), HypothesisViolated);
}

TEST(PathStatistics, RejectsForeignValues)
{
  Cyclic c{4};
  Scenario<Cyclic> sc{c, {point_mass(c, 1)}, 0, 0};
  EXPECT_THROW(path_statistics(sc, std::vector<std::int64_t>{9}), InstanceMismatch);
}

TEST(EventProbability, Examples)
{
  auto e1 = walk(2);
  EXPECT_EQ(event_probability(e1, [](const auto&, const auto& st) { return st.U > 1; }), make_rational(1, 2));
  EXPECT_EQ(event_probability(e1, [](const auto&, const auto&) { return false; }), 0);
  EXPECT_EQ(event_probability(e1, [](const auto&, const auto&) { return true; }), 1);
}

TEST(SampleOutcome, ReproducibleGivenSeedAndIndex)
{
  auto e1 = walk(2);
  auto a = sample_outcome(e1, 42, 0);
  auto b = sample_outcome(e1, 42, 0);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.prob, make_rational(1, 4));
}

TEST(SampleOutcome, SinglePointLawsAlwaysGiveTheUniqueOutcome)
{
  Scenario<IntLine> sc{IntLine{}, {point_mass(IntLine{}, 4), point_mass(IntLine{}, -2)}, 0, 0};
  for (std::uint64_t i = 0; i < 50; ++i)
    EXPECT_EQ(sample_outcome(sc, 9, i).values, (std::vector<std::int64_t>{4, -2}));
}

TEST(SampleOutcome, FrequencyMatchesExactProbability)
{
  auto e1 = walk(2);
  const std::uint64_t n = 100000;
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < n; ++i)
    if (sample_outcome(e1, 42, i).values == std::vector<std::int64_t>{1, 1})
      ++hits;
  EXPECT_TRUE(contains(wilson_interval(hits, n, 0.99), 0.25)) << hits;
}
