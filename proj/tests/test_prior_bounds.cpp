#include <gtest/gtest.h>

#include "hj/families.hpp"
#include "hj/hj_engine.hpp"

using namespace hj;

namespace {

FiniteDistribution<IntLine> rademacher()
{
  return make_distribution(IntLine{}, {{-1, make_rational(1, 2)}, {1, make_rational(1, 2)}});
}

Scenario<IntLine> walk(std::size_t n) { return {IntLine{}, std::vector(n, rademacher()), 0, 0}; }

const Scenario<IntLine> E1 = walk(2);
const Scenario<IntLine> E2 = walk(3);

Rational q(const char* text) { return parse_rational(text); }

const PriorBoundCheck& check(const PriorBoundReport& r, const std::string& name)
{
  for (const auto& c : r.checks)
    if (c.name == name)
      return c;
  throw std::runtime_error("no check " + name);
}

} // namespace

TEST(LtBound, ThreeStepWalk)
{
  auto r = lt_bound(E2, q("1"), q("1"));
  EXPECT_EQ(r.lhs, 0);
  ASSERT_TRUE(r.rhs.has_value());
  EXPECT_EQ(*r.rhs, q("1/4"));
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.zero_parameter);
  EXPECT_TRUE(r.checks_passed());
}

TEST(LtBound, ZeroParametersAreAcceptedAndFlagged)
{
  auto r = lt_bound(E1, q("0"), q("0"));
  EXPECT_EQ(r.lhs, 1);
  EXPECT_EQ(*r.rhs, 2);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.zero_parameter);
}

TEST(LtBound, MatchesGeneralSpecialization)
{
  Cyclic c{6};
  auto law = make_distribution(c, {{1, make_rational(1, 5)}, {2, make_rational(3, 5)}, {5, make_rational(1, 5)}});
  Scenario<Cyclic> sc{c, {law, law, law, law}, 0, 3};
  for (const char* t : {"0", "1/2", "1", "2"})
    for (const char* s : {"0", "1", "3/2"}) {
      auto r = lt_bound(sc, q(t), q(s));
      EXPECT_TRUE(check(r, "lt-equals-general-specialization").passed) << t << " " << s;
      auto g = evaluate_hj(sc, specialize_lt(q(t), q(s)), TailVariant::MaxIncrement);
      EXPECT_EQ(g.rhs, *r.rhs);
    }
}

TEST(HmBound, ThreeStepWalk)
{
  auto r = hm_bound(E2, 2, q("1"), q("1"));
  EXPECT_EQ(r.lhs, 0);
  EXPECT_EQ(*r.rhs, q("1/2"));
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.degenerate);
  EXPECT_TRUE(r.checks_passed());
}

TEST(HmBound, SingleBlock)
{
  auto r = hm_bound(E2, 1, q("1"), q("1"));
  EXPECT_EQ(r.lhs, q("1/4"));
  EXPECT_EQ(*r.rhs, 1);
  EXPECT_TRUE(r.holds);
  EXPECT_TRUE(r.checks_passed());
}

TEST(HmBound, DegenerateWhenCdfVanishes)
{
  auto r = hm_bound(E1, 2, q("0"), q("0"));
  EXPECT_TRUE(r.degenerate);
  EXPECT_FALSE(r.rhs.has_value());
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(check(r, "general-rhs-at-most-hm-rhs").applicable);
  EXPECT_TRUE(r.checks_passed());
}

TEST(HmBound, DominationChain)
{
  auto r = hm_bound(E2, 3, q("1/2"), q("1/2"));
  EXPECT_TRUE(check(r, "threshold-monotonicity").passed);
  EXPECT_TRUE(check(r, "general-bound-holds").passed);
  EXPECT_TRUE(check(r, "general-rhs-at-most-hm-rhs").passed);
}

TEST(HmBound, GeneralChecksSkippedWhenKTooLarge)
{
  auto r = hm_bound(E1, 5, q("1"), q("1"));
  EXPECT_FALSE(check(r, "general-bound-holds").applicable);
  EXPECT_TRUE(check(r, "threshold-monotonicity").applicable);
  EXPECT_TRUE(r.checks_passed());
}

TEST(PriorBounds, RejectNegativeParameters)
{
  EXPECT_THROW(lt_bound(E1, q("-1"), q("0")), HypothesisViolated);
  EXPECT_THROW(hm_bound(E1, 1, q("0"), q("-1")), HypothesisViolated);
  EXPECT_THROW(hm_bound(E1, 0, q("0"), q("0")), HypothesisViolated);
}
