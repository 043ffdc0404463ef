#include <gtest/gtest.h>

#include "hj/config.hpp"
#include "hj/families.hpp"
#include "hj/hj_engine.hpp"
#include "hj/proof_lab.hpp"
#include "oracle.hpp"

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

BoundParams<Rational> params(std::vector<std::size_t> n, std::vector<const char*> t, const char* s)
{
  std::vector<Rational> tv;
  for (auto x : t)
    tv.push_back(q(x));
  return {std::move(n), std::move(tv), q(s)};
}

Rational from_oracle(oracle::Frac f) { return make_rational(static_cast<std::int64_t>(f.n), static_cast<std::int64_t>(f.d)); }

const ProofCheck& find(const std::vector<ProofCheck>& checks, const std::string& name)
{
  for (const auto& c : checks)
    if (c.name == name)
      return c;
  throw std::runtime_error("no check " + name);
}

using Ints = std::vector<std::int64_t>;
using Tuple = std::vector<std::size_t>;

} // namespace

TEST(StoppingTimes, CompleteProfile)
{
  auto prof = stopping_times(E2, Ints{1, 1, 1}, params({2}, {"0"}, "0"));
  EXPECT_EQ(prof.m, (Tuple{1, 2}));
  EXPECT_TRUE(prof.complete);
}

TEST(StoppingTimes, IncompleteProfile)
{
  auto prof = stopping_times(E2, Ints{1, 1, 1}, params({2}, {"1"}, "0"));
  EXPECT_EQ(prof.m, (Tuple{2}));
  EXPECT_FALSE(prof.complete);
}

TEST(StoppingTimes, EmptyWhenNoPassage)
{
  auto prof = stopping_times(E2, Ints{1, -1, 1}, params({1}, {"1"}, "0"));
  EXPECT_TRUE(prof.m.empty());
  EXPECT_FALSE(prof.complete);
}

TEST(StoppingTimes, UsesBlockSchedule)
{
  // t' = (0, 1): m_1 = 1, then needs |S_j - S_1| > 2
  auto prof = stopping_times(walk(4), Ints{1, 1, 1, 1}, params({1, 1}, {"0", "1"}, "0"));
  EXPECT_EQ(prof.m, (Tuple{1, 4}));
}

TEST(StoppingTimes, RejectsTooManyBlocks)
{
  auto outs = collect_outcomes(E1);
  EXPECT_THROW(stopping_times(E1, outs[0], params({4}, {"0"}, "0")), HypothesisViolated);
}

TEST(Omega1, Membership)
{
  auto st = path_statistics(E2, Ints{1, 1, 1});
  EXPECT_TRUE(omega1_membership(st, params({2}, {"0"}, "2")));
  EXPECT_FALSE(omega1_membership(st, params({2}, {"0"}, "1/2")));
  EXPECT_FALSE(omega1_membership(path_statistics(E2, Ints{1, -1, 1}), params({2}, {"0"}, "2")));
}

TEST(FirstPassage, ThreeStepWalk)
{
  EXPECT_EQ(p_first_passage(E2, 1, q("1")), 0);
  EXPECT_EQ(p_first_passage(E2, 2, q("1")), q("1/2"));
  EXPECT_EQ(p_first_passage(E2, 3, q("1")), 0);
}

TEST(FirstPassage, TwoStepWalkAtZero)
{
  EXPECT_EQ(p_first_passage(E1, 1, q("0")), 1);
  EXPECT_EQ(p_first_passage(E1, 2, q("0")), 0);
}

TEST(FirstPassage, ImpossibleAboveMaximum)
{
  for (std::size_t b = 1; b <= 3; ++b)
    EXPECT_EQ(p_first_passage(E2, b, q("3")), 0);
  EXPECT_THROW(p_first_passage(E2, 0, q("1")), HypothesisViolated);
  EXPECT_THROW(p_first_passage(E2, 4, q("1")), HypothesisViolated);
}

TEST(IncrementPassage, ThreeStepWalk)
{
  EXPECT_EQ(p_increment(E2, 1, 3, q("1/2")), q("1/2"));
  EXPECT_EQ(p_increment(E2, 1, 2, q("0")), 1);
  EXPECT_EQ(p_increment(E2, 2, 3, q("1")), 0);
  EXPECT_THROW(p_increment(E2, 2, 2, q("1")), HypothesisViolated);
}

TEST(IncrementPassage, AgreesWithOracle)
{
  IntLine z;
  auto a = make_distribution(z, {{-2, make_rational(1, 3)}, {1, make_rational(2, 3)}});
  Scenario<IntLine> sc{z, {a, a, a, a}, 2, -1};
  oracle::Law oa{{-2, oracle::Frac{1, 3}}, {1, oracle::Frac{2, 3}}};
  oracle::Walk w{{oa, oa, oa, oa}, 2, -1};
  for (const auto& [tn, td] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {1, 1}, {3, 2}, {2, 1}}) {
    oracle::Frac t{tn, td};
    for (std::size_t b = 1; b <= 4; ++b) {
      EXPECT_EQ(p_first_passage(sc, b, make_rational(tn, td)), from_oracle(oracle::first_passage(w, b, t)));
      for (std::size_t al = 0; al < b; ++al)
        EXPECT_EQ(p_increment(sc, al, b, make_rational(tn, td)), from_oracle(oracle::increment_passage(w, al, b, t)));
    }
  }
}

TEST(PassageBounds, IncrementSum)
{
  auto checks = verify_passage_bounds(E2, 1, 3, q("1/2"));
  const auto& a = find(checks, "passage-increment-sum");
  EXPECT_TRUE(a.applicable);
  EXPECT_TRUE(a.passed);
  EXPECT_EQ(a.detail, "alpha=1, gamma=3, t=1/2: sum p_inc = 1/2 <= P(U_gamma > t) = 1/1");
}

TEST(PassageBounds, Conditioned)
{
  auto checks = verify_passage_bounds(E2, 1, 3, q("1"));
  const auto& c = find(checks, "passage-conditioned");
  EXPECT_TRUE(c.applicable);
  EXPECT_TRUE(c.passed);
  EXPECT_EQ(c.detail, "alpha=1, gamma=3, t=1/1: sum p_inc = 0/1 <= 1/2");
}

TEST(PassageBounds, FirstPassageIdentity)
{
  auto checks = verify_passage_bounds(E2, 0, 3, q("1"));
  const auto& b = find(checks, "first-passage-identity");
  EXPECT_TRUE(b.passed);
  EXPECT_EQ(b.detail, "alpha=0, gamma=3, t=1/1: sum p_beta = 1/2 == P(U_gamma > t) = 1/2");
}

TEST(PassageBounds, ConditioningSkippedWhenCdfVanishes)
{
  // P(U_1 <= 1/2) = 0 on the sign walk
  auto checks = verify_passage_bounds(E2, 1, 2, q("1/2"));
  EXPECT_FALSE(find(checks, "passage-conditioned").applicable);
  EXPECT_THROW(verify_passage_bounds(E2, 2, 2, q("1")), HypothesisViolated);
}

TEST(Decomposition, SingleBlockAtZeroThreshold)
{
  auto r = verify_decomposition(E2, params({2}, {"0"}, "2"));
  EXPECT_EQ(r.zeta, 2);
  EXPECT_EQ(r.lhs, q("1/4"));
  EXPECT_EQ(r.p_omega1, q("1/4"));
  ASSERT_EQ(r.blocks.size(), 1u);
  EXPECT_EQ(r.blocks.at(Tuple{1, 2}), q("1/4"));
  EXPECT_EQ(r.product_bounds.at(Tuple{1, 2}), 1);
  EXPECT_EQ(r.product_bounds.at(Tuple{1, 3}), 0);
  EXPECT_EQ(r.product_bounds.at(Tuple{2, 3}), 0);
  EXPECT_EQ(r.S_tilde, 1);
  EXPECT_EQ(r.order_tail, 0);
  EXPECT_FALSE(r.anchor_gap);
  for (const auto& c : r.checks)
    EXPECT_TRUE(c.passed) << c.name << ": " << c.detail;
  EXPECT_TRUE(r.all_passed());
}

TEST(Decomposition, EmptyOmega)
{
  auto r = verify_decomposition(E2, params({2}, {"0"}, "1/2"));
  EXPECT_EQ(r.p_omega1, 0);
  EXPECT_TRUE(r.blocks.empty());
  EXPECT_TRUE(r.all_passed());
}

TEST(Decomposition, TightTwoStepCase)
{
  auto r = verify_decomposition(E1, params({1}, {"1"}, "1"));
  ASSERT_EQ(r.blocks.size(), 1u);
  EXPECT_EQ(r.blocks.at(Tuple{2}), q("1/2"));
  EXPECT_EQ(r.product_bounds.at(Tuple{2}), q("1/2"));
  EXPECT_EQ(r.p_omega1, q("1/2"));
  EXPECT_TRUE(r.all_passed());
}

TEST(Decomposition, AgreesWithOracle)
{
  IntLine z;
  auto a = make_distribution(z, {{-1, make_rational(1, 4)}, {0, make_rational(1, 4)}, {2, make_rational(1, 2)}});
  Scenario<IntLine> sc{z, {a, a, a, a}, 0, 1};
  oracle::Law oa{{-1, oracle::Frac{1, 4}}, {0, oracle::Frac{1, 4}}, {2, oracle::Frac{1, 2}}};
  oracle::Walk w{{oa, oa, oa, oa}, 0, 1};
  oracle::Params op{{2, 1}, {oracle::Frac{1}, oracle::Frac{1, 2}}, oracle::Frac{2}};
  auto r = verify_decomposition(sc, params({2, 1}, {"1", "1/2"}, "2"));
  auto blocks = oracle::omega_blocks(w, op);
  ASSERT_EQ(r.blocks.size(), blocks.size());
  for (const auto& [m, p] : blocks)
    EXPECT_EQ(r.blocks.at(m), from_oracle(p));
  EXPECT_EQ(r.S_tilde, from_oracle(oracle::s_tilde(w, op)));
  EXPECT_EQ(r.lhs, from_oracle(oracle::tail_U(w, op.zeta())));
  EXPECT_TRUE(r.all_passed());
}

// With d(z1, z0) > t_1 the walk can start beyond the first threshold: here
// nothing moves, U is 10 on every outcome, and no second stopping time exists.
TEST(Decomposition, AnchorGapCounterexample)
{
  IntLine z;
  Scenario<IntLine> sc{z, {point_mass(z, 0)}, 0, 10};
  auto p = params({2}, {"1"}, "0");
  auto r = verify_decomposition(sc, p);
  EXPECT_TRUE(r.anchor_gap);
  EXPECT_EQ(r.anchor_distance, 10);
  EXPECT_EQ(r.p_omega1, 1);
  // m_1 = 1 but no second stopping time: no complete profile at all
  EXPECT_TRUE(r.blocks.empty());
  EXPECT_EQ(r.S_tilde, 0);
  // the summed estimate P(U > zeta) <= P(Y > (K-1)s) + S~ is false here
  EXPECT_GT(r.lhs, r.order_tail + r.S_tilde);
  EXPECT_FALSE(find(r.checks, "stopping-profiles-complete").applicable);
  EXPECT_FALSE(find(r.checks, "summed-estimate").applicable);
  EXPECT_TRUE(r.all_passed());
  // the bound itself still holds
  EXPECT_TRUE(evaluate_hj(sc, p, TailVariant::OrderStatistic).holds);
}

// Later blocks start at an earlier stopping time (index >= 1), never at the
// start itself, whose distance to the target anchor may exceed 2t.
TEST(Decomposition, LaterBlocksStartAfterFirstStop)
{
  auto cfg = json::parse(R"({"laws": [[["2,4,3,1", "1/1"]], [["1,3,2,4", "5/13"], ["1,2,3,4", "2/13"], ["1,4,3,2", "6/13"]]],
      "z0": "2,4,1,3", "z1": "4,3,1,2"})");
  auto sc = scenario_from_json(SymCayley{4}, cfg);
  auto r = verify_decomposition(sc, params({1, 1, 1}, {"2/3", "1", "2"}, "0"));
  EXPECT_EQ(find(r.checks, "block-estimate-2").detail, "inner sums <= 0/1 for every start >= 1");
  EXPECT_TRUE(r.all_passed());
}
