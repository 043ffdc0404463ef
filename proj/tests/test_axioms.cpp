#include <gtest/gtest.h>

#include "hj/axioms.hpp"
#include "hj/families.hpp"
#include "hj/testing/broken_square.hpp"

using namespace hj;

namespace {

template <class G>
void expect_all_pass(const G& sg, std::size_t trials, std::uint64_t seed)
{
  auto report = check_axioms(sg, trials, seed);
  for (const auto& r : report.results)
    EXPECT_TRUE(r.passed) << report.instance << " " << r.axiom << ": " << r.witness;
  EXPECT_TRUE(report.all_passed());
}

} // namespace

TEST(Axioms, IntLinePasses) { expect_all_pass(IntLine{}, 1000, 7); }
TEST(Axioms, SymCayleyPasses) { expect_all_pass(SymCayley{4}, 1000, 7); }
TEST(Axioms, SymHammingPasses) { expect_all_pass(SymHamming{4}, 1000, 7); }
TEST(Axioms, PosIntsPassesWithoutIdentity) { expect_all_pass(PosInts{}, 1000, 7); }
TEST(Axioms, CyclicPasses) { expect_all_pass(Cyclic{5}, 1000, 7); }
TEST(Axioms, HammingCubePasses) { expect_all_pass(HammingCube{4}, 1000, 7); }
TEST(Axioms, EuclideanPassesWithinTolerance) { expect_all_pass(Euclidean{2}, 1000, 7); }
TEST(Axioms, CirclePassesWithinTolerance) { expect_all_pass(Circle{}, 1000, 7); }

TEST(Axioms, BrokenSquareFailsTranslationInvariance)
{
  auto report = check_axioms(hj::testing::BrokenSquare{}, 1000, 7);
  EXPECT_FALSE(report.all_passed());
  const auto* right = report.find("right-translation-invariance");
  ASSERT_NE(right, nullptr);
  EXPECT_FALSE(right->passed);
  EXPECT_EQ(right->witness, "a=0, b=1, c=1: d(ac,bc)=3/1, d(a,b)=1/1");
  const auto* left = report.find("left-translation-invariance");
  ASSERT_NE(left, nullptr);
  EXPECT_FALSE(left->passed);
  EXPECT_EQ(left->witness, "a=0, b=1, c=1: d(ca,cb)=3/1, d(a,b)=1/1");
}

TEST(Axioms, ReportIsDeterministic)
{
  auto a = check_axioms(SymCayley{4}, 300, 11);
  auto b = check_axioms(SymCayley{4}, 300, 11);
  ASSERT_EQ(a.results.size(), b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) {
    EXPECT_EQ(a.results[i].checked, b.results[i].checked);
    EXPECT_EQ(a.results[i].passed, b.results[i].passed);
  }
}

TEST(Axioms, CountsEveryTrial)
{
  auto r = check_axioms(IntLine{}, 500, 1);
  EXPECT_EQ(r.trial_count, 500u);
  for (const auto& a : r.results)
    EXPECT_GE(a.checked, 500u) << a.axiom;
}

TEST(Axioms, RejectsZeroTrials) { EXPECT_THROW(check_axioms(IntLine{}, 0, 1), HypothesisViolated); }
