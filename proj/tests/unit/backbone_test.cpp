#include <gtest/gtest.h>

#include <random>

#include "mrx/backbone.hpp"
#include "mrx/errors.hpp"
#include "oracles.hpp"

namespace mrx {
namespace {

TEST(Backbone, Examples) {
  EXPECT_EQ(compute_backbone(CnfFormula::of({{1}, {1, 2}})), std::vector<Literal>{Literal(1, true)});
  EXPECT_EQ(compute_backbone(CnfFormula::of({{1, 2}, {-1, 2}})),
            std::vector<Literal>{Literal(2, true)});
  EXPECT_TRUE(compute_backbone(CnfFormula::of({{1, 2}})).empty());
  EXPECT_THROW(compute_backbone(CnfFormula::of({{1}, {-1}})), PreconditionError);
}

TEST(Backbone, RandomMatchesModelIntersection) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 80; ++i) {
    const Var n = 4 + static_cast<Var>(rng() % 17);
    const CnfFormula kb = oracle::random_sat(rng, n, n + rng() % (3 * n));
    const Var used = oracle::max_var(kb.clauses());
    EXPECT_EQ(compute_backbone(kb), oracle::backbone(kb.clauses(), used));
  }
}

TEST(BackboneSample, DeterministicSubset) {
  std::vector<Literal> bb;
  for (Var v = 1; v <= 10; ++v) bb.emplace_back(v, v % 2 == 0);
  const BackboneSample a = sample_backbone(bb, 4, 99);
  const BackboneSample b = sample_backbone(bb, 4, 99);
  EXPECT_EQ(a.literals, b.literals);
  EXPECT_EQ(a.literals.size(), 4u);
  EXPECT_TRUE(std::is_sorted(a.literals.begin(), a.literals.end()));
  for (Literal l : a.literals) EXPECT_NE(std::find(bb.begin(), bb.end(), l), bb.end());
  EXPECT_FALSE(a.truncated);
}

TEST(BackboneSample, ZeroOrOversizedTakesAll) {
  const std::vector<Literal> bb{Literal(1, true), Literal(3, false)};
  EXPECT_EQ(sample_backbone(bb, 0, 1).literals, bb);
  const BackboneSample big = sample_backbone(bb, 5, 1);
  EXPECT_EQ(big.literals, bb);
  EXPECT_TRUE(big.truncated);
}

}  // namespace
}  // namespace mrx
