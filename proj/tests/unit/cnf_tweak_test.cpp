#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "mrx/cnf_tweak.hpp"
#include "mrx/dimacs.hpp"
#include "oracles.hpp"

namespace mrx {
namespace {

CnfFormula random_kb(std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CnfFormula f(20);
  while (f.size() < m) f.add(oracle::random_clause(rng, 20, 2, 6));
  return f;
}

TEST(TweakCnf, CeilingCountsOnTenClauses) {
  const CnfTweak t = tweak_cnf(random_kb(10, 1), 9, 5);
  EXPECT_EQ(t.log.removed.size(), 1u);
  EXPECT_EQ(t.log.trimmed.size() + t.log.skipped.size(), 1u);
  EXPECT_EQ(t.kb.size(), 9u);
}

TEST(TweakCnf, ScenarioTwelveOnHundredClauses) {
  const CnfTweak t = tweak_cnf(random_kb(100, 2), 12, 7);
  EXPECT_EQ(t.log.removed.size(), 40u);
  EXPECT_EQ(t.log.trimmed.size() + t.log.skipped.size(), 40u);
  EXPECT_EQ(t.log.percent, 40);
}

TEST(TweakCnf, TrimRemovesCeilingFifthAndNeverEmpties) {
  const CnfFormula kb = random_kb(60, 3);
  for (int scenario = 9; scenario <= 12; ++scenario) {
    const CnfTweak t = tweak_cnf(kb, scenario, 11);
    for (const auto& tr : t.log.trimmed) {
      EXPECT_EQ(tr.original.size() - tr.trimmed.size(), (tr.original.size() + 4) / 5);
      EXPECT_FALSE(tr.trimmed.empty());
      for (Literal l : tr.trimmed) EXPECT_TRUE(tr.original.contains(l));
      EXPECT_FALSE(std::find(t.log.removed.begin(), t.log.removed.end(), tr.original) !=
                   t.log.removed.end());
    }
    for (const Clause& c : t.log.removed) EXPECT_FALSE(t.kb.contains(c));
  }
}

TEST(TweakCnf, UnitClausesAreSkipped) {
  CnfFormula kb;
  for (int v = 1; v <= 10; ++v) kb.add(Clause::of({v}));
  const CnfTweak t = tweak_cnf(kb, 12, 4);
  EXPECT_TRUE(t.log.trimmed.empty());
  EXPECT_EQ(t.log.skipped.size(), 4u);
  EXPECT_EQ(t.kb.size(), 6u);
}

TEST(TweakCnf, DeterministicPerSeed) {
  const CnfFormula kb = random_kb(50, 4);
  EXPECT_EQ(to_dimacs(tweak_cnf(kb, 10, 3).kb), to_dimacs(tweak_cnf(kb, 10, 3).kb));
  EXPECT_NE(to_dimacs(tweak_cnf(kb, 10, 3).kb), to_dimacs(tweak_cnf(kb, 10, 4).kb));
  std::ostringstream a;
  std::ostringstream b;
  write_tweak_log(a, tweak_cnf(kb, 10, 3).log);
  write_tweak_log(b, tweak_cnf(kb, 10, 3).log);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str().find("remove "), std::string::npos);
}

TEST(TweakCnf, RejectsOtherScenarios) {
  EXPECT_THROW(tweak_cnf(random_kb(5, 1), 8, 0), std::invalid_argument);
  EXPECT_THROW(tweak_cnf(random_kb(5, 1), 13, 0), std::invalid_argument);
}

}  // namespace
}  // namespace mrx
