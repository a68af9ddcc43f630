#include <gtest/gtest.h>

#include <random>

#include "mrx/errors.hpp"
#include "mrx/minimal_sets.hpp"
#include "mrx/self_check.hpp"
#include "oracles.hpp"

namespace mrx {
namespace {

using Clauses = std::vector<Clause>;

// Table example, a..f = 1..5 with f = 5; C1..C5 at positions 0..4.
Clauses table_soft() {
  return {Clause::of({1, 2}), Clause::of({-2, 3}), Clause::of({-3}), Clause::of({-2, 4}),
          Clause::of({-4})};
}
Clauses table_hard() { return {Clause::of({-3}), Clause::of({5}), Clause::of({-1})}; }

TEST(ExtractMcs, TableExampleFromEmptySeed) {
  const McsResult r = extract_mcs(table_soft(), table_hard());
  const std::vector<ClauseIndexSet> allowed{{0}, {1, 3}, {1, 4}};
  EXPECT_NE(std::find(allowed.begin(), allowed.end(), r.ids), allowed.end());
  EXPECT_EQ(r.ids, ClauseIndexSet({0}));
  EXPECT_TRUE(is_mcs(table_soft(), table_hard(), r.ids));
}

TEST(ExtractMcs, TableExampleSeededWithC2) {
  EXPECT_EQ(extract_mcs(table_soft(), table_hard(), {1}).ids, ClauseIndexSet({0}));
}

TEST(ExtractMcs, SeedC1GivesAnMcsAvoidingIt) {
  const McsResult r = extract_mcs(table_soft(), table_hard(), {0});
  EXPECT_FALSE(r.ids.contains(0));
  EXPECT_TRUE(r.ids == ClauseIndexSet({1, 3}) || r.ids == ClauseIndexSet({1, 4}));
}

TEST(ExtractMcs, SymmetricPair) {
  const Clauses soft{Clause::of({1}), Clause::of({-1})};
  const McsResult r = extract_mcs(soft, {});
  EXPECT_EQ(r.ids.size(), 1u);
  EXPECT_TRUE(is_mcs(soft, {}, r.ids));
}

TEST(ExtractMcs, RejectsInconsistentSeedAndConsistentInput) {
  const Clauses soft{Clause::of({1}), Clause::of({-1})};
  EXPECT_THROW(extract_mcs(soft, {}, {0, 1}), PreconditionError);
  EXPECT_THROW(extract_mcs(Clauses{Clause::of({1})}, {}), PreconditionError);
}

TEST(ExtractMus, TableReturnLine) {
  // soft = (¬c),(f),(a∨b),(¬b∨c); hard = (¬a).
  const Clauses soft{Clause::of({-3}), Clause::of({5}), Clause::of({1, 2}), Clause::of({-2, 3})};
  const MusResult r = extract_mus(soft, Clauses{Clause::of({-1})});
  EXPECT_EQ(r.ids, ClauseIndexSet({0, 2, 3}));
}

TEST(ExtractMus, SmallCases) {
  EXPECT_EQ(extract_mus(Clauses{Clause::of({1}), Clause::of({-1}), Clause::of({2})}, {}).ids,
            ClauseIndexSet({0, 1}));
  EXPECT_EQ(extract_mus(Clauses{Clause::of({1})}, Clauses{Clause::of({-1})}).ids, ClauseIndexSet({0}));
  EXPECT_THROW(extract_mus(Clauses{Clause::of({1})}, {}), PreconditionError);
}

TEST(Enumerate, TableExampleMcsesAndMuses) {
  const Enumeration mcs = enumerate_all_mcses(table_soft(), table_hard());
  EXPECT_TRUE(mcs.complete);
  EXPECT_EQ(mcs.sets, (std::vector<ClauseIndexSet>{{0}, {1, 3}, {1, 4}}));
  const Enumeration mus = enumerate_all_muses(table_soft(), table_hard());
  EXPECT_EQ(mus.sets, (std::vector<ClauseIndexSet>{{0, 1}, {0, 3, 4}}));
}

TEST(Enumerate, TrivialCases) {
  EXPECT_TRUE(enumerate_all_mcses(Clauses{Clause::of({1}), Clause::of({2})}, {}).sets.empty());
  EXPECT_TRUE(enumerate_all_muses(Clauses{Clause::of({1}), Clause::of({2})}, {}).sets.empty());
  EXPECT_EQ(enumerate_all_mcses(Clauses{Clause::of({1}), Clause::of({-1})}, {}).sets,
            (std::vector<ClauseIndexSet>{{0}, {1}}));
  EXPECT_EQ(enumerate_all_muses(Clauses{Clause::of({1}), Clause::of({-1}), Clause::of({2}),
                                 Clause::of({-2})},
                                {})
                .sets,
            (std::vector<ClauseIndexSet>{{0, 1}, {2, 3}}));
}

TEST(Enumerate, CapTruncates) {
  const Enumeration e =
      enumerate_all_mcses(Clauses{Clause::of({1}), Clause::of({-1}), Clause::of({2}), Clause::of({-2})}, {}, 2);
  EXPECT_EQ(e.sets.size(), 2u);
  EXPECT_FALSE(e.complete);
}

TEST(Enumerate, RejectsLargeUniverse) {
  Clauses soft;
  for (int i = 1; i <= 21; ++i) soft.push_back(Clause::of({i}));
  EXPECT_THROW(enumerate_all_mcses(soft, {}), CapExceeded);
}

TEST(MinimalSets, RandomAgreeWithSubsetScan) {
  std::mt19937_64 rng(101);
  for (int i = 0; i < 120; ++i) {
    const Var n = 3 + static_cast<Var>(rng() % 3);
    const Clauses all = oracle::random_unsat(rng, n, 3 + rng() % 10);
    // Split off a random hard part that stays satisfiable on its own.
    Clauses soft;
    Clauses hard;
    for (const Clause& c : all) {
      Clauses trial = hard;
      trial.push_back(c);
      if (rng() % 4 == 0 && oracle::satisfiable(trial, n)) {
        hard.push_back(c);
      } else {
        soft.push_back(c);
      }
    }
    if (oracle::satisfiable(hard, n) && !oracle::satisfiable(all, n) && !soft.empty()) {
      const auto muses = oracle::all_muses(soft, hard, n);
      const auto mcses = oracle::all_mcses(soft, hard, n);
      EXPECT_EQ(enumerate_all_muses(soft, hard).sets, muses);
      EXPECT_EQ(enumerate_all_mcses(soft, hard).sets, mcses);
      const MusResult mus = extract_mus(soft, hard);
      EXPECT_NE(std::find(muses.begin(), muses.end(), mus.ids), muses.end());
      const McsResult mcs = extract_mcs(soft, hard);
      EXPECT_NE(std::find(mcses.begin(), mcses.end(), mcs.ids), mcses.end());
    }
  }
}

TEST(MinimalSets, PerturbationChecksRejectNonMinimalSets) {
  const Clauses soft{Clause::of({1}), Clause::of({-1}), Clause::of({2})};
  EXPECT_FALSE(is_mus(soft, {}, {0, 1, 2}));
  EXPECT_FALSE(is_mus(soft, {}, {0}));
  EXPECT_TRUE(is_mus(soft, {}, {0, 1}));
  EXPECT_FALSE(is_mcs(soft, {}, {0, 1}));
  EXPECT_FALSE(is_mcs(soft, {}, {2}));
  EXPECT_TRUE(is_mcs(soft, {}, {1}));
}

TEST(MinimalSets, SelfCheckCountsEveryReturn) {
  self_check::reset();
  extract_mus(Clauses{Clause::of({1}), Clause::of({-1})}, {});
  extract_mcs(Clauses{Clause::of({1}), Clause::of({-1})}, {});
  const self_check::Counters c = self_check::counters();
  EXPECT_GE(c.checks, 2u);
  EXPECT_EQ(c.failures, 0u);
}

}  // namespace
}  // namespace mrx
