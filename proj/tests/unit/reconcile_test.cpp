#include <gtest/gtest.h>

#include <chrono>
#include <random>

#include "mrx/errors.hpp"
#include "mrx/reconcile.hpp"
#include "oracles.hpp"

namespace mrx {
namespace {

using Clauses = std::vector<Clause>;

ReconcileProblem table_problem(ReconcileMode mode = ReconcileMode::general) {
  return {CnfFormula::of({{1, 2}, {-2, 3}, {-3}, {-2, 4}, {-4}}), CnfFormula::of({{-3}, {5}}),
          CnfFormula::of({{1}}), mode};
}

TEST(Reconcile, TableExample) {
  const Explanation ex = reconcile(table_problem());
  EXPECT_EQ(ex.support, (Clauses{Clause::of({1, 2}), Clause::of({-2, 3}), Clause::of({-3})}));
  EXPECT_EQ(ex.update, (Clauses{Clause::of({1, 2}), Clause::of({-2, 3})}));
  EXPECT_TRUE(ex.removed_from_kb_h.empty());
  EXPECT_TRUE(ex.verified);
  EXPECT_TRUE(ex.verification.ok());
  EXPECT_LT(ex.elapsed.count(), 1.0);
}

TEST(Reconcile, TableExampleRestricted) {
  const Explanation ex = reconcile(table_problem(ReconcileMode::restricted));
  EXPECT_EQ(ex.update, (Clauses{Clause::of({1, 2}), Clause::of({-2, 3})}));
  EXPECT_TRUE(ex.verification.ok());
  EXPECT_FALSE(ex.assumption_violation);
}

TEST(Reconcile, SeedSizesNeverDecrease) {
  const Explanation ex = reconcile(table_problem());
  ASSERT_FALSE(ex.seed_sizes.empty());
  EXPECT_EQ(ex.seed_sizes.front(), 0u);
  EXPECT_TRUE(std::is_sorted(ex.seed_sizes.begin(), ex.seed_sizes.end()));
  EXPECT_EQ(ex.iterations, ex.mcs_count + 1);
}

TEST(Reconcile, HumanAlreadyEntails) {
  const ReconcileProblem p{CnfFormula::of({{1}}), CnfFormula::of({{1}, {2}}), CnfFormula::of({{1}}),
                           ReconcileMode::general};
  const Explanation ex = reconcile(p);
  EXPECT_TRUE(ex.update.empty());
  EXPECT_EQ(ex.support, Clauses{Clause::of({1})});
}

TEST(Reconcile, PremiseViolations) {
  ReconcileProblem p{CnfFormula::of({{1}, {-1}}), CnfFormula{}, CnfFormula::of({{1}}),
                     ReconcileMode::general};
  EXPECT_THROW(reconcile(p), PremiseError);
  p.kb_a = CnfFormula::of({{2}});
  EXPECT_THROW(reconcile(p), PremiseError);
}

TEST(Reconcile, ExpiredDeadlineCarriesPartialStatistics) {
  const Deadline d = Deadline::after(std::chrono::duration<double>(0));
  try {
    reconcile(table_problem(), {&d, true});
    FAIL() << "expected a timeout";
  } catch (const ReconcileTimeout& t) {
    EXPECT_TRUE(t.partial().support.empty());
  }
}

TEST(Preprocess, UniqueConflict) {
  const Preprocessed p = preprocess_consistency(CnfFormula::of({{1}}), CnfFormula::of({{-1}, {2}}));
  EXPECT_EQ(p.removed, Clauses{Clause::of({-1})});
  EXPECT_EQ(p.kb_h.clauses(), Clauses{Clause::of({2})});
}

TEST(Preprocess, ConsistentInputUntouched) {
  const ReconcileProblem t = table_problem();
  const Preprocessed p = preprocess_consistency(t.kb_a, t.kb_h);
  EXPECT_TRUE(p.removed.empty());
  EXPECT_EQ(p.kb_h, t.kb_h);
}

TEST(Preprocess, TwoConflicts) {
  const Preprocessed p =
      preprocess_consistency(CnfFormula::of({{1}, {2}}), CnfFormula::of({{-1}, {-2}, {3}}));
  EXPECT_EQ(p.removed, (Clauses{Clause::of({-1}), Clause::of({-2})}));
  EXPECT_EQ(p.kb_h.clauses(), Clauses{Clause::of({3})});
}

TEST(Reconcile, ConflictingHumanKbIsPreprocessed) {
  const ReconcileProblem p{CnfFormula::of({{1, 2}, {-2}}), CnfFormula::of({{2}, {3}}),
                           CnfFormula::of({{1}}), ReconcileMode::general};
  const Explanation ex = reconcile(p);
  EXPECT_EQ(ex.removed_from_kb_h, Clauses{Clause::of({2})});
  EXPECT_EQ(ex.update.size(), 2u);
  EXPECT_TRUE(ex.verification.ok());
}

TEST(SmallestSupport, Examples) {
  EXPECT_EQ(smallest_support(table_problem().kb_a, CnfFormula::of({{1}})).support,
            (Clauses{Clause::of({1, 2}), Clause::of({-2, 3}), Clause::of({-3})}));
  EXPECT_EQ(smallest_support(CnfFormula::of({{1}}), CnfFormula::of({{1}})).support,
            Clauses{Clause::of({1})});
  EXPECT_EQ(smallest_support(CnfFormula::of({{1}, {2}}), CnfFormula::of({{1}})).support,
            Clauses{Clause::of({1})});
  EXPECT_THROW(smallest_support(CnfFormula::of({{2}}), CnfFormula::of({{1}})), PremiseError);
}

TEST(SmallestSupport, RandomMatchesSubsetScan) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 60; ++i) {
    const auto inst = oracle::random_reconcile_instance(rng, 6, 10);
    const Explanation ex = smallest_support(inst.kb_a, inst.query);
    EXPECT_EQ(ex.support.size(),
              oracle::min_support_size(inst.kb_a.clauses(), inst.query.clauses(), inst.num_vars));
    EXPECT_TRUE(oracle::entails(ex.support, inst.query.clauses(), inst.num_vars));
  }
}

TEST(BruteForce, Examples) {
  const BruteForceUpdate b = brute_force_min_update(table_problem());
  EXPECT_EQ(b.size, 2u);
  EXPECT_EQ(b.witness, (Clauses{Clause::of({1, 2}), Clause::of({-2, 3})}));

  const ReconcileProblem entailed{CnfFormula::of({{1}}), CnfFormula::of({{1}}),
                                  CnfFormula::of({{1}}), ReconcileMode::general};
  EXPECT_EQ(brute_force_min_update(entailed).size, 0u);

  const ReconcileProblem hopeless{CnfFormula::of({{2}}), CnfFormula{}, CnfFormula::of({{1}}),
                                  ReconcileMode::general};
  EXPECT_THROW(brute_force_min_update(hopeless), PremiseError);

  CnfFormula big;
  for (int v = 1; v <= 16; ++v) big.add(Clause::of({v}));
  EXPECT_THROW(brute_force_min_update({big, CnfFormula{}, CnfFormula::of({{1}}),
                                       ReconcileMode::general}),
               CapExceeded);
}

TEST(Reconcile, RandomMatchesIndependentOracle) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 80; ++i) {
    const auto inst = oracle::random_reconcile_instance(rng, 7, 10);
    for (ReconcileMode mode : {ReconcileMode::general, ReconcileMode::restricted}) {
      const ReconcileProblem p{inst.kb_a, inst.kb_h, inst.query, mode};
      const Explanation ex = reconcile(p);
      ASSERT_TRUE(ex.removed_from_kb_h.empty());
      Clauses candidates;
      for (const Clause& c : inst.kb_a.clauses()) {
        if (!inst.kb_h.contains(c)) candidates.push_back(c);
      }
      Clauses base;
      for (const Clause& c : (mode == ReconcileMode::general ? inst.kb_h : inst.kb_a).clauses()) {
        if (mode == ReconcileMode::general || inst.kb_h.contains(c)) base.push_back(c);
      }
      EXPECT_EQ(ex.update.size(),
                oracle::min_update_size(base, candidates, inst.query.clauses(), inst.num_vars));
      EXPECT_EQ(ex.update.size(), brute_force_min_update(p).size);
      EXPECT_TRUE(ex.verification.ok());
      Clauses updated = inst.kb_h.clauses();
      updated.insert(updated.end(), ex.update.begin(), ex.update.end());
      EXPECT_TRUE(oracle::entails(updated, inst.query.clauses(), inst.num_vars));
    }
  }
}

TEST(Verify, DetectsDroppedAndPaddedSupport) {
  const ReconcileProblem t = table_problem();
  const Clauses support{Clause::of({1, 2}), Clause::of({-2, 3}), Clause::of({-3})};
  EXPECT_TRUE(verify_explanation(t.kb_h, support, t.query).ok());

  const Clauses dropped{Clause::of({1, 2}), Clause::of({-3})};
  EXPECT_FALSE(verify_explanation(t.kb_h, dropped, t.query).entailment);

  Clauses padded = support;
  padded.push_back(Clause::of({-2, 4}));
  const VerificationReport r = verify_explanation(t.kb_h, padded, t.query);
  EXPECT_TRUE(r.entailment);
  EXPECT_FALSE(r.minimality);

  const Clauses inconsistent{Clause::of({3}), Clause::of({1})};
  EXPECT_FALSE(verify_explanation(t.kb_h, inconsistent, t.query).consistency);
}

TEST(Mode, ParseAndPrint) {
  EXPECT_EQ(parse_mode("general"), ReconcileMode::general);
  EXPECT_EQ(parse_mode("restricted"), ReconcileMode::restricted);
  EXPECT_EQ(to_string(ReconcileMode::restricted), "restricted");
  EXPECT_THROW(parse_mode("other"), std::invalid_argument);
}

}  // namespace
}  // namespace mrx
