#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "mrx/dimacs.hpp"
#include "mrx/errors.hpp"
#include "mrx/formula.hpp"
#include "oracles.hpp"

namespace mrx {
namespace {

CnfFormula table_kb_a() { return CnfFormula::of({{1, 2}, {-2, 3}, {-3}, {-2, 4}, {-4}}); }
CnfFormula table_kb_h() { return CnfFormula::of({{-3}, {5}}); }

TEST(Clause, NormalizesAndRejectsTautologies) {
  EXPECT_EQ(Clause::of({2, 1, 2}).to_dimacs(), "1 2 0");
  EXPECT_FALSE(Clause::make({Literal(1, true), Literal(1, false)}).has_value());
  EXPECT_THROW(Clause::of({1, -1}), std::invalid_argument);
  EXPECT_THROW(Clause::of({0}), std::invalid_argument);
  EXPECT_TRUE(Clause::of({}).empty());
}

TEST(Dimacs, ParsesSimpleFormula) {
  const CnfFormula f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 0\n");
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f.num_vars(), 2u);
  EXPECT_EQ(f[0], Clause::of({1, 2}));
  EXPECT_EQ(f[1], Clause::of({-1}));
}

TEST(Dimacs, EmptyFormulaKeepsVariableCount) {
  const CnfFormula f = parse_dimacs("p cnf 1 0\n");
  EXPECT_TRUE(f.empty());
  EXPECT_EQ(f.num_vars(), 1u);
}

TEST(Dimacs, MergesDuplicatesWithNote) {
  const CnfFormula f = parse_dimacs("p cnf 2 2\n1 1 2 0\n1 2 0\n");
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0], Clause::of({1, 2}));
  bool merged = false;
  for (const FormulaNote& n : f.notes()) merged |= n.kind == FormulaNote::Kind::duplicate_merged;
  EXPECT_TRUE(merged);
  EXPECT_EQ(parse_dimacs(to_dimacs(f)), f);
}

TEST(Dimacs, DropsTautologiesKeepsEmptyClause) {
  const CnfFormula f = parse_dimacs("p cnf 2 3\n1 -1 0\n0\n2 0\n");
  ASSERT_EQ(f.size(), 2u);
  EXPECT_TRUE(f.has_empty_clause());
}

TEST(Dimacs, ClausesMaySpanLinesAndCommentsAreSkipped) {
  const CnfFormula f = parse_dimacs("c hello\np cnf 3 1\n1\n2 -3\n0\n");
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0], Clause::of({1, 2, -3}));
}

TEST(Dimacs, RejectsMalformedInput) {
  EXPECT_THROW(parse_dimacs("p cnf x 1\n1 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 a 0\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\n1 2\n"), ParseError);
  EXPECT_THROW(parse_dimacs("p cnf 2 1\np cnf 2 1\n1 0\n"), ParseError);
}

TEST(Dimacs, WritesCanonicalText) {
  EXPECT_EQ(to_dimacs(CnfFormula(3)), "p cnf 3 0\n");
  EXPECT_EQ(to_dimacs(CnfFormula::of({{1, -2}})), "p cnf 2 1\n1 -2 0\n");
}

TEST(Dimacs, RoundTripIsFixpointOnRandomFormulas) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    CnfFormula f(8);
    for (int k = 0; k < 30; ++k) f.add(oracle::random_clause(rng, 8, 1, 5));
    const std::string text = to_dimacs(f);
    const CnfFormula g = parse_dimacs(text);
    EXPECT_EQ(g, f);
    EXPECT_EQ(to_dimacs(g), text);
  }
}

TEST(LiteralList, ParsesUnitsAndComments) {
  const CnfFormula q = parse_literal_list("c query\n3\n\n-4\n");
  ASSERT_EQ(q.size(), 2u);
  EXPECT_EQ(q[0], Clause::of({3}));
  EXPECT_EQ(q[1], Clause::of({-4}));
  EXPECT_EQ(parse_query("p cnf 2 1\n1 2 0\n")[0], Clause::of({1, 2}));
  EXPECT_THROW(parse_literal_list("1 2\n"), ParseError);
}

TEST(IntersectKbs, TableExample) {
  const KbPartition p = intersect_kbs(table_kb_a(), table_kb_h());
  EXPECT_EQ(p.hard, (std::vector<ClauseId>{2}));
  EXPECT_EQ(p.soft, (std::vector<ClauseId>{0, 1, 3, 4}));
}

TEST(IntersectKbs, EmptyAndIdenticalHumanKb) {
  const CnfFormula a = table_kb_a();
  EXPECT_EQ(intersect_kbs(a, CnfFormula{}).soft.size(), a.size());
  EXPECT_TRUE(intersect_kbs(a, CnfFormula{}).hard.empty());
  EXPECT_EQ(intersect_kbs(a, a).hard.size(), a.size());
  EXPECT_TRUE(intersect_kbs(a, a).soft.empty());
}

TEST(NegateQuery, SingleUnit) {
  const QueryNegation n = negate_query(CnfFormula::of({{1}}), 6);
  ASSERT_EQ(n.clauses.size(), 1u);
  EXPECT_EQ(n.clauses[0], Clause::of({-1}));
  EXPECT_EQ(n.aux_count, 0u);
}

TEST(NegateQuery, ConjunctionOfUnitsBecomesOneClause) {
  const QueryNegation n = negate_query(CnfFormula::of({{-7}, {-8}}), 9);
  ASSERT_EQ(n.clauses.size(), 1u);
  EXPECT_EQ(n.clauses[0], Clause::of({7, 8}));
  EXPECT_EQ(n.aux_count, 0u);
}

TEST(NegateQuery, GeneralCnfIsEquisatisfiableNegation) {
  // (a|b) & (c|d) over vars 1..4, aux from 5.
  const CnfFormula q = CnfFormula::of({{1, 2}, {3, 4}});
  const QueryNegation n = negate_query(q, 5);
  EXPECT_EQ(n.aux_count, 2u);
  EXPECT_EQ(n.clauses.size(), 5u);
  // For every assignment of a..d: q false <=> some aux extension satisfies ¬q.
  oracle::for_each_assignment(4, [&](const std::vector<char>& a) {
    const bool q_true = oracle::satisfies(a, q.clauses());
    bool extendable = false;
    for (int s = 0; s < 4; ++s) {
      std::vector<char> full = a;
      full.resize(7);
      full[5] = s & 1;
      full[6] = (s >> 1) & 1;
      extendable |= oracle::satisfies(full, n.clauses);
    }
    EXPECT_EQ(extendable, !q_true);
    return true;
  });
}

TEST(NegateQuery, RandomQueriesAgreeWithTruthTable) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 40; ++i) {
    CnfFormula q(4);
    const int m = 1 + static_cast<int>(rng() % 3);
    while (static_cast<int>(q.size()) < m) q.add(oracle::random_clause(rng, 4, 1, 3));
    const QueryNegation n = negate_query(q, 5);
    oracle::for_each_assignment(4, [&](const std::vector<char>& a) {
      bool extendable = false;
      for (std::uint32_t s = 0; s < (1u << n.aux_count); ++s) {
        std::vector<char> full = a;
        full.resize(5 + n.aux_count);
        for (Var k = 0; k < n.aux_count; ++k) full[5 + k] = (s >> k) & 1;
        extendable |= oracle::satisfies(full, n.clauses);
      }
      EXPECT_EQ(extendable, !oracle::satisfies(a, q.clauses()));
      return true;
    });
  }
}

}  // namespace
}  // namespace mrx
