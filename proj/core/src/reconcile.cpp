#include "mrx/reconcile.hpp"

#include <algorithm>
#include <initializer_list>
#include <unordered_set>

#include "mrx/errors.hpp"
#include "mrx/hitting_set.hpp"
#include "mrx/minimal_sets.hpp"
#include "mrx/sat.hpp"

namespace mrx {

std::string to_string(ReconcileMode mode) {
  return mode == ReconcileMode::general ? "general" : "restricted";
}

ReconcileMode parse_mode(const std::string& text) {
  if (text == "general") return ReconcileMode::general;
  if (text == "restricted") return ReconcileMode::restricted;
  throw std::invalid_argument("unknown mode '" + text + "'");
}

namespace {

using Clock = std::chrono::steady_clock;

Var highest_var(std::initializer_list<const CnfFormula*> formulas,
                std::initializer_list<std::span<const Clause>> extra = {}) {
  Var top = 0;
  for (const CnfFormula* f : formulas) {
    top = std::max(top, f->num_vars());
    for (const Clause& c : f->clauses()) top = std::max(top, c.max_var());
  }
  for (std::span<const Clause> clauses : extra) {
    for (const Clause& c : clauses) top = std::max(top, c.max_var());
  }
  return top;
}

void check_deadline(const Deadline* deadline) {
  if (deadline != nullptr) deadline->check();
}

std::vector<Clause> concat(std::span<const Clause> a, std::span<const Clause> b) {
  std::vector<Clause> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

std::vector<Clause> pick(std::span<const Clause> clauses, const ClauseIndexSet& ids) {
  std::vector<Clause> out;
  out.reserve(ids.size());
  for (std::size_t i : ids) out.push_back(clauses[i]);
  return out;
}

// Throws PremiseError unless kb is consistent and kb ∧ ¬φ is not.
std::size_t check_entailment_premise(const CnfFormula& kb, const QueryNegation& negation,
                                     const char* who, const Deadline* deadline) {
  SatSession session;
  session.set_deadline(deadline);
  for (const Clause& c : kb.clauses()) session.add_hard(c);
  if (!session.solve().sat()) throw PremiseError(std::string(who) + " is inconsistent");
  for (const Clause& c : negation.clauses) session.add_hard(c);
  if (session.solve().sat()) throw PremiseError(std::string(who) + " does not entail the query");
  return session.calls();
}

}  // namespace

CnfFormula apply_removal(const CnfFormula& kb_h, std::span<const Clause> removed) {
  std::unordered_set<Clause, ClauseHash> drop(removed.begin(), removed.end());
  CnfFormula out(kb_h.num_vars());
  for (ClauseId id = 0; id < kb_h.size(); ++id) {
    if (!drop.contains(kb_h[id])) out.add(kb_h[id], kb_h.role(id));
  }
  return out;
}

Preprocessed preprocess_consistency(const CnfFormula& kb_a, const CnfFormula& kb_h,
                                    const Deadline* deadline) {
  SatSession session;
  session.set_deadline(deadline);
  for (const Clause& c : kb_a.clauses()) session.add_hard(c);
  if (!session.solve().sat()) throw PremiseError("agent KB is inconsistent");

  std::vector<Clause> own;
  for (const Clause& c : kb_h.clauses()) {
    if (!kb_a.contains(c)) own.push_back(c);
  }
  for (const Clause& c : own) session.add_hard(c);
  if (session.solve().sat()) return {kb_h, {}};

  McsExtractor extractor(own, kb_a.clauses(), deadline);
  const McsResult mcs = extractor.extract({});
  Preprocessed out;
  out.removed = pick(own, mcs.ids);
  out.kb_h = apply_removal(kb_h, out.removed);
  return out;
}

Explanation smallest_support(const CnfFormula& kb, const CnfFormula& query,
                             const ReconcileOptions& options) {
  const auto start = Clock::now();
  const Deadline* deadline = options.deadline;
  Explanation ex;
  std::size_t calls = 0;
  try {
    const QueryNegation negation = negate_query(query, highest_var({&kb, &query}) + 1);
    {
      SatSession session;
      session.set_deadline(deadline);
      for (const Clause& c : kb.clauses()) session.add_hard(c);
      for (const Clause& c : negation.clauses) session.add_hard(c);
      const bool sat = session.solve().sat();
      calls += session.calls();
      if (sat) throw PremiseError("KB does not entail the query");
    }

    McsExtractor extractor(kb.clauses(), negation.clauses, deadline);
    HittingSetSolver hs;
    for (;;) {
      check_deadline(deadline);
      ++ex.iterations;
      const ClauseIndexSet seed = hs.solve();
      ex.seed_sizes.push_back(seed.size());
      if (!extractor.consistent(seed)) {
        ex.support = pick(kb.clauses(), seed);
        break;
      }
      hs.add_set(extractor.extract(seed).ids);
      ++ex.mcs_count;
      ex.oracle_calls = calls + extractor.oracle_calls();
    }
    ex.oracle_calls = calls + extractor.oracle_calls();
  } catch (const Timeout&) {
    ex.elapsed = Clock::now() - start;
    throw ReconcileTimeout(std::move(ex));
  }
  ex.update = ex.support;
  if (options.verify) {
    ex.verification = verify_explanation(CnfFormula(kb.num_vars()), ex.support, query);
    ex.verified = true;
  }
  ex.elapsed = Clock::now() - start;
  return ex;
}

Explanation reconcile(const ReconcileProblem& problem, const ReconcileOptions& options) {
  const auto start = Clock::now();
  const Deadline* deadline = options.deadline;
  const bool general = problem.mode == ReconcileMode::general;
  Explanation ex;
  ex.mode = problem.mode;
  std::size_t calls = 0;
  CnfFormula kb_h;

  try {
    const QueryNegation negation = negate_query(
        problem.query, highest_var({&problem.kb_a, &problem.kb_h, &problem.query}) + 1);
    calls += check_entailment_premise(problem.kb_a, negation, "agent KB", deadline);

    const KbPartition part = intersect_kbs(problem.kb_a, problem.kb_h);
    const std::vector<Clause> shared = select(problem.kb_a, part.hard);
    const std::vector<Clause> soft = select(problem.kb_a, part.soft);

    Preprocessed pre = preprocess_consistency(problem.kb_a, problem.kb_h, deadline);
    ex.removed_from_kb_h = std::move(pre.removed);
    kb_h = std::move(pre.kb_h);

    // Clauses of the human side that may take part in the support.
    const std::vector<Clause> base = general ? kb_h.clauses() : shared;
    const std::vector<Clause> hard = concat(base, negation.clauses);

    McsExtractor extractor(soft, hard, deadline);
    HittingSetSolver hs;
    std::size_t mus_calls = 0;
    for (;;) {
      check_deadline(deadline);
      ++ex.iterations;
      const ClauseIndexSet seed = hs.solve();
      if (!ex.seed_sizes.empty() && seed.size() < ex.seed_sizes.back()) {
        throw std::logic_error("hitting set size decreased between iterations");
      }
      ex.seed_sizes.push_back(seed.size());
      ex.oracle_calls = calls + extractor.oracle_calls();

      if (!extractor.consistent(seed)) {
        const std::vector<Clause> partial = pick(soft, seed);
        const MusResult mus =
            extract_mus(base, concat(partial, negation.clauses), deadline, &mus_calls);
        ex.support = concat(partial, pick(base, mus.ids));
        break;
      }
      hs.add_set(extractor.extract(seed).ids);
      ++ex.mcs_count;
    }
    ex.oracle_calls = calls + extractor.oracle_calls() + mus_calls;
  } catch (const Timeout&) {
    ex.elapsed = Clock::now() - start;
    throw ReconcileTimeout(std::move(ex));
  }

  for (const Clause& c : ex.support) {
    if (!kb_h.contains(c)) ex.update.push_back(c);
  }
  if (options.verify || !general) {
    ex.verification = verify_explanation(kb_h, ex.support, problem.query);
    ex.verified = true;
    if (!general && !ex.verification.consistency) ex.assumption_violation = true;
  }
  ex.elapsed = Clock::now() - start;
  return ex;
}

BruteForceUpdate brute_force_min_update(const ReconcileProblem& problem, std::size_t cap) {
  const KbPartition part = intersect_kbs(problem.kb_a, problem.kb_h);
  if (part.soft.size() > cap) {
    throw CapExceeded("brute-force update over " + std::to_string(part.soft.size()) +
                      " candidate clauses exceeds cap " + std::to_string(cap));
  }
  const Preprocessed pre = preprocess_consistency(problem.kb_a, problem.kb_h);
  const QueryNegation negation = negate_query(
      problem.query, highest_var({&problem.kb_a, &problem.kb_h, &problem.query}) + 1);
  const std::vector<Clause> candidates = select(problem.kb_a, part.soft);

  SatSession session;
  if (problem.mode == ReconcileMode::general) {
    for (const Clause& c : pre.kb_h.clauses()) session.add_hard(c);
  } else {
    for (const Clause& c : select(problem.kb_a, part.hard)) session.add_hard(c);
  }
  for (const Clause& c : negation.clauses) session.add_hard(c);
  std::vector<Selector> selectors;
  for (const Clause& c : candidates) selectors.push_back(session.add_soft(c));

  const std::size_t m = candidates.size();
  for (std::size_t k = 0; k <= m; ++k) {
    // Lexicographic walk over k-subsets of [0, m).
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::vector<Selector> assumed;
      for (std::size_t i : idx) assumed.push_back(selectors[i]);
      if (!session.solve(assumed).sat()) {
        BruteForceUpdate out;
        out.size = k;
        for (std::size_t i : idx) out.witness.push_back(candidates[i]);
        return out;
      }
      std::size_t pos = k;
      while (pos > 0 && idx[pos - 1] == m - k + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  throw PremiseError("no update exists");
}

VerificationReport verify_explanation(const CnfFormula& kb_h, std::span<const Clause> support,
                                      const CnfFormula& query, std::span<const Clause> context) {
  const QueryNegation negation =
      negate_query(query, highest_var({&kb_h, &query}, {support, context}) + 1);
  VerificationReport report;

  {
    SatSession session;
    for (const Clause& c : kb_h.clauses()) session.add_hard(c);
    for (const Clause& c : support) session.add_hard(c);
    report.consistency = session.solve().sat();
    for (const Clause& c : negation.clauses) session.add_hard(c);
    report.entailment = !session.solve().sat();
  }

  SatSession session;
  for (const Clause& c : context) session.add_hard(c);
  for (const Clause& c : negation.clauses) session.add_hard(c);
  std::vector<Selector> selectors;
  for (const Clause& c : support) selectors.push_back(session.add_soft(c));
  report.minimality = true;
  for (std::size_t skip = 0; skip < selectors.size() && report.minimality; ++skip) {
    std::vector<Selector> assumed;
    for (std::size_t i = 0; i < selectors.size(); ++i) {
      if (i != skip) assumed.push_back(selectors[i]);
    }
    report.minimality = session.solve(assumed).sat();
  }
  return report;
}

}  // namespace mrx
