#pragma once

#include <chrono>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "mrx/deadline.hpp"
#include "mrx/formula.hpp"

namespace mrx {

enum class ReconcileMode { general, restricted };

std::string to_string(ReconcileMode mode);
/// Accepts "general" and "restricted".
ReconcileMode parse_mode(const std::string& text);

struct ReconcileProblem {
  CnfFormula kb_a;
  CnfFormula kb_h;
  CnfFormula query;
  ReconcileMode mode = ReconcileMode::general;
};

struct VerificationReport {
  bool entailment = false;
  bool minimality = false;
  bool consistency = false;

  bool ok() const { return entailment && minimality && consistency; }
};

struct Explanation {
  /// Supporting clauses: the hitting-set part first (agent order), then the
  /// clauses kept from the human side by the final MUS call.
  std::vector<Clause> support;
  /// support minus the clauses of the human KB.
  std::vector<Clause> update;
  /// Clauses dropped from the human KB by the consistency preprocessing.
  std::vector<Clause> removed_from_kb_h;
  ReconcileMode mode = ReconcileMode::general;

  std::size_t iterations = 0;
  std::size_t mcs_count = 0;
  std::size_t oracle_calls = 0;
  std::vector<std::size_t> seed_sizes;
  std::chrono::duration<double> elapsed{};

  bool verified = false;  // true when `verification` was computed
  VerificationReport verification;
  /// Restricted mode only: the updated human KB turned out inconsistent,
  /// which the preprocessing step is supposed to rule out.
  bool assumption_violation = false;
};

struct ReconcileOptions {
  const Deadline* deadline = nullptr;
  bool verify = true;
};

/// Thrown when the deadline expires mid-run; carries the statistics gathered
/// so far (support/update are empty).
class ReconcileTimeout : public Timeout {
 public:
  explicit ReconcileTimeout(Explanation partial) : partial_(std::move(partial)) {}
  const Explanation& partial() const { return partial_; }

 private:
  Explanation partial_;
};

struct Preprocessed {
  CnfFormula kb_h;
  std::vector<Clause> removed;
};

/// Makes kb_h consistent with kb_a by removing an MCS drawn from kb_h \ kb_a.
/// Throws PremiseError when kb_a alone is unsatisfiable.
Preprocessed preprocess_consistency(const CnfFormula& kb_a, const CnfFormula& kb_h,
                                    const Deadline* deadline = nullptr);

/// Smallest subset of kb entailing the query, by implicit hitting sets over
/// the MCSes of kb ∧ ¬query. Throws PremiseError when kb does not entail it.
Explanation smallest_support(const CnfFormula& kb, const CnfFormula& query,
                             const ReconcileOptions& options = {});

/// Minimum-size update of kb_h (drawn from kb_a) such that the updated kb_h
/// entails the query. Throws PremiseError when kb_a is inconsistent or does
/// not entail the query.
Explanation reconcile(const ReconcileProblem& problem, const ReconcileOptions& options = {});

struct BruteForceUpdate {
  std::size_t size = 0;
  std::vector<Clause> witness;
};

inline constexpr std::size_t kDefaultBruteForceCap = 14;

/// Scans subsets of kb_a \ kb_h by increasing size. Test oracle only.
/// Throws CapExceeded above `cap` candidates and PremiseError when no subset
/// works.
BruteForceUpdate brute_force_min_update(const ReconcileProblem& problem,
                                        std::size_t cap = kDefaultBruteForceCap);

/// Checks kb_h ∧ support ⊨ query, kb_h ∧ support consistent, and that no
/// support minus one clause entails the query together with `context`.
VerificationReport verify_explanation(const CnfFormula& kb_h, std::span<const Clause> support,
                                      const CnfFormula& query,
                                      std::span<const Clause> context = {});

/// Copy of kb_h without the given clauses.
CnfFormula apply_removal(const CnfFormula& kb_h, std::span<const Clause> removed);

}  // namespace mrx
