#pragma once

#include <optional>
#include <vector>

#include "mrx/deadline.hpp"
#include "mrx/planning/encoding.hpp"
#include "mrx/planning/task.hpp"
#include "mrx/reconcile.hpp"

namespace mrx::planning {

struct FeasibilityResult {
  bool feasible = false;
  /// Dynamics clauses of the reference encoding for plan steps that the
  /// checked encoding lacks. Filled only when infeasible and a reference is
  /// given.
  std::vector<Clause> missing;
};

/// Solves the encoding under the assumptions {a@t : plan step t is a} plus
/// the goal fluents at n. Plan actions are matched to the layout by name.
FeasibilityResult check_feasibility(const BoundedEncoding& encoding,
                                    const PlanningProblem& problem, const Plan& plan,
                                    const BoundedEncoding* reference = nullptr);

struct PlanExplanation {
  Plan plan;
  std::size_t horizon = 0;
  BoundedEncoding agent;   // no goal units, with goal aggregates
  BoundedEncoding human;   // same, repair clauses not included
  CnfFormula query;
  FeasibilityResult feasibility;  // human model before repair
  bool feasible_after_repair = false;
  std::vector<Clause> repair;
  /// Human clauses outside the agent KB that still block the plan after the
  /// repair, dropped as a minimal correction set.
  std::vector<Clause> repair_dropped;
  /// Human KB handed to reconciliation: the human encoding plus repair,
  /// minus repair_dropped.
  CnfFormula repaired_human;
  Explanation explanation;
  /// Plan feasibility in the reconciled human KB: repaired, minus the
  /// clauses removed by preprocessing, plus the update.
  bool feasible_after_update = false;
};

struct ExplainOptions {
  const Deadline* deadline = nullptr;
  ReconcileMode mode = ReconcileMode::restricted;
  bool verify = true;
};

/// Checks feasibility of the plan in the human model, adds the missing
/// dynamics clauses, drops human-only clauses that still block the plan, then reconciles the two models on the optimality query
/// at n = plan length. Throws PremiseError when the plan is not feasible in
/// the agent model or the agent model does not entail optimality.
PlanExplanation explain_plan(const PlanningProblem& agent, const PlanningProblem& human,
                             const Plan& plan, const ExplainOptions& options = {});

}  // namespace mrx::planning
