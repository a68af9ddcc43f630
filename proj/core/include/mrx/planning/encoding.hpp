#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mrx/formula.hpp"
#include "mrx/planning/task.hpp"

namespace mrx::planning {

/// Variable numbering shared by every encoding of one reference task, so an
/// agent model and a tweaked human model line up clause for clause.
///
/// fluent f at t ∈ [0, n]   -> 1 + t·F + f
/// action a at t ∈ [0, n)   -> 1 + (n+1)·F + t·A + a
/// goal aggregate at t < n  -> base_vars() + 1 + t
class VariableLayout {
 public:
  VariableLayout(std::vector<std::string> fluents, std::vector<std::string> actions,
                 std::size_t horizon);
  static VariableLayout for_problem(const PlanningProblem& problem, std::size_t horizon);

  std::size_t horizon() const { return horizon_; }
  std::size_t num_fluents() const { return fluents_.size(); }
  std::size_t num_actions() const { return actions_.size(); }

  Var fluent(std::size_t f, std::size_t t) const;
  Var action(std::size_t a, std::size_t t) const;
  Var goal_aggregate(std::size_t t) const;
  Var base_vars() const;
  /// base_vars() plus the goal aggregates.
  Var total_vars() const { return base_vars() + static_cast<Var>(horizon_); }

  std::optional<std::size_t> fluent_index(std::string_view name) const;
  std::optional<std::size_t> action_index(std::string_view name) const;
  const std::vector<std::string>& fluent_names() const { return fluents_; }
  const std::vector<std::string>& action_names() const { return actions_; }

  /// "on(a,b)@2", "stack(a,b)@0", "goal@1", or the number for unknown vars.
  std::string describe(Var var) const;
  /// Sidecar map, one `<var> <name>@<t>` line per variable.
  void write_map(std::ostream& out) const;

 private:
  std::vector<std::string> fluents_;
  std::vector<std::string> actions_;
  std::unordered_map<std::string, std::size_t> fluent_index_;
  std::unordered_map<std::string, std::size_t> action_index_;
  std::size_t horizon_;
};

enum class ClauseKind {
  init,
  goal,
  precondition,
  add_effect,
  del_effect,
  frame,
  at_least_one,
  at_most_one,
  goal_definition,
};

std::string to_string(ClauseKind kind);

/// Where a clause came from; -1 marks fields that do not apply. Action and
/// fluent indices refer to the layout.
struct ClauseOrigin {
  ClauseKind kind;
  std::int64_t action = -1;
  std::int64_t step = -1;
  std::int64_t fluent = -1;
};

struct BoundedEncoding {
  VariableLayout layout;
  CnfFormula cnf;
  std::vector<ClauseOrigin> origins;  // parallel to cnf clause ids
  std::vector<std::size_t> goal;      // layout fluent indices
  bool include_goal = false;
  /// Per-step goal literals' variables, filled by optimality_query().
  std::vector<Var> goal_vars;

  std::size_t horizon() const { return layout.horizon(); }
  bool is_dynamics(ClauseId id) const;
};

/// Kautz–Selman style bounded encoding with explanatory frames and
/// exactly-one action per step. Every model decodes to an executable action
/// sequence of length n (reaching the goal when include_goal).
BoundedEncoding encode_bounded(const PlanningProblem& problem, std::size_t horizon,
                               bool include_goal);
/// Same, over an existing layout. Fluents and actions are matched by name;
/// throws PlanningError on names the layout does not know.
BoundedEncoding encode_bounded(const PlanningProblem& problem, std::size_t horizon,
                               bool include_goal, const VariableLayout& layout);

/// Adds goal aggregates g_t <-> AND_{f in G} f@t for t < n (or reuses the
/// fluent itself for a single-fluent goal) and returns the query
/// AND_{t<n} -g_t as unit clauses. Requires n >= 1 and a nonempty goal.
CnfFormula optimality_query(BoundedEncoding& encoding);

/// Reads the action sequence off a model of the encoding.
Plan decode_plan(const BoundedEncoding& encoding, const PlanningProblem& problem,
                 const std::vector<char>& model);

}  // namespace mrx::planning
