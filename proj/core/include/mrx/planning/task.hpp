#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mrx/planning/pddl.hpp"

namespace mrx::planning {

using FluentId = std::uint32_t;

struct GroundAction {
  std::string name;  // e.g. "stack(a,b)"
  std::vector<FluentId> pre;  // each list sorted and duplicate-free
  std::vector<FluentId> add;
  std::vector<FluentId> del;  // disjoint from add
};

/// Grounded STRIPS task. Fluent names look like "on(a,b)" or "handempty".
struct PlanningProblem {
  std::vector<std::string> fluents;
  std::vector<GroundAction> actions;
  std::vector<FluentId> init;  // sorted
  std::vector<FluentId> goal;  // sorted

  std::optional<FluentId> find_fluent(std::string_view name) const;
  std::optional<std::size_t> find_action(std::string_view name) const;
};

struct GroundOptions {
  /// Drop actions and atoms not reachable from init under delete relaxation.
  bool prune_unreachable = false;
  /// Bind different parameters of one action to different objects.
  bool distinct_arguments = true;
  std::size_t max_actions = 1'000'000;
};

/// All type-consistent instantiations, schemas in declaration order and
/// arguments in object declaration order. Fluents are every atom mentioned by
/// init, goal or an action, sorted by name. Throws CapExceeded past
/// max_actions.
PlanningProblem ground(const LiftedTask& task, const GroundOptions& options = {});

/// Action indices into PlanningProblem::actions.
struct Plan {
  std::vector<std::size_t> steps;

  std::size_t size() const { return steps.size(); }
  bool operator==(const Plan&) const = default;
};

/// Sequential execution from init; true when every precondition holds and the
/// final state contains the goal.
bool validate_plan(const PlanningProblem& problem, const Plan& plan);

/// Breadth-first search for a shortest plan, expanding actions in index
/// order. Throws CapExceeded when more than `max_states` states are visited
/// and PlanningError when the goal is unreachable.
Plan optimal_plan_search(const PlanningProblem& problem, std::size_t max_states = 1'000'000);

/// One action per line, either "stack(a,b)" or "(stack a b)". Blank lines
/// and ';' comments are skipped. Throws ParseError on unknown actions.
Plan parse_plan(const PlanningProblem& problem, std::string_view text);
std::string format_plan(const PlanningProblem& problem, const Plan& plan);

}  // namespace mrx::planning
