#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mrx/planning/task.hpp"

namespace mrx::planning {

struct TweakOptions {
  /// Scenario 4: preconditions and effects removed per action.
  std::size_t multi_count = 2;
  /// Scenario 6: predicates removed from the initial state.
  std::size_t init_count = 2;
  /// When set, action-level scenarios only touch these actions.
  std::optional<std::vector<std::string>> only_actions;
};

struct TweakedModel {
  PlanningProblem problem;
  /// One line per deletion or skip, e.g. "remove-pre pick-up(a) clear(a)".
  std::vector<std::string> log;
};

/// Scenarios 1..8 applied to grounded actions, deterministic per seed:
/// 1 one precondition per action, 2 one effect per action, 3 both,
/// 4 multi_count preconditions/effects per action, 5 all preconditions,
/// 6 init_count initial-state predicates, 7 all effects, 8 all actions.
/// Fluents are never renumbered.
TweakedModel tweak_model(const PlanningProblem& problem, int scenario, std::uint64_t seed,
                         const TweakOptions& options = {});

void write_tweak_log(std::ostream& out, const TweakedModel& tweaked);

}  // namespace mrx::planning
