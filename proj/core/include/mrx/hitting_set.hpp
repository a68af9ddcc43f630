#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "mrx/minimal_sets.hpp"

namespace mrx {

/// Exact minimum-cardinality hitting sets over a growing collection.
///
/// Among optima of equal size the lexicographically smallest sorted id
/// sequence is returned. Sets that are supersets of another member are kept
/// in sets() but ignored by the search. Collections that split into
/// element-disjoint components are solved per component, and component
/// optima are cached across solve() calls.
class HittingSetSolver {
 public:
  /// Throws PreconditionError on an empty set.
  void add_set(ClauseIndexSet set);

  ClauseIndexSet solve();

  const std::vector<ClauseIndexSet>& sets() const { return sets_; }
  /// Optimum size found by the last solve(); a lower bound for the next one.
  std::size_t lower_bound() const { return lower_bound_; }
  /// Search nodes expanded over the solver's lifetime.
  std::size_t nodes() const { return nodes_; }

 private:
  struct Component {
    std::vector<ClauseIndexSet> sets;  // sorted
    std::size_t optimum = 0;
    ClauseIndexSet solution;
  };
  ClauseIndexSet solve_component(std::vector<ClauseIndexSet> sets);

  std::vector<ClauseIndexSet> sets_;
  std::vector<ClauseIndexSet> active_;
  std::map<std::vector<ClauseIndexSet>, Component> cache_;
  std::vector<Component> previous_;
  std::vector<Component> previous_before_;
  std::size_t lower_bound_ = 0;
  std::size_t nodes_ = 0;
};

ClauseIndexSet min_hitting_set(std::span<const ClauseIndexSet> sets);

}  // namespace mrx
