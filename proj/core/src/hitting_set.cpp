#include "mrx/hitting_set.hpp"

#include <algorithm>
#include <stdexcept>

#include "mrx/errors.hpp"

namespace mrx {

namespace {

// Depth-first branch and bound over a dense relabelling of the elements.
class Search {
 public:
  Search(const std::vector<ClauseIndexSet>& sets, std::size_t& nodes) : nodes_(nodes) {
    for (const ClauseIndexSet& s : sets) {
      for (std::size_t id : s) elements_.push_back(id);
    }
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());

    occurs_.resize(elements_.size());
    for (const ClauseIndexSet& s : sets) {
      std::vector<int> dense;
      for (std::size_t id : s) {
        const auto e = static_cast<int>(
            std::lower_bound(elements_.begin(), elements_.end(), id) - elements_.begin());
        dense.push_back(e);
        occurs_[e].push_back(static_cast<int>(sets_.size()));
      }
      sets_.push_back(std::move(dense));
    }
    hits_.assign(sets_.size(), 0);
    chosen_.assign(elements_.size(), 0);
    forbidden_.assign(elements_.size(), 0);
    used_.assign(elements_.size(), 0);
  }

  std::size_t universe() const { return elements_.size(); }

  void choose(int e) {
    chosen_[e] = 1;
    for (int s : occurs_[e]) ++hits_[s];
  }
  void unchoose(int e) {
    chosen_[e] = 0;
    for (int s : occurs_[e]) --hits_[s];
  }
  void forbid(int e, bool on) { forbidden_[e] = on ? 1 : 0; }

  /// Can the current partial choice be completed with at most `budget` more
  /// elements, avoiding forbidden ones?
  bool feasible(std::size_t budget) {
    ++nodes_;
    std::vector<int> open;
    for (std::size_t s = 0; s < sets_.size(); ++s) {
      if (hits_[s] == 0) open.push_back(static_cast<int>(s));
    }
    if (open.empty()) return true;
    if (budget == 0) return false;

    std::vector<std::size_t> allowed(open.size(), 0);
    for (std::size_t i = 0; i < open.size(); ++i) {
      for (int e : sets_[open[i]]) allowed[i] += forbidden_[e] ? 0 : 1;
      if (allowed[i] == 0) return false;
    }
    if (packing_bound(open, allowed) > budget) return false;

    std::size_t pick = 0;
    for (std::size_t i = 1; i < open.size(); ++i) {
      if (allowed[i] < allowed[pick]) pick = i;
    }

    std::vector<std::pair<std::size_t, int>> order;  // (open occurrences, element)
    for (int e : sets_[open[pick]]) {
      if (forbidden_[e]) continue;
      std::size_t count = 0;
      for (int s : occurs_[e]) count += hits_[s] == 0 ? 1 : 0;
      order.emplace_back(count, e);
    }
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
      return a.first != b.first ? a.first > b.first : a.second < b.second;
    });

    std::vector<int> tried;
    bool found = false;
    for (const auto& [count, e] : order) {
      choose(e);
      found = feasible(budget - 1);
      unchoose(e);
      if (found) break;
      // Any completion using e was just ruled out.
      forbid(e, true);
      tried.push_back(e);
    }
    for (int e : tried) forbid(e, false);
    return found;
  }

  ClauseIndexSet lexicographic_optimum(std::size_t k) {
    std::vector<int> picked;
    for (std::size_t e = 0; e < universe() && picked.size() < k; ++e) {
      const int d = static_cast<int>(e);
      choose(d);
      if (feasible(k - picked.size() - 1)) {
        picked.push_back(d);
      } else {
        unchoose(d);
        forbid(d, true);
      }
    }
    std::vector<std::size_t> ids;
    for (int e : picked) ids.push_back(elements_[e]);
    return ClauseIndexSet(std::move(ids));
  }

 private:
  // Greedy packing of pairwise disjoint open sets; each needs its own element.
  std::size_t packing_bound(const std::vector<int>& open, const std::vector<std::size_t>& allowed) {
    std::vector<std::pair<std::size_t, std::size_t>> order(open.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = {allowed[i], i};
    std::sort(order.begin(), order.end());
    std::size_t bound = 0;
    std::vector<int> marked;
    for (const auto& [count, i] : order) {
      const auto& set = sets_[open[i]];
      bool disjoint = true;
      for (int e : set) {
        if (!forbidden_[e] && used_[e]) {
          disjoint = false;
          break;
        }
      }
      if (!disjoint) continue;
      for (int e : set) {
        if (!used_[e]) marked.push_back(e);
        used_[e] = 1;
      }
      ++bound;
    }
    for (int e : marked) used_[e] = 0;
    return bound;
  }

  std::size_t& nodes_;
  std::vector<std::size_t> elements_;
  std::vector<std::vector<int>> sets_;
  std::vector<std::vector<int>> occurs_;
  std::vector<int> hits_;
  std::vector<char> chosen_;
  std::vector<char> forbidden_;
  std::vector<char> used_;
};

}  // namespace

void HittingSetSolver::add_set(ClauseIndexSet set) {
  if (set.empty()) throw PreconditionError("empty set admits no hitting set");
  sets_.push_back(set);
  for (const ClauseIndexSet& a : active_) {
    if (a.is_subset_of(set)) return;
  }
  std::erase_if(active_, [&](const ClauseIndexSet& a) { return set.is_subset_of(a); });
  active_.push_back(std::move(set));
}

ClauseIndexSet HittingSetSolver::solve_component(std::vector<ClauseIndexSet> sets) {
  std::sort(sets.begin(), sets.end());
  if (auto it = cache_.find(sets); it != cache_.end()) {
    previous_.push_back(it->second);
    return it->second.solution;
  }

  // Components of the last solve that survive intact inside this one bound
  // its optimum from below.
  std::size_t bound = 1;
  {
    std::size_t sum = 0;
    for (const Component& c : previous_before_) {
      const bool inside = std::all_of(c.sets.begin(), c.sets.end(), [&](const ClauseIndexSet& s) {
        return std::binary_search(sets.begin(), sets.end(), s);
      });
      if (inside) sum += c.optimum;
    }
    bound = std::max(bound, sum);
  }

  Search search(sets, nodes_);
  std::size_t k = bound;
  while (!search.feasible(k)) ++k;
  Component c{sets, k, search.lexicographic_optimum(k)};
  if (c.solution.size() != k) throw std::logic_error("hitting set tie-break lost optimality");
  cache_.emplace(sets, c);
  previous_.push_back(c);
  return c.solution;
}

ClauseIndexSet HittingSetSolver::solve() {
  if (active_.empty()) return {};

  // Union-find over elements splits the collection into independent parts.
  std::map<std::size_t, std::size_t> parent;
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const ClauseIndexSet& s : active_) {
    for (std::size_t id : s) parent.emplace(id, id);
    for (std::size_t id : s) {
      const std::size_t a = find(s.ids().front());
      const std::size_t b = find(id);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<std::size_t, std::vector<ClauseIndexSet>> groups;
  for (const ClauseIndexSet& s : active_) groups[find(s.ids().front())].push_back(s);

  previous_before_ = std::move(previous_);
  previous_.clear();
  // Per-component lexicographic optima combine into the global one: the
  // smallest element of a symmetric difference always lies in one component.
  std::vector<std::size_t> ids;
  for (auto& [root, group] : groups) {
    const ClauseIndexSet part = solve_component(std::move(group));
    ids.insert(ids.end(), part.begin(), part.end());
  }
  ClauseIndexSet result(std::move(ids));

  for (const ClauseIndexSet& s : sets_) {
    if (!s.intersects(result)) throw std::logic_error("hitting set misses a member set");
  }
  if (result.size() < lower_bound_) throw std::logic_error("hitting set optimum decreased");
  lower_bound_ = result.size();
  return result;
}

ClauseIndexSet min_hitting_set(std::span<const ClauseIndexSet> sets) {
  HittingSetSolver solver;
  for (const ClauseIndexSet& s : sets) solver.add_set(s);
  return solver.solve();
}

}  // namespace mrx
