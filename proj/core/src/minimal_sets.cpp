#include "mrx/minimal_sets.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "mrx/errors.hpp"
#include "mrx/self_check.hpp"

namespace mrx {

ClauseIndexSet::ClauseIndexSet(std::vector<std::size_t> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

bool ClauseIndexSet::contains(std::size_t id) const {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

bool ClauseIndexSet::intersects(const ClauseIndexSet& other) const {
  auto a = ids_.begin();
  auto b = other.ids_.begin();
  while (a != ids_.end() && b != other.ids_.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

bool ClauseIndexSet::is_subset_of(const ClauseIndexSet& other) const {
  return std::includes(other.ids_.begin(), other.ids_.end(), ids_.begin(), ids_.end());
}

namespace {

void check_positions(const ClauseIndexSet& set, std::size_t universe) {
  if (!set.empty() && set.ids().back() >= universe) {
    throw std::out_of_range("clause position " + std::to_string(set.ids().back()) +
                            " outside soft universe of size " + std::to_string(universe));
  }
}

bool satisfiable(std::span<const Clause> hard, std::span<const Clause> extra) {
  SatSession session;
  for (const Clause& c : hard) session.add_hard(c);
  for (const Clause& c : extra) session.add_hard(c);
  return session.solve().sat();
}

std::vector<Clause> pick(std::span<const Clause> soft, const std::vector<char>& keep) {
  std::vector<Clause> out;
  for (std::size_t i = 0; i < soft.size(); ++i) {
    if (keep[i]) out.push_back(soft[i]);
  }
  return out;
}

}  // namespace

McsExtractor::McsExtractor(std::span<const Clause> soft, std::span<const Clause> hard,
                           const Deadline* deadline)
    : soft_(soft.begin(), soft.end()), hard_(hard.begin(), hard.end()) {
  session_.set_deadline(deadline);
  for (const Clause& c : hard_) session_.add_hard(c);
  selectors_.reserve(soft_.size());
  for (const Clause& c : soft_) selectors_.push_back(session_.add_soft(c));
}

McsResult McsExtractor::extract(const ClauseIndexSet& seed) {
  check_positions(seed, soft_.size());
  std::vector<char> kept(soft_.size(), 0);
  std::vector<Selector> assumed;
  for (std::size_t i : seed) {
    kept[i] = 1;
    assumed.push_back(selectors_[i]);
  }

  SolveResult r = session_.solve(assumed);
  if (!r.sat()) throw PreconditionError("MCS seed is inconsistent with the hard clauses");

  // Clauses already satisfied by the current model join without a solver call.
  auto absorb = [&](const SolveResult& model) {
    for (std::size_t i = 0; i < soft_.size(); ++i) {
      if (!kept[i] && model.satisfies(soft_[i])) {
        kept[i] = 1;
        assumed.push_back(selectors_[i]);
      }
    }
  };
  absorb(r);

  std::vector<char> excluded(soft_.size(), 0);
  std::vector<std::size_t> mcs;
  for (std::size_t i = 0; i < soft_.size(); ++i) {
    if (kept[i] || excluded[i]) continue;
    assumed.push_back(selectors_[i]);
    r = session_.solve(assumed);
    if (r.sat()) {
      kept[i] = 1;
      absorb(r);
    } else {
      assumed.pop_back();
      excluded[i] = 1;
      mcs.push_back(i);
    }
  }
  if (mcs.empty()) {
    throw PreconditionError("hard and soft clauses are jointly satisfiable; nothing to correct");
  }

  McsResult result{ClauseIndexSet(std::move(mcs)), MinimalSetKind::mcs};
  if (self_check::enabled()) {
    self_check::record(is_mcs(soft_, hard_, result.ids), "extracted MCS is not minimal");
    self_check::record(!result.ids.intersects(seed), "extracted MCS intersects its seed");
  }
  return result;
}

bool McsExtractor::consistent(const ClauseIndexSet& seed) {
  check_positions(seed, soft_.size());
  std::vector<Selector> assumed;
  for (std::size_t i : seed) assumed.push_back(selectors_[i]);
  return session_.solve(assumed).sat();
}

McsResult extract_mcs(std::span<const Clause> soft, std::span<const Clause> hard,
                      const ClauseIndexSet& seed) {
  McsExtractor extractor(soft, hard);
  return extractor.extract(seed);
}

MusResult extract_mus(std::span<const Clause> soft, std::span<const Clause> hard,
                      const Deadline* deadline, std::size_t* oracle_calls) {
  SatSession session;
  session.set_deadline(deadline);
  for (const Clause& c : hard) session.add_hard(c);
  std::vector<Selector> selectors;
  selectors.reserve(soft.size());
  for (const Clause& c : soft) selectors.push_back(session.add_soft(c));

  std::vector<char> active(soft.size(), 1);
  auto assumed = [&] {
    std::vector<Selector> out;
    for (std::size_t i = 0; i < soft.size(); ++i) {
      if (active[i]) out.push_back(selectors[i]);
    }
    return out;
  };

  if (session.solve(assumed()).sat()) {
    throw PreconditionError("MUS extraction on a satisfiable formula");
  }
  for (std::size_t i = 0; i < soft.size(); ++i) {
    active[i] = 0;
    if (session.solve(assumed()).sat()) active[i] = 1;
  }
  if (oracle_calls != nullptr) *oracle_calls += session.calls();

  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < soft.size(); ++i) {
    if (active[i]) ids.push_back(i);
  }
  MusResult result{ClauseIndexSet(std::move(ids)), MinimalSetKind::mus};
  if (self_check::enabled()) {
    self_check::record(is_mus(soft, hard, result.ids), "extracted MUS is not minimal");
  }
  return result;
}

bool is_mcs(std::span<const Clause> soft, std::span<const Clause> hard, const ClauseIndexSet& set) {
  check_positions(set, soft.size());
  if (set.empty()) return false;
  std::vector<char> keep(soft.size(), 1);
  for (std::size_t i : set) keep[i] = 0;
  const std::vector<Clause> rest = pick(soft, keep);
  if (!satisfiable(hard, rest)) return false;
  for (std::size_t i : set) {
    std::vector<Clause> restored = rest;
    restored.push_back(soft[i]);
    if (satisfiable(hard, restored)) return false;
  }
  return true;
}

bool is_mus(std::span<const Clause> soft, std::span<const Clause> hard, const ClauseIndexSet& set) {
  check_positions(set, soft.size());
  std::vector<char> keep(soft.size(), 0);
  for (std::size_t i : set) keep[i] = 1;
  if (satisfiable(hard, pick(soft, keep))) return false;
  for (std::size_t i : set) {
    keep[i] = 0;
    const bool sat = satisfiable(hard, pick(soft, keep));
    keep[i] = 1;
    if (!sat) return false;
  }
  return true;
}

namespace {

// sat[mask] for every subset of the soft clauses (bit i = soft clause i kept).
std::vector<char> satisfiable_subsets(std::span<const Clause> soft, std::span<const Clause> hard) {
  if (soft.size() > kMaxEnumerationUniverse) {
    throw CapExceeded("subset enumeration limited to " +
                      std::to_string(kMaxEnumerationUniverse) + " soft clauses");
  }
  const std::size_t m = soft.size();
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  SatSession session;
  for (const Clause& c : hard) session.add_hard(c);
  std::vector<Selector> selectors;
  for (const Clause& c : soft) selectors.push_back(session.add_soft(c));

  std::vector<char> sat(std::size_t{full} + 1, 0);
  std::vector<Selector> assumed;
  // Supersets have larger numeric values, so they are settled first.
  for (std::int64_t mask = full; mask >= 0; --mask) {
    const auto bits = static_cast<std::uint32_t>(mask);
    bool known = false;
    for (std::size_t i = 0; i < m && !known; ++i) {
      const std::uint32_t bit = std::uint32_t{1} << i;
      if (!(bits & bit) && sat[bits | bit]) known = true;
    }
    if (!known) {
      assumed.clear();
      for (std::size_t i = 0; i < m; ++i) {
        if (bits & (std::uint32_t{1} << i)) assumed.push_back(selectors[i]);
      }
      known = session.solve(assumed).sat();
    }
    sat[bits] = known ? 1 : 0;
  }
  return sat;
}

ClauseIndexSet positions(std::uint32_t bits, std::size_t m) {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < m; ++i) {
    if (bits & (std::uint32_t{1} << i)) ids.push_back(i);
  }
  return ClauseIndexSet(std::move(ids));
}

Enumeration finish(std::vector<ClauseIndexSet> sets, std::size_t cap) {
  std::sort(sets.begin(), sets.end());
  Enumeration out;
  if (sets.size() > cap) {
    sets.resize(cap);
    out.complete = false;
  }
  out.sets = std::move(sets);
  return out;
}

}  // namespace

Enumeration enumerate_all_mcses(std::span<const Clause> soft, std::span<const Clause> hard,
                                std::size_t cap) {
  const std::vector<char> sat = satisfiable_subsets(soft, hard);
  const std::size_t m = soft.size();
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  if (sat[full]) return {};
  std::vector<ClauseIndexSet> sets;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    if (!sat[mask]) continue;
    bool maximal = true;
    for (std::size_t i = 0; i < m && maximal; ++i) {
      const std::uint32_t bit = std::uint32_t{1} << i;
      if (!(mask & bit) && sat[mask | bit]) maximal = false;
    }
    if (maximal) sets.push_back(positions(full & ~mask, m));
  }
  return finish(std::move(sets), cap);
}

Enumeration enumerate_all_muses(std::span<const Clause> soft, std::span<const Clause> hard,
                                std::size_t cap) {
  const std::vector<char> sat = satisfiable_subsets(soft, hard);
  const std::size_t m = soft.size();
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  std::vector<ClauseIndexSet> sets;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    if (sat[mask]) continue;
    bool minimal = true;
    for (std::size_t i = 0; i < m && minimal; ++i) {
      const std::uint32_t bit = std::uint32_t{1} << i;
      if ((mask & bit) && !sat[mask & ~bit]) minimal = false;
    }
    if (minimal) sets.push_back(positions(mask, m));
  }
  return finish(std::move(sets), cap);
}

}  // namespace mrx
