#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "mrx/deadline.hpp"
#include "mrx/formula.hpp"
#include "mrx/sat.hpp"

namespace mrx {

/// Sorted set of positions into a soft-clause universe.
class ClauseIndexSet {
 public:
  ClauseIndexSet() = default;
  ClauseIndexSet(std::initializer_list<std::size_t> ids) : ClauseIndexSet(std::vector(ids)) {}
  explicit ClauseIndexSet(std::vector<std::size_t> ids);

  bool contains(std::size_t id) const;
  bool intersects(const ClauseIndexSet& other) const;
  bool is_subset_of(const ClauseIndexSet& other) const;

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  const std::vector<std::size_t>& ids() const { return ids_; }

  auto operator<=>(const ClauseIndexSet&) const = default;
  bool operator==(const ClauseIndexSet&) const = default;

 private:
  std::vector<std::size_t> ids_;
};

enum class MinimalSetKind { mcs, mus };

struct MinimalSetResult {
  ClauseIndexSet ids;
  MinimalSetKind kind;
};
using McsResult = MinimalSetResult;
using MusResult = MinimalSetResult;

/// Linear-search MCS extraction over a fixed soft/hard split. The session is
/// kept between calls so repeated extractions with different seeds reuse
/// learnt clauses.
///
/// extract(seed) requires hard ∪ soft[seed] satisfiable and hard ∪ soft
/// unsatisfiable. The result never intersects the seed.
class McsExtractor {
 public:
  McsExtractor(std::span<const Clause> soft, std::span<const Clause> hard,
               const Deadline* deadline = nullptr);

  McsResult extract(const ClauseIndexSet& seed);

  /// One oracle call: is hard ∪ soft[seed] satisfiable?
  bool consistent(const ClauseIndexSet& seed);

  std::size_t oracle_calls() const { return session_.calls(); }

 private:
  std::vector<Clause> soft_;
  std::vector<Clause> hard_;
  SatSession session_;
  std::vector<Selector> selectors_;
};

McsResult extract_mcs(std::span<const Clause> soft, std::span<const Clause> hard,
                      const ClauseIndexSet& seed = {});

/// Deletion-based MUS extraction (ascending position order). With hard
/// clauses present the result is a partial MUS of hard ∪ soft.
MusResult extract_mus(std::span<const Clause> soft, std::span<const Clause> hard,
                      const Deadline* deadline = nullptr, std::size_t* oracle_calls = nullptr);

/// Single-element perturbation checks.
bool is_mcs(std::span<const Clause> soft, std::span<const Clause> hard, const ClauseIndexSet& set);
bool is_mus(std::span<const Clause> soft, std::span<const Clause> hard, const ClauseIndexSet& set);

struct Enumeration {
  std::vector<ClauseIndexSet> sets;  // sorted
  bool complete = true;
};

/// Exhaustive subset scan, intended as a test oracle. Universes larger than
/// kMaxEnumerationUniverse are rejected with CapExceeded. At most `cap` sets
/// are returned; `complete` is false when more exist.
inline constexpr std::size_t kMaxEnumerationUniverse = 20;

Enumeration enumerate_all_mcses(std::span<const Clause> soft, std::span<const Clause> hard,
                                std::size_t cap = static_cast<std::size_t>(-1));
Enumeration enumerate_all_muses(std::span<const Clause> soft, std::span<const Clause> hard,
                                std::size_t cap = static_cast<std::size_t>(-1));

}  // namespace mrx
