#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mrx/deadline.hpp"
#include "mrx/formula.hpp"

namespace mrx {

/// Literals true in every model of kb, sorted. Throws PreconditionError when
/// kb is unsatisfiable.
std::vector<Literal> compute_backbone(const CnfFormula& kb, const Deadline* deadline = nullptr);

struct BackboneSample {
  std::vector<Literal> literals;  // sorted
  bool truncated = false;         // k exceeded the backbone size
};

/// Seeded choice of k backbone literals; k = 0 or k ≥ size takes all of them.
BackboneSample sample_backbone(const std::vector<Literal>& backbone, std::size_t k,
                               std::uint64_t seed);

}  // namespace mrx
