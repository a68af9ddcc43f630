#pragma once

#include <cstddef>
#include <string_view>

namespace mrx::self_check {

/// When enabled, every MUS/MCS returned by the extraction routines is
/// re-verified by single-element perturbation and every SAT answer is checked
/// against the active clauses. Test builds switch this on globally.
void enable(bool on);
bool enabled();

struct Counters {
  std::size_t checks = 0;
  std::size_t failures = 0;
};

Counters counters();
void reset();

/// Records one check outcome; a failure also throws std::logic_error.
void record(bool ok, std::string_view what);

}  // namespace mrx::self_check
