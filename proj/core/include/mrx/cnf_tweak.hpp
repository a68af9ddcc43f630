#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "mrx/formula.hpp"

namespace mrx {

struct CnfTweakLog {
  int scenario = 0;
  std::uint64_t seed = 0;
  int percent = 0;
  std::vector<Clause> removed;
  struct Trim {
    Clause original;
    Clause trimmed;
  };
  std::vector<Trim> trimmed;
  /// Picked for trimming but only one literal long.
  std::vector<Clause> skipped;
};

struct CnfTweak {
  CnfFormula kb;
  CnfTweakLog log;
};

/// Scenarios 9..12 remove p = 10, 20, 30, 40 percent of the clauses, then
/// trim ⌈len/5⌉ random literals from each of ⌈p·m⌉ surviving clauses. Unit
/// clauses are never trimmed. Deterministic per seed.
CnfTweak tweak_cnf(const CnfFormula& kb, int scenario, std::uint64_t seed);

void write_tweak_log(std::ostream& out, const CnfTweakLog& log);

}  // namespace mrx
