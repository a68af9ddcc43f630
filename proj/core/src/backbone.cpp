#include "mrx/backbone.hpp"

#include <algorithm>
#include <random>

#include "mrx/errors.hpp"
#include "mrx/sat.hpp"

namespace mrx {

std::vector<Literal> compute_backbone(const CnfFormula& kb, const Deadline* deadline) {
  SatSession session;
  session.set_deadline(deadline);
  std::vector<char> occurs(kb.num_vars() + 1, 0);
  for (const Clause& c : kb.clauses()) {
    session.add_hard(c);
    for (Literal l : c) {
      if (l.var() >= occurs.size()) occurs.resize(l.var() + 1, 0);
      occurs[l.var()] = 1;
    }
  }
  SolveResult r = session.solve();
  if (!r.sat()) throw PreconditionError("backbone of an unsatisfiable KB");

  // Variables that occur nowhere are free and never part of the backbone.
  std::vector<Literal> candidates;
  for (Var v = 1; v < occurs.size(); ++v) {
    if (occurs[v]) candidates.emplace_back(v, r.value(v));
  }
  std::vector<char> alive(candidates.size(), 1);
  std::vector<Literal> backbone;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!alive[i]) continue;
    const Literal flipped = ~candidates[i];
    r = session.solve({}, std::span<const Literal>(&flipped, 1));
    if (r.sat()) {
      for (std::size_t j = i; j < candidates.size(); ++j) {
        if (alive[j] && !r.value(candidates[j])) alive[j] = 0;
      }
    } else {
      backbone.push_back(candidates[i]);
      session.add_hard(*Clause::make({candidates[i]}));
    }
  }
  std::sort(backbone.begin(), backbone.end());
  return backbone;
}

BackboneSample sample_backbone(const std::vector<Literal>& backbone, std::size_t k,
                               std::uint64_t seed) {
  BackboneSample out;
  if (k == 0 || k >= backbone.size()) {
    out.literals = backbone;
    out.truncated = k > backbone.size();
  } else {
    std::vector<Literal> pool = backbone;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
      std::swap(pool[i], pool[j]);
    }
    pool.resize(k);
    out.literals = std::move(pool);
  }
  std::sort(out.literals.begin(), out.literals.end());
  return out;
}

}  // namespace mrx
