#include "mrx/cnf_tweak.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>

namespace mrx {

namespace {

// First k entries of a seeded partial Fisher-Yates shuffle.
template <typename T>
std::vector<T> draw(std::vector<T> pool, std::size_t k, std::mt19937_64& rng) {
  k = std::min(k, pool.size());
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (pool.size() - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

CnfTweak tweak_cnf(const CnfFormula& kb, int scenario, std::uint64_t seed) {
  if (scenario < 9 || scenario > 12) {
    throw std::invalid_argument("CNF scenarios are 9..12, got " + std::to_string(scenario));
  }
  CnfTweak out;
  out.log.scenario = scenario;
  out.log.seed = seed;
  out.log.percent = 10 * (scenario - 8);

  const std::size_t m = kb.size();
  const std::size_t count = (static_cast<std::size_t>(out.log.percent) * m + 99) / 100;
  std::mt19937_64 rng(seed);

  std::vector<ClauseId> all(m);
  for (ClauseId i = 0; i < m; ++i) all[i] = i;
  std::vector<char> removed(m, 0);
  for (ClauseId id : draw(all, count, rng)) removed[id] = 1;

  std::vector<ClauseId> survivors;
  for (ClauseId i = 0; i < m; ++i) {
    if (!removed[i]) survivors.push_back(i);
  }
  std::vector<std::optional<Clause>> replacement(m);
  for (ClauseId id : draw(survivors, count, rng)) {
    const Clause& c = kb[id];
    if (c.size() <= 1) {
      out.log.skipped.push_back(c);
      continue;
    }
    const std::size_t drop = (c.size() + 4) / 5;
    std::vector<Literal> lits(c.begin(), c.end());
    std::vector<Literal> gone = draw(lits, drop, rng);
    std::vector<Literal> kept;
    for (Literal l : c) {
      if (std::find(gone.begin(), gone.end(), l) == gone.end()) kept.push_back(l);
    }
    replacement[id] = Clause::make(std::move(kept));
    out.log.trimmed.push_back({c, *replacement[id]});
  }

  out.kb = CnfFormula(kb.num_vars());
  for (ClauseId i = 0; i < m; ++i) {
    if (removed[i]) {
      out.log.removed.push_back(kb[i]);
      continue;
    }
    const Clause& c = replacement[i] ? *replacement[i] : kb[i];
    if (!out.kb.add(c).inserted) {
      out.kb.note({FormulaNote::Kind::duplicate_merged, 0, *out.kb.find(c),
                   "trimmed clause coincides with an existing clause"});
    }
  }
  return out;
}

void write_tweak_log(std::ostream& out, const CnfTweakLog& log) {
  out << "scenario " << log.scenario << '\n';
  out << "seed " << log.seed << '\n';
  out << "percent " << log.percent << '\n';
  out << "removed_count " << log.removed.size() << '\n';
  out << "trimmed_count " << log.trimmed.size() << '\n';
  out << "skipped_count " << log.skipped.size() << '\n';
  for (const Clause& c : log.removed) out << "remove " << c.to_dimacs() << '\n';
  for (const auto& t : log.trimmed) {
    out << "trim " << t.original.to_dimacs() << " -> " << t.trimmed.to_dimacs() << '\n';
  }
  for (const Clause& c : log.skipped) out << "skip-unit " << c.to_dimacs() << '\n';
}

}  // namespace mrx
