#include "mrx/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace mrx {

Literal Literal::from_dimacs(std::int64_t value) {
  if (value == 0) throw std::invalid_argument("literal 0 has no variable");
  const std::int64_t magnitude = value < 0 ? -value : value;
  if (magnitude > std::int64_t{kMaxVar}) {
    throw std::out_of_range("variable index " + std::to_string(magnitude) + " exceeds limit");
  }
  return Literal(static_cast<Var>(magnitude), value > 0);
}

std::optional<Clause> Clause::make(std::vector<Literal> literals) {
  std::sort(literals.begin(), literals.end());
  literals.erase(std::unique(literals.begin(), literals.end()), literals.end());
  for (std::size_t i = 1; i < literals.size(); ++i) {
    if (literals[i].var() == literals[i - 1].var()) return std::nullopt;
  }
  Clause clause;
  clause.literals_ = std::move(literals);
  return clause;
}

Clause Clause::of(std::initializer_list<int> dimacs) {
  std::vector<Literal> lits;
  lits.reserve(dimacs.size());
  for (int v : dimacs) lits.push_back(Literal::from_dimacs(v));
  auto clause = make(std::move(lits));
  if (!clause) throw std::invalid_argument("tautological clause");
  return *clause;
}

bool Clause::contains(Literal lit) const {
  return std::binary_search(literals_.begin(), literals_.end(), lit);
}

std::string Clause::to_dimacs() const {
  std::string out;
  for (const Literal& lit : literals_) {
    out += std::to_string(lit.to_dimacs());
    out += ' ';
  }
  out += '0';
  return out;
}

std::size_t ClauseHash::operator()(const Clause& clause) const noexcept {
  // FNV-1a over the signed literal values.
  std::uint64_t h = 1469598103934665603ULL;
  for (const Literal& lit : clause) {
    const auto v = static_cast<std::uint64_t>(lit.to_dimacs());
    h ^= v;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

CnfFormula CnfFormula::of(std::initializer_list<std::initializer_list<int>> clauses) {
  CnfFormula f;
  for (const auto& c : clauses) f.add(Clause::of(c));
  return f;
}

CnfFormula::Insert CnfFormula::add(Clause clause, ClauseRole role) {
  if (auto it = index_.find(clause); it != index_.end()) return {it->second, false};
  const ClauseId id = clauses_.size();
  num_vars_ = std::max(num_vars_, clause.max_var());
  index_.emplace(clause, id);
  clauses_.push_back(std::move(clause));
  roles_.push_back(role);
  return {id, true};
}

std::optional<ClauseId> CnfFormula::find(const Clause& clause) const {
  if (auto it = index_.find(clause); it != index_.end()) return it->second;
  return std::nullopt;
}

bool CnfFormula::has_empty_clause() const {
  return std::any_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return c.empty(); });
}

KbPartition intersect_kbs(const CnfFormula& kb_a, const CnfFormula& kb_h) {
  KbPartition part;
  for (ClauseId id = 0; id < kb_a.size(); ++id) {
    (kb_h.contains(kb_a[id]) ? part.hard : part.soft).push_back(id);
  }
  return part;
}

QueryNegation negate_query(const CnfFormula& query, Var next_free_var) {
  if (query.empty()) throw std::invalid_argument("query has no clauses");
  if (query.has_empty_clause()) {
    throw std::invalid_argument("query contains the empty clause; its negation is valid");
  }
  if (next_free_var == 0) next_free_var = 1;

  QueryNegation neg;
  neg.first_aux = next_free_var;

  const bool all_units = std::all_of(query.clauses().begin(), query.clauses().end(),
                                     [](const Clause& c) { return c.size() == 1; });
  if (all_units) {
    std::vector<Literal> lits;
    for (const Clause& c : query.clauses()) lits.push_back(~c.literals().front());
    // Units of opposite polarity make the query itself inconsistent; the
    // negation is then the tautology, which needs no clause at all.
    if (auto clause = Clause::make(std::move(lits))) neg.clauses.push_back(std::move(*clause));
    neg.single_clause = true;
    return neg;
  }

  std::vector<Literal> selectors;
  for (const Clause& c : query.clauses()) {
    const Literal s(next_free_var + neg.aux_count, true);
    ++neg.aux_count;
    selectors.push_back(s);
    for (const Literal& lit : c) neg.clauses.push_back(*Clause::make({~s, ~lit}));
  }
  neg.clauses.push_back(*Clause::make(std::move(selectors)));
  return neg;
}

std::vector<Clause> select(const CnfFormula& formula, std::span<const ClauseId> ids) {
  std::vector<Clause> out;
  out.reserve(ids.size());
  for (ClauseId id : ids) out.push_back(formula[id]);
  return out;
}

std::string to_string(const Clause& clause) {
  if (clause.empty()) return "()";
  std::string out = "(";
  bool first = true;
  for (const Literal& lit : clause) {
    if (!first) out += " | ";
    first = false;
    out += std::to_string(lit.to_dimacs());
  }
  out += ')';
  return out;
}

}  // namespace mrx
