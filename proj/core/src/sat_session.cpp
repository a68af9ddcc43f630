#include <algorithm>
#include <atomic>
#include <stdexcept>

#include "mrx/sat.hpp"

namespace mrx {
namespace {

std::atomic<bool> g_default_model_checks{false};

}  // namespace

bool SolveResult::satisfies(const Clause& clause) const {
  return std::any_of(clause.begin(), clause.end(), [&](const Literal& l) { return value(l); });
}

SatSession::SatSession(Var num_vars) : SatSession(num_vars, Options{}) {}

SatSession::SatSession(Var num_vars, Options options) : options_(std::move(options)) {
  if (!options_.check_models) options_.check_models = default_model_checks();
  backend_ = options_.backend ? options_.backend() : make_cdcl_backend();
  for (Var v = 1; v <= num_vars; ++v) internal(v);
}

SatSession::SatSession(SatSession&&) noexcept = default;
SatSession& SatSession::operator=(SatSession&&) noexcept = default;
SatSession::~SatSession() = default;

void SatSession::set_default_model_checks(bool enabled) { g_default_model_checks = enabled; }
bool SatSession::default_model_checks() { return g_default_model_checks; }

Var SatSession::internal(Var user_var) {
  while (to_internal_.size() <= user_var) {
    const Var fresh = backend_->new_var();
    to_internal_.push_back(fresh);
    if (to_user_.size() <= fresh) to_user_.resize(fresh + 1, 0);
    to_user_[fresh] = static_cast<Var>(to_internal_.size() - 1);
  }
  return to_internal_[user_var];
}

void SatSession::add_hard(const Clause& clause) {
  std::vector<Literal> lits;
  lits.reserve(clause.size());
  for (const Literal& l : clause) lits.push_back(internal(l));
  backend_->add_clause(lits);
  if (options_.check_models) hard_.push_back(clause);
}

Selector SatSession::add_soft(const Clause& clause) {
  std::vector<Literal> lits;
  lits.reserve(clause.size() + 1);
  for (const Literal& l : clause) lits.push_back(internal(l));
  const Selector sel{backend_->new_var()};
  if (to_user_.size() <= sel.var) to_user_.resize(sel.var + 1, 0);
  if (soft_by_var_.size() <= sel.var) soft_by_var_.resize(sel.var + 1, 0);
  lits.push_back(Literal(sel.var, false));
  backend_->add_clause(lits);
  soft_.emplace_back(sel, clause);
  soft_by_var_[sel.var] = soft_.size();
  return sel;
}

const Clause& SatSession::soft_clause(Selector s) const {
  if (s.var >= soft_by_var_.size() || soft_by_var_[s.var] == 0) {
    throw std::out_of_range("unknown selector");
  }
  return soft_[soft_by_var_[s.var] - 1].second;
}

SolveResult SatSession::solve(std::span<const Selector> selectors,
                              std::span<const Literal> literals) {
  ++calls_;
  std::vector<Literal> assumptions;
  assumptions.reserve(selectors.size() + literals.size());
  for (const Selector& s : selectors) {
    if (s.var >= soft_by_var_.size() || soft_by_var_[s.var] == 0) {
      throw std::out_of_range("unknown selector");
    }
    assumptions.emplace_back(s.var, true);
  }
  for (const Literal& l : literals) assumptions.push_back(internal(l));

  SolveResult result;
  result.status = backend_->solve(assumptions, deadline_);
  if (result.sat()) {
    const Var n = num_user_vars();
    result.model.assign(n + 1, 0);
    for (Var v = 1; v <= n; ++v) result.model[v] = backend_->model_value(to_internal_[v]) ? 1 : 0;
    if (options_.check_models) {
      auto fail = [] { throw std::logic_error("SAT backend returned a non-model"); };
      for (const Clause& c : hard_) {
        if (!result.satisfies(c)) fail();
      }
      for (const Selector& s : selectors) {
        if (!result.satisfies(soft_clause(s))) fail();
      }
      for (const Literal& l : literals) {
        if (!result.value(l)) fail();
      }
    }
  } else {
    for (const Literal& l : backend_->failed_assumptions()) {
      if (l.var() < soft_by_var_.size() && soft_by_var_[l.var()] != 0) {
        result.conflict_selectors.push_back(Selector{l.var()});
      } else {
        result.conflict_literals.emplace_back(to_user_.at(l.var()), l.positive());
      }
    }
    std::sort(result.conflict_selectors.begin(), result.conflict_selectors.end());
    result.conflict_selectors.erase(
        std::unique(result.conflict_selectors.begin(), result.conflict_selectors.end()),
        result.conflict_selectors.end());
    std::sort(result.conflict_literals.begin(), result.conflict_literals.end());
    result.conflict_literals.erase(
        std::unique(result.conflict_literals.begin(), result.conflict_literals.end()),
        result.conflict_literals.end());
  }
  return result;
}

}  // namespace mrx
