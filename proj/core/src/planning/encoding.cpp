#include "mrx/planning/encoding.hpp"

#include <algorithm>
#include <ostream>

#include "mrx/errors.hpp"

namespace mrx::planning {

VariableLayout::VariableLayout(std::vector<std::string> fluents, std::vector<std::string> actions,
                               std::size_t horizon)
    : fluents_(std::move(fluents)), actions_(std::move(actions)), horizon_(horizon) {
  for (std::size_t i = 0; i < fluents_.size(); ++i) fluent_index_.emplace(fluents_[i], i);
  for (std::size_t i = 0; i < actions_.size(); ++i) action_index_.emplace(actions_[i], i);
  const std::uint64_t total = (horizon_ + 1) * fluents_.size() + horizon_ * actions_.size() +
                              horizon_;
  if (total > kMaxVar) throw CapExceeded("encoding needs more than 2^30 variables");
}

VariableLayout VariableLayout::for_problem(const PlanningProblem& problem, std::size_t horizon) {
  std::vector<std::string> actions;
  for (const GroundAction& a : problem.actions) actions.push_back(a.name);
  return VariableLayout(problem.fluents, std::move(actions), horizon);
}

Var VariableLayout::fluent(std::size_t f, std::size_t t) const {
  return static_cast<Var>(1 + t * fluents_.size() + f);
}

Var VariableLayout::action(std::size_t a, std::size_t t) const {
  return static_cast<Var>(1 + (horizon_ + 1) * fluents_.size() + t * actions_.size() + a);
}

Var VariableLayout::base_vars() const {
  return static_cast<Var>((horizon_ + 1) * fluents_.size() + horizon_ * actions_.size());
}

Var VariableLayout::goal_aggregate(std::size_t t) const {
  return base_vars() + 1 + static_cast<Var>(t);
}

std::optional<std::size_t> VariableLayout::fluent_index(std::string_view name) const {
  auto it = fluent_index_.find(std::string(name));
  if (it == fluent_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> VariableLayout::action_index(std::string_view name) const {
  auto it = action_index_.find(std::string(name));
  if (it == action_index_.end()) return std::nullopt;
  return it->second;
}

std::string VariableLayout::describe(Var var) const {
  const std::size_t F = fluents_.size();
  const std::size_t A = actions_.size();
  if (var >= 1 && var <= (horizon_ + 1) * F) {
    const std::size_t i = var - 1;
    return fluents_[i % F] + "@" + std::to_string(i / F);
  }
  if (var > (horizon_ + 1) * F && var <= base_vars()) {
    const std::size_t i = var - 1 - (horizon_ + 1) * F;
    return actions_[i % A] + "@" + std::to_string(i / A);
  }
  if (var > base_vars() && var <= total_vars()) {
    return "goal@" + std::to_string(var - base_vars() - 1);
  }
  return std::to_string(var);
}

void VariableLayout::write_map(std::ostream& out) const {
  for (Var v = 1; v <= total_vars(); ++v) out << v << ' ' << describe(v) << '\n';
}

std::string to_string(ClauseKind kind) {
  switch (kind) {
    case ClauseKind::init: return "init";
    case ClauseKind::goal: return "goal";
    case ClauseKind::precondition: return "precondition";
    case ClauseKind::add_effect: return "add-effect";
    case ClauseKind::del_effect: return "del-effect";
    case ClauseKind::frame: return "frame";
    case ClauseKind::at_least_one: return "at-least-one";
    case ClauseKind::at_most_one: return "at-most-one";
    case ClauseKind::goal_definition: return "goal-definition";
  }
  return "unknown";
}

bool BoundedEncoding::is_dynamics(ClauseId id) const {
  const ClauseKind k = origins.at(id).kind;
  return k == ClauseKind::precondition || k == ClauseKind::add_effect ||
         k == ClauseKind::del_effect;
}

namespace {

class Emitter {
 public:
  explicit Emitter(BoundedEncoding& enc) : enc_(enc) {}

  void emit(std::vector<Literal> lits, ClauseOrigin origin) {
    auto clause = Clause::make(std::move(lits));
    if (!clause) return;
    if (enc_.cnf.add(std::move(*clause)).inserted) enc_.origins.push_back(origin);
  }

 private:
  BoundedEncoding& enc_;
};

std::size_t require(std::optional<std::size_t> index, const std::string& name) {
  if (!index) throw PlanningError("'" + name + "' is not part of the reference task");
  return *index;
}

}  // namespace

BoundedEncoding encode_bounded(const PlanningProblem& problem, std::size_t horizon,
                               bool include_goal) {
  return encode_bounded(problem, horizon, include_goal,
                        VariableLayout::for_problem(problem, horizon));
}

BoundedEncoding encode_bounded(const PlanningProblem& problem, std::size_t horizon,
                               bool include_goal, const VariableLayout& layout) {
  if (layout.horizon() != horizon) throw PlanningError("layout built for a different horizon");
  BoundedEncoding enc{layout, CnfFormula(layout.base_vars()), {}, {}, include_goal, {}};
  Emitter out(enc);
  const std::size_t n = horizon;

  std::vector<std::size_t> fmap(problem.fluents.size());
  for (std::size_t f = 0; f < problem.fluents.size(); ++f) {
    fmap[f] = require(layout.fluent_index(problem.fluents[f]), problem.fluents[f]);
  }
  std::vector<std::size_t> amap(problem.actions.size());
  for (std::size_t a = 0; a < problem.actions.size(); ++a) {
    amap[a] = require(layout.action_index(problem.actions[a].name), problem.actions[a].name);
  }
  for (FluentId g : problem.goal) enc.goal.push_back(fmap[g]);
  std::sort(enc.goal.begin(), enc.goal.end());

  const std::size_t F = layout.num_fluents();
  std::vector<char> initially(F, 0);
  for (FluentId f : problem.init) initially[fmap[f]] = 1;
  for (std::size_t f = 0; f < F; ++f) {
    out.emit({Literal(layout.fluent(f, 0), initially[f] != 0)},
             {ClauseKind::init, -1, 0, static_cast<std::int64_t>(f)});
  }
  if (include_goal) {
    for (std::size_t f : enc.goal) {
      out.emit({Literal(layout.fluent(f, n), true)},
               {ClauseKind::goal, -1, static_cast<std::int64_t>(n), static_cast<std::int64_t>(f)});
    }
  }

  // Actions able to make each fluent true / false, in layout order.
  std::vector<std::vector<std::size_t>> adders(F);
  std::vector<std::vector<std::size_t>> deleters(F);
  std::vector<std::size_t> present;
  for (std::size_t a = 0; a < problem.actions.size(); ++a) {
    for (FluentId f : problem.actions[a].add) adders[fmap[f]].push_back(amap[a]);
    for (FluentId f : problem.actions[a].del) deleters[fmap[f]].push_back(amap[a]);
    present.push_back(amap[a]);
  }
  for (auto& v : adders) std::sort(v.begin(), v.end());
  for (auto& v : deleters) std::sort(v.begin(), v.end());
  std::sort(present.begin(), present.end());

  for (std::size_t t = 0; t < n; ++t) {
    const auto step = static_cast<std::int64_t>(t);
    for (std::size_t a = 0; a < problem.actions.size(); ++a) {
      const GroundAction& act = problem.actions[a];
      const Literal run(layout.action(amap[a], t), false);
      const auto ai = static_cast<std::int64_t>(amap[a]);
      for (FluentId f : act.pre) {
        out.emit({run, Literal(layout.fluent(fmap[f], t), true)},
                 {ClauseKind::precondition, ai, step, static_cast<std::int64_t>(fmap[f])});
      }
      for (FluentId f : act.add) {
        out.emit({run, Literal(layout.fluent(fmap[f], t + 1), true)},
                 {ClauseKind::add_effect, ai, step, static_cast<std::int64_t>(fmap[f])});
      }
      for (FluentId f : act.del) {
        out.emit({run, Literal(layout.fluent(fmap[f], t + 1), false)},
                 {ClauseKind::del_effect, ai, step, static_cast<std::int64_t>(fmap[f])});
      }
    }

    // Explanatory frames: a fluent changes only if an action causing the
    // change runs at this step.
    for (std::size_t f = 0; f < F; ++f) {
      std::vector<Literal> becomes_true{Literal(layout.fluent(f, t), true),
                                        Literal(layout.fluent(f, t + 1), false)};
      for (std::size_t a : adders[f]) becomes_true.emplace_back(layout.action(a, t), true);
      out.emit(std::move(becomes_true),
               {ClauseKind::frame, -1, step, static_cast<std::int64_t>(f)});
      std::vector<Literal> becomes_false{Literal(layout.fluent(f, t), false),
                                         Literal(layout.fluent(f, t + 1), true)};
      for (std::size_t a : deleters[f]) becomes_false.emplace_back(layout.action(a, t), true);
      out.emit(std::move(becomes_false),
               {ClauseKind::frame, -1, step, static_cast<std::int64_t>(f)});
    }

    std::vector<Literal> some;
    for (std::size_t a : present) some.emplace_back(layout.action(a, t), true);
    out.emit(std::move(some), {ClauseKind::at_least_one, -1, step, -1});
    for (std::size_t i = 0; i < present.size(); ++i) {
      for (std::size_t j = i + 1; j < present.size(); ++j) {
        out.emit({Literal(layout.action(present[i], t), false),
                  Literal(layout.action(present[j], t), false)},
                 {ClauseKind::at_most_one, -1, step, -1});
      }
    }
  }
  return enc;
}

CnfFormula optimality_query(BoundedEncoding& enc) {
  const std::size_t n = enc.horizon();
  if (n == 0) throw PlanningError("optimality query needs a horizon of at least 1");
  if (enc.goal.empty()) throw PlanningError("optimality query needs a nonempty goal");
  const VariableLayout& layout = enc.layout;
  Emitter out(enc);
  enc.goal_vars.clear();
  for (std::size_t t = 0; t < n; ++t) {
    if (enc.goal.size() == 1) {
      enc.goal_vars.push_back(layout.fluent(enc.goal[0], t));
      continue;
    }
    const Var g = layout.goal_aggregate(t);
    const auto step = static_cast<std::int64_t>(t);
    std::vector<Literal> any_missing{Literal(g, true)};
    for (std::size_t f : enc.goal) {
      out.emit({Literal(g, false), Literal(layout.fluent(f, t), true)},
               {ClauseKind::goal_definition, -1, step, static_cast<std::int64_t>(f)});
      any_missing.emplace_back(layout.fluent(f, t), false);
    }
    out.emit(std::move(any_missing), {ClauseKind::goal_definition, -1, step, -1});
    enc.goal_vars.push_back(g);
  }
  enc.cnf.reserve_vars(layout.total_vars());

  CnfFormula query(enc.cnf.num_vars());
  for (Var g : enc.goal_vars) query.add(*Clause::make({Literal(g, false)}));
  return query;
}

Plan decode_plan(const BoundedEncoding& enc, const PlanningProblem& problem,
                 const std::vector<char>& model) {
  Plan plan;
  for (std::size_t t = 0; t < enc.horizon(); ++t) {
    for (std::size_t a = 0; a < problem.actions.size(); ++a) {
      const auto idx = enc.layout.action_index(problem.actions[a].name);
      if (!idx) continue;
      const Var v = enc.layout.action(*idx, t);
      if (v < model.size() && model[v]) {
        plan.steps.push_back(a);
        break;
      }
    }
  }
  return plan;
}

}  // namespace mrx::planning
