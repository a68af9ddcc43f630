#include "mrx/errors.hpp"
#include "mrx/minimal_sets.hpp"
#include "mrx/planning/explain.hpp"
#include "mrx/sat.hpp"

namespace mrx::planning {

namespace {

std::vector<Literal> plan_assumptions(const VariableLayout& layout, const std::vector<std::size_t>& goal,
                                      const PlanningProblem& problem, const Plan& plan) {
  if (plan.size() != layout.horizon()) {
    throw PlanningError("plan length " + std::to_string(plan.size()) + " differs from horizon " +
                        std::to_string(layout.horizon()));
  }
  std::vector<Literal> out;
  for (std::size_t t = 0; t < plan.size(); ++t) {
    if (plan.steps[t] >= problem.actions.size()) throw PlanningError("plan references unknown action");
    const std::string& name = problem.actions[plan.steps[t]].name;
    const auto a = layout.action_index(name);
    if (!a) throw PlanningError("plan action '" + name + "' is not part of the encoding");
    out.emplace_back(layout.action(*a, t), true);
  }
  for (std::size_t f : goal) out.emplace_back(layout.fluent(f, layout.horizon()), true);
  return out;
}

bool satisfiable_under(const CnfFormula& cnf, const std::vector<Literal>& assumptions,
                       const Deadline* deadline) {
  SatSession session;
  session.set_deadline(deadline);
  for (const Clause& c : cnf.clauses()) session.add_hard(c);
  return session.solve({}, assumptions).sat();
}

}  // namespace

FeasibilityResult check_feasibility(const BoundedEncoding& encoding, const PlanningProblem& problem,
                                    const Plan& plan, const BoundedEncoding* reference) {
  const std::vector<Literal> assumptions =
      plan_assumptions(encoding.layout, encoding.goal, problem, plan);
  FeasibilityResult result;
  result.feasible = satisfiable_under(encoding.cnf, assumptions, nullptr);
  if (result.feasible || reference == nullptr) return result;

  for (ClauseId id = 0; id < reference->cnf.size(); ++id) {
    if (!reference->is_dynamics(id)) continue;
    const ClauseOrigin& o = reference->origins[id];
    const auto t = static_cast<std::size_t>(o.step);
    if (t >= plan.size()) continue;
    const auto planned = reference->layout.action_index(problem.actions[plan.steps[t]].name);
    if (!planned || static_cast<std::int64_t>(*planned) != o.action) continue;
    if (!encoding.cnf.contains(reference->cnf[id])) result.missing.push_back(reference->cnf[id]);
  }
  return result;
}

PlanExplanation explain_plan(const PlanningProblem& agent, const PlanningProblem& human,
                             const Plan& plan, const ExplainOptions& options) {
  const std::size_t n = plan.size();
  if (n == 0) throw PlanningError("empty plan: the goal already holds initially");
  if (!validate_plan(agent, plan)) throw PremiseError("plan is not valid in the agent model");

  const VariableLayout layout = VariableLayout::for_problem(agent, n);
  PlanExplanation out{plan,
                      n,
                      encode_bounded(agent, n, false, layout),
                      encode_bounded(human, n, false, layout),
                      CnfFormula{},
                      {},
                      false,
                      {},
                      {},
                      CnfFormula{},
                      {},
                      false};
  if (out.human.goal != out.agent.goal) throw PlanningError("agent and human goals differ");
  out.query = optimality_query(out.agent);
  optimality_query(out.human);

  if (!check_feasibility(out.agent, agent, plan).feasible) {
    throw PremiseError("plan is not feasible in the agent encoding");
  }
  out.feasibility = check_feasibility(out.human, agent, plan, &out.agent);
  out.repair = out.feasibility.missing;

  const std::vector<Literal> assumptions = plan_assumptions(layout, out.agent.goal, agent, plan);
  CnfFormula repaired = out.human.cnf;
  for (const Clause& c : out.repair) repaired.add(c);
  out.feasible_after_repair =
      out.feasibility.feasible || satisfiable_under(repaired, assumptions, options.deadline);

  if (!out.feasible_after_repair) {
    // The agent's clauses and the plan are jointly satisfiable, so removing
    // a correction set of the human-only clauses makes the plan feasible.
    std::vector<Clause> hard;
    std::vector<Clause> soft;
    for (const Clause& c : repaired.clauses()) {
      (out.agent.cnf.contains(c) ? hard : soft).push_back(c);
    }
    for (Literal l : assumptions) hard.push_back(*Clause::make({l}));
    McsExtractor extractor(soft, hard, options.deadline);
    for (std::size_t id : extractor.extract({}).ids) out.repair_dropped.push_back(soft[id]);
    repaired = apply_removal(repaired, out.repair_dropped);
  }
  out.repaired_human = std::move(repaired);

  const ReconcileProblem problem{out.agent.cnf, out.repaired_human, out.query, options.mode};
  out.explanation = reconcile(problem, {options.deadline, options.verify});

  CnfFormula updated = apply_removal(out.repaired_human, out.explanation.removed_from_kb_h);
  for (const Clause& c : out.explanation.update) updated.add(c);
  out.feasible_after_update = satisfiable_under(updated, assumptions, options.deadline);
  return out;
}

}  // namespace mrx::planning
