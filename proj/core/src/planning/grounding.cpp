#include <algorithm>
#include <map>
#include <set>

#include "mrx/errors.hpp"
#include "mrx/planning/task.hpp"

namespace mrx::planning {

namespace {

std::string atom_name(const std::string& predicate, const std::vector<std::string>& args) {
  if (args.empty()) return predicate;
  std::string out = predicate + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i > 0) out += ',';
    out += args[i];
  }
  return out + ")";
}

struct NamedAction {
  std::string name;
  std::vector<std::string> pre, add, del;
};

std::vector<std::string> instantiate(const std::vector<AtomTemplate>& atoms,
                                     const std::map<std::string, std::string>& binding) {
  std::vector<std::string> out;
  for (const AtomTemplate& a : atoms) {
    std::vector<std::string> args;
    for (const std::string& arg : a.args) {
      auto it = binding.find(arg);
      args.push_back(it == binding.end() ? arg : it->second);
    }
    out.push_back(atom_name(a.predicate, args));
  }
  return out;
}

std::vector<FluentId> ids(const std::vector<std::string>& names,
                          const std::map<std::string, FluentId>& index) {
  std::vector<FluentId> out;
  for (const std::string& n : names) out.push_back(index.at(n));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::optional<FluentId> PlanningProblem::find_fluent(std::string_view name) const {
  auto it = std::lower_bound(fluents.begin(), fluents.end(), name);
  if (it == fluents.end() || *it != name) return std::nullopt;
  return static_cast<FluentId>(it - fluents.begin());
}

std::optional<std::size_t> PlanningProblem::find_action(std::string_view name) const {
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i].name == name) return i;
  }
  return std::nullopt;
}

PlanningProblem ground(const LiftedTask& task, const GroundOptions& options) {
  const Domain& d = task.domain;
  std::vector<TypedName> objects = d.constants;
  objects.insert(objects.end(), task.problem.objects.begin(), task.problem.objects.end());

  std::vector<NamedAction> actions;
  for (const ActionSchema& schema : d.actions) {
    std::vector<std::vector<const TypedName*>> domains;
    for (const TypedName& p : schema.parameters) {
      std::vector<const TypedName*> fits;
      for (const TypedName& o : objects) {
        if (d.is_subtype(o.type, p.type)) fits.push_back(&o);
      }
      domains.push_back(std::move(fits));
    }
    if (std::any_of(domains.begin(), domains.end(), [](const auto& v) { return v.empty(); })) {
      continue;
    }
    std::vector<std::size_t> pick(domains.size(), 0);
    for (;;) {
      std::vector<std::string> args;
      for (std::size_t i = 0; i < pick.size(); ++i) args.push_back(domains[i][pick[i]]->name);
      const bool distinct = std::set<std::string>(args.begin(), args.end()).size() == args.size();
      if (distinct || !options.distinct_arguments) {
        if (actions.size() >= options.max_actions) {
          throw CapExceeded("grounding exceeds " + std::to_string(options.max_actions) +
                            " actions");
        }
        std::map<std::string, std::string> binding;
        for (std::size_t i = 0; i < args.size(); ++i) binding[schema.parameters[i].name] = args[i];
        actions.push_back({atom_name(schema.name, args), instantiate(schema.pre, binding),
                           instantiate(schema.add, binding), instantiate(schema.del, binding)});
      }
      std::size_t pos = pick.size();
      while (pos > 0 && ++pick[pos - 1] == domains[pos - 1].size()) pick[--pos] = 0;
      if (pos == 0) break;
    }
  }

  const std::vector<std::string> init = instantiate(task.problem.init, {});
  const std::vector<std::string> goal = instantiate(task.problem.goal, {});

  if (options.prune_unreachable) {
    std::set<std::string> reached(init.begin(), init.end());
    std::vector<char> live(actions.size(), 0);
    for (bool grew = true; grew;) {
      grew = false;
      for (std::size_t i = 0; i < actions.size(); ++i) {
        if (live[i]) continue;
        const auto& pre = actions[i].pre;
        if (!std::all_of(pre.begin(), pre.end(), [&](const auto& f) { return reached.contains(f); })) {
          continue;
        }
        live[i] = 1;
        grew = true;
        reached.insert(actions[i].add.begin(), actions[i].add.end());
      }
    }
    std::vector<NamedAction> kept;
    for (std::size_t i = 0; i < actions.size(); ++i) {
      if (live[i]) kept.push_back(std::move(actions[i]));
    }
    actions = std::move(kept);
  }

  std::set<std::string> atoms(init.begin(), init.end());
  atoms.insert(goal.begin(), goal.end());
  for (const NamedAction& a : actions) {
    atoms.insert(a.pre.begin(), a.pre.end());
    atoms.insert(a.add.begin(), a.add.end());
    atoms.insert(a.del.begin(), a.del.end());
  }

  PlanningProblem out;
  out.fluents.assign(atoms.begin(), atoms.end());
  std::map<std::string, FluentId> index;
  for (FluentId f = 0; f < out.fluents.size(); ++f) index[out.fluents[f]] = f;
  for (const NamedAction& a : actions) {
    GroundAction g{a.name, ids(a.pre, index), ids(a.add, index), ids(a.del, index)};
    // An atom both added and deleted ends up true.
    std::erase_if(g.del, [&](FluentId f) { return std::binary_search(g.add.begin(), g.add.end(), f); });
    out.actions.push_back(std::move(g));
  }
  out.init = ids(init, index);
  out.goal = ids(goal, index);
  return out;
}

}  // namespace mrx::planning
