#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>
#include <unordered_map>

#include "mrx/errors.hpp"
#include "mrx/planning/task.hpp"

namespace mrx::planning {

namespace {

using State = std::vector<std::uint64_t>;

struct StateHash {
  std::size_t operator()(const State& s) const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t w : s) {
      h ^= w;
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

bool test(const State& s, FluentId f) { return (s[f / 64] >> (f % 64)) & 1U; }
void set(State& s, FluentId f, bool on) {
  const std::uint64_t bit = std::uint64_t{1} << (f % 64);
  if (on) {
    s[f / 64] |= bit;
  } else {
    s[f / 64] &= ~bit;
  }
}

State initial(const PlanningProblem& p) {
  State s((p.fluents.size() + 63) / 64, 0);
  for (FluentId f : p.init) set(s, f, true);
  return s;
}

bool applicable(const State& s, const GroundAction& a) {
  return std::all_of(a.pre.begin(), a.pre.end(), [&](FluentId f) { return test(s, f); });
}

State apply(State s, const GroundAction& a) {
  for (FluentId f : a.del) set(s, f, false);
  for (FluentId f : a.add) set(s, f, true);
  return s;
}

bool satisfies_goal(const State& s, const PlanningProblem& p) {
  return std::all_of(p.goal.begin(), p.goal.end(), [&](FluentId f) { return test(s, f); });
}

std::string trim(std::string_view text) {
  std::size_t b = 0;
  std::size_t e = text.size();
  while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
  std::string out(text.substr(b, e - b));
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

bool validate_plan(const PlanningProblem& problem, const Plan& plan) {
  State s = initial(problem);
  for (std::size_t step : plan.steps) {
    if (step >= problem.actions.size()) return false;
    const GroundAction& a = problem.actions[step];
    if (!applicable(s, a)) return false;
    s = apply(std::move(s), a);
  }
  return satisfies_goal(s, problem);
}

Plan optimal_plan_search(const PlanningProblem& problem, std::size_t max_states) {
  struct Node {
    std::size_t parent;
    std::size_t action;
  };
  std::vector<Node> nodes;
  std::vector<State> states;
  std::unordered_map<State, std::size_t, StateHash> seen;
  std::deque<std::size_t> queue;

  states.push_back(initial(problem));
  nodes.push_back({0, 0});
  seen.emplace(states[0], 0);
  queue.push_back(0);

  while (!queue.empty()) {
    const std::size_t current = queue.front();
    queue.pop_front();
    if (satisfies_goal(states[current], problem)) {
      Plan plan;
      for (std::size_t n = current; n != 0; n = nodes[n].parent) plan.steps.push_back(nodes[n].action);
      std::reverse(plan.steps.begin(), plan.steps.end());
      return plan;
    }
    for (std::size_t a = 0; a < problem.actions.size(); ++a) {
      if (!applicable(states[current], problem.actions[a])) continue;
      State next = apply(states[current], problem.actions[a]);
      if (seen.contains(next)) continue;
      if (states.size() >= max_states) {
        throw CapExceeded("state space exceeds " + std::to_string(max_states) + " states");
      }
      seen.emplace(next, states.size());
      nodes.push_back({current, a});
      states.push_back(std::move(next));
      queue.push_back(states.size() - 1);
    }
  }
  throw PlanningError("goal unreachable");
}

Plan parse_plan(const PlanningProblem& problem, std::string_view text) {
  Plan plan;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto semi = raw.find(';'); semi != std::string::npos) raw.erase(semi);
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '(' && line.back() == ')') {
      // "(stack a b)" -> "stack(a,b)"
      std::istringstream words(line.substr(1, line.size() - 2));
      std::string head;
      std::string arg;
      words >> head;
      std::string args;
      while (words >> arg) args += (args.empty() ? "" : ",") + arg;
      line = args.empty() ? head : head + "(" + args + ")";
    }
    const auto idx = problem.find_action(line);
    if (!idx) throw ParseError("unknown action '" + line + "'", lineno);
    plan.steps.push_back(*idx);
  }
  return plan;
}

std::string format_plan(const PlanningProblem& problem, const Plan& plan) {
  std::string out;
  for (std::size_t step : plan.steps) out += problem.actions.at(step).name + "\n";
  return out;
}

}  // namespace mrx::planning
