#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mrx::planning {

struct TypedName {
  std::string name;
  std::string type = "object";
};

/// A predicate applied to arguments; arguments are `?variables` inside
/// schemas and object names elsewhere.
struct AtomTemplate {
  std::string predicate;
  std::vector<std::string> args;
};

struct PredicateSchema {
  std::string name;
  std::vector<TypedName> parameters;
};

struct ActionSchema {
  std::string name;
  std::vector<TypedName> parameters;
  std::vector<AtomTemplate> pre;
  std::vector<AtomTemplate> add;
  std::vector<AtomTemplate> del;
};

struct Domain {
  std::string name;
  std::vector<std::string> requirements;
  std::map<std::string, std::string> type_parent;  // "object" is the implicit root
  std::vector<TypedName> constants;
  std::vector<PredicateSchema> predicates;
  std::vector<ActionSchema> actions;

  const PredicateSchema* find_predicate(const std::string& name) const;
  bool is_subtype(const std::string& type, const std::string& ancestor) const;
};

struct Problem {
  std::string name;
  std::string domain;
  std::vector<TypedName> objects;
  std::vector<AtomTemplate> init;
  std::vector<AtomTemplate> goal;
};

struct LiftedTask {
  Domain domain;
  Problem problem;
};

/// STRIPS subset with optional :typing. Names are case-insensitive and
/// stored lowercase. Throws ParseError on syntax errors, unsupported
/// requirements, negative preconditions, undefined names and arity
/// mismatches.
Domain parse_domain(std::string_view text);
Problem parse_problem(std::string_view text);
LiftedTask parse_pddl(std::string_view domain_text, std::string_view problem_text);

}  // namespace mrx::planning
