#include "mrx/planning/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "mrx/errors.hpp"

namespace mrx::planning {

namespace {

struct SExpr {
  bool list = false;
  std::string atom;
  std::vector<SExpr> items;
  std::size_t line = 0;

  bool is(std::string_view word) const { return !list && atom == word; }
  bool head_is(std::string_view word) const {
    return list && !items.empty() && items[0].is(word);
  }
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr document() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("empty PDDL input", line_);
    SExpr root = expr();
    skip();
    if (pos_ < text_.size()) throw ParseError("trailing text after closing parenthesis", line_);
    if (!root.list) throw ParseError("expected '(define ...)'", root.line);
    return root;
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        if (c == '\n') ++line_;
        ++pos_;
      } else {
        break;
      }
    }
  }

  SExpr expr() {
    SExpr e;
    e.line = line_;
    const char c = text_[pos_];
    if (c == ')') throw ParseError("unbalanced ')'", line_);
    if (c == '(') {
      e.list = true;
      ++pos_;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) throw ParseError("missing ')'", line_);
        if (text_[pos_] == ')') {
          ++pos_;
          return e;
        }
        e.items.push_back(expr());
      }
    }
    while (pos_ < text_.size()) {
      const char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      e.atom += static_cast<char>(std::tolower(static_cast<unsigned char>(d)));
      ++pos_;
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

[[noreturn]] void fail(const std::string& what, std::size_t line) {
  if (line == 0) throw ParseError(what);
  throw ParseError(what, line);
}

const std::string& word(const SExpr& e, const char* what) {
  if (e.list) throw ParseError(std::string("expected ") + what + ", found a list", e.line);
  return e.atom;
}

// `a b - t c - u d` with untyped names defaulting to "object".
std::vector<TypedName> typed_list(const SExpr& list, std::size_t from) {
  std::vector<TypedName> out;
  std::size_t pending = 0;
  for (std::size_t i = from; i < list.items.size(); ++i) {
    const SExpr& item = list.items[i];
    if (item.is("-")) {
      if (i + 1 >= list.items.size()) throw ParseError("'-' without a type", item.line);
      const SExpr& type = list.items[++i];
      if (type.head_is("either")) throw ParseError("'either' types are unsupported", type.line);
      const std::string& t = word(type, "type name");
      for (std::size_t k = out.size() - pending; k < out.size(); ++k) out[k].type = t;
      pending = 0;
      continue;
    }
    out.push_back({word(item, "name"), "object"});
    ++pending;
  }
  return out;
}

AtomTemplate atom(const SExpr& e) {
  if (!e.list || e.items.empty()) throw ParseError("expected an atom '(predicate args...)'", e.line);
  AtomTemplate a;
  a.predicate = word(e.items[0], "predicate name");
  static const std::set<std::string> connectives = {"and", "or", "not", "imply", "forall",
                                                    "exists", "when", "=", "increase"};
  if (connectives.contains(a.predicate)) {
    throw ParseError("unsupported construct '" + a.predicate + "'", e.line);
  }
  for (std::size_t i = 1; i < e.items.size(); ++i) a.args.push_back(word(e.items[i], "argument"));
  return a;
}

std::vector<const SExpr*> conjuncts(const SExpr& e) {
  std::vector<const SExpr*> out;
  if (!e.list) throw ParseError("expected a formula", e.line);
  if (e.items.empty()) return out;
  if (e.head_is("and")) {
    for (std::size_t i = 1; i < e.items.size(); ++i) out.push_back(&e.items[i]);
  } else {
    out.push_back(&e);
  }
  return out;
}

std::vector<AtomTemplate> positive_conjunction(const SExpr& e, const char* where) {
  std::vector<AtomTemplate> out;
  for (const SExpr* c : conjuncts(e)) {
    if (c->head_is("not")) {
      throw ParseError(std::string("negative literals in ") + where + " are unsupported", c->line);
    }
    out.push_back(atom(*c));
  }
  return out;
}

const SExpr& define_header(const SExpr& root, const char* kind, std::string& name) {
  if (!root.head_is("define") || root.items.size() < 2) {
    throw ParseError("expected '(define ...)'", root.line);
  }
  const SExpr& head = root.items[1];
  if (!head.head_is(kind) || head.items.size() != 2) {
    throw ParseError(std::string("expected '(") + kind + " <name>)'", head.line);
  }
  name = word(head.items[1], "name");
  return head;
}

ActionSchema action(const SExpr& e) {
  if (e.items.size() < 2) throw ParseError("action without a name", e.line);
  ActionSchema a;
  a.name = word(e.items[1], "action name");
  for (std::size_t i = 2; i < e.items.size(); i += 2) {
    const std::string& key = word(e.items[i], "action keyword");
    if (i + 1 >= e.items.size()) throw ParseError("missing value for " + key, e.items[i].line);
    const SExpr& value = e.items[i + 1];
    if (key == ":parameters") {
      if (!value.list) throw ParseError("parameters must be a list", value.line);
      a.parameters = typed_list(value, 0);
    } else if (key == ":precondition") {
      a.pre = positive_conjunction(value, "preconditions");
    } else if (key == ":effect") {
      for (const SExpr* c : conjuncts(value)) {
        if (c->head_is("not")) {
          if (c->items.size() != 2) throw ParseError("malformed 'not'", c->line);
          a.del.push_back(atom(c->items[1]));
        } else {
          a.add.push_back(atom(*c));
        }
      }
    } else {
      throw ParseError("unsupported action keyword " + key, e.items[i].line);
    }
  }
  return a;
}

void check_atom(const Domain& d, const AtomTemplate& a, const std::set<std::string>& names,
                std::size_t line, const char* where) {
  const PredicateSchema* p = d.find_predicate(a.predicate);
  if (p == nullptr) fail("undefined predicate '" + a.predicate + "'", line);
  if (p->parameters.size() != a.args.size()) {
    fail("predicate '" + a.predicate + "' expects " + std::to_string(p->parameters.size()) +
             " arguments, got " + std::to_string(a.args.size()),
         line);
  }
  for (const std::string& arg : a.args) {
    if (!names.contains(arg)) {
      fail(std::string("undefined ") + where + " '" + arg + "'", line);
    }
  }
}

void check_type(const Domain& d, const std::string& type, std::size_t line) {
  if (type != "object" && !d.type_parent.contains(type)) {
    fail("undefined type '" + type + "'", line);
  }
}

}  // namespace

const PredicateSchema* Domain::find_predicate(const std::string& name) const {
  for (const PredicateSchema& p : predicates) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

bool Domain::is_subtype(const std::string& type, const std::string& ancestor) const {
  std::string t = type;
  for (std::size_t guard = 0; guard <= type_parent.size() + 1; ++guard) {
    if (t == ancestor) return true;
    auto it = type_parent.find(t);
    if (it == type_parent.end()) return false;
    t = it->second;
  }
  return false;  // cyclic hierarchy
}

Domain parse_domain(std::string_view text) {
  const SExpr root = Reader(text).document();
  Domain d;
  define_header(root, "domain", d.name);

  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const SExpr& section = root.items[i];
    if (!section.list || section.items.empty()) throw ParseError("expected a section", section.line);
    const std::string& key = word(section.items[0], "section keyword");
    if (key == ":requirements") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        const std::string& r = word(section.items[k], "requirement");
        if (r != ":strips" && r != ":typing") {
          throw ParseError("unsupported requirement " + r, section.items[k].line);
        }
        d.requirements.push_back(r);
      }
    } else if (key == ":types") {
      for (const TypedName& t : typed_list(section, 1)) d.type_parent[t.name] = t.type;
    } else if (key == ":constants") {
      d.constants = typed_list(section, 1);
    } else if (key == ":predicates") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        const SExpr& p = section.items[k];
        if (!p.list || p.items.empty()) throw ParseError("malformed predicate", p.line);
        d.predicates.push_back({word(p.items[0], "predicate name"), typed_list(p, 1)});
      }
    } else if (key == ":action") {
      d.actions.push_back(action(section));
    } else {
      throw ParseError("unsupported domain section " + key, section.line);
    }
  }

  for (const auto& [type, parent] : d.type_parent) check_type(d, parent, root.line);
  for (const TypedName& c : d.constants) check_type(d, c.type, root.line);
  for (const PredicateSchema& p : d.predicates) {
    for (const TypedName& t : p.parameters) check_type(d, t.type, root.line);
  }
  std::set<std::string> constants;
  for (const TypedName& c : d.constants) constants.insert(c.name);
  for (std::size_t i = 2, a = 0; i < root.items.size(); ++i) {
    if (!root.items[i].head_is(":action")) continue;
    const ActionSchema& act = d.actions[a++];
    std::set<std::string> names = constants;
    for (const TypedName& p : act.parameters) {
      check_type(d, p.type, root.items[i].line);
      names.insert(p.name);
    }
    for (const auto* list : {&act.pre, &act.add, &act.del}) {
      for (const AtomTemplate& at : *list) {
        check_atom(d, at, names, root.items[i].line, "parameter or constant");
      }
    }
  }
  return d;
}

Problem parse_problem(std::string_view text) {
  const SExpr root = Reader(text).document();
  Problem p;
  define_header(root, "problem", p.name);
  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const SExpr& section = root.items[i];
    if (!section.list || section.items.empty()) throw ParseError("expected a section", section.line);
    const std::string& key = word(section.items[0], "section keyword");
    if (key == ":domain") {
      if (section.items.size() != 2) throw ParseError("malformed :domain", section.line);
      p.domain = word(section.items[1], "domain name");
    } else if (key == ":objects") {
      p.objects = typed_list(section, 1);
    } else if (key == ":init") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        p.init.push_back(atom(section.items[k]));
      }
    } else if (key == ":goal") {
      if (section.items.size() != 2) throw ParseError("malformed :goal", section.line);
      p.goal = positive_conjunction(section.items[1], "goals");
    } else if (key == ":requirements") {
      // Problem-level requirements add nothing for the STRIPS subset.
    } else {
      throw ParseError("unsupported problem section " + key, section.line);
    }
  }
  return p;
}

LiftedTask parse_pddl(std::string_view domain_text, std::string_view problem_text) {
  LiftedTask task{parse_domain(domain_text), parse_problem(problem_text)};
  const Domain& d = task.domain;
  const Problem& p = task.problem;
  if (!p.domain.empty() && p.domain != d.name) {
    throw ParseError("problem is for domain '" + p.domain + "', not '" + d.name + "'");
  }
  std::set<std::string> objects;
  for (const TypedName& c : d.constants) objects.insert(c.name);
  for (const TypedName& o : p.objects) {
    check_type(d, o.type, 0);
    if (!objects.insert(o.name).second) throw ParseError("object '" + o.name + "' declared twice");
  }
  for (const AtomTemplate& a : p.init) check_atom(d, a, objects, 0, "object");
  for (const AtomTemplate& a : p.goal) check_atom(d, a, objects, 0, "object");
  return task;
}

}  // namespace mrx::planning
