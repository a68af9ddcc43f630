#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace mrx {

using Var = std::uint32_t;
using ClauseId = std::size_t;

/// Largest variable index accepted from external input.
inline constexpr Var kMaxVar = (Var{1} << 30) - 1;

class Literal {
 public:
  constexpr Literal() = default;
  constexpr Literal(Var var, bool positive) : var_(var), positive_(positive) {}

  /// Signed DIMACS integer; 0 is rejected.
  static Literal from_dimacs(std::int64_t value);

  constexpr Var var() const { return var_; }
  constexpr bool positive() const { return positive_; }
  constexpr Literal operator~() const { return Literal(var_, !positive_); }

  std::int64_t to_dimacs() const {
    return positive_ ? std::int64_t{var_} : -std::int64_t{var_};
  }

  // Ordered by (variable, polarity), negative before positive.
  constexpr auto operator<=>(const Literal&) const = default;

 private:
  Var var_ = 1;
  bool positive_ = true;
};

/// A disjunction of literals kept sorted and duplicate-free. Tautologies
/// cannot be represented; make() reports them instead.
class Clause {
 public:
  Clause() = default;

  /// Sorts and deduplicates. Returns nullopt when the literals contain both
  /// polarities of some variable.
  static std::optional<Clause> make(std::vector<Literal> literals);

  /// Convenience for tests and fixtures; throws std::invalid_argument on a
  /// tautology or a zero literal.
  static Clause of(std::initializer_list<int> dimacs);

  std::span<const Literal> literals() const { return literals_; }
  std::size_t size() const { return literals_.size(); }
  bool empty() const { return literals_.empty(); }
  Var max_var() const { return literals_.empty() ? 0 : literals_.back().var(); }
  bool contains(Literal lit) const;

  auto begin() const { return literals_.begin(); }
  auto end() const { return literals_.end(); }

  std::string to_dimacs() const;

  auto operator<=>(const Clause&) const = default;
  bool operator==(const Clause&) const = default;

 private:
  std::vector<Literal> literals_;
};

struct ClauseHash {
  std::size_t operator()(const Clause& clause) const noexcept;
};

enum class ClauseRole : std::uint8_t { soft, hard };

/// Non-fatal events recorded while building a formula.
struct FormulaNote {
  enum class Kind { duplicate_merged, tautology_dropped, empty_clause, header_mismatch };
  Kind kind;
  std::size_t line = 0;       // source line, 0 when not parsed from text
  ClauseId clause = 0;        // id of the surviving clause, when applicable
  std::string message;
};

/// Ordered, duplicate-free clause collection with stable dense ids.
class CnfFormula {
 public:
  struct Insert {
    ClauseId id;
    bool inserted;
  };

  explicit CnfFormula(Var num_vars = 0) : num_vars_(num_vars) {}

  static CnfFormula of(std::initializer_list<std::initializer_list<int>> clauses);

  /// Appends the clause unless an identical one exists, in which case the
  /// existing id is returned and nothing changes.
  Insert add(Clause clause, ClauseRole role = ClauseRole::soft);

  const Clause& operator[](ClauseId id) const { return clauses_[id]; }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::size_t size() const { return clauses_.size(); }
  bool empty() const { return clauses_.empty(); }

  Var num_vars() const { return num_vars_; }
  /// Raises the variable count; never lowers it below a used variable.
  void reserve_vars(Var n) { if (n > num_vars_) num_vars_ = n; }

  ClauseRole role(ClauseId id) const { return roles_[id]; }
  void set_role(ClauseId id, ClauseRole role) { roles_[id] = role; }

  std::optional<ClauseId> find(const Clause& clause) const;
  bool contains(const Clause& clause) const { return find(clause).has_value(); }
  bool has_empty_clause() const;

  const std::vector<FormulaNote>& notes() const { return notes_; }
  void note(FormulaNote n) { notes_.push_back(std::move(n)); }

  /// Same clauses in the same order and same variable count; roles and notes
  /// are not compared.
  bool operator==(const CnfFormula& other) const {
    return num_vars_ == other.num_vars_ && clauses_ == other.clauses_;
  }

 private:
  std::vector<Clause> clauses_;
  std::vector<ClauseRole> roles_;
  std::unordered_map<Clause, ClauseId, ClauseHash> index_;
  Var num_vars_ = 0;
  std::vector<FormulaNote> notes_;
};

/// Split of an agent KB into clauses shared syntactically with the human KB
/// (hard) and the rest (soft).
struct KbPartition {
  std::vector<ClauseId> hard;
  std::vector<ClauseId> soft;
};

KbPartition intersect_kbs(const CnfFormula& kb_a, const CnfFormula& kb_h);

/// Clauses encoding the negation of a CNF query, possibly over fresh
/// variables [first_aux, first_aux + aux_count).
struct QueryNegation {
  std::vector<Clause> clauses;
  Var first_aux = 0;
  Var aux_count = 0;
  bool single_clause = false;

  Var end_var() const { return first_aux + aux_count; }
};

QueryNegation negate_query(const CnfFormula& query, Var next_free_var);

std::vector<Clause> select(const CnfFormula& formula, std::span<const ClauseId> ids);

std::string to_string(const Clause& clause);

}  // namespace mrx
