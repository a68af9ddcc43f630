#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "mrx/deadline.hpp"
#include "mrx/formula.hpp"

namespace mrx {

enum class SolveStatus { satisfiable, unsatisfiable };

/// Minimal incremental SAT interface. Variables are numbered from 1 and
/// created with new_var(); clauses may be added between solve() calls.
class SatBackend {
 public:
  virtual ~SatBackend() = default;

  virtual Var new_var() = 0;
  virtual Var num_vars() const = 0;
  virtual void add_clause(std::span<const Literal> literals) = 0;

  /// Throws Timeout when the deadline expires mid-search.
  virtual SolveStatus solve(std::span<const Literal> assumptions, const Deadline* deadline) = 0;

  /// Valid after a satisfiable answer.
  virtual bool model_value(Var var) const = 0;

  /// After an unsatisfiable answer: assumptions that together with the clause
  /// database are already contradictory. Empty if the database alone is.
  virtual std::vector<Literal> failed_assumptions() const = 0;
};

using BackendFactory = std::function<std::unique_ptr<SatBackend>()>;

/// The bundled CDCL solver (watched literals, 1UIP learning, VSIDS, Luby
/// restarts, phase saving).
std::unique_ptr<SatBackend> make_cdcl_backend();

/// Handle to a soft clause registered in a SatSession.
struct Selector {
  Var var = 0;
  auto operator<=>(const Selector&) const = default;
};

struct SolveResult {
  SolveStatus status = SolveStatus::satisfiable;
  /// Indexed by user variable; entry 0 unused. Present iff satisfiable.
  std::vector<char> model;
  /// Present iff unsatisfiable.
  std::vector<Selector> conflict_selectors;
  std::vector<Literal> conflict_literals;

  bool sat() const { return status == SolveStatus::satisfiable; }
  bool value(Var var) const { return var < model.size() && model[var]; }
  bool value(Literal lit) const { return value(lit.var()) == lit.positive(); }
  bool satisfies(const Clause& clause) const;
};

/// A solver session over user variables with hard clauses that are always
/// active and soft clauses each guarded by its own selector. A soft clause is
/// active exactly when its selector is assumed.
class SatSession {
 public:
  struct Options {
    /// Re-check every satisfiable answer against the active clauses.
    bool check_models = false;
    BackendFactory backend;
  };

  explicit SatSession(Var num_vars = 0);
  SatSession(Var num_vars, Options options);

  SatSession(SatSession&&) noexcept;
  SatSession& operator=(SatSession&&) noexcept;
  ~SatSession();

  void add_hard(const Clause& clause);
  Selector add_soft(const Clause& clause);

  SolveResult solve(std::span<const Selector> selectors = {},
                    std::span<const Literal> literals = {});

  void set_deadline(const Deadline* deadline) { deadline_ = deadline; }

  Var num_user_vars() const { return static_cast<Var>(to_internal_.size() - 1); }
  std::size_t calls() const { return calls_; }
  std::size_t soft_count() const { return soft_.size(); }
  const Clause& soft_clause(Selector s) const;

  /// Process-wide default for Options::check_models (used by test builds).
  static void set_default_model_checks(bool enabled);
  static bool default_model_checks();

 private:
  Var internal(Var user_var);
  Literal internal(Literal lit) { return Literal(internal(lit.var()), lit.positive()); }

  std::unique_ptr<SatBackend> backend_;
  Options options_;
  const Deadline* deadline_ = nullptr;
  std::vector<Var> to_internal_{0};
  std::vector<Var> to_user_{0};  // 0 for selector variables
  std::vector<Clause> hard_;
  std::vector<std::pair<Selector, Clause>> soft_;
  std::vector<std::size_t> soft_by_var_;  // internal var -> index into soft_ + 1
  std::size_t calls_ = 0;
};

}  // namespace mrx
