// Conflict-driven clause learning solver used as the default SAT backend.
//
// Layout follows the classic MiniSat design: literals are encoded as
// 2 * var + sign, each clause watches its first two literals, learnt clauses
// are 1UIP with local minimization, and assumptions occupy the first decision
// levels so that a failed assumption can be traced back to the assumptions it
// depends on.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mrx/sat.hpp"

namespace mrx {
namespace {

using Lit = std::uint32_t;
using CRef = std::uint32_t;

constexpr Lit kUndefLit = ~Lit{0};
constexpr CRef kNoReason = ~CRef{0};

constexpr std::int8_t kTrue = 1;
constexpr std::int8_t kFalse = -1;
constexpr std::int8_t kUndef = 0;

inline Lit make_lit(std::uint32_t x, bool negative) { return 2 * x + (negative ? 1 : 0); }
inline std::uint32_t var_of(Lit l) { return l >> 1; }
inline bool is_negative(Lit l) { return (l & 1) != 0; }
inline Lit negate(Lit l) { return l ^ 1; }

enum class Outcome { sat, unsat, unknown };

double luby(double base, int x) {
  int size = 1;
  int seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(base, seq);
}

struct ClauseData {
  std::vector<Lit> lits;
  double activity = 0.0;
  std::uint32_t lbd = 0;
  bool learnt = false;
  bool deleted = false;
};

struct Watcher {
  CRef cref;
  Lit blocker;
};

// Max-heap of variables keyed by activity.
class VarOrder {
 public:
  explicit VarOrder(const std::vector<double>& activity) : activity_(activity) {}

  bool empty() const { return heap_.empty(); }
  bool contains(std::uint32_t x) const { return x < pos_.size() && pos_[x] >= 0; }

  void grow(std::uint32_t n) {
    if (pos_.size() < n) pos_.resize(n, -1);
  }

  void insert(std::uint32_t x) {
    grow(x + 1);
    if (contains(x)) return;
    pos_[x] = static_cast<int>(heap_.size());
    heap_.push_back(x);
    up(pos_[x]);
  }

  void increased(std::uint32_t x) {
    if (contains(x)) up(pos_[x]);
  }

  std::uint32_t pop() {
    const std::uint32_t top = heap_.front();
    heap_.front() = heap_.back();
    pos_[heap_.front()] = 0;
    pos_[top] = -1;
    heap_.pop_back();
    if (heap_.size() > 1) down(0);
    return top;
  }

 private:
  bool before(std::uint32_t a, std::uint32_t b) const {
    if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
    return a < b;
  }

  void up(int i) {
    const std::uint32_t x = heap_[i];
    while (i > 0) {
      const int parent = (i - 1) >> 1;
      if (!before(x, heap_[parent])) break;
      heap_[i] = heap_[parent];
      pos_[heap_[i]] = i;
      i = parent;
    }
    heap_[i] = x;
    pos_[x] = i;
  }

  void down(int i) {
    const std::uint32_t x = heap_[i];
    const int n = static_cast<int>(heap_.size());
    while (2 * i + 1 < n) {
      int child = 2 * i + 1;
      if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
      if (!before(heap_[child], x)) break;
      heap_[i] = heap_[child];
      pos_[heap_[i]] = i;
      i = child;
    }
    heap_[i] = x;
    pos_[x] = i;
  }

  const std::vector<double>& activity_;
  std::vector<std::uint32_t> heap_;
  std::vector<int> pos_;
};

class CdclSolver final : public SatBackend {
 public:
  CdclSolver() : order_(activity_) {}

  Var new_var() override {
    const std::uint32_t x = num_vars_++;
    assigns_.push_back(kUndef);
    level_.push_back(0);
    reason_.push_back(kNoReason);
    polarity_.push_back(1);
    activity_.push_back(0.0);
    seen_.push_back(0);
    watches_.emplace_back();
    watches_.emplace_back();
    order_.insert(x);
    return num_vars_;
  }

  Var num_vars() const override { return num_vars_; }

  void add_clause(std::span<const Literal> literals) override {
    if (!ok_) return;
    std::vector<Lit> lits;
    lits.reserve(literals.size());
    for (const Literal& l : literals) {
      while (num_vars_ < l.var()) new_var();
      lits.push_back(make_lit(l.var() - 1, !l.positive()));
    }
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    std::size_t out = 0;
    for (std::size_t i = 0; i < lits.size(); ++i) {
      if (i + 1 < lits.size() && lits[i + 1] == negate(lits[i])) return;  // tautology
      const std::int8_t v = value(lits[i]);
      if (v == kTrue) return;
      if (v == kFalse) continue;
      lits[out++] = lits[i];
    }
    lits.resize(out);
    if (lits.empty()) {
      ok_ = false;
      return;
    }
    if (lits.size() == 1) {
      enqueue(lits[0], kNoReason);
      if (propagate() != kNoReason) ok_ = false;
      return;
    }
    ++num_original_;
    attach(allocate(std::move(lits), false, 0));
  }

  SolveStatus solve(std::span<const Literal> assumptions, const Deadline* deadline) override {
    model_.clear();
    failed_.clear();
    if (!ok_) return SolveStatus::unsatisfiable;

    assumptions_.clear();
    for (const Literal& l : assumptions) {
      while (num_vars_ < l.var()) new_var();
      assumptions_.push_back(make_lit(l.var() - 1, !l.positive()));
    }
    deadline_ = deadline;
    max_learnts_ = std::max({max_learnts_, static_cast<double>(num_original_) / 3.0, 2000.0});

    Outcome outcome = Outcome::unknown;
    for (int restarts = 0; outcome == Outcome::unknown; ++restarts) {
      const auto budget = static_cast<std::uint64_t>(luby(2.0, restarts) * 100.0);
      outcome = search(budget);
    }
    cancel_until(0);
    return outcome == Outcome::sat ? SolveStatus::satisfiable : SolveStatus::unsatisfiable;
  }

  bool model_value(Var var) const override { return model_.at(var - 1) != 0; }

  std::vector<Literal> failed_assumptions() const override { return failed_; }

 private:
  std::int8_t value(Lit l) const {
    const std::int8_t a = assigns_[var_of(l)];
    return is_negative(l) ? static_cast<std::int8_t>(-a) : a;
  }

  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  CRef allocate(std::vector<Lit> lits, bool learnt, std::uint32_t lbd) {
    CRef cref;
    if (!free_.empty()) {
      cref = free_.back();
      free_.pop_back();
    } else {
      cref = static_cast<CRef>(clauses_.size());
      clauses_.emplace_back();
    }
    ClauseData& c = clauses_[cref];
    c.lits = std::move(lits);
    c.activity = 0.0;
    c.lbd = lbd;
    c.learnt = learnt;
    c.deleted = false;
    if (learnt) ++num_learnts_;
    return cref;
  }

  void attach(CRef cref) {
    const ClauseData& c = clauses_[cref];
    watches_[c.lits[0]].push_back({cref, c.lits[1]});
    watches_[c.lits[1]].push_back({cref, c.lits[0]});
  }

  void enqueue(Lit l, CRef reason) {
    const std::uint32_t x = var_of(l);
    assigns_[x] = is_negative(l) ? kFalse : kTrue;
    level_[x] = decision_level();
    reason_[x] = reason;
    trail_.push_back(l);
  }

  void new_decision_level() { trail_lim_.push_back(static_cast<int>(trail_.size())); }

  void cancel_until(int level) {
    if (decision_level() <= level) return;
    for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[level]; --i) {
      const std::uint32_t x = var_of(trail_[i]);
      assigns_[x] = kUndef;
      reason_[x] = kNoReason;
      polarity_[x] = is_negative(trail_[i]) ? 1 : 0;
      order_.insert(x);
    }
    qhead_ = static_cast<std::size_t>(trail_lim_[level]);
    trail_.resize(qhead_);
    trail_lim_.resize(level);
  }

  CRef propagate() {
    CRef conflict = kNoReason;
    while (qhead_ < trail_.size()) {
      const Lit p = trail_[qhead_++];
      const Lit false_lit = negate(p);
      std::vector<Watcher>& ws = watches_[false_lit];
      std::size_t i = 0;
      std::size_t j = 0;
      const std::size_t n = ws.size();
      while (i < n) {
        const Watcher w = ws[i++];
        if (value(w.blocker) == kTrue) {
          ws[j++] = w;
          continue;
        }
        ClauseData& c = clauses_[w.cref];
        if (c.lits[0] == false_lit) std::swap(c.lits[0], c.lits[1]);
        const Lit first = c.lits[0];
        if (first != w.blocker && value(first) == kTrue) {
          ws[j++] = {w.cref, first};
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.lits.size(); ++k) {
          if (value(c.lits[k]) != kFalse) {
            std::swap(c.lits[1], c.lits[k]);
            watches_[c.lits[1]].push_back({w.cref, first});
            moved = true;
            break;
          }
        }
        if (moved) continue;
        ws[j++] = {w.cref, first};
        if (value(first) == kFalse) {
          conflict = w.cref;
          qhead_ = trail_.size();
          while (i < n) ws[j++] = ws[i++];
        } else {
          enqueue(first, w.cref);
        }
      }
      ws.resize(j);
      if (conflict != kNoReason) break;
    }
    return conflict;
  }

  void bump_var(std::uint32_t x) {
    if ((activity_[x] += var_inc_) > 1e100) {
      for (double& a : activity_) a *= 1e-100;
      var_inc_ *= 1e-100;
    }
    order_.increased(x);
  }

  void bump_clause(ClauseData& c) {
    if ((c.activity += clause_inc_) > 1e20) {
      for (ClauseData& d : clauses_) {
        if (d.learnt) d.activity *= 1e-20;
      }
      clause_inc_ *= 1e-20;
    }
  }

  // Removable if every antecedent literal is already in the learnt clause.
  bool redundant(Lit l) const {
    const CRef r = reason_[var_of(l)];
    if (r == kNoReason) return false;
    const ClauseData& c = clauses_[r];
    for (std::size_t k = 1; k < c.lits.size(); ++k) {
      const std::uint32_t y = var_of(c.lits[k]);
      if (!seen_[y] && level_[y] > 0) return false;
    }
    return true;
  }

  void analyze(CRef conflict, std::vector<Lit>& learnt, int& backtrack_level,
               std::uint32_t& lbd) {
    int pending = 0;
    Lit p = kUndefLit;
    learnt.clear();
    learnt.push_back(kUndefLit);
    int index = static_cast<int>(trail_.size()) - 1;

    do {
      ClauseData& c = clauses_[conflict];
      if (c.learnt) bump_clause(c);
      for (std::size_t j = (p == kUndefLit) ? 0 : 1; j < c.lits.size(); ++j) {
        const Lit q = c.lits[j];
        const std::uint32_t x = var_of(q);
        if (!seen_[x] && level_[x] > 0) {
          bump_var(x);
          seen_[x] = 1;
          if (level_[x] >= decision_level()) {
            ++pending;
          } else {
            learnt.push_back(q);
          }
        }
      }
      while (!seen_[var_of(trail_[index--])]) {
      }
      p = trail_[index + 1];
      conflict = reason_[var_of(p)];
      seen_[var_of(p)] = 0;
      --pending;
    } while (pending > 0);
    learnt[0] = negate(p);

    to_clear_.assign(learnt.begin(), learnt.end());
    std::size_t out = 1;
    for (std::size_t i = 1; i < learnt.size(); ++i) {
      if (!redundant(learnt[i])) learnt[out++] = learnt[i];
    }
    learnt.resize(out);
    for (Lit l : to_clear_) seen_[var_of(l)] = 0;

    if (learnt.size() == 1) {
      backtrack_level = 0;
    } else {
      std::size_t max_i = 1;
      for (std::size_t i = 2; i < learnt.size(); ++i) {
        if (level_[var_of(learnt[i])] > level_[var_of(learnt[max_i])]) max_i = i;
      }
      std::swap(learnt[1], learnt[max_i]);
      backtrack_level = level_[var_of(learnt[1])];
    }

    levels_seen_.clear();
    for (Lit l : learnt) levels_seen_.push_back(level_[var_of(l)]);
    std::sort(levels_seen_.begin(), levels_seen_.end());
    lbd = static_cast<std::uint32_t>(
        std::unique(levels_seen_.begin(), levels_seen_.end()) - levels_seen_.begin());
  }

  // `failed` is an assumption currently assigned false. Collects the
  // assumptions (decisions) its falsification depends on.
  void analyze_final(Lit failed) {
    failed_.clear();
    auto to_api = [](Lit l) { return Literal(var_of(l) + 1, !is_negative(l)); };
    failed_.push_back(to_api(failed));
    const std::uint32_t fx = var_of(failed);
    if (level_[fx] == 0 || decision_level() == 0) return;
    seen_[fx] = 1;
    for (int i = static_cast<int>(trail_.size()) - 1; i >= trail_lim_[0]; --i) {
      const std::uint32_t x = var_of(trail_[i]);
      if (!seen_[x]) continue;
      if (reason_[x] == kNoReason) {
        failed_.push_back(to_api(trail_[i]));
      } else {
        const ClauseData& c = clauses_[reason_[x]];
        for (std::size_t k = 1; k < c.lits.size(); ++k) {
          const std::uint32_t y = var_of(c.lits[k]);
          if (level_[y] > 0) seen_[y] = 1;
        }
      }
      seen_[x] = 0;
    }
    seen_[fx] = 0;
  }

  bool locked(CRef cref) const {
    const ClauseData& c = clauses_[cref];
    return value(c.lits[0]) == kTrue && reason_[var_of(c.lits[0])] == cref;
  }

  void reduce_db() {
    std::vector<CRef> learnts;
    for (CRef cref = 0; cref < clauses_.size(); ++cref) {
      const ClauseData& c = clauses_[cref];
      if (c.learnt && !c.deleted) learnts.push_back(cref);
    }
    std::sort(learnts.begin(), learnts.end(), [&](CRef a, CRef b) {
      const ClauseData& ca = clauses_[a];
      const ClauseData& cb = clauses_[b];
      if (ca.lbd != cb.lbd) return ca.lbd > cb.lbd;
      if (ca.activity != cb.activity) return ca.activity < cb.activity;
      return a < b;
    });
    const std::size_t target = learnts.size() / 2;
    std::size_t removed = 0;
    for (CRef cref : learnts) {
      if (removed >= target) break;
      ClauseData& c = clauses_[cref];
      if (c.lbd <= 2 || c.lits.size() <= 2 || locked(cref)) continue;
      c.deleted = true;
      ++removed;
    }
    for (auto& ws : watches_) {
      ws.erase(std::remove_if(ws.begin(), ws.end(),
                              [&](const Watcher& w) { return clauses_[w.cref].deleted; }),
               ws.end());
    }
    for (CRef cref : learnts) {
      ClauseData& c = clauses_[cref];
      if (c.deleted && !c.lits.empty()) {
        std::vector<Lit>().swap(c.lits);
        free_.push_back(cref);
        --num_learnts_;
      }
    }
    max_learnts_ *= 1.1;
  }

  Lit pick_branch() {
    while (!order_.empty()) {
      const std::uint32_t x = order_.pop();
      if (assigns_[x] == kUndef) return make_lit(x, polarity_[x] != 0);
    }
    return kUndefLit;
  }

  void check_deadline() {
    if (deadline_ != nullptr && deadline_->expired()) {
      cancel_until(0);
      throw Timeout{};
    }
  }

  Outcome search(std::uint64_t conflict_budget) {
    std::uint64_t conflicts_here = 0;
    std::vector<Lit> learnt;
    for (;;) {
      const CRef conflict = propagate();
      if (conflict != kNoReason) {
        ++conflicts_;
        ++conflicts_here;
        if (decision_level() == 0) {
          ok_ = false;
          return Outcome::unsat;
        }
        int backtrack_level = 0;
        std::uint32_t lbd = 0;
        analyze(conflict, learnt, backtrack_level, lbd);
        cancel_until(backtrack_level);
        if (learnt.size() == 1) {
          enqueue(learnt[0], kNoReason);
        } else {
          const CRef cref = allocate(learnt, true, lbd);
          attach(cref);
          bump_clause(clauses_[cref]);
          enqueue(learnt[0], cref);
        }
        var_inc_ /= 0.95;
        clause_inc_ /= 0.999;
        if ((conflicts_ & 255) == 0) check_deadline();
        continue;
      }

      if (conflicts_here >= conflict_budget) {
        cancel_until(0);
        return Outcome::unknown;
      }
      if (static_cast<double>(num_learnts_) >= max_learnts_) reduce_db();

      Lit next = kUndefLit;
      while (decision_level() < static_cast<int>(assumptions_.size())) {
        const Lit a = assumptions_[decision_level()];
        const std::int8_t v = value(a);
        if (v == kTrue) {
          new_decision_level();
        } else if (v == kFalse) {
          analyze_final(a);
          return Outcome::unsat;
        } else {
          next = a;
          break;
        }
      }
      if (next == kUndefLit) {
        if ((++decisions_ & 1023) == 0) check_deadline();
        next = pick_branch();
        if (next == kUndefLit) {
          model_.assign(assigns_.begin(), assigns_.end());
          for (auto& m : model_) m = (m == kTrue) ? 1 : 0;
          return Outcome::sat;
        }
      }
      new_decision_level();
      enqueue(next, kNoReason);
    }
  }

  bool ok_ = true;
  std::uint32_t num_vars_ = 0;
  std::vector<std::int8_t> assigns_;
  std::vector<int> level_;
  std::vector<CRef> reason_;
  std::vector<char> polarity_;  // 1 = assign negative first
  std::vector<double> activity_;
  std::vector<char> seen_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<ClauseData> clauses_;
  std::vector<CRef> free_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::vector<Lit> assumptions_;
  std::vector<Lit> to_clear_;
  std::vector<int> levels_seen_;
  std::vector<std::int8_t> model_;
  std::vector<Literal> failed_;
  VarOrder order_;
  std::size_t qhead_ = 0;
  std::size_t num_original_ = 0;
  std::size_t num_learnts_ = 0;
  double max_learnts_ = 0.0;
  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  std::uint64_t conflicts_ = 0;
  std::uint64_t decisions_ = 0;
  const Deadline* deadline_ = nullptr;
};

}  // namespace

std::unique_ptr<SatBackend> make_cdcl_backend() { return std::make_unique<CdclSolver>(); }

}  // namespace mrx
