#pragma once

// Conflict-driven clause-learning SAT solver with two watched literals.
//
// Queries are posed as assumptions, which are decided before anything else,
// so every learned clause follows from the clause database alone and is kept
// for later queries. Each learned clause records the clauses it was resolved
// from; after an unsatisfiable query core() lists original clauses that are
// jointly unsatisfiable with failed_assumptions().
//
// Branching only considers "relevant" variables: assumption variables, every
// variable of a clause with no negative literal, and every variable of a
// clause containing -x once x has become true. Remaining variables are false
// in the model. When all relevant variables are assigned without conflict,
// that completion satisfies every clause, so large formulas whose queries
// only touch a small cone stay cheap.

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace debcheck::sat {

using Var = std::uint32_t;
using ClauseId = std::uint32_t;

class Literal {
public:
  constexpr Literal() = default;
  constexpr Literal(Var v, bool negative) : code_(v * 2 + (negative ? 1U : 0U)) {}

  static constexpr Literal positive(Var v) { return Literal(v, false); }
  static constexpr Literal negative(Var v) { return Literal(v, true); }

  constexpr Var var() const { return code_ >> 1; }
  constexpr bool is_negative() const { return (code_ & 1U) != 0; }
  constexpr std::uint32_t code() const { return code_; }
  constexpr Literal operator~() const {
    Literal l;
    l.code_ = code_ ^ 1U;
    return l;
  }
  constexpr bool operator==(const Literal&) const = default;
  constexpr auto operator<=>(const Literal&) const = default;

private:
  std::uint32_t code_ = 0;
};

struct SolverStats {
  std::uint64_t solves = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t learned = 0;
  std::uint64_t restarts = 0;
};

class Solver {
public:
  explicit Solver(std::size_t num_vars = 0);

  Var new_var();
  std::size_t num_vars() const { return assigns_.size(); }

  // Clause ids are dense and shared with learned clauses; the id returned here
  // is what core() reports. Must be called between solves.
  ClauseId add_clause(std::span<const Literal> lits);
  bool is_original(ClauseId id) const { return !clauses_[id].learnt; }

  bool solve(std::span<const Literal> assumptions = {});

  // Valid after a satisfiable solve.
  bool model_value(Var v) const { return model_[v]; }
  std::vector<Var> true_vars() const;

  // Valid after an unsatisfiable solve. Sorted original clause ids.
  const std::vector<ClauseId>& core() const { return core_; }
  // The assumptions the refutation depends on, in the order given.
  const std::vector<Literal>& failed_assumptions() const { return failed_; }

  // False once the clause database itself is unsatisfiable.
  bool okay() const { return ok_; }
  const SolverStats& stats() const { return stats_; }

private:
  static constexpr ClauseId kNoReason = std::numeric_limits<ClauseId>::max();
  enum class Value : std::uint8_t { False, True, Undef };

  struct Clause {
    std::vector<Literal> lits;
    double activity = 0;
    bool learnt = false;
    bool removed = false;   // learned clause dropped from the database
    bool attached = false;  // watched (size >= 2 and not satisfied at add time)
    bool deferred = false;  // listed in deferred_ of its pending literal
  };
  struct Watcher {
    ClauseId clause;
    Literal blocker;
  };
  // A resolution premise: a clause, or the level-0 implication of a variable.
  struct Antecedent {
    bool is_unit;
    std::uint32_t id;  // ClauseId or Var
  };

  Value value(Literal l) const {
    const Value v = assigns_[l.var()];
    if (v == Value::Undef) return v;
    return (v == Value::True) != l.is_negative() ? Value::True : Value::False;
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Literal l, ClauseId reason);
  ClauseId propagate();
  void analyze(ClauseId conflict, std::vector<Literal>& learnt, int& backtrack_level,
               std::vector<Antecedent>& premises);
  bool redundant(Literal l) const;
  void analyze_final(Literal failed);
  void collect_core(std::vector<Antecedent> roots);
  void cancel_until(int level);
  void attach(ClauseId id);
  ClauseId add_learnt(std::vector<Literal> lits, std::vector<Antecedent> premises);
  void reduce_learnts();

  void mark_relevant(Var v, bool permanent);
  void on_true(Var v);
  void reset_relevance();
  void flush_deferred(Var v);

  void bump_var(Var v);
  void bump_clause(Clause& c);
  bool heap_less(Var a, Var b) const;
  void heap_insert(Var v);
  void heap_sift_up(std::size_t pos);
  void heap_sift_down(std::size_t pos);
  Var heap_pop();

  std::vector<Clause> clauses_;
  std::vector<std::vector<Antecedent>> premises_;  // by ClauseId; empty for originals
  std::vector<std::vector<Watcher>> watches_;      // by literal code: clauses watching it
  std::vector<std::vector<ClauseId>> neg_occurs_;  // by var: original clauses containing -v

  std::vector<Value> assigns_;
  std::vector<int> level_;
  std::vector<ClauseId> reason_;
  std::vector<Literal> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;

  std::vector<std::uint8_t> relevant_;  // 0 no, 1 for this solve, 2 always
  std::vector<Var> relevant_this_solve_;
  std::vector<Var> always_relevant_;
  // By var: clauses that became unit on -v while v was irrelevant. Leaving v
  // unassigned satisfies them, so the implication waits until v matters.
  std::vector<std::vector<ClauseId>> deferred_;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double clause_inc_ = 1.0;
  std::vector<Var> heap_;
  std::vector<std::int64_t> heap_pos_;  // -1 when absent

  mutable std::vector<std::uint8_t> seen_;
  std::vector<bool> model_;
  std::vector<ClauseId> core_;
  std::vector<Literal> failed_;
  std::vector<ClauseId> learnts_;
  std::size_t max_learnts_ = 4000;

  bool ok_ = true;
  ClauseId empty_clause_ = kNoReason;  // set when ok_ goes false
  std::vector<Antecedent> refutation_;  // premises of the level-0 conflict
  SolverStats stats_;
};

} // namespace debcheck::sat
