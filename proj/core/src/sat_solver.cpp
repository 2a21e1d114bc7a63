#include "debcheck/sat_solver.hpp"

#include <algorithm>
#include <cassert>

namespace debcheck::sat {
namespace {

// Luby sequence 1 1 2 1 1 2 4 ... scaled by the restart unit.
double luby(double y, int x) {
  int size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

constexpr int kRestartUnit = 100;
constexpr double kVarDecay = 0.95;
constexpr double kClauseDecay = 0.999;

} // namespace

Solver::Solver(std::size_t num_vars) {
  for (std::size_t i = 0; i < num_vars; ++i) new_var();
}

Var Solver::new_var() {
  const auto v = static_cast<Var>(assigns_.size());
  assigns_.push_back(Value::Undef);
  level_.push_back(0);
  reason_.push_back(kNoReason);
  relevant_.push_back(0);
  activity_.push_back(0);
  heap_pos_.push_back(-1);
  seen_.push_back(0);
  neg_occurs_.emplace_back();
  deferred_.emplace_back();
  watches_.emplace_back();
  watches_.emplace_back();
  model_.push_back(false);
  return v;
}

ClauseId Solver::add_clause(std::span<const Literal> lits) {
  assert(decision_level() == 0);
  const auto id = static_cast<ClauseId>(clauses_.size());
  Clause c;
  c.lits.assign(lits.begin(), lits.end());
  std::sort(c.lits.begin(), c.lits.end());
  c.lits.erase(std::unique(c.lits.begin(), c.lits.end()), c.lits.end());
  bool tautology = false;
  for (std::size_t i = 1; i < c.lits.size(); ++i)
    if (c.lits[i] == ~c.lits[i - 1]) tautology = true;
  clauses_.push_back(std::move(c));
  premises_.emplace_back();
  if (tautology || !ok_) return id;

  Clause& cl = clauses_[id];
  bool has_negative = false;
  for (const Literal l : cl.lits) {
    if (!l.is_negative()) continue;
    has_negative = true;
    neg_occurs_[l.var()].push_back(id);
    if (assigns_[l.var()] == Value::True)
      for (const Literal m : cl.lits) mark_relevant(m.var(), true);
  }
  if (!has_negative)
    for (const Literal m : cl.lits) mark_relevant(m.var(), true);

  // Non-false literals first so that the watches are sound at level 0.
  std::stable_partition(cl.lits.begin(), cl.lits.end(),
                        [&](Literal l) { return value(l) != Value::False; });
  const std::size_t open = static_cast<std::size_t>(std::count_if(
      cl.lits.begin(), cl.lits.end(), [&](Literal l) { return value(l) != Value::False; }));

  if (open == 0) {
    ok_ = false;
    refutation_.clear();
    refutation_.push_back({false, id});
    for (const Literal l : cl.lits) refutation_.push_back({true, l.var()});
    return id;
  }
  if (cl.lits.size() >= 2) attach(id);
  if (open == 1 && value(cl.lits[0]) == Value::Undef) enqueue(cl.lits[0], id);
  return id;
}

void Solver::attach(ClauseId id) {
  Clause& c = clauses_[id];
  c.attached = true;
  watches_[c.lits[0].code()].push_back({id, c.lits[1]});
  watches_[c.lits[1].code()].push_back({id, c.lits[0]});
}

void Solver::mark_relevant(Var v, bool permanent) {
  if (permanent) {
    if (relevant_[v] == 2) return;
    relevant_[v] = 2;
    always_relevant_.push_back(v);
  } else {
    if (relevant_[v] != 0) return;
    relevant_[v] = 1;
    relevant_this_solve_.push_back(v);
  }
  if (assigns_[v] == Value::Undef) heap_insert(v);
  if (!deferred_[v].empty()) flush_deferred(v);
}

void Solver::flush_deferred(Var v) {
  std::vector<ClauseId> pending;
  pending.swap(deferred_[v]);
  for (const ClauseId id : pending) {
    Clause& c = clauses_[id];
    c.deferred = false;
    if (c.removed || assigns_[v] != Value::Undef) continue;
    const Literal unit = Literal::negative(v);
    const bool still_unit = std::all_of(c.lits.begin(), c.lits.end(), [&](Literal l) {
      return l == unit || value(l) == Value::False;
    });
    if (still_unit && std::find(c.lits.begin(), c.lits.end(), unit) != c.lits.end())
      enqueue(unit, id);
  }
}

void Solver::on_true(Var v) {
  const bool permanent = level_[v] == 0;
  for (const ClauseId id : neg_occurs_[v])
    for (const Literal l : clauses_[id].lits) mark_relevant(l.var(), permanent);
}

void Solver::reset_relevance() {
  for (const Var v : relevant_this_solve_)
    if (relevant_[v] == 1) relevant_[v] = 0;
  relevant_this_solve_.clear();
  for (const Var v : heap_) heap_pos_[v] = -1;
  heap_.clear();
}

void Solver::enqueue(Literal l, ClauseId reason) {
  const Var v = l.var();
  assigns_[v] = l.is_negative() ? Value::False : Value::True;
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
  if (!l.is_negative()) on_true(v);
}

ClauseId Solver::propagate() {
  ClauseId conflict = kNoReason;
  while (qhead_ < trail_.size()) {
    const Literal falsified = ~trail_[qhead_++];
    ++stats_.propagations;
    auto& ws = watches_[falsified.code()];
    std::size_t i = 0, j = 0;
    const std::size_t end = ws.size();
    while (i < end) {
      const Watcher w = ws[i++];
      if (value(w.blocker) == Value::True) {
        ws[j++] = w;
        continue;
      }
      Clause& c = clauses_[w.clause];
      if (c.removed) continue;
      if (c.lits[0] == falsified) std::swap(c.lits[0], c.lits[1]);
      const Literal first = c.lits[0];
      const Watcher kept{w.clause, first};
      if (first != w.blocker && value(first) == Value::True) {
        ws[j++] = kept;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.lits.size(); ++k) {
        if (value(c.lits[k]) != Value::False) {
          std::swap(c.lits[1], c.lits[k]);
          watches_[c.lits[1].code()].push_back(kept);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = kept;
      if (value(first) == Value::False) {
        conflict = w.clause;
        qhead_ = trail_.size();
        while (i < end) ws[j++] = ws[i++];
      } else if (first.is_negative() && relevant_[first.var()] == 0) {
        if (!c.deferred) {
          c.deferred = true;
          deferred_[first.var()].push_back(w.clause);
        }
      } else {
        enqueue(first, w.clause);
      }
    }
    ws.resize(j);
    if (conflict != kNoReason) break;
  }
  return conflict;
}

bool Solver::redundant(Literal l) const {
  const ClauseId r = reason_[l.var()];
  if (r == kNoReason) return false;
  const auto& lits = clauses_[r].lits;
  for (std::size_t k = 1; k < lits.size(); ++k) {
    const Var v = lits[k].var();
    if (seen_[v] == 0 && level_[v] > 0) return false;
  }
  return true;
}

void Solver::analyze(ClauseId conflict, std::vector<Literal>& learnt, int& backtrack_level,
                     std::vector<Antecedent>& premises) {
  learnt.assign(1, Literal{});
  premises.clear();
  std::vector<Var> to_clear;
  int open = 0;
  bool have_pivot = false;
  Literal pivot;
  std::size_t index = trail_.size();

  const auto note_level0 = [&](Var v) {
    if (seen_[v] != 0) return;
    seen_[v] = 2;
    to_clear.push_back(v);
    premises.push_back({true, v});
  };

  do {
    premises.push_back({false, conflict});
    Clause& c = clauses_[conflict];
    if (c.learnt) bump_clause(c);
    for (std::size_t k = have_pivot ? 1 : 0; k < c.lits.size(); ++k) {
      const Literal q = c.lits[k];
      const Var v = q.var();
      if (seen_[v] != 0) continue;
      if (level_[v] == 0) {
        note_level0(v);
        continue;
      }
      seen_[v] = 1;
      to_clear.push_back(v);
      bump_var(v);
      if (level_[v] >= decision_level()) ++open;
      else learnt.push_back(q);
    }
    do {
      --index;
    } while (seen_[trail_[index].var()] != 1);
    pivot = trail_[index];
    have_pivot = true;
    conflict = reason_[pivot.var()];
    seen_[pivot.var()] = 0;
    --open;
  } while (open > 0);
  learnt[0] = ~pivot;

  std::size_t kept = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    if (!redundant(learnt[i])) {
      learnt[kept++] = learnt[i];
      continue;
    }
    const ClauseId r = reason_[learnt[i].var()];
    premises.push_back({false, r});
    const auto& lits = clauses_[r].lits;
    for (std::size_t k = 1; k < lits.size(); ++k)
      if (level_[lits[k].var()] == 0) note_level0(lits[k].var());
  }
  learnt.resize(kept);

  backtrack_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i)
      if (level_[learnt[i].var()] > level_[learnt[max_i].var()]) max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = level_[learnt[1].var()];
  }
  for (const Var v : to_clear) seen_[v] = 0;
}

void Solver::analyze_final(Literal failed) {
  failed_.assign(1, failed);
  std::vector<Antecedent> roots;
  const Var fv = failed.var();
  if (level_[fv] == 0) {
    roots.push_back({true, fv});
  } else {
    seen_[fv] = 1;
    for (std::size_t i = trail_.size(); i-- > trail_lim_[0];) {
      const Var x = trail_[i].var();
      if (seen_[x] == 0) continue;
      seen_[x] = 0;
      const ClauseId r = reason_[x];
      if (r == kNoReason) {
        failed_.push_back(trail_[i]);
        continue;
      }
      roots.push_back({false, r});
      const auto& lits = clauses_[r].lits;
      for (std::size_t k = 1; k < lits.size(); ++k) {
        const Var y = lits[k].var();
        if (level_[y] > 0) seen_[y] = 1;
        else roots.push_back({true, y});
      }
    }
  }
  collect_core(std::move(roots));
}

void Solver::collect_core(std::vector<Antecedent> stack) {
  core_.clear();
  std::vector<std::uint8_t> clause_done(clauses_.size(), 0);
  std::vector<std::uint8_t> var_done(num_vars(), 0);
  while (!stack.empty()) {
    const Antecedent a = stack.back();
    stack.pop_back();
    if (a.is_unit) {
      if (var_done[a.id] != 0) continue;
      var_done[a.id] = 1;
      const ClauseId r = reason_[a.id];
      assert(r != kNoReason);
      stack.push_back({false, r});
      const auto& lits = clauses_[r].lits;
      for (const Literal l : lits)
        if (l.var() != a.id) stack.push_back({true, l.var()});
      continue;
    }
    if (clause_done[a.id] != 0) continue;
    clause_done[a.id] = 1;
    if (!clauses_[a.id].learnt) {
      core_.push_back(a.id);
      continue;
    }
    const auto& premises = premises_[a.id];
    stack.insert(stack.end(), premises.begin(), premises.end());
  }
  std::sort(core_.begin(), core_.end());
}

void Solver::cancel_until(int level) {
  if (decision_level() <= level) return;
  for (std::size_t i = trail_.size(); i-- > trail_lim_[static_cast<std::size_t>(level)];) {
    const Var v = trail_[i].var();
    assigns_[v] = Value::Undef;
    reason_[v] = kNoReason;
    if (relevant_[v] != 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[static_cast<std::size_t>(level)]);
  trail_lim_.resize(static_cast<std::size_t>(level));
  qhead_ = trail_.size();
}

ClauseId Solver::add_learnt(std::vector<Literal> lits, std::vector<Antecedent> premises) {
  const auto id = static_cast<ClauseId>(clauses_.size());
  Clause c;
  c.lits = std::move(lits);
  c.learnt = true;
  clauses_.push_back(std::move(c));
  premises_.push_back(std::move(premises));
  if (clauses_[id].lits.size() >= 2) {
    attach(id);
    learnts_.push_back(id);
  }
  bump_clause(clauses_[id]);
  ++stats_.learned;
  enqueue(clauses_[id].lits[0], id);
  return id;
}

void Solver::reduce_learnts() {
  assert(decision_level() == 0);
  std::vector<ClauseId> candidates;
  for (const ClauseId id : learnts_) {
    const Clause& c = clauses_[id];
    if (c.removed || c.lits.size() <= 2) continue;
    const Var head = c.lits[0].var();
    if (assigns_[head] != Value::Undef && reason_[head] == id) continue;
    candidates.push_back(id);
  }
  if (candidates.size() < max_learnts_) return;
  std::sort(candidates.begin(), candidates.end(), [&](ClauseId a, ClauseId b) {
    if (clauses_[a].activity != clauses_[b].activity)
      return clauses_[a].activity < clauses_[b].activity;
    return a < b;
  });
  for (std::size_t i = 0; i < candidates.size() / 2; ++i) {
    Clause& c = clauses_[candidates[i]];
    c.removed = true;
    c.attached = false;
    c.lits.clear();
    c.lits.shrink_to_fit();
  }
  for (auto& ws : watches_) {
    ws.erase(std::remove_if(ws.begin(), ws.end(),
                            [&](const Watcher& w) { return clauses_[w.clause].removed; }),
             ws.end());
  }
  learnts_.erase(std::remove_if(learnts_.begin(), learnts_.end(),
                                [&](ClauseId id) { return clauses_[id].removed; }),
                 learnts_.end());
  max_learnts_ += max_learnts_ / 10;
}

bool Solver::solve(std::span<const Literal> assumptions) {
  ++stats_.solves;
  core_.clear();
  failed_.clear();
  if (!ok_) {
    collect_core(refutation_);
    return false;
  }
  for (const Var v : always_relevant_)
    if (assigns_[v] == Value::Undef) heap_insert(v);
  for (const Literal a : assumptions) mark_relevant(a.var(), false);

  const auto finish = [&](bool result) {
    cancel_until(0);
    reset_relevance();
    return result;
  };

  int restarts = 0;
  std::uint64_t conflicts_left = static_cast<std::uint64_t>(luby(2, restarts) * kRestartUnit);
  std::vector<Literal> learnt;
  std::vector<Antecedent> premises;

  while (true) {
    const ClauseId conflict = propagate();
    if (conflict != kNoReason) {
      ++stats_.conflicts;
      if (decision_level() == 0) {
        ok_ = false;
        refutation_.clear();
        refutation_.push_back({false, conflict});
        for (const Literal l : clauses_[conflict].lits) refutation_.push_back({true, l.var()});
        collect_core(refutation_);
        return finish(false);
      }
      int backtrack_level = 0;
      analyze(conflict, learnt, backtrack_level, premises);
      cancel_until(backtrack_level);
      add_learnt(learnt, premises);
      var_inc_ /= kVarDecay;
      clause_inc_ /= kClauseDecay;
      if (conflicts_left > 0) --conflicts_left;
      continue;
    }

    if (conflicts_left == 0) {
      ++stats_.restarts;
      cancel_until(0);
      reduce_learnts();
      conflicts_left = static_cast<std::uint64_t>(luby(2, ++restarts) * kRestartUnit);
      continue;
    }

    Literal next;
    bool have_next = false;
    while (static_cast<std::size_t>(decision_level()) < assumptions.size()) {
      const Literal a = assumptions[static_cast<std::size_t>(decision_level())];
      if (value(a) == Value::True) {
        trail_lim_.push_back(trail_.size());
        continue;
      }
      if (value(a) == Value::False) {
        analyze_final(a);
        std::vector<Literal> ordered;
        for (const Literal x : assumptions)
          if (std::find(failed_.begin(), failed_.end(), x) != failed_.end() &&
              std::find(ordered.begin(), ordered.end(), x) == ordered.end())
            ordered.push_back(x);
        failed_ = std::move(ordered);
        return finish(false);
      }
      next = a;
      have_next = true;
      break;
    }

    if (!have_next) {
      while (!heap_.empty()) {
        const Var v = heap_pop();
        if (assigns_[v] == Value::Undef) {
          next = Literal::negative(v);
          have_next = true;
          break;
        }
      }
    }
    if (!have_next) {
      for (Var v = 0; v < num_vars(); ++v) model_[v] = assigns_[v] == Value::True;
      return finish(true);
    }
    ++stats_.decisions;
    trail_lim_.push_back(trail_.size());
    enqueue(next, kNoReason);
  }
}

std::vector<Var> Solver::true_vars() const {
  std::vector<Var> out;
  for (Var v = 0; v < model_.size(); ++v)
    if (model_[v]) out.push_back(v);
  return out;
}

void Solver::bump_var(Var v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (double& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_sift_up(static_cast<std::size_t>(heap_pos_[v]));
}

void Solver::bump_clause(Clause& c) {
  c.activity += clause_inc_;
  if (c.activity > 1e20) {
    for (const ClauseId id : learnts_) clauses_[id].activity *= 1e-20;
    clause_inc_ *= 1e-20;
  }
}

bool Solver::heap_less(Var a, Var b) const {
  if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
  return a < b;
}

void Solver::heap_insert(Var v) {
  if (heap_pos_[v] >= 0) return;
  heap_pos_[v] = static_cast<std::int64_t>(heap_.size());
  heap_.push_back(v);
  heap_sift_up(heap_.size() - 1);
}

void Solver::heap_sift_up(std::size_t pos) {
  const Var v = heap_[pos];
  while (pos > 0) {
    const std::size_t parent = (pos - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[pos] = heap_[parent];
    heap_pos_[heap_[pos]] = static_cast<std::int64_t>(pos);
    pos = parent;
  }
  heap_[pos] = v;
  heap_pos_[v] = static_cast<std::int64_t>(pos);
}

void Solver::heap_sift_down(std::size_t pos) {
  const Var v = heap_[pos];
  const std::size_t n = heap_.size();
  while (true) {
    std::size_t child = 2 * pos + 1;
    if (child >= n) break;
    if (child + 1 < n && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[pos] = heap_[child];
    heap_pos_[heap_[pos]] = static_cast<std::int64_t>(pos);
    pos = child;
  }
  heap_[pos] = v;
  heap_pos_[v] = static_cast<std::int64_t>(pos);
}

Var Solver::heap_pop() {
  const Var top = heap_.front();
  heap_pos_[top] = -1;
  const Var last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_sift_down(0);
  }
  return top;
}

} // namespace debcheck::sat
