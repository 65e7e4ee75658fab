#include "sat.hpp"

#include <algorithm>
#include <cstdlib>

namespace sortlogic::detail {

namespace {
int to_internal(int dimacs) { return dimacs > 0 ? 2 * (dimacs - 1) : 2 * (-dimacs - 1) + 1; }
}  // namespace

int SatSolver::new_var() {
  const int v = num_vars();
  assigns_.push_back(kUndef);
  phase_.push_back(false);
  level_.push_back(0);
  reason_.push_back(-1);
  activity_.push_back(0.0);
  seen_.push_back(0);
  heap_pos_.push_back(-1);
  watches_.emplace_back();
  watches_.emplace_back();
  heap_insert(v);
  return v + 1;
}

void SatSolver::add_clause(std::vector<int> dimacs) {
  if (unsat_) return;
  std::vector<Lit> lits;
  for (int d : dimacs) lits.push_back(to_internal(d));
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && (lits[i] ^ 1) == lits[i + 1]) return;  // tautology
    const auto v = value(lits[i]);
    if (v == kTrue && level_[lits[i] >> 1] == 0) return;
    if (v == kFalse && level_[lits[i] >> 1] == 0) continue;
    kept.push_back(lits[i]);
  }
  if (kept.empty()) {
    unsat_ = true;
    return;
  }
  if (kept.size() == 1) {
    if (value(kept[0]) == kUndef) enqueue(kept[0], -1);
    if (propagate() >= 0) unsat_ = true;
    return;
  }
  clauses_.push_back(std::move(kept));
  attach(static_cast<int>(clauses_.size()) - 1);
}

void SatSolver::attach(int c) {
  watches_[clauses_[c][0]].push_back(c);
  watches_[clauses_[c][1]].push_back(c);
}

void SatSolver::enqueue(Lit l, int reason) {
  const int v = l >> 1;
  assigns_[v] = static_cast<std::int8_t>((l & 1) ? kFalse : kTrue);
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

// Returns the index of a conflicting clause, or -1.
int SatSolver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = p ^ 1;
    auto& ws = watches_[false_lit];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const int ci = ws[i++];
      auto& c = clauses_[ci];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (value(c[0]) == kTrue) {
        ws[j++] = ci;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != kFalse) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(ci);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = ci;
      if (value(c[0]) == kFalse) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return ci;
      }
      enqueue(c[0], ci);
    }
    ws.resize(j);
  }
  return -1;
}

void SatSolver::analyze(int confl, std::vector<Lit>& learnt, int& back_level) {
  learnt.clear();
  learnt.push_back(-1);
  int pending = 0;
  Lit p = -1;
  std::size_t index = trail_.size();
  std::vector<int> touched;
  do {
    const auto& c = clauses_[confl];
    for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
      const Lit q = c[k];
      const int v = q >> 1;
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      touched.push_back(v);
      bump(v);
      if (level_[v] == decision_level())
        ++pending;
      else
        learnt.push_back(q);
    }
    while (!seen_[trail_[--index] >> 1]) {
    }
    p = trail_[index];
    confl = reason_[p >> 1];
    --pending;
    if (pending > 0 && confl >= 0) {
      // Keep the implied literal first so that k starts past it.
      auto& rc = clauses_[confl];
      if (rc[0] != p) std::swap(rc[0], rc[1]);
    }
  } while (pending > 0);
  learnt[0] = p ^ 1;
  back_level = 0;
  std::size_t max_i = 1;
  for (std::size_t k = 1; k < learnt.size(); ++k) {
    const int lv = level_[learnt[k] >> 1];
    if (lv > back_level) {
      back_level = lv;
      max_i = k;
    }
  }
  if (learnt.size() > 1) std::swap(learnt[1], learnt[max_i]);
  for (int v : touched) seen_[v] = 0;
}

void SatSolver::backtrack(int level) {
  if (decision_level() <= level) return;
  for (std::size_t i = trail_.size(); i-- > static_cast<std::size_t>(trail_lim_[level]);) {
    const int v = trail_[i] >> 1;
    phase_[v] = assigns_[v] == kTrue;
    assigns_[v] = kUndef;
    reason_[v] = -1;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[level]);
  trail_lim_.resize(level);
  qhead_ = trail_.size();
}

void SatSolver::bump(int v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void SatSolver::heap_insert(int v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

int SatSolver::heap_pop() {
  const int top = heap_[0];
  heap_pos_[top] = -1;
  heap_[0] = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_pos_[heap_[0]] = 0;
    heap_down(0);
  }
  return top;
}

void SatSolver::heap_up(std::size_t i) {
  const int v = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (activity_[heap_[parent]] >= activity_[v]) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void SatSolver::heap_down(std::size_t i) {
  const int v = heap_[i];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && activity_[heap_[child + 1]] > activity_[heap_[child]]) ++child;
    if (activity_[heap_[child]] <= activity_[v]) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

SatSolver::Result SatSolver::solve(std::uint64_t conflict_budget) {
  if (unsat_) return Result::Unsat;
  std::uint64_t restart_limit = 100, since_restart = 0;
  std::vector<Lit> learnt;
  for (;;) {
    const int confl = propagate();
    if (confl >= 0) {
      ++conflicts_;
      ++since_restart;
      if (decision_level() == 0) {
        unsat_ = true;
        return Result::Unsat;
      }
      int back_level = 0;
      analyze(confl, learnt, back_level);
      backtrack(back_level);
      if (learnt.size() == 1) {
        enqueue(learnt[0], -1);
      } else {
        clauses_.push_back(learnt);
        const int ci = static_cast<int>(clauses_.size()) - 1;
        attach(ci);
        enqueue(learnt[0], ci);
      }
      var_inc_ *= 1.05;
      if (conflicts_ > conflict_budget) {
        backtrack(0);
        return Result::Unknown;
      }
      continue;
    }
    if (since_restart >= restart_limit) {
      since_restart = 0;
      restart_limit += restart_limit / 2;
      backtrack(0);
      continue;
    }
    int next = -1;
    while (!heap_.empty()) {
      const int v = heap_pop();
      if (assigns_[v] == kUndef) {
        next = v;
        break;
      }
    }
    if (next < 0) {
      model_.assign(assigns_.size(), false);
      for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v] = assigns_[v] == kTrue;
      backtrack(0);
      return Result::Sat;
    }
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    enqueue(2 * next + (phase_[next] ? 0 : 1), -1);
  }
}

}  // namespace sortlogic::detail
