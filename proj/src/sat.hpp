// A small CDCL solver used for witness search over relation variables.
#pragma once

#include <cstdint>
#include <vector>

namespace sortlogic::detail {

/// Literals use the DIMACS convention: variable v >= 1 is `v`, its negation `-v`.
class SatSolver {
 public:
  enum class Result { Sat, Unsat, Unknown };

  int new_var();
  int num_vars() const { return static_cast<int>(assigns_.size()); }
  void add_clause(std::vector<int> lits);

  /// Unknown when more than `conflict_budget` conflicts were needed.
  Result solve(std::uint64_t conflict_budget);
  std::uint64_t conflicts() const { return conflicts_; }
  bool model_value(int var) const { return model_[var - 1]; }

 private:
  using Lit = int;  // 2 * index + sign
  static constexpr std::int8_t kFalse = 0, kTrue = 1, kUndef = 2;

  std::int8_t value(Lit l) const {
    const std::int8_t v = assigns_[l >> 1];
    return v == kUndef ? kUndef : static_cast<std::int8_t>(v ^ (l & 1));
  }
  void enqueue(Lit l, int reason);
  int propagate();
  void analyze(int confl, std::vector<Lit>& learnt, int& back_level);
  void backtrack(int level);
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  void bump(int var);
  void heap_insert(int var);
  int heap_pop();
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  void attach(int clause);

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<bool> phase_;
  std::vector<int> level_, reason_;
  std::vector<double> activity_;
  std::vector<Lit> trail_;
  std::vector<int> trail_lim_;
  std::size_t qhead_ = 0;
  double var_inc_ = 1.0;
  std::vector<int> heap_, heap_pos_;
  std::vector<char> seen_;
  std::vector<bool> model_;
  bool unsat_ = false;
  std::uint64_t conflicts_ = 0;
};

}  // namespace sortlogic::detail
