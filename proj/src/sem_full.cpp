#include "sortlogic/sem_full.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>

#include "compiled.hpp"
#include "expansion_shapes.hpp"
#include "sat.hpp"

namespace sortlogic {

using namespace detail;

std::string to_string(Verdict3 v) {
  switch (v) {
    case Verdict3::True: return "True";
    case Verdict3::False: return "False";
    case Verdict3::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

constexpr int kFalseNode = 0;
constexpr int kTrueNode = 1;

// Monotone propositional circuit over SAT literals. Node 0 is false, node 1
// is true; gates are simplified and flattened on construction.
class Circuit {
 public:
  Circuit() : nodes_{{Kind::Const, 0, 0, 0}, {Kind::Const, 0, 0, 0}} {}

  int lit(int l) {
    auto [it, inserted] = lits_.try_emplace(l, static_cast<int>(nodes_.size()));
    if (inserted) nodes_.push_back({Kind::Lit, l, 0, 0});
    return it->second;
  }

  int gate(bool is_and, const std::vector<int>& kids) {
    const int identity = is_and ? kTrueNode : kFalseNode;
    const int absorbing = is_and ? kFalseNode : kTrueNode;
    const Kind kind = is_and ? Kind::And : Kind::Or;
    scratch_.clear();
    for (int k : kids) {
      if (k == identity) continue;
      if (k == absorbing) return absorbing;
      const Node& n = nodes_[k];
      if (n.kind == kind)
        scratch_.insert(scratch_.end(), pool_.begin() + n.first, pool_.begin() + n.first + n.count);
      else
        scratch_.push_back(k);
    }
    if (scratch_.empty()) return identity;
    if (scratch_.size() == 1) return scratch_[0];
    nodes_.push_back({kind, 0, static_cast<int>(pool_.size()), static_cast<int>(scratch_.size())});
    pool_.insert(pool_.end(), scratch_.begin(), scratch_.end());
    return static_cast<int>(nodes_.size()) - 1;
  }

  /// Adds clauses making `root` true (one-sided gate definitions suffice
  /// because gates only occur positively). `charge` is called per clause and
  /// returns false to abort.
  bool assert_root(SatSolver& solver, int root, const std::function<bool()>& charge) {
    gate_var_.assign(nodes_.size(), 0);
    const int l = encode(solver, root, charge);
    if (l == 0) return false;
    solver.add_clause({l});
    return true;
  }

 private:
  enum class Kind { Const, Lit, And, Or };
  struct Node {
    Kind kind;
    int lit;
    int first, count;
  };

  int encode(SatSolver& solver, int n, const std::function<bool()>& charge) {
    const Node node = nodes_[n];
    if (node.kind == Kind::Lit) return node.lit;
    if (gate_var_[n] != 0) return gate_var_[n];
    std::vector<int> kid_lits;
    kid_lits.reserve(node.count);
    for (int i = 0; i < node.count; ++i) {
      const int l = encode(solver, pool_[node.first + i], charge);
      if (l == 0) return 0;
      kid_lits.push_back(l);
    }
    const int v = solver.new_var();
    if (node.kind == Kind::And) {
      for (int l : kid_lits) {
        if (!charge()) return 0;
        solver.add_clause({-v, l});
      }
    } else {
      if (!charge()) return 0;
      kid_lits.push_back(-v);
      solver.add_clause(std::move(kid_lits));
    }
    gate_var_[n] = v;
    return v;
  }

  std::vector<Node> nodes_;
  std::vector<int> pool_;
  std::vector<int> scratch_;
  std::unordered_map<int, int> lits_;
  std::vector<int> gate_var_;
};

// A relation variable's current value: either a concrete relation or one SAT
// variable per tuple of its product.
struct RelBinding {
  bool bits = false;
  RelValue value;
  int base = 0;
  std::shared_ptr<const std::vector<std::uint64_t>> keys;
};

class Evaluator {
 public:
  Evaluator(const Program& p, ElementTable& table, std::vector<RelValue> preds, Domains doms, const Budget& b,
            EvalStats& stats)
      : p_(p), table_(table), preds_(std::move(preds)), doms_(std::move(doms)), budget_(b), stats_(stats) {
    ind_.assign(p.inds.size(), -1);
    rel_.resize(p.rels.size());
  }

  std::vector<int>& ind() { return ind_; }
  std::vector<RelBinding>& rel() { return rel_; }

  Verdict3 eval(int n) {
    if (!tick()) return Verdict3::Unknown;
    const CNode& node = p_.nodes[n];
    switch (node.op) {
      case Op::Eq:
        return ind_[node.args[0]] == ind_[node.args[1]] ? Verdict3::True : Verdict3::False;
      case Op::Pred:
        return preds_[node.pred].contains(atom_key(node)) ? Verdict3::True : Verdict3::False;
      case Op::RelAtom:
        return rel_[node.slot].value.contains(atom_key(node)) ? Verdict3::True : Verdict3::False;
      case Op::Not:
        return kleene_not(eval(node.lhs));
      case Op::Or: {
        const Verdict3 a = eval(node.lhs);
        if (a == Verdict3::True) return a;
        return kleene_or(a, eval(node.rhs));
      }
      case Op::ExistsInd: {
        const auto key = memo_key(n, node);
        if (key) {
          if (auto it = memo_.find(*key); it != memo_.end()) return it->second;
        }
        const std::vector<int> dom = doms_.at(node.sort);
        const int saved = ind_[node.slot];
        Verdict3 acc = Verdict3::False;
        for (int e : dom) {
          ind_[node.slot] = e;
          acc = kleene_or(acc, eval(node.lhs));
          if (acc == Verdict3::True) break;
        }
        ind_[node.slot] = saved;
        if (key && !exhausted_) memo_.emplace(*key, acc);
        return acc;
      }
      case Op::ExistsRel:
        return eval_exists_rel(node);
      case Op::ExistsNew:
        return eval_block(node);
    }
    return Verdict3::Unknown;
  }

 private:
  bool tick() {
    if (exhausted_) return false;
    if (++stats_.steps > budget_.step_cap) {
      stats_.step_cap_hit = true;
      exhausted_ = true;
      return false;
    }
    return true;
  }

  // Quantified subformulas without free relation variables depend only on
  // the values of their free individuals and on the current domains, so
  // their verdicts are cached until the domains change.
  std::optional<std::uint64_t> memo_key(int n, const CNode& node) const {
    if (!node.free_rels.empty() || node.free_inds.size() > 5 || n >= (1 << 13)) return std::nullopt;
    int ids[kMaxPackedArity];
    for (std::size_t i = 0; i < node.free_inds.size(); ++i) ids[i] = ind_[node.free_inds[i]];
    return (static_cast<std::uint64_t>(n) << 50) | pack_key(ids, node.free_inds.size());
  }

  std::uint64_t atom_key(const CNode& node) const {
    int ids[kMaxPackedArity];
    for (std::size_t i = 0; i < node.args.size(); ++i) ids[i] = ind_[node.args[i]];
    return pack_key(ids, node.args.size());
  }

  static RelValue relation_from_mask(const std::vector<std::uint64_t>& keys, std::uint64_t mask) {
    std::vector<std::uint64_t> chosen;
    for (std::size_t j = 0; j < keys.size() && j < 64; ++j)
      if ((mask >> j) & 1) chosen.push_back(keys[j]);
    return RelValue(std::move(chosen));
  }

  Verdict3 eval_exists_rel(const CNode& node) {
    const auto keys = product_keys(doms_, p_.rels[node.slot].sorts);
    const std::uint64_t total = subset_count(keys.size());
    const std::uint64_t limit = std::min(total, budget_.relation_cap);
    const RelBinding saved = rel_[node.slot];
    Verdict3 acc = Verdict3::False;
    for (std::uint64_t mask = 0; mask < limit && acc != Verdict3::True && !exhausted_; ++mask) {
      rel_[node.slot] = RelBinding{false, relation_from_mask(keys, mask), 0, nullptr};
      acc = kleene_or(acc, eval(node.lhs));
    }
    rel_[node.slot] = saved;
    if (exhausted_ && acc != Verdict3::True) return Verdict3::Unknown;
    if (total > limit && acc != Verdict3::True) {
      stats_.relation_cap_hit = true;
      return Verdict3::Unknown;
    }
    return acc;
  }

  // Calls `visit` with the domains of every expansion candidate installed in
  // turn. Returns false if the enumeration was cut short by budgets.
  bool for_each_candidate(const CNode& node, const std::function<bool()>& visit) {
    const Domains saved = doms_;
    const std::vector<int> old = union_of(saved);
    const std::size_t k = node.block_sorts.size();
    std::vector<int> fresh;
    bool complete = true;
    try {
      std::set<Element> taken;
      for (int e : old) taken.insert(table_.name(e));
      for (std::size_t i = 0; fresh.size() < k * budget_.domain_bound; ++i) {
        Element name = "new" + std::to_string(i);
        if (!taken.count(name)) fresh.push_back(table_.intern(name));
      }
      complete = for_each_expansion_shape(old.size(), k, budget_.domain_bound, [&](const Shape& shape) {
        if (exhausted_) return false;
        doms_ = saved;
        memo_.clear();
        for (std::size_t i = 0; i < k; ++i) {
          auto& dom = doms_[node.block_sorts[i]];
          dom.clear();
          for (std::size_t idx : shape[i])
            dom.push_back(idx < old.size() ? old[idx] : fresh[idx - old.size()]);
        }
        return visit();
      });
    } catch (const BudgetExceeded&) {
      complete = false;
    }
    doms_ = saved;
    memo_.clear();
    return complete && !exhausted_;
  }

  Verdict3 eval_block(const CNode& node) {
    bool found = false;
    const bool complete = for_each_candidate(node, [&] {
      ++stats_.expansion_candidates;
      found = try_candidate(node);
      return !found;
    });
    if (found) return Verdict3::True;
    if (complete) stats_.domain_bound_hit = true;
    return Verdict3::Unknown;
  }

  // Searches for relations on the installed candidate domains making the
  // block body true.
  bool try_candidate(const CNode& node) {
    SatSolver solver;
    Circuit circuit;
    SatSolver* outer_solver = std::exchange(solver_, &solver);
    Circuit* outer_circuit = std::exchange(circuit_, &circuit);
    std::vector<RelBinding> saved;
    for (int slot : node.block) saved.push_back(bind_bits(slot));
    const int root = ground(node.lhs, true);
    for (std::size_t i = 0; i < node.block.size(); ++i) rel_[node.block[i]] = saved[i];
    solver_ = outer_solver;
    circuit_ = outer_circuit;

    if (root == kTrueNode) return true;
    if (root == kFalseNode || exhausted_) return false;
    if (!circuit.assert_root(solver, root, [this] { return tick(); })) return false;
    ++stats_.sat_calls;
    const std::uint64_t remaining = budget_.step_cap - std::min(budget_.step_cap, stats_.steps);
    const auto result = solver.solve(remaining);
    stats_.sat_conflicts += solver.conflicts();
    stats_.steps += solver.conflicts();
    if (result == SatSolver::Result::Unknown) {
      stats_.step_cap_hit = true;
      exhausted_ = true;
    }
    return result == SatSolver::Result::Sat;
  }

  RelBinding bind_bits(int slot) {
    RelBinding b;
    b.bits = true;
    b.keys = std::make_shared<const std::vector<std::uint64_t>>(product_keys(doms_, p_.rels[slot].sorts));
    b.base = solver_->num_vars() + 1;
    for (std::size_t i = 0; i < b.keys->size(); ++i) solver_->new_var();
    return std::exchange(rel_[slot], std::move(b));
  }

  bool has_bits(const CNode& node) const {
    for (int s : node.free_rels)
      if (rel_[s].bits) return true;
    return false;
  }

  // A circuit that implies the formula (positive) or its negation (negative)
  // under every valuation of the bit-bound relation variables.
  int ground(int n, bool pos) {
    const CNode& node = p_.nodes[n];
    if (!has_bits(node)) {
      const Verdict3 v = eval(n);
      return v == (pos ? Verdict3::True : Verdict3::False) ? kTrueNode : kFalseNode;
    }
    if (!tick()) return kFalseNode;
    const int absorbing = pos ? kTrueNode : kFalseNode;
    switch (node.op) {
      case Op::RelAtom: {
        const RelBinding& b = rel_[node.slot];
        const auto key = atom_key(node);
        auto it = std::lower_bound(b.keys->begin(), b.keys->end(), key);
        if (it == b.keys->end() || *it != key) return pos ? kFalseNode : kTrueNode;
        const int var = b.base + static_cast<int>(it - b.keys->begin());
        return circuit_->lit(pos ? var : -var);
      }
      case Op::Not:
        return ground(node.lhs, !pos);
      case Op::Or: {
        const int a = ground(node.lhs, pos);
        if (a == absorbing) return a;
        return circuit_->gate(!pos, {a, ground(node.rhs, pos)});
      }
      case Op::ExistsInd: {
        const std::vector<int> dom = doms_.at(node.sort);
        const int saved = ind_[node.slot];
        std::vector<int> kids;
        int out = -1;
        for (int e : dom) {
          ind_[node.slot] = e;
          const int k = ground(node.lhs, pos);
          if (k == absorbing) {
            out = k;
            break;
          }
          kids.push_back(k);
        }
        ind_[node.slot] = saved;
        return out >= 0 ? out : circuit_->gate(!pos, kids);
      }
      case Op::ExistsRel: {
        if (pos) {
          RelBinding saved = bind_bits(node.slot);
          const int k = ground(node.lhs, true);
          rel_[node.slot] = std::move(saved);
          return k;
        }
        const auto keys = product_keys(doms_, p_.rels[node.slot].sorts);
        const std::uint64_t total = subset_count(keys.size());
        if (total > budget_.relation_cap) {
          stats_.relation_cap_hit = true;
          return kFalseNode;
        }
        const RelBinding saved = rel_[node.slot];
        std::vector<int> kids;
        int out = -1;
        for (std::uint64_t mask = 0; mask < total; ++mask) {
          rel_[node.slot] = RelBinding{false, relation_from_mask(keys, mask), 0, nullptr};
          const int k = ground(node.lhs, false);
          if (k == kFalseNode) {
            out = k;
            break;
          }
          kids.push_back(k);
        }
        rel_[node.slot] = saved;
        return out >= 0 ? out : circuit_->gate(true, kids);
      }
      case Op::ExistsNew: {
        // The negation of a block is never established within a bound.
        if (!pos) return kFalseNode;
        std::vector<int> kids;
        bool hit = false;
        for_each_candidate(node, [&] {
          std::vector<RelBinding> saved;
          for (int slot : node.block) saved.push_back(bind_bits(slot));
          const int k = ground(node.lhs, true);
          for (std::size_t i = 0; i < node.block.size(); ++i) rel_[node.block[i]] = saved[i];
          if (k == kTrueNode) hit = true;
          kids.push_back(k);
          return !hit;
        });
        return hit ? kTrueNode : circuit_->gate(false, kids);
      }
      case Op::Eq:
      case Op::Pred:
        break;
    }
    return kFalseNode;
  }

  const Program& p_;
  ElementTable& table_;
  std::vector<RelValue> preds_;
  Domains doms_;
  const Budget& budget_;
  EvalStats& stats_;
  std::vector<int> ind_;
  std::vector<RelBinding> rel_;
  bool exhausted_ = false;
  std::unordered_map<std::uint64_t, Verdict3> memo_;
  SatSolver* solver_ = nullptr;
  Circuit* circuit_ = nullptr;
};

[[noreturn]] void fail(const std::string& what) { throw PreconditionViolation(what); }

}  // namespace

Verdict3 eval(const Structure& m, const Assignment& s, const Formula& f, const Budget& b, EvalStats* stats) {
  if (!f.valid()) fail("empty formula");
  if (auto issues = well_formed(m.vocabulary, f); !issues.empty()) fail(describe(issues.front()));
  if (auto issues = validate_structure(m); !issues.empty()) fail(describe(issues.front()));
  for (SortId srt : free_sorts(f))
    if (!m.domain(srt)) fail("free sort " + std::to_string(srt) + " has no domain");

  const Program p = compile(f);
  ElementTable table;
  Domains doms;
  std::vector<RelValue> preds;
  load_structure(table, m, p, doms, preds);

  EvalStats local;
  EvalStats& st = stats ? *stats : local;
  st = EvalStats{};
  Evaluator ev(p, table, std::move(preds), doms, b, st);

  for (const auto& x : free_individual_vars(f)) {
    auto it = s.individuals.find(x);
    if (it == s.individuals.end()) fail("individual variable " + x.name + " is unassigned");
    const auto& dom = *m.domain(x.sort);
    if (std::find(dom.begin(), dom.end(), it->second) == dom.end())
      fail("individual variable " + x.name + " is assigned outside its domain");
    ev.ind()[p.ind_slot(x)] = table.find(it->second);
  }
  for (const auto& x : free_relation_vars(f)) {
    auto it = s.relations.find(x);
    if (it == s.relations.end()) fail("relation variable " + x.name + " is unassigned");
    for (const auto& t : it->second) {
      if (t.size() != x.sorts.size()) fail("relation variable " + x.name + " is assigned a tuple of wrong arity");
      for (std::size_t i = 0; i < t.size(); ++i) {
        const auto& dom = *m.domain(x.sorts[i]);
        if (std::find(dom.begin(), dom.end(), t[i]) == dom.end())
          fail("relation variable " + x.name + " is assigned a tuple outside its product");
      }
    }
    ev.rel()[p.rel_slot(x)].value = to_rel_value(table, it->second);
  }
  return ev.eval(p.root);
}

Verdict3 eval_sentence(const Structure& m, const Formula& f, const Budget& b, EvalStats* stats) {
  if (f.valid() && !is_sentence(f)) fail("formula is not a sentence");
  return eval(m, Assignment{}, f, b, stats);
}

}  // namespace sortlogic
