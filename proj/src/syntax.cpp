#include "sortlogic/syntax.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sortlogic {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Formula make(FormulaNode node) { return Formula(std::make_shared<const FormulaNode>(std::move(node))); }

std::string show(const IndVar& v) { return v.name + ":" + std::to_string(v.sort); }

std::string show(const std::vector<SortId>& sorts) {
  std::string out = "(";
  for (std::size_t i = 0; i < sorts.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(sorts[i]);
  }
  return out + ")";
}

std::string show(const RelVar& v) { return v.name + ":" + show(v.sorts); }

bool meets(const std::vector<SortId>& sorts, const SortSet& set) {
  return std::any_of(sorts.begin(), sorts.end(), [&](SortId s) { return set.count(s) > 0; });
}

}  // namespace

void Vocabulary::add(std::string name, std::vector<SortId> sorts) {
  const std::size_t arity = sorts.size();
  symbols_.push_back(PredicateSymbol{std::move(name), arity, std::move(sorts)});
}

const PredicateSymbol* Vocabulary::find(const std::string& name) const {
  for (const auto& s : symbols_)
    if (s.name == name) return &s;
  return nullptr;
}

const char* to_string(IssueKind kind) {
  switch (kind) {
    case IssueKind::DuplicateSymbol: return "DuplicateSymbol";
    case IssueKind::ArityMismatch: return "ArityMismatch";
    case IssueKind::UnknownSymbol: return "UnknownSymbol";
    case IssueKind::SortMismatchAtAtom: return "SortMismatchAtAtom";
    case IssueKind::NewSortViolation: return "NewSortViolation";
    case IssueKind::EmptyBlock: return "EmptyBlock";
    case IssueKind::MissingDomain: return "MissingDomain";
    case IssueKind::EmptyDomain: return "EmptyDomain";
    case IssueKind::DuplicateElement: return "DuplicateElement";
    case IssueKind::TupleOutOfDomain: return "TupleOutOfDomain";
    case IssueKind::BadRelation: return "BadRelation";
  }
  return "?";
}

std::string describe(const Issue& issue) { return std::string(to_string(issue.kind)) + ": " + issue.detail; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  return a.node_->v == b.node_->v;
}

Formula equation(IndVar lhs, IndVar rhs) { return make({Equation{std::move(lhs), std::move(rhs)}}); }
Formula predicate(std::string name, std::vector<IndVar> args) {
  return make({PredicateAtom{std::move(name), std::move(args)}});
}
Formula relation_atom(RelVar var, std::vector<IndVar> args) {
  return make({RelationAtom{std::move(var), std::move(args)}});
}
Formula negation(Formula body) { return make({Negation{std::move(body)}}); }
Formula disjunction(Formula lhs, Formula rhs) { return make({Disjunction{std::move(lhs), std::move(rhs)}}); }
Formula exists(IndVar var, Formula body) { return make({ExistsIndividual{std::move(var), std::move(body)}}); }
Formula exists(RelVar var, Formula body) { return make({ExistsRelation{std::move(var), std::move(body)}}); }
Formula exists_new(std::vector<RelVar> block, Formula body) {
  return make({ExistsNewSorts{std::move(block), std::move(body)}});
}

Formula conjunction(Formula lhs, Formula rhs) {
  return negation(disjunction(negation(std::move(lhs)), negation(std::move(rhs))));
}
Formula implies(Formula lhs, Formula rhs) { return disjunction(negation(std::move(lhs)), std::move(rhs)); }
Formula iff(Formula lhs, Formula rhs) { return conjunction(implies(lhs, rhs), implies(rhs, lhs)); }
Formula forall(IndVar var, Formula body) { return negation(exists(std::move(var), negation(std::move(body)))); }
Formula forall(RelVar var, Formula body) { return negation(exists(std::move(var), negation(std::move(body)))); }
Formula forall_new(std::vector<RelVar> block, Formula body) {
  return negation(exists_new(std::move(block), negation(std::move(body))));
}

std::optional<std::pair<Formula, Formula>> match_conjunction(const Formula& f) {
  const auto* n = f.as<Negation>();
  if (!n) return std::nullopt;
  const auto* d = n->body.as<Disjunction>();
  if (!d) return std::nullopt;
  const auto* l = d->lhs.as<Negation>();
  const auto* r = d->rhs.as<Negation>();
  if (!l || !r) return std::nullopt;
  return std::make_pair(l->body, r->body);
}

std::optional<std::pair<Formula, Formula>> match_implication(const Formula& f) {
  const auto* d = f.as<Disjunction>();
  if (!d) return std::nullopt;
  const auto* l = d->lhs.as<Negation>();
  if (!l) return std::nullopt;
  return std::make_pair(l->body, d->rhs);
}

std::optional<std::pair<Formula, Formula>> match_iff(const Formula& f) {
  auto c = match_conjunction(f);
  if (!c) return std::nullopt;
  auto first = match_implication(c->first);
  auto second = match_implication(c->second);
  if (!first || !second) return std::nullopt;
  if (!(first->first == second->second) || !(first->second == second->first)) return std::nullopt;
  return first;
}

std::optional<std::pair<IndVar, Formula>> match_forall_ind(const Formula& f) {
  const auto* n = f.as<Negation>();
  if (!n) return std::nullopt;
  const auto* e = n->body.as<ExistsIndividual>();
  if (!e) return std::nullopt;
  const auto* inner = e->body.as<Negation>();
  if (!inner) return std::nullopt;
  return std::make_pair(e->var, inner->body);
}

std::optional<std::pair<RelVar, Formula>> match_forall_rel(const Formula& f) {
  const auto* n = f.as<Negation>();
  if (!n) return std::nullopt;
  const auto* e = n->body.as<ExistsRelation>();
  if (!e) return std::nullopt;
  const auto* inner = e->body.as<Negation>();
  if (!inner) return std::nullopt;
  return std::make_pair(e->var, inner->body);
}

std::optional<std::pair<std::vector<RelVar>, Formula>> match_forall_new(const Formula& f) {
  const auto* n = f.as<Negation>();
  if (!n) return std::nullopt;
  const auto* e = n->body.as<ExistsNewSorts>();
  if (!e) return std::nullopt;
  const auto* inner = e->body.as<Negation>();
  if (!inner) return std::nullopt;
  return std::make_pair(e->block, inner->body);
}

std::vector<Formula> flatten_conjunction(const Formula& f) {
  std::vector<Formula> out;
  if (auto c = match_conjunction(f)) {
    for (auto& part : {c->first, c->second}) {
      auto sub = flatten_conjunction(part);
      out.insert(out.end(), sub.begin(), sub.end());
    }
  } else {
    out.push_back(f);
  }
  return out;
}

bool is_atomic(const Formula& f) {
  return f.as<Equation>() || f.as<PredicateAtom>() || f.as<RelationAtom>();
}

SortSet block_sorts(const std::vector<RelVar>& block) {
  SortSet out;
  for (const auto& v : block) out.insert(v.sorts.begin(), v.sorts.end());
  return out;
}

Issues validate_vocabulary(const Vocabulary& voc) {
  Issues issues;
  std::set<std::string> seen;
  for (const auto& s : voc.symbols()) {
    if (!seen.insert(s.name).second)
      issues.push_back({IssueKind::DuplicateSymbol, "predicate '" + s.name + "' declared twice"});
    if (s.arity != s.sorts.size())
      issues.push_back({IssueKind::ArityMismatch, "predicate '" + s.name + "' has arity " +
                                                      std::to_string(s.arity) + " but sort tuple " +
                                                      show(s.sorts)});
  }
  return issues;
}

namespace {

void check_wf(const Vocabulary& voc, const Formula& f, Issues& out) {
  std::visit(
      overloaded{
          [&](const Equation&) {},
          [&](const PredicateAtom& a) {
            const auto* sym = voc.find(a.pred);
            if (!sym) {
              out.push_back({IssueKind::UnknownSymbol, "predicate '" + a.pred + "' is not in the vocabulary"});
              return;
            }
            std::vector<SortId> got;
            for (const auto& x : a.args) got.push_back(x.sort);
            if (got != sym->sorts)
              out.push_back({IssueKind::SortMismatchAtAtom,
                             a.pred + " expects " + show(sym->sorts) + " but got " + show(got)});
          },
          [&](const RelationAtom& a) {
            std::vector<SortId> got;
            for (const auto& x : a.args) got.push_back(x.sort);
            if (got != a.var.sorts)
              out.push_back({IssueKind::SortMismatchAtAtom,
                             show(a.var) + " applied to arguments of sorts " + show(got)});
          },
          [&](const Negation& n) { check_wf(voc, n.body, out); },
          [&](const Disjunction& d) {
            check_wf(voc, d.lhs, out);
            check_wf(voc, d.rhs, out);
          },
          [&](const ExistsIndividual& e) { check_wf(voc, e.body, out); },
          [&](const ExistsRelation& e) {
            if (e.var.sorts.empty())
              out.push_back({IssueKind::ArityMismatch, "relation variable " + e.var.name + " has no sorts"});
            check_wf(voc, e.body, out);
          },
          [&](const ExistsNewSorts& e) {
            if (e.block.empty()) {
              out.push_back({IssueKind::EmptyBlock, "new-sort quantifier binds no variables"});
            }
            for (const auto& v : e.block)
              if (v.sorts.empty())
                out.push_back({IssueKind::ArityMismatch, "relation variable " + v.name + " has no sorts"});
            const SortSet fresh = block_sorts(e.block);
            for (const auto& x : free_individual_vars(e.body))
              if (fresh.count(x.sort))
                out.push_back({IssueKind::NewSortViolation,
                               "free individual variable " + show(x) + " has a sort bound by the block"});
            for (const auto& X : free_relation_vars(e.body)) {
              if (std::find(e.block.begin(), e.block.end(), X) != e.block.end()) continue;
              if (meets(X.sorts, fresh))
                out.push_back({IssueKind::NewSortViolation,
                               "free relation variable " + show(X) + " touches a sort bound by the block"});
            }
            for (const auto& p : symbols_of(e.body)) {
              const auto* sym = voc.find(p);
              if (sym && meets(sym->sorts, fresh))
                out.push_back({IssueKind::NewSortViolation,
                               "symbol '" + p + "' of sort " + show(sym->sorts) + " touches a sort bound by the block"});
            }
            check_wf(voc, e.body, out);
          },
      },
      f.node().v);
}

void collect_free(const Formula& f, std::set<IndVar>& bound_ind, std::multiset<RelVar>& bound_rel,
                  std::set<IndVar>* inds, std::set<RelVar>* rels) {
  std::visit(overloaded{
                 [&](const Equation& e) {
                   if (!inds) return;
                   for (const auto& x : {e.lhs, e.rhs})
                     if (!bound_ind.count(x)) inds->insert(x);
                 },
                 [&](const PredicateAtom& a) {
                   if (!inds) return;
                   for (const auto& x : a.args)
                     if (!bound_ind.count(x)) inds->insert(x);
                 },
                 [&](const RelationAtom& a) {
                   if (inds)
                     for (const auto& x : a.args)
                       if (!bound_ind.count(x)) inds->insert(x);
                   if (rels && !bound_rel.count(a.var)) rels->insert(a.var);
                 },
                 [&](const Negation& n) { collect_free(n.body, bound_ind, bound_rel, inds, rels); },
                 [&](const Disjunction& d) {
                   collect_free(d.lhs, bound_ind, bound_rel, inds, rels);
                   collect_free(d.rhs, bound_ind, bound_rel, inds, rels);
                 },
                 [&](const ExistsIndividual& e) {
                   const bool added = bound_ind.insert(e.var).second;
                   collect_free(e.body, bound_ind, bound_rel, inds, rels);
                   if (added) bound_ind.erase(e.var);
                 },
                 [&](const ExistsRelation& e) {
                   auto it = bound_rel.insert(e.var);
                   collect_free(e.body, bound_ind, bound_rel, inds, rels);
                   bound_rel.erase(it);
                 },
                 [&](const ExistsNewSorts& e) {
                   std::vector<std::multiset<RelVar>::iterator> its;
                   for (const auto& v : e.block) its.push_back(bound_rel.insert(v));
                   collect_free(e.body, bound_ind, bound_rel, inds, rels);
                   for (auto it : its) bound_rel.erase(it);
                 },
             },
             f.node().v);
}

}  // namespace

Issues well_formed(const Vocabulary& voc, const Formula& f) {
  Issues out;
  check_wf(voc, f, out);
  return out;
}

std::set<IndVar> free_individual_vars(const Formula& f) {
  std::set<IndVar> bound, out;
  std::multiset<RelVar> bound_rel;
  collect_free(f, bound, bound_rel, &out, nullptr);
  return out;
}

std::set<RelVar> free_relation_vars(const Formula& f) {
  std::set<IndVar> bound;
  std::multiset<RelVar> bound_rel;
  std::set<RelVar> out;
  collect_free(f, bound, bound_rel, nullptr, &out);
  return out;
}

bool is_sentence(const Formula& f) { return free_individual_vars(f).empty() && free_relation_vars(f).empty(); }

std::set<std::string> symbols_of(const Formula& f) {
  std::set<std::string> out;
  std::visit(overloaded{
                 [&](const Equation&) {},
                 [&](const PredicateAtom& a) { out.insert(a.pred); },
                 [&](const RelationAtom&) {},
                 [&](const Negation& n) { out.merge(symbols_of(n.body)); },
                 [&](const Disjunction& d) {
                   out.merge(symbols_of(d.lhs));
                   out.merge(symbols_of(d.rhs));
                 },
                 [&](const ExistsIndividual& e) { out.merge(symbols_of(e.body)); },
                 [&](const ExistsRelation& e) { out.merge(symbols_of(e.body)); },
                 [&](const ExistsNewSorts& e) { out.merge(symbols_of(e.body)); },
             },
             f.node().v);
  return out;
}

SortSet free_sorts(const Formula& f) {
  return std::visit(overloaded{
                        [](const Equation& e) { return SortSet{e.lhs.sort, e.rhs.sort}; },
                        [](const PredicateAtom& a) {
                          SortSet s;
                          for (const auto& x : a.args) s.insert(x.sort);
                          return s;
                        },
                        [](const RelationAtom& a) {
                          SortSet s;
                          for (const auto& x : a.args) s.insert(x.sort);
                          return s;
                        },
                        [](const Negation& n) { return free_sorts(n.body); },
                        [](const Disjunction& d) {
                          SortSet s = free_sorts(d.lhs);
                          s.merge(free_sorts(d.rhs));
                          return s;
                        },
                        [](const ExistsIndividual& e) {
                          SortSet s = free_sorts(e.body);
                          s.insert(e.var.sort);
                          return s;
                        },
                        [](const ExistsRelation& e) {
                          SortSet s = free_sorts(e.body);
                          s.insert(e.var.sorts.begin(), e.var.sorts.end());
                          return s;
                        },
                        [](const ExistsNewSorts& e) {
                          SortSet s = free_sorts(e.body);
                          for (SortId n : block_sorts(e.block)) s.erase(n);
                          return s;
                        },
                    },
                    f.node().v);
}

std::size_t quantifier_rank(const Formula& f) {
  return std::visit(overloaded{
                        [](const Equation&) -> std::size_t { return 0; },
                        [](const PredicateAtom&) -> std::size_t { return 0; },
                        [](const RelationAtom&) -> std::size_t { return 0; },
                        [](const Negation& n) { return quantifier_rank(n.body); },
                        [](const Disjunction& d) { return std::max(quantifier_rank(d.lhs), quantifier_rank(d.rhs)); },
                        [](const ExistsIndividual& e) { return 1 + quantifier_rank(e.body); },
                        [](const ExistsRelation& e) { return 1 + quantifier_rank(e.body); },
                        [](const ExistsNewSorts& e) { return 1 + quantifier_rank(e.body); },
                    },
                    f.node().v);
}

std::size_t formula_size(const Formula& f) {
  return std::visit(overloaded{
                        [](const Negation& n) { return 1 + formula_size(n.body); },
                        [](const Disjunction& d) { return 1 + formula_size(d.lhs) + formula_size(d.rhs); },
                        [](const ExistsIndividual& e) { return 1 + formula_size(e.body); },
                        [](const ExistsRelation& e) { return 1 + formula_size(e.body); },
                        [](const ExistsNewSorts& e) { return 1 + formula_size(e.body); },
                        [](const auto&) -> std::size_t { return 1; },
                    },
                    f.node().v);
}

namespace {

// Generic capture-checking substitution. `Var` is IndVar or RelVar.
struct IndSubst {
  const IndVar& from;
  const IndVar& to;
  bool under_to = false;

  IndVar swap(const IndVar& v) {
    if (v != from) return v;
    if (under_to)
      throw SubstitutionError(SubstitutionError::Kind::CaptureViolation,
                              show(to) + " is not free for " + show(from));
    return to;
  }

  Formula run(const Formula& f) {
    return std::visit(
        overloaded{
            [&](const Equation& e) { return equation(swap(e.lhs), swap(e.rhs)); },
            [&](const PredicateAtom& a) {
              std::vector<IndVar> args;
              for (const auto& x : a.args) args.push_back(swap(x));
              return predicate(a.pred, std::move(args));
            },
            [&](const RelationAtom& a) {
              std::vector<IndVar> args;
              for (const auto& x : a.args) args.push_back(swap(x));
              return relation_atom(a.var, std::move(args));
            },
            [&](const Negation& n) { return negation(run(n.body)); },
            [&](const Disjunction& d) {
              Formula l = run(d.lhs);
              return disjunction(l, run(d.rhs));
            },
            [&](const ExistsIndividual& e) {
              if (e.var == from) return f;
              const bool saved = under_to;
              if (e.var == to) under_to = true;
              Formula body = run(e.body);
              under_to = saved;
              return exists(e.var, body);
            },
            [&](const ExistsRelation& e) { return exists(e.var, run(e.body)); },
            [&](const ExistsNewSorts& e) { return exists_new(e.block, run(e.body)); },
        },
        f.node().v);
  }
};

struct RelSubst {
  const RelVar& from;
  const RelVar& to;
  bool under_to = false;

  Formula run(const Formula& f) {
    return std::visit(
        overloaded{
            [&](const RelationAtom& a) {
              if (a.var != from) return f;
              if (under_to)
                throw SubstitutionError(SubstitutionError::Kind::CaptureViolation,
                                        show(to) + " is not free for " + show(from));
              return relation_atom(to, a.args);
            },
            [&](const Negation& n) { return negation(run(n.body)); },
            [&](const Disjunction& d) {
              Formula l = run(d.lhs);
              return disjunction(l, run(d.rhs));
            },
            [&](const ExistsIndividual& e) { return exists(e.var, run(e.body)); },
            [&](const ExistsRelation& e) {
              if (e.var == from) return f;
              const bool saved = under_to;
              if (e.var == to) under_to = true;
              Formula body = run(e.body);
              under_to = saved;
              return exists(e.var, body);
            },
            [&](const ExistsNewSorts& e) {
              if (std::find(e.block.begin(), e.block.end(), from) != e.block.end()) return f;
              const bool saved = under_to;
              if (std::find(e.block.begin(), e.block.end(), to) != e.block.end()) under_to = true;
              Formula body = run(e.body);
              under_to = saved;
              return exists_new(e.block, body);
            },
            [&](const auto&) { return f; },
        },
        f.node().v);
  }
};

}  // namespace

Formula substitute(const Formula& f, const IndVar& x, const IndVar& y) {
  if (x.sort != y.sort)
    throw SubstitutionError(SubstitutionError::Kind::SortClash, "cannot substitute " + show(y) + " for " + show(x));
  if (x == y) return f;
  return IndSubst{x, y}.run(f);
}

Formula substitute(const Formula& f, const RelVar& x, const RelVar& y) {
  if (x.sorts != y.sorts)
    throw SubstitutionError(SubstitutionError::Kind::SortClash, "cannot substitute " + show(y) + " for " + show(x));
  if (x == y) return f;
  return RelSubst{x, y}.run(f);
}

bool free_for(const Formula& f, const IndVar& x, const IndVar& y) {
  try {
    substitute(f, x, IndVar{y.name, x.sort == y.sort ? y.sort : x.sort});
    return x.sort == y.sort;
  } catch (const SubstitutionError&) {
    return false;
  }
}

bool free_for(const Formula& f, const RelVar& x, const RelVar& y) {
  if (x.sorts != y.sorts) return false;
  try {
    substitute(f, x, y);
    return true;
  } catch (const SubstitutionError&) {
    return false;
  }
}

namespace {

template <class Var>
struct Scope {
  std::vector<std::pair<Var, Var>> stack;

  // Index of the innermost binder of `v` on side `left`, or -1.
  long find(const Var& v, bool left) const {
    for (long i = static_cast<long>(stack.size()) - 1; i >= 0; --i)
      if ((left ? stack[i].first : stack[i].second) == v) return i;
    return -1;
  }

  bool same(const Var& a, const Var& b) const {
    const long ia = find(a, true), ib = find(b, false);
    if (ia != ib) return false;
    return ia >= 0 || a == b;
  }
};

struct AlphaEq {
  Scope<IndVar> ind;
  Scope<RelVar> rel;

  bool args(const std::vector<IndVar>& a, const std::vector<IndVar>& b) const {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!ind.same(a[i], b[i])) return false;
    return true;
  }

  bool eq(const Formula& a, const Formula& b) {
    if (a.node().v.index() != b.node().v.index()) return false;
    if (const auto* x = a.as<Equation>()) {
      const auto* y = b.as<Equation>();
      return ind.same(x->lhs, y->lhs) && ind.same(x->rhs, y->rhs);
    }
    if (const auto* x = a.as<PredicateAtom>()) {
      const auto* y = b.as<PredicateAtom>();
      return x->pred == y->pred && args(x->args, y->args);
    }
    if (const auto* x = a.as<RelationAtom>()) {
      const auto* y = b.as<RelationAtom>();
      return rel.same(x->var, y->var) && args(x->args, y->args);
    }
    if (const auto* x = a.as<Negation>()) return eq(x->body, b.as<Negation>()->body);
    if (const auto* x = a.as<Disjunction>()) {
      const auto* y = b.as<Disjunction>();
      return eq(x->lhs, y->lhs) && eq(x->rhs, y->rhs);
    }
    if (const auto* x = a.as<ExistsIndividual>()) {
      const auto* y = b.as<ExistsIndividual>();
      if (x->var.sort != y->var.sort) return false;
      ind.stack.emplace_back(x->var, y->var);
      const bool r = eq(x->body, y->body);
      ind.stack.pop_back();
      return r;
    }
    if (const auto* x = a.as<ExistsRelation>()) {
      const auto* y = b.as<ExistsRelation>();
      if (x->var.sorts != y->var.sorts) return false;
      rel.stack.emplace_back(x->var, y->var);
      const bool r = eq(x->body, y->body);
      rel.stack.pop_back();
      return r;
    }
    const auto* x = a.as<ExistsNewSorts>();
    const auto* y = b.as<ExistsNewSorts>();
    if (x->block.size() != y->block.size()) return false;
    for (std::size_t i = 0; i < x->block.size(); ++i) {
      if (x->block[i].sorts != y->block[i].sorts) return false;
      rel.stack.emplace_back(x->block[i], y->block[i]);
    }
    const bool r = eq(x->body, y->body);
    rel.stack.resize(rel.stack.size() - x->block.size());
    return r;
  }
};

template <class MakeGuard>
Formula relativize_impl(const Formula& f, SortId sort, const std::optional<RelVar>& guard_var,
                        const MakeGuard& guard) {
  return std::visit(
      overloaded{
          [&](const Negation& n) { return negation(relativize_impl(n.body, sort, guard_var, guard)); },
          [&](const Disjunction& d) {
            Formula l = relativize_impl(d.lhs, sort, guard_var, guard);
            return disjunction(l, relativize_impl(d.rhs, sort, guard_var, guard));
          },
          [&](const ExistsIndividual& e) {
            if (e.var.sort != sort)
              throw SubstitutionError(SubstitutionError::Kind::SortClash,
                                      "quantifier over " + show(e.var) + " cannot be relativized to sort " +
                                          std::to_string(sort));
            return exists(e.var, conjunction(guard(e.var), relativize_impl(e.body, sort, guard_var, guard)));
          },
          [&](const ExistsRelation& e) {
            if (guard_var && e.var == *guard_var)
              throw SubstitutionError(SubstitutionError::Kind::CaptureViolation, "guard variable is rebound");
            return exists(e.var, relativize_impl(e.body, sort, guard_var, guard));
          },
          [&](const ExistsNewSorts& e) {
            if (guard_var && std::find(e.block.begin(), e.block.end(), *guard_var) != e.block.end())
              throw SubstitutionError(SubstitutionError::Kind::CaptureViolation, "guard variable is rebound");
            return exists_new(e.block, relativize_impl(e.body, sort, guard_var, guard));
          },
          [&](const auto&) { return f; },
      },
      f.node().v);
}

void collect_names(const Formula& f, std::set<std::string>& names) {
  std::visit(overloaded{
                 [&](const Equation& e) {
                   names.insert(e.lhs.name);
                   names.insert(e.rhs.name);
                 },
                 [&](const PredicateAtom& a) {
                   names.insert(a.pred);
                   for (const auto& x : a.args) names.insert(x.name);
                 },
                 [&](const RelationAtom& a) {
                   names.insert(a.var.name);
                   for (const auto& x : a.args) names.insert(x.name);
                 },
                 [&](const Negation& n) { collect_names(n.body, names); },
                 [&](const Disjunction& d) {
                   collect_names(d.lhs, names);
                   collect_names(d.rhs, names);
                 },
                 [&](const ExistsIndividual& e) {
                   names.insert(e.var.name);
                   collect_names(e.body, names);
                 },
                 [&](const ExistsRelation& e) {
                   names.insert(e.var.name);
                   collect_names(e.body, names);
                 },
                 [&](const ExistsNewSorts& e) {
                   for (const auto& v : e.block) names.insert(v.name);
                   collect_names(e.body, names);
                 },
             },
             f.node().v);
}

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) { return AlphaEq{}.eq(a, b); }

Formula relativize(const Formula& f, const PredicateSymbol& guard) {
  if (guard.sorts.size() != 1)
    throw SubstitutionError(SubstitutionError::Kind::SortClash, "relativization needs a unary predicate");
  return relativize_impl(f, guard.sorts[0], std::nullopt,
                         [&](const IndVar& x) { return predicate(guard.name, {x}); });
}

Formula relativize(const Formula& f, const RelVar& guard) {
  if (guard.sorts.size() != 1)
    throw SubstitutionError(SubstitutionError::Kind::SortClash, "relativization needs a unary relation variable");
  return relativize_impl(f, guard.sorts[0], guard, [&](const IndVar& x) { return relation_atom(guard, {x}); });
}

Formula replace_symbol(const Formula& f, const std::string& pred, const RelVar& var) {
  return std::visit(overloaded{
                        [&](const PredicateAtom& a) {
                          return a.pred == pred ? relation_atom(var, a.args) : f;
                        },
                        [&](const Negation& n) { return negation(replace_symbol(n.body, pred, var)); },
                        [&](const Disjunction& d) {
                          Formula l = replace_symbol(d.lhs, pred, var);
                          return disjunction(l, replace_symbol(d.rhs, pred, var));
                        },
                        [&](const ExistsIndividual& e) { return exists(e.var, replace_symbol(e.body, pred, var)); },
                        [&](const ExistsRelation& e) { return exists(e.var, replace_symbol(e.body, pred, var)); },
                        [&](const ExistsNewSorts& e) {
                          return exists_new(e.block, replace_symbol(e.body, pred, var));
                        },
                        [&](const auto&) { return f; },
                    },
                    f.node().v);
}

std::string fresh_relation_name(const Formula& f, const Vocabulary& voc, const std::string& stem) {
  std::set<std::string> used;
  collect_names(f, used);
  for (const auto& s : voc.symbols()) used.insert(s.name);
  if (!used.count(stem)) return stem;
  for (std::size_t i = 0;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!used.count(candidate)) return candidate;
  }
}

Formula sort_closure(const Formula& sentence, const Vocabulary& voc) {
  if (!is_sentence(sentence)) throw std::invalid_argument("sort_closure expects a sentence");
  Formula body = sentence;
  std::vector<RelVar> block;
  SortSet covered;
  for (const auto& p : symbols_of(sentence)) {
    const auto* sym = voc.find(p);
    if (!sym) throw std::invalid_argument("symbol '" + p + "' is not in the vocabulary");
    RelVar var{fresh_relation_name(body, voc, "X_" + p), sym->sorts};
    body = replace_symbol(body, p, var);
    covered.insert(sym->sorts.begin(), sym->sorts.end());
    block.push_back(std::move(var));
  }
  for (SortId s : free_sorts(body)) {
    if (covered.count(s)) continue;
    block.push_back(RelVar{fresh_relation_name(body, voc, "S" + std::to_string(s)), {s}});
  }
  if (block.empty()) return sentence;
  return forall_new(std::move(block), body);
}

}  // namespace sortlogic
