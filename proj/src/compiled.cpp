#include "compiled.hpp"

#include <set>

namespace sortlogic::detail {

namespace {

struct Compiler {
  Program& p;

  int ind(const IndVar& v) {
    int s = p.ind_slot(v);
    if (s >= 0) return s;
    p.inds.push_back(v);
    return static_cast<int>(p.inds.size()) - 1;
  }

  int rel(const RelVar& v) {
    int s = p.rel_slot(v);
    if (s >= 0) return s;
    if (v.sorts.empty() || v.sorts.size() > kMaxPackedArity)
      throw PreconditionViolation("relation variable " + v.name + " has unsupported arity");
    p.rels.push_back(v);
    return static_cast<int>(p.rels.size()) - 1;
  }

  int pred(const std::string& name) {
    auto it = std::find(p.preds.begin(), p.preds.end(), name);
    if (it != p.preds.end()) return static_cast<int>(it - p.preds.begin());
    p.preds.push_back(name);
    return static_cast<int>(p.preds.size()) - 1;
  }

  int push(CNode n) {
    p.nodes.push_back(std::move(n));
    return static_cast<int>(p.nodes.size()) - 1;
  }

  static std::vector<int> merge(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  static std::vector<int> minus(std::vector<int> a, const std::vector<int>& remove) {
    a.erase(std::remove_if(a.begin(), a.end(),
                           [&](int s) { return std::find(remove.begin(), remove.end(), s) != remove.end(); }),
            a.end());
    return a;
  }

  int run(const Formula& f) {
    CNode n;
    if (const auto* e = f.as<Equation>()) {
      n.op = Op::Eq;
      n.args = {ind(e->lhs), ind(e->rhs)};
    } else if (const auto* a = f.as<PredicateAtom>()) {
      if (a->args.empty() || a->args.size() > kMaxPackedArity)
        throw PreconditionViolation("predicate " + a->pred + " has unsupported arity");
      n.op = Op::Pred;
      n.pred = pred(a->pred);
      for (const auto& x : a->args) n.args.push_back(ind(x));
    } else if (const auto* r = f.as<RelationAtom>()) {
      n.op = Op::RelAtom;
      n.slot = rel(r->var);
      for (const auto& x : r->args) n.args.push_back(ind(x));
      n.free_rels = {n.slot};
    } else if (const auto* ng = f.as<Negation>()) {
      n.op = Op::Not;
      n.lhs = run(ng->body);
      n.free_rels = p.nodes[n.lhs].free_rels;
    } else if (const auto* d = f.as<Disjunction>()) {
      n.op = Op::Or;
      n.lhs = run(d->lhs);
      n.rhs = run(d->rhs);
      n.free_rels = merge(p.nodes[n.lhs].free_rels, p.nodes[n.rhs].free_rels);
    } else if (const auto* q = f.as<ExistsIndividual>()) {
      n.op = Op::ExistsInd;
      n.slot = ind(q->var);
      n.sort = q->var.sort;
      n.lhs = run(q->body);
      n.free_rels = p.nodes[n.lhs].free_rels;
    } else if (const auto* q = f.as<ExistsRelation>()) {
      n.op = Op::ExistsRel;
      n.slot = rel(q->var);
      n.lhs = run(q->body);
      n.free_rels = minus(p.nodes[n.lhs].free_rels, {n.slot});
    } else {
      const auto* b = f.as<ExistsNewSorts>();
      n.op = Op::ExistsNew;
      for (const auto& v : b->block) n.block.push_back(rel(v));
      const SortSet sorts = block_sorts(b->block);
      n.block_sorts.assign(sorts.begin(), sorts.end());
      n.lhs = run(b->body);
      n.free_rels = minus(p.nodes[n.lhs].free_rels, n.block);
    }
    if (n.lhs < 0) {
      n.free_inds = n.args;
      std::sort(n.free_inds.begin(), n.free_inds.end());
      n.free_inds.erase(std::unique(n.free_inds.begin(), n.free_inds.end()), n.free_inds.end());
    } else {
      n.free_inds = p.nodes[n.lhs].free_inds;
      if (n.rhs >= 0) n.free_inds = merge(n.free_inds, p.nodes[n.rhs].free_inds);
      if (n.op == Op::ExistsInd) n.free_inds = minus(n.free_inds, {n.slot});
    }
    return push(std::move(n));
  }
};

}  // namespace

int Program::ind_slot(const IndVar& v) const {
  auto it = std::find(inds.begin(), inds.end(), v);
  return it == inds.end() ? -1 : static_cast<int>(it - inds.begin());
}

int Program::rel_slot(const RelVar& v) const {
  auto it = std::find(rels.begin(), rels.end(), v);
  return it == rels.end() ? -1 : static_cast<int>(it - rels.begin());
}

Program compile(const Formula& f) {
  Program p;
  p.root = Compiler{p}.run(f);
  return p;
}

int ElementTable::intern(const Element& name) {
  auto it = ids_.find(name);
  if (it != ids_.end()) return it->second;
  if (names_.size() >= kPackBase) throw BudgetExceeded("too many distinct elements");
  names_.push_back(name);
  const int id = static_cast<int>(names_.size()) - 1;
  ids_.emplace(name, id);
  return id;
}

int ElementTable::find(const Element& name) const {
  auto it = ids_.find(name);
  return it == ids_.end() ? -1 : it->second;
}

std::vector<std::uint64_t> product_keys(const Domains& domains, const std::vector<SortId>& sorts) {
  std::vector<const std::vector<int>*> factors;
  for (SortId s : sorts) {
    auto it = domains.find(s);
    if (it == domains.end()) throw PreconditionViolation("sort " + std::to_string(s) + " has no domain");
    factors.push_back(&it->second);
  }
  std::vector<std::uint64_t> keys{0};
  std::uint64_t scale = 1;
  for (const auto* f : factors) {
    std::vector<std::uint64_t> next;
    next.reserve(keys.size() * f->size());
    for (std::uint64_t k : keys)
      for (int e : *f) next.push_back(k + scale * static_cast<std::uint64_t>(e));
    keys = std::move(next);
    scale *= kPackBase;
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

std::vector<int> union_of(const Domains& domains) {
  std::vector<int> out;
  for (const auto& [s, d] : domains) out.insert(out.end(), d.begin(), d.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RelValue to_rel_value(ElementTable& table, const TupleSet& tuples) {
  std::vector<std::uint64_t> keys;
  std::vector<int> ids;
  for (const auto& t : tuples) {
    if (t.size() > kMaxPackedArity) throw PreconditionViolation("tuple arity too large");
    ids.clear();
    for (const auto& e : t) ids.push_back(table.intern(e));
    keys.push_back(pack_key(ids.data(), ids.size()));
  }
  return RelValue(std::move(keys));
}

void load_structure(ElementTable& table, const Structure& m, const Program& p, Domains& domains,
                    std::vector<RelValue>& preds) {
  for (const auto& [s, d] : m.domains) {
    auto& out = domains[s];
    for (const auto& e : d) out.push_back(table.intern(e));
  }
  preds.clear();
  for (const auto& name : p.preds) preds.push_back(to_rel_value(table, m.relation(name)));
}

}  // namespace sortlogic::detail
