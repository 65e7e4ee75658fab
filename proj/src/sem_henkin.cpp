#include "sortlogic/sem_henkin.hpp"

#include <functional>
#include <map>

#include "compiled.hpp"

namespace sortlogic {

using namespace detail;

Issues validate_henkin(const HenkinStructure& h) {
  Issues issues = validate_structure(h.base);
  for (std::size_t i = 0; i < h.U.size(); ++i) {
    if (h.U[i].empty()) issues.push_back({IssueKind::EmptyDomain, "U member " + std::to_string(i + 1) + " is empty"});
    std::set<Element> seen;
    for (const auto& e : h.U[i])
      if (!seen.insert(e).second)
        issues.push_back({IssueKind::DuplicateElement,
                          "element '" + e + "' listed twice in U member " + std::to_string(i + 1)});
  }
  for (std::size_t i = 0; i < h.G.size(); ++i) {
    if (h.G[i].sorts.empty())
      issues.push_back({IssueKind::BadRelation, "G record " + std::to_string(i + 1) + " has no sorts"});
    for (const auto& t : h.G[i].tuples)
      if (t.size() != h.G[i].sorts.size()) {
        issues.push_back({IssueKind::BadRelation, "G record " + std::to_string(i + 1) + " has a tuple of wrong arity"});
        break;
      }
  }
  return issues;
}

namespace {

struct CompiledG {
  std::vector<SortId> sorts;
  RelValue value;
  std::vector<std::vector<int>> columns;  // distinct element ids per position
};

class HenkinEvaluator {
 public:
  HenkinEvaluator(const Program& p, ElementTable& table, const HenkinStructure& h) : p_(p) {
    load_structure(table, h.base, p, doms_, preds_);
    for (const auto& d : h.U) {
      std::vector<int> ids;
      for (const auto& e : d) ids.push_back(table.intern(e));
      std::sort(ids.begin(), ids.end());
      u_.push_back(std::move(ids));
    }
    for (const auto& g : h.G) {
      CompiledG c{g.sorts, to_rel_value(table, g.tuples), std::vector<std::vector<int>>(g.sorts.size())};
      for (const auto& t : g.tuples)
        for (std::size_t i = 0; i < t.size() && i < c.columns.size(); ++i) c.columns[i].push_back(table.find(t[i]));
      for (auto& col : c.columns) {
        std::sort(col.begin(), col.end());
        col.erase(std::unique(col.begin(), col.end()), col.end());
      }
      g_.push_back(std::move(c));
    }
    ind_.assign(p.inds.size(), -1);
    rel_.resize(p.rels.size());
    for (auto& [s, d] : doms_) std::sort(d.begin(), d.end());
  }

  std::vector<int>& ind() { return ind_; }
  std::vector<RelValue>& rel() { return rel_; }

  bool eval(int n) {
    const CNode& node = p_.nodes[n];
    switch (node.op) {
      case Op::Eq: return ind_[node.args[0]] == ind_[node.args[1]];
      case Op::Pred: return preds_[node.pred].contains(key(node));
      case Op::RelAtom: return rel_[node.slot].contains(key(node));
      case Op::Not: return !eval(node.lhs);
      case Op::Or: return eval(node.lhs) || eval(node.rhs);
      case Op::ExistsInd: {
        const std::vector<int> dom = doms_.at(node.sort);
        const int saved = ind_[node.slot];
        bool found = false;
        for (int e : dom) {
          ind_[node.slot] = e;
          if ((found = eval(node.lhs))) break;
        }
        ind_[node.slot] = saved;
        return found;
      }
      case Op::ExistsRel: {
        const RelValue saved = rel_[node.slot];
        bool found = false;
        for (const auto* g : candidates(p_.rels[node.slot].sorts)) {
          rel_[node.slot] = g->value;
          if ((found = eval(node.lhs))) break;
        }
        rel_[node.slot] = saved;
        return found;
      }
      case Op::ExistsNew: return eval_block(node);
    }
    return false;
  }

 private:
  std::uint64_t key(const CNode& node) const {
    int ids[kMaxPackedArity];
    for (std::size_t i = 0; i < node.args.size(); ++i) ids[i] = ind_[node.args[i]];
    return pack_key(ids, node.args.size());
  }

  // G records of the given type lying inside the current product.
  std::vector<const CompiledG*> candidates(const std::vector<SortId>& sorts) const {
    std::vector<const CompiledG*> out;
    for (const auto& g : g_) {
      if (g.sorts != sorts) continue;
      bool inside = true;
      for (std::size_t i = 0; i < sorts.size() && inside; ++i) {
        auto it = doms_.find(sorts[i]);
        inside = it != doms_.end() && std::includes(it->second.begin(), it->second.end(), g.columns[i].begin(),
                                                     g.columns[i].end());
      }
      if (inside) out.push_back(&g);
    }
    return out;
  }

  bool eval_block(const CNode& node) {
    if (u_.empty()) return false;
    const Domains saved = doms_;
    const std::size_t k = node.block_sorts.size();
    std::vector<std::size_t> choice(k, 0);
    bool found = false;
    for (;;) {
      for (std::size_t i = 0; i < k; ++i) doms_[node.block_sorts[i]] = u_[choice[i]];
      found = assign_block(node, 0);
      if (found) break;
      std::size_t i = 0;
      while (i < k && ++choice[i] == u_.size()) choice[i++] = 0;
      if (i == k) break;
    }
    doms_ = saved;
    return found;
  }

  bool assign_block(const CNode& node, std::size_t i) {
    if (i == node.block.size()) return eval(node.lhs);
    const int slot = node.block[i];
    const RelValue saved = rel_[slot];
    bool found = false;
    for (const auto* g : candidates(p_.rels[slot].sorts)) {
      rel_[slot] = g->value;
      if ((found = assign_block(node, i + 1))) break;
    }
    rel_[slot] = saved;
    return found;
  }

  const Program& p_;
  Domains doms_;
  std::vector<RelValue> preds_;
  std::vector<std::vector<int>> u_;
  std::vector<CompiledG> g_;
  std::vector<int> ind_;
  std::vector<RelValue> rel_;
};

[[noreturn]] void fail(const std::string& what) { throw PreconditionViolation(what); }

void check_preconditions(const HenkinStructure& h, const Formula& f) {
  if (!f.valid()) fail("empty formula");
  if (auto issues = well_formed(h.base.vocabulary, f); !issues.empty()) fail(describe(issues.front()));
  if (auto issues = validate_henkin(h); !issues.empty()) fail(describe(issues.front()));
  for (SortId s : free_sorts(f))
    if (!h.base.domain(s)) fail("free sort " + std::to_string(s) + " has no domain");
}

// Compiled formula plus evaluator, reused across parameter assignments.
class Prepared {
 public:
  Prepared(const HenkinStructure& h, const Formula& f) : p_(compile(f)), ev_(p_, table_, h) {}

  void set(const IndVar& x, const Element& e) {
    const int slot = p_.ind_slot(x);
    if (slot >= 0) ev_.ind()[slot] = table_.intern(e);
  }
  void set(const RelVar& x, const TupleSet& ts) {
    const int slot = p_.rel_slot(x);
    if (slot >= 0) ev_.rel()[slot] = to_rel_value(table_, ts);
  }
  bool run() { return ev_.eval(p_.root); }

 private:
  Program p_;
  ElementTable table_;
  HenkinEvaluator ev_;
};

}  // namespace

bool eval_henkin(const HenkinStructure& h, const Assignment& s, const Formula& f) {
  check_preconditions(h, f);
  Prepared prep(h, f);
  for (const auto& x : free_individual_vars(f)) {
    auto it = s.individuals.find(x);
    if (it == s.individuals.end()) fail("individual variable " + x.name + " is unassigned");
    const auto& dom = *h.base.domain(x.sort);
    if (std::find(dom.begin(), dom.end(), it->second) == dom.end())
      fail("individual variable " + x.name + " is assigned outside its domain");
    prep.set(x, it->second);
  }
  for (const auto& x : free_relation_vars(f)) {
    auto it = s.relations.find(x);
    if (it == s.relations.end()) fail("relation variable " + x.name + " is unassigned");
    for (const auto& t : it->second) {
      if (t.size() != x.arity()) fail("relation variable " + x.name + " is assigned a tuple of wrong arity");
      for (std::size_t i = 0; i < t.size(); ++i) {
        const auto& dom = *h.base.domain(x.sorts[i]);
        if (std::find(dom.begin(), dom.end(), t[i]) == dom.end())
          fail("relation variable " + x.name + " is assigned a tuple outside its product");
      }
    }
    prep.set(x, it->second);
  }
  return prep.run();
}

bool eval_henkin_sentence(const HenkinStructure& h, const Formula& f) {
  if (f.valid() && !is_sentence(f)) fail("formula is not a sentence");
  return eval_henkin(h, Assignment{}, f);
}

// Comprehension checking.

namespace {

struct Scope {
  std::vector<IndVar> vars;
};

class PsiGenerator {
 public:
  PsiGenerator(std::vector<PredicateSymbol> symbols, std::vector<RelVar> rel_params, std::vector<SortId> quant_sorts)
      : symbols_(std::move(symbols)), rel_params_(std::move(rel_params)), quant_sorts_(std::move(quant_sorts)) {}

  /// Every formula of exactly `size` nodes and rank at most `depth` whose
  /// free individual variables come from `scope`.
  void generate(std::size_t size, std::size_t depth, std::vector<IndVar>& scope,
                const std::function<bool(const Formula&)>& visit) {
    stop_ = false;
    gen(size, depth, scope, visit);
  }

 private:
  void atoms(const std::vector<IndVar>& scope, const std::function<bool(const Formula&)>& visit) {
    for (std::size_t i = 0; i < scope.size() && !stop_; ++i)
      for (std::size_t j = i; j < scope.size() && !stop_; ++j) emit(equation(scope[i], scope[j]), visit);
    for (const auto& sym : symbols_) {
      std::vector<IndVar> args(sym.sorts.size());
      tuples(sym.sorts, scope, args, 0, [&] { emit(predicate(sym.name, args), visit); });
    }
    for (const auto& r : rel_params_)
      for (const auto& v : scope)
        if (v.sort == r.sorts[0]) emit(relation_atom(r, {v}), visit);
  }

  void tuples(const std::vector<SortId>& sorts, const std::vector<IndVar>& scope, std::vector<IndVar>& args,
              std::size_t i, const std::function<void()>& done) {
    if (stop_) return;
    if (i == sorts.size()) {
      done();
      return;
    }
    for (const auto& v : scope)
      if (v.sort == sorts[i]) {
        args[i] = v;
        tuples(sorts, scope, args, i + 1, done);
      }
  }

  void emit(const Formula& f, const std::function<bool(const Formula&)>& visit) {
    if (!stop_ && !visit(f)) stop_ = true;
  }

  void gen(std::size_t size, std::size_t depth, std::vector<IndVar>& scope,
           const std::function<bool(const Formula&)>& visit) {
    if (stop_ || size == 0) return;
    if (size == 1) {
      atoms(scope, visit);
      return;
    }
    gen(size - 1, depth, scope, [&](const Formula& f) { return visit(negation(f)); });
    for (std::size_t left = 1; left + 1 < size && !stop_; ++left) {
      std::vector<Formula> lhs;
      gen(left, depth, scope, [&](const Formula& f) {
        lhs.push_back(f);
        return true;
      });
      for (const auto& a : lhs)
        gen(size - 1 - left, depth, scope, [&](const Formula& b) { return visit(disjunction(a, b)); });
    }
    if (depth > 0)
      for (SortId s : quant_sorts_) {
        const IndVar v{"v" + std::to_string(scope.size()), s};
        scope.push_back(v);
        gen(size - 1, depth - 1, scope, [&](const Formula& body) { return visit(exists(v, body)); });
        scope.pop_back();
      }
  }

  std::vector<PredicateSymbol> symbols_;
  std::vector<RelVar> rel_params_;
  std::vector<SortId> quant_sorts_;
  bool stop_ = false;
};

bool meets(const std::vector<SortId>& sorts, const SortSet& block) {
  return std::any_of(sorts.begin(), sorts.end(), [&](SortId s) { return block.count(s) > 0; });
}

}  // namespace

ComprehensionReport check_comprehension(const HenkinStructure& h, std::size_t depth_bound, std::size_t size_bound,
                                        std::size_t max_failures) {
  ComprehensionReport report;
  report.depth_bound = depth_bound;
  report.size_bound = size_bound;
  if (!validate_henkin(h).empty()) return report;

  std::vector<SortId> base_sorts;
  for (const auto& [s, d] : h.base.domains) base_sorts.push_back(s);
  std::set<std::vector<SortId>> types;
  for (SortId s : base_sorts) types.insert({s});
  for (const auto& g : h.G) types.insert(g.sorts);

  for (int second = 0; second <= 1; ++second) {
    for (const auto& type : types) {
      const SortSet block = second ? SortSet(type.begin(), type.end()) : SortSet{};
      if (!second && !std::all_of(type.begin(), type.end(), [&](SortId s) { return h.base.domain(s) != nullptr; }))
        continue;
      std::vector<IndVar> ind_params;
      std::vector<RelVar> rel_params;
      for (SortId s : base_sorts) {
        if (block.count(s)) continue;
        ind_params.push_back(IndVar{"p" + std::to_string(s), s});
        const bool has_unary = std::any_of(h.G.begin(), h.G.end(), [&](const GRelation& g) {
          return g.sorts == std::vector<SortId>{s};
        });
        if (has_unary) rel_params.push_back(RelVar{"P" + std::to_string(s), {s}});
      }
      std::vector<PredicateSymbol> symbols;
      for (const auto& sym : h.base.vocabulary.symbols())
        if (!meets(sym.sorts, block)) symbols.push_back(sym);
      std::vector<SortId> quant_sorts = base_sorts;
      for (SortId s : block)
        if (!h.base.domain(s)) quant_sorts.push_back(s);

      const RelVar x{"X", type};
      std::vector<IndVar> ys;
      for (std::size_t i = 0; i < type.size(); ++i) ys.push_back(IndVar{"y" + std::to_string(i + 1), type[i]});
      std::vector<IndVar> scope = ys;
      scope.insert(scope.end(), ind_params.begin(), ind_params.end());

      PsiGenerator gen(symbols, rel_params, quant_sorts);
      for (std::size_t size = 1; size <= size_bound; ++size) {
        gen.generate(size, depth_bound, scope, [&](const Formula& psi) {
          Formula body = iff(relation_atom(x, ys), psi);
          for (auto it = ys.rbegin(); it != ys.rend(); ++it) body = forall(*it, body);
          const Formula inst = second ? exists_new({x}, body) : exists(x, body);
          ++report.checked_instances;
          Prepared prep(h, inst);
          // Enumerate parameter values; relation parameters range over G.
          std::vector<std::vector<Element>> ind_values;
          for (const auto& p : ind_params) ind_values.push_back(*h.base.domain(p.sort));
          std::vector<std::vector<const TupleSet*>> rel_values;
          for (const auto& r : rel_params) {
            std::vector<const TupleSet*> vs;
            const auto& dom = *h.base.domain(r.sorts[0]);
            for (const auto& g : h.G)
              if (g.sorts == r.sorts &&
                  std::all_of(g.tuples.begin(), g.tuples.end(), [&](const Tuple& t) {
                    return std::find(dom.begin(), dom.end(), t[0]) != dom.end();
                  }))
                vs.push_back(&g.tuples);
            rel_values.push_back(std::move(vs));
          }
          const auto free_inds = free_individual_vars(inst);
          const auto free_rels = free_relation_vars(inst);
          std::vector<std::size_t> ci(ind_params.size(), 0), cr(rel_params.size(), 0);
          for (const auto& vs : rel_values)
            if (vs.empty()) return true;  // no admissible parameter value
          for (;;) {
            for (std::size_t i = 0; i < ind_params.size(); ++i) prep.set(ind_params[i], ind_values[i][ci[i]]);
            for (std::size_t i = 0; i < rel_params.size(); ++i) prep.set(rel_params[i], *rel_values[i][cr[i]]);
            if (!prep.run()) {
              std::string status = "false for";
              bool any = false;
              for (std::size_t i = 0; i < ind_params.size(); ++i)
                if (free_inds.count(ind_params[i])) {
                  status += " " + ind_params[i].name + "=" + ind_values[i][ci[i]];
                  any = true;
                }
              for (std::size_t i = 0; i < rel_params.size(); ++i)
                if (free_rels.count(rel_params[i])) {
                  status += " " + rel_params[i].name + "={";
                  bool first = true;
                  for (const auto& t : *rel_values[i][cr[i]]) {
                    status += (first ? "" : ",") + t[0];
                    first = false;
                  }
                  status += "}";
                  any = true;
                }
              if (!any) status = "false";
              report.failures.push_back({inst, status});
              return report.failures.size() < max_failures;
            }
            std::size_t i = 0;
            while (i < ci.size() && ++ci[i] == ind_values[i].size()) ci[i++] = 0;
            if (i < ci.size()) continue;
            std::size_t r = 0;
            while (r < cr.size() && ++cr[r] == rel_values[r].size()) cr[r++] = 0;
            if (r == cr.size()) break;
          }
          return true;
        });
        if (report.failures.size() >= max_failures && max_failures > 0) return report;
      }
    }
  }
  return report;
}

// Countermodel search.

namespace {

void collect_sorts_and_types(const Formula& f, SortSet& sorts, std::set<std::vector<SortId>>& types) {
  if (const auto* e = f.as<Equation>()) {
    sorts.insert(e->lhs.sort);
    sorts.insert(e->rhs.sort);
  } else if (const auto* a = f.as<PredicateAtom>()) {
    for (const auto& x : a->args) sorts.insert(x.sort);
  } else if (const auto* r = f.as<RelationAtom>()) {
    types.insert(r->var.sorts);
    sorts.insert(r->var.sorts.begin(), r->var.sorts.end());
  } else if (const auto* n = f.as<Negation>()) {
    collect_sorts_and_types(n->body, sorts, types);
  } else if (const auto* d = f.as<Disjunction>()) {
    collect_sorts_and_types(d->lhs, sorts, types);
    collect_sorts_and_types(d->rhs, sorts, types);
  } else if (const auto* q = f.as<ExistsIndividual>()) {
    sorts.insert(q->var.sort);
    collect_sorts_and_types(q->body, sorts, types);
  } else if (const auto* q = f.as<ExistsRelation>()) {
    types.insert(q->var.sorts);
    sorts.insert(q->var.sorts.begin(), q->var.sorts.end());
    collect_sorts_and_types(q->body, sorts, types);
  } else if (const auto* q = f.as<ExistsNewSorts>()) {
    for (const auto& v : q->block) {
      types.insert(v.sorts);
      sorts.insert(v.sorts.begin(), v.sorts.end());
    }
    collect_sorts_and_types(q->body, sorts, types);
  }
}

// Calls `visit` with every k-subset of {0..n-1} in lexicographic order.
bool for_each_combination(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  if (k > n) return true;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  for (;;) {
    if (!visit(c)) return false;
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return true;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

std::vector<TupleSet> all_relations(const std::vector<Tuple>& product, std::size_t cap) {
  if (product.size() >= 63 || (std::uint64_t{1} << product.size()) > cap) return {};
  return enumerate_relations(product, cap);
}

}  // namespace

SearchResult countermodel_search(const Vocabulary& voc, const std::vector<Formula>& theory, const Formula& phi,
                                 const SearchBounds& bounds) {
  SearchResult result;
  result.bounds = bounds;
  std::vector<Formula> all = theory;
  all.push_back(phi);
  for (const auto& f : all) {
    if (!f.valid() || !is_sentence(f)) fail("countermodel search needs sentences");
    if (auto issues = well_formed(voc, f); !issues.empty()) fail(describe(issues.front()));
  }

  SortSet base_sorts, all_sorts;
  std::set<std::vector<SortId>> types;
  Vocabulary used;
  for (const auto& f : all) {
    for (SortId s : free_sorts(f)) base_sorts.insert(s);
    collect_sorts_and_types(f, all_sorts, types);
    for (const auto& name : symbols_of(f))
      if (!used.find(name)) {
        used.add(*voc.find(name));
        base_sorts.insert(voc.find(name)->sorts.begin(), voc.find(name)->sorts.end());
      }
  }
  for (SortId s : all_sorts) types.insert({s});
  const std::vector<SortId> sorts(base_sorts.begin(), base_sorts.end());

  struct Base {
    Structure m;
    std::size_t pool;
  };
  // Bases grouped by total size.
  std::map<std::size_t, std::vector<Base>> bases;
  const std::size_t max_pool = sorts.empty() ? 1 : bounds.max_pool;
  for (std::size_t n = 1; n <= max_pool; ++n) {
    std::vector<Element> pool;
    for (std::size_t i = 0; i < n; ++i) pool.push_back("a" + std::to_string(i));
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::vector<std::uint32_t> masks(sorts.size(), 1);
    std::function<void(std::size_t, std::uint32_t)> pick = [&](std::size_t i, std::uint32_t covered) {
      if (i == sorts.size()) {
        if (!sorts.empty() && covered != full) return;
        Structure m;
        m.vocabulary = used;
        for (std::size_t k = 0; k < sorts.size(); ++k)
          for (std::size_t e = 0; e < n; ++e)
            if ((masks[k] >> e) & 1) m.domains[sorts[k]].push_back(pool[e]);
        // Every interpretation of the used symbols.
        std::vector<std::vector<TupleSet>> interps;
        for (const auto& sym : used.symbols()) {
          std::vector<const std::vector<Element>*> factors;
          for (SortId s : sym.sorts) factors.push_back(&m.domains[s]);
          interps.push_back(all_relations(product(factors), bounds.max_candidates));
        }
        std::function<void(std::size_t)> interp = [&](std::size_t k) {
          if (k == interps.size()) {
            bases[m.total_size()].push_back({m, n});
            return;
          }
          for (const auto& r : interps[k]) {
            m.relations[used.symbols()[k].name] = r;
            interp(k + 1);
          }
        };
        interp(0);
        return;
      }
      for (std::uint32_t mask = 1; mask <= full; ++mask) {
        masks[i] = mask;
        pick(i + 1, covered | mask);
      }
    };
    pick(0, 0);
  }

  // Candidate U members and G records per pool size.
  auto u_members = [&](std::size_t n) {
    std::vector<std::vector<Element>> out;
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
      std::vector<Element> d;
      for (std::size_t e = 0; e < n; ++e)
        if ((mask >> e) & 1) d.push_back("a" + std::to_string(e));
      out.push_back(std::move(d));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
  };
  auto g_records = [&](std::size_t n) {
    std::vector<Element> pool;
    for (std::size_t i = 0; i < n; ++i) pool.push_back("a" + std::to_string(i));
    std::vector<GRelation> out;
    for (const auto& type : types) {
      std::vector<const std::vector<Element>*> factors(type.size(), &pool);
      for (auto& r : all_relations(product(factors), 4096)) out.push_back(GRelation{type, std::move(r)});
    }
    return out;
  };

  bool stopped = false;
  for (auto& [total, group] : bases) {
    std::size_t max_u = 0, max_g = 0;
    std::map<std::size_t, std::pair<std::vector<std::vector<Element>>, std::vector<GRelation>>> per_pool;
    for (const auto& b : group) {
      if (!per_pool.count(b.pool)) per_pool[b.pool] = {u_members(b.pool), g_records(b.pool)};
      max_u = std::max(max_u, per_pool[b.pool].first.size());
      max_g = std::max(max_g, per_pool[b.pool].second.size());
    }
    for (std::size_t us = 0; us <= max_u && !stopped; ++us)
      for (std::size_t gs = 0; gs <= max_g && !stopped; ++gs)
        for (const auto& b : group) {
          if (stopped) break;
          const auto& [ucands, gcands] = per_pool[b.pool];
          for_each_combination(ucands.size(), us, [&](const std::vector<std::size_t>& uc) {
            return for_each_combination(gcands.size(), gs, [&](const std::vector<std::size_t>& gc) {
              if (++result.candidates_examined > bounds.max_candidates) {
                stopped = true;
                return false;
              }
              HenkinStructure h{b.m, {}, {}};
              for (auto i : uc) h.U.push_back(ucands[i]);
              for (auto i : gc) h.G.push_back(gcands[i]);
              if (eval_henkin_sentence(h, phi)) return true;
              for (const auto& t : theory)
                if (!eval_henkin_sentence(h, t)) return true;
              if (!check_comprehension(h, bounds.comprehension_depth, bounds.comprehension_size).passed()) return true;
              result.countermodel = std::move(h);
              stopped = true;
              return false;
            });
          });
        }
    if (stopped) break;
  }
  result.exhausted = !stopped;
  if (result.countermodel) result.exhausted = false;
  return result;
}

}  // namespace sortlogic
