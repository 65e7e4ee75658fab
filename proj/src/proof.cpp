#include "sortlogic/proof.hpp"

#include <array>
#include <functional>
#include <map>

namespace sortlogic {

namespace {

constexpr std::array<std::pair<Rule, const char*>, 14> kRuleNames{{
    {Rule::Premise, "Premise"},
    {Rule::Tautology, "Tautology"},
    {Rule::Identity, "Identity"},
    {Rule::QuantAxiomInd, "QuantAxiomInd"},
    {Rule::QuantAxiomRel, "QuantAxiomRel"},
    {Rule::QuantAxiomNewSort, "QuantAxiomNewSort"},
    {Rule::Comprehension1, "Comprehension1"},
    {Rule::Comprehension2, "Comprehension2"},
    {Rule::PowerSort, "PowerSort"},
    {Rule::InfiniteSort, "InfiniteSort"},
    {Rule::MP, "MP"},
    {Rule::GenInd, "GenInd"},
    {Rule::GenRel, "GenRel"},
    {Rule::GenNewSort, "GenNewSort"},
}};

// Propositional skeleton: atoms are maximal subformulas that are neither
// negations nor disjunctions.
struct Skeleton {
  struct Node {
    int kind;  // 0 atom, 1 not, 2 or
    int a, b;
  };
  std::vector<Node> nodes;
  std::vector<Formula> atoms;

  int build(const Formula& f) {
    if (const auto* n = f.as<Negation>()) {
      const int a = build(n->body);
      nodes.push_back({1, a, -1});
    } else if (const auto* d = f.as<Disjunction>()) {
      const int a = build(d->lhs);
      const int b = build(d->rhs);
      nodes.push_back({2, a, b});
    } else {
      int idx = -1;
      for (std::size_t i = 0; i < atoms.size() && idx < 0; ++i)
        if (alpha_equal(atoms[i], f)) idx = static_cast<int>(i);
      if (idx < 0) {
        if (atoms.size() == kTautologyAtomCap)
          throw AtomCapExceeded("more than " + std::to_string(kTautologyAtomCap) + " propositional atoms");
        atoms.push_back(f);
        idx = static_cast<int>(atoms.size()) - 1;
      }
      nodes.push_back({0, idx, -1});
    }
    return static_cast<int>(nodes.size()) - 1;
  }

  bool eval(std::uint32_t row, std::vector<char>& val) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const Node& n = nodes[i];
      val[i] = n.kind == 0 ? static_cast<char>((row >> n.a) & 1) : n.kind == 1 ? !val[n.a] : (val[n.a] || val[n.b]);
    }
    return val.back();
  }
};

// Renames every bound variable to a fresh name that the parser cannot
// produce, so later substitutions never capture.
class BoundRenamer {
 public:
  Formula run(const Formula& f) {
    if (const auto* e = f.as<Equation>()) return equation(ind(e->lhs), ind(e->rhs));
    if (const auto* a = f.as<PredicateAtom>()) return predicate(a->pred, inds(a->args));
    if (const auto* r = f.as<RelationAtom>()) return relation_atom(rel(r->var), inds(r->args));
    if (const auto* n = f.as<Negation>()) return negation(run(n->body));
    if (const auto* d = f.as<Disjunction>()) return disjunction(run(d->lhs), run(d->rhs));
    if (const auto* q = f.as<ExistsIndividual>()) {
      IndVar fresh{"#b" + std::to_string(counter_++), q->var.sort};
      ind_scope_.emplace_back(q->var, fresh);
      Formula body = run(q->body);
      ind_scope_.pop_back();
      return exists(fresh, body);
    }
    if (const auto* q = f.as<ExistsRelation>()) {
      RelVar fresh{"#b" + std::to_string(counter_++), q->var.sorts};
      rel_scope_.emplace_back(q->var, fresh);
      Formula body = run(q->body);
      rel_scope_.pop_back();
      return exists(fresh, body);
    }
    const auto* b = f.as<ExistsNewSorts>();
    std::vector<RelVar> block;
    for (const auto& v : b->block) {
      block.push_back(RelVar{"#b" + std::to_string(counter_++), v.sorts});
      rel_scope_.emplace_back(v, block.back());
    }
    Formula body = run(b->body);
    rel_scope_.resize(rel_scope_.size() - block.size());
    return exists_new(block, body);
  }

 private:
  IndVar ind(const IndVar& v) const {
    for (auto it = ind_scope_.rbegin(); it != ind_scope_.rend(); ++it)
      if (it->first == v) return it->second;
    return v;
  }
  std::vector<IndVar> inds(const std::vector<IndVar>& vs) const {
    std::vector<IndVar> out;
    for (const auto& v : vs) out.push_back(ind(v));
    return out;
  }
  RelVar rel(const RelVar& v) const {
    for (auto it = rel_scope_.rbegin(); it != rel_scope_.rend(); ++it)
      if (it->first == v) return it->second;
    return v;
  }

  std::size_t counter_ = 0;
  std::vector<std::pair<IndVar, IndVar>> ind_scope_;
  std::vector<std::pair<RelVar, RelVar>> rel_scope_;
};

// Walks a pattern and a candidate instance in parallel and records, for each
// free occurrence of a pattern variable, the variable found at the same
// position of the instance. Mismatches elsewhere are left to the final
// alpha comparison.
template <class Var>
class WitnessFinder {
 public:
  explicit WitnessFinder(std::vector<Var> vars) : vars_(std::move(vars)), found_(vars_.size()) {}

  bool run(const Formula& pattern, const Formula& instance) {
    walk(pattern, instance);
    return ok_;
  }

  /// The witness for each variable, defaulting to the variable itself.
  std::vector<Var> witnesses() const {
    std::vector<Var> out;
    for (std::size_t i = 0; i < vars_.size(); ++i) out.push_back(found_[i] ? *found_[i] : vars_[i]);
    return out;
  }

 private:
  void see(const Var& p, const Var& inst) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (p != vars_[i]) continue;
      if (!found_[i])
        found_[i] = inst;
      else if (*found_[i] != inst)
        ok_ = false;
    }
  }

  void see_args(const std::vector<IndVar>& p, const std::vector<IndVar>& inst) {
    if (p.size() != inst.size()) {
      ok_ = false;
      return;
    }
    if constexpr (std::is_same_v<Var, IndVar>)
      for (std::size_t i = 0; i < p.size(); ++i) see(p[i], inst[i]);
  }

  void walk(const Formula& p, const Formula& inst) {
    if (!ok_) return;
    if (p.node().v.index() != inst.node().v.index()) {
      ok_ = false;
      return;
    }
    if (const auto* e = p.as<Equation>()) {
      const auto* f = inst.as<Equation>();
      see_args({e->lhs, e->rhs}, {f->lhs, f->rhs});
    } else if (const auto* a = p.as<PredicateAtom>()) {
      see_args(a->args, inst.as<PredicateAtom>()->args);
    } else if (const auto* r = p.as<RelationAtom>()) {
      const auto* s = inst.as<RelationAtom>();
      if constexpr (std::is_same_v<Var, RelVar>) see(r->var, s->var);
      see_args(r->args, s->args);
    } else if (const auto* n = p.as<Negation>()) {
      walk(n->body, inst.as<Negation>()->body);
    } else if (const auto* d = p.as<Disjunction>()) {
      const auto* g = inst.as<Disjunction>();
      walk(d->lhs, g->lhs);
      walk(d->rhs, g->rhs);
    } else if (const auto* q = p.as<ExistsIndividual>()) {
      walk(q->body, inst.as<ExistsIndividual>()->body);
    } else if (const auto* q = p.as<ExistsRelation>()) {
      walk(q->body, inst.as<ExistsRelation>()->body);
    } else {
      walk(p.as<ExistsNewSorts>()->body, inst.as<ExistsNewSorts>()->body);
    }
  }

  std::vector<Var> vars_;
  std::vector<std::optional<Var>> found_;
  bool ok_ = true;
};

/// Predicate sorts as used by the atoms of `f`, for checks that need a
/// vocabulary but are given a bare formula.
Vocabulary implied_vocabulary(const Formula& f) {
  std::map<std::string, std::vector<SortId>> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (const auto* a = g.as<PredicateAtom>()) {
      std::vector<SortId> sorts;
      for (const auto& x : a->args) sorts.push_back(x.sort);
      seen.emplace(a->pred, sorts);
    } else if (const auto* n = g.as<Negation>()) {
      walk(n->body);
    } else if (const auto* d = g.as<Disjunction>()) {
      walk(d->lhs);
      walk(d->rhs);
    } else if (const auto* q = g.as<ExistsIndividual>()) {
      walk(q->body);
    } else if (const auto* q = g.as<ExistsRelation>()) {
      walk(q->body);
    } else if (const auto* q = g.as<ExistsNewSorts>()) {
      walk(q->body);
    }
  };
  walk(f);
  Vocabulary voc;
  for (auto& [name, sorts] : seen) voc.add(name, sorts);
  return voc;
}

bool new_sort_ok(const Formula& f) { return well_formed(implied_vocabulary(f), f).empty(); }

// Simultaneous substitution of `ys` for `xs` in a formula whose bound
// variables are fresh.
template <class Var>
Formula substitute_all(Formula f, const std::vector<Var>& xs, const std::vector<Var>& ys) {
  std::vector<Var> temps;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Var t = xs[i];
    t.name = "#t" + std::to_string(i);
    temps.push_back(t);
    f = substitute(f, xs[i], t);
  }
  for (std::size_t i = 0; i < xs.size(); ++i) f = substitute(f, temps[i], ys[i]);
  return f;
}

template <class Var>
bool is_instance(const Formula& antecedent, const Formula& body, const std::vector<Var>& vars) {
  const Formula renamed = BoundRenamer{}.run(body);
  WitnessFinder<Var> finder(vars);
  if (!finder.run(renamed, antecedent)) return false;
  try {
    return alpha_equal(antecedent, substitute_all(renamed, vars, finder.witnesses()));
  } catch (const SubstitutionError&) {
    return false;
  }
}

// ∃X∀y1..∀ym(X y1..ym <-> ψ) or its block form, returning the block.
std::optional<std::vector<RelVar>> comprehension_shape(const Formula& f) {
  std::vector<RelVar> block;
  Formula body;
  if (const auto* q = f.as<ExistsRelation>()) {
    block = {q->var};
    body = q->body;
  } else if (const auto* b = f.as<ExistsNewSorts>()) {
    if (b->block.size() != 1) return std::nullopt;
    block = b->block;
    body = b->body;
  } else {
    return std::nullopt;
  }
  const RelVar& x = block[0];
  std::vector<IndVar> ys;
  for (std::size_t i = 0; i < x.arity(); ++i) {
    auto m = match_forall_ind(body);
    if (!m) return std::nullopt;
    ys.push_back(m->first);
    body = m->second;
  }
  const auto m = match_iff(body);
  if (!m) return std::nullopt;
  const auto* atom = m->first.as<RelationAtom>();
  if (!atom || atom->var != x || atom->args != ys) return std::nullopt;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (ys[i].sort != x.sorts[i]) return std::nullopt;
    for (std::size_t j = 0; j < i; ++j)
      if (ys[i] == ys[j]) return std::nullopt;
  }
  if (free_relation_vars(m->second).count(x)) return std::nullopt;
  return block;
}

Formula conj_all(const std::vector<Formula>& parts) {
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = conjunction(out, parts[i]);
  return out;
}

}  // namespace

std::string to_string(Rule r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "Premise";
}

std::optional<Rule> rule_from_string(const std::string& name) {
  for (const auto& [rule, n] : kRuleNames)
    if (name == n) return rule;
  return std::nullopt;
}

bool recognize_tautology(const Formula& f) {
  Skeleton s;
  s.build(f);
  std::vector<char> val(s.nodes.size());
  const std::uint32_t rows = std::uint32_t{1} << s.atoms.size();
  for (std::uint32_t row = 0; row < rows; ++row)
    if (!s.eval(row, val)) return false;
  return true;
}

bool recognize_identity(const Formula& f) {
  if (const auto* e = f.as<Equation>()) return e->lhs == e->rhs;
  const auto imp = match_implication(f);
  if (!imp) return false;
  const auto* a = imp->first.as<Equation>();
  const auto* b = imp->second.as<Equation>();
  if (a && b && a->lhs == b->rhs && a->rhs == b->lhs) return true;

  const auto parts = flatten_conjunction(imp->first);
  if (parts.size() < 2 || !is_atomic(parts.back()) || !is_atomic(imp->second)) return false;
  std::map<IndVar, IndVar> subst;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    const auto* eq = parts[i].as<Equation>();
    if (!eq || eq->lhs.sort != eq->rhs.sort) return false;
    auto [it, inserted] = subst.emplace(eq->lhs, eq->rhs);
    if (!inserted && it->second != eq->rhs) return false;
  }
  auto apply = [&](const IndVar& v) {
    auto it = subst.find(v);
    return it == subst.end() ? v : it->second;
  };
  const Formula& phi = parts.back();
  Formula expected;
  if (const auto* e = phi.as<Equation>()) {
    expected = equation(apply(e->lhs), apply(e->rhs));
  } else if (const auto* p = phi.as<PredicateAtom>()) {
    std::vector<IndVar> args;
    for (const auto& v : p->args) args.push_back(apply(v));
    expected = predicate(p->pred, args);
  } else {
    const auto* r = phi.as<RelationAtom>();
    std::vector<IndVar> args;
    for (const auto& v : r->args) args.push_back(apply(v));
    expected = relation_atom(r->var, args);
  }
  return expected == imp->second;
}

std::optional<QuantAxiomKind> recognize_quant_axiom(const Formula& f) {
  const auto imp = match_implication(f);
  if (!imp) return std::nullopt;
  const Formula& hyp = imp->first;
  const Formula& concl = imp->second;
  if (const auto* q = concl.as<ExistsIndividual>()) {
    if (is_instance<IndVar>(hyp, q->body, {q->var})) return QuantAxiomKind::Individual;
  } else if (const auto* q = concl.as<ExistsRelation>()) {
    if (is_instance<RelVar>(hyp, q->body, {q->var})) return QuantAxiomKind::Relation;
  } else if (const auto* q = concl.as<ExistsNewSorts>()) {
    if (new_sort_ok(concl) && is_instance<RelVar>(hyp, q->body, q->block)) return QuantAxiomKind::NewSort;
  }
  return std::nullopt;
}

std::optional<ComprehensionKind> recognize_comprehension(const Formula& f) {
  if (!comprehension_shape(f)) return std::nullopt;
  if (f.as<ExistsRelation>()) return ComprehensionKind::First;
  if (!new_sort_ok(f)) return std::nullopt;
  return ComprehensionKind::Second;
}

Formula power_sort_axiom(std::size_t n, SortId u_sort, SortId x_sort, SortId z_sort) {
  const IndVar u{"u", u_sort}, x{"x", x_sort}, y{"y", x_sort};
  std::vector<IndVar> zs;
  for (std::size_t i = 1; i <= n; ++i) zs.push_back(IndVar{"z" + std::to_string(i), z_sort});
  const RelVar big_x{"X", std::vector<SortId>(n, z_sort)};
  std::vector<SortId> y_sorts{x_sort};
  y_sorts.insert(y_sorts.end(), n, z_sort);
  const RelVar big_y{"Y", y_sorts};
  auto with = [&](const IndVar& head) {
    std::vector<IndVar> args{head};
    args.insert(args.end(), zs.begin(), zs.end());
    return args;
  };
  auto forall_zs = [&](Formula body) {
    for (auto it = zs.rbegin(); it != zs.rend(); ++it) body = forall(*it, body);
    return body;
  };
  const Formula copy1 = forall(u, exists(zs[0], equation(u, zs[0])));
  const Formula copy2 = forall(zs[0], exists(u, equation(u, zs[0])));
  const Formula extensional = forall(
      x, forall(y, implies(forall_zs(iff(relation_atom(big_y, with(x)), relation_atom(big_y, with(y)))),
                           equation(x, y))));
  const Formula coding =
      forall(big_x, exists(x, forall_zs(iff(relation_atom(big_x, zs), relation_atom(big_y, with(x))))));
  return exists_new({big_y}, conj_all({copy1, copy2, extensional, coding}));
}

Formula infinite_sort_axiom(SortId sort) {
  const IndVar x{"x", sort}, y{"y", sort}, z{"z", sort};
  const RelVar r{"X", {sort, sort}};
  auto at = [&](const IndVar& a, const IndVar& b) { return relation_atom(r, {a, b}); };
  auto all3 = [&](Formula body) { return forall(x, forall(y, forall(z, body))); };
  const Formula functional = all3(implies(conjunction(at(x, y), at(x, z)), equation(y, z)));
  const Formula injective = all3(implies(conjunction(at(x, z), at(y, z)), equation(x, y)));
  const Formula total = forall(x, exists(y, at(x, y)));
  const Formula not_onto = exists(z, forall(x, forall(y, implies(at(x, y), negation(equation(y, z))))));
  return exists_new({r}, conj_all({functional, injective, total, not_onto}));
}

bool recognize_power_sort(const Formula& f) {
  const auto* b = f.as<ExistsNewSorts>();
  if (!b || b->block.size() != 1 || b->block[0].arity() < 2) return false;
  const auto& ys = b->block[0].sorts;
  const SortId x_sort = ys[0], z_sort = ys[1];
  for (std::size_t i = 2; i < ys.size(); ++i)
    if (ys[i] != z_sort) return false;
  const auto parts = flatten_conjunction(b->body);
  if (parts.empty()) return false;
  const auto first = match_forall_ind(parts.front());
  if (!first) return false;
  const SortId u_sort = first->first.sort;
  if (x_sort == z_sort || u_sort == x_sort || u_sort == z_sort) return false;
  return alpha_equal(f, power_sort_axiom(ys.size() - 1, u_sort, x_sort, z_sort));
}

bool recognize_infinite_sort(const Formula& f) {
  const auto* b = f.as<ExistsNewSorts>();
  if (!b || b->block.size() != 1 || b->block[0].arity() != 2) return false;
  const auto& s = b->block[0].sorts;
  return s[0] == s[1] && alpha_equal(f, infinite_sort_axiom(s[0]));
}

namespace {

std::string check_line(const Proof& p, std::size_t k, bool& over_budget) {
  const ProofLine& line = p.lines[k - 1];
  const Formula& f = line.formula;
  const Justification& j = line.just;
  if (!f.valid()) return "empty formula";
  if (auto issues = well_formed(p.vocabulary, f); !issues.empty()) return "ill-formed: " + describe(issues.front());

  auto earlier = [&](std::size_t i, const char* which) -> std::string {
    if (i < 1 || i >= k) return std::string("reference ") + which + "=" + std::to_string(i) + " is not an earlier line";
    return "";
  };

  switch (j.rule) {
    case Rule::Premise:
      for (const auto& t : p.theory)
        if (alpha_equal(t, f)) return "";
      return "not a member of the theory";
    case Rule::Tautology:
      try {
        return recognize_tautology(f) ? "" : "not a propositional tautology";
      } catch (const AtomCapExceeded& e) {
        over_budget = true;
        return std::string("tautology check refused: ") + e.what();
      }
    case Rule::Identity:
      return recognize_identity(f) ? "" : "not an identity axiom";
    case Rule::QuantAxiomInd:
      return recognize_quant_axiom(f) == QuantAxiomKind::Individual ? "" : "not an individual quantifier axiom";
    case Rule::QuantAxiomRel:
      return recognize_quant_axiom(f) == QuantAxiomKind::Relation ? "" : "not a relation quantifier axiom";
    case Rule::QuantAxiomNewSort:
      return recognize_quant_axiom(f) == QuantAxiomKind::NewSort ? "" : "not a new-sort quantifier axiom";
    case Rule::Comprehension1:
      return recognize_comprehension(f) == ComprehensionKind::First ? "" : "not a First Comprehension instance";
    case Rule::Comprehension2:
      return recognize_comprehension(f) == ComprehensionKind::Second ? "" : "not a Second Comprehension instance";
    case Rule::PowerSort:
      return recognize_power_sort(f) ? "" : "not a Power Sort Axiom instance";
    case Rule::InfiniteSort:
      return recognize_infinite_sort(f) ? "" : "not an Infinite Sort Axiom instance";
    case Rule::MP: {
      if (auto e = earlier(j.i, "i"); !e.empty()) return e;
      if (auto e = earlier(j.j, "j"); !e.empty()) return e;
      const auto imp = match_implication(p.lines[j.j - 1].formula);
      if (!imp || !alpha_equal(imp->first, p.lines[j.i - 1].formula) || !alpha_equal(imp->second, f))
        return "line " + std::to_string(j.j) + " is not line " + std::to_string(j.i) + " -> this line";
      return "";
    }
    case Rule::GenInd:
    case Rule::GenRel:
    case Rule::GenNewSort: {
      if (auto e = earlier(j.i, "i"); !e.empty()) return e;
      const auto premise = match_implication(p.lines[j.i - 1].formula);
      if (!premise) return "line " + std::to_string(j.i) + " is not an implication";
      const Formula& phi = premise->first;
      const Formula& psi = premise->second;
      Formula expected;
      if (j.rule == Rule::GenInd) {
        if (free_individual_vars(psi).count(j.var)) return "variable " + j.var.name + " is free in the consequent";
        for (const auto& t : p.theory)
          if (free_individual_vars(t).count(j.var)) return "variable " + j.var.name + " is free in the theory";
        expected = implies(exists(j.var, phi), psi);
      } else if (j.rule == Rule::GenRel) {
        if (j.vars.size() != 1) return "GenRel needs exactly one variable";
        if (free_relation_vars(psi).count(j.vars[0])) return j.vars[0].name + " is free in the consequent";
        for (const auto& t : p.theory)
          if (free_relation_vars(t).count(j.vars[0])) return j.vars[0].name + " is free in the theory";
        expected = implies(exists(j.vars[0], phi), psi);
      } else {
        if (j.vars.empty()) return "GenNewSort needs a nonempty block";
        const SortSet bs = block_sorts(j.vars);
        for (SortId s : free_sorts(psi))
          if (bs.count(s)) return "side condition violated: free sort " + std::to_string(s) + " of the consequent is bound by the block";
        for (const auto& t : p.theory)
          for (SortId s : free_sorts(t))
            if (bs.count(s)) return "side condition violated: free sort " + std::to_string(s) + " of the theory is bound by the block";
        expected = implies(exists_new(j.vars, phi), psi);
        if (auto issues = well_formed(p.vocabulary, expected); !issues.empty())
          return "conclusion ill-formed: " + describe(issues.front());
      }
      if (!alpha_equal(expected, f)) return "this line is not the generalization of line " + std::to_string(j.i);
      return "";
    }
  }
  return "unknown rule";
}

}  // namespace

std::vector<LineVerdict> check_proof(const Proof& p) {
  std::vector<LineVerdict> out;
  for (std::size_t k = 1; k <= p.lines.size(); ++k) {
    bool over_budget = false;
    std::string diag = check_line(p, k, over_budget);
    out.push_back(LineVerdict{k, diag.empty(), std::move(diag), over_budget});
  }
  return out;
}

bool proof_ok(const std::vector<LineVerdict>& verdicts) {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const LineVerdict& v) { return v.ok; });
}

}  // namespace sortlogic
