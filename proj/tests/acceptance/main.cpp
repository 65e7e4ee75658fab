// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "sortlogic/parser.hpp"
#include "sortlogic/proof.hpp"
#include "sortlogic/sem_full.hpp"
#include "sortlogic/sem_henkin.hpp"

namespace {

using namespace sortlogic;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string corpus(const std::string& name) { return std::string(SORTLOG_CORPUS_DIR) + "/" + name; }

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

template <class T>
T must(ParseResult<T> r, const std::string& what) {
  if (!r) throw std::runtime_error(what + ": " + describe(r.error()));
  return std::move(r).value();
}

Formula load_formula(const std::string& path, const Vocabulary& base = {}) {
  return must(parse_formula_file(read_text(path), base), path).formula;
}

Structure load_structure(const std::string& path) { return must(parse_structure(read_text(path)), path); }

Proof load_proof(const std::string& path) { return must(parse_proof(read_text(path)), path); }

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double secs) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", secs);
  return buf;
}

std::string describe(const Budget& b) {
  return "(" + std::to_string(b.domain_bound) + ", " + std::to_string(b.relation_cap) + ", " +
         std::to_string(b.step_cap) + ")";
}

Budget with_bound(std::size_t bound) {
  Budget b;
  b.domain_bound = bound;
  return b;
}

// Calls `visit` once per assignment of the free variables of `f`:
// individuals over their domains, relations over every relation of their
// type. Returns false as soon as `visit` does.
bool for_each_assignment(const Structure& m, const Formula& f, const std::function<bool(const Assignment&)>& visit) {
  const auto inds = free_individual_vars(f);
  const auto rels = free_relation_vars(f);
  std::vector<std::pair<IndVar, const std::vector<Element>*>> ind_slots;
  for (const auto& v : inds) ind_slots.emplace_back(v, m.domain(v.sort));
  std::vector<std::pair<RelVar, std::vector<TupleSet>>> rel_slots;
  for (const auto& v : rels) {
    std::vector<const std::vector<Element>*> factors;
    for (SortId s : v.sorts) factors.push_back(m.domain(s));
    rel_slots.emplace_back(v, enumerate_relations(product(factors), 20));
  }
  Assignment s;
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k < ind_slots.size()) {
      for (const auto& e : *ind_slots[k].second) {
        s.individuals[ind_slots[k].first] = e;
        if (!rec(k + 1)) return false;
      }
      return true;
    }
    const std::size_t r = k - ind_slots.size();
    if (r < rel_slots.size()) {
      for (const auto& value : rel_slots[r].second) {
        s.relations[rel_slots[r].first] = value;
        if (!rec(k + 1)) return false;
      }
      return true;
    }
    return visit(s);
  };
  return rec(0);
}

// ---------------------------------------------------------------------------

Outcome field_example() {
  struct Case {
    const char* file;
    std::size_t bound;
    Verdict3 want;
  };
  const Case cases[] = {{"group2.sls", 3, Verdict3::True}, {"group4.sls", 5, Verdict3::True},
                        {"klein4.sls", 6, Verdict3::Unknown}};
  Outcome out{true, ""};
  for (const auto& c : cases) {
    const Structure m = load_structure(corpus(c.file));
    const Formula field = load_formula(corpus("field.slf"), m.vocabulary);
    const bool oracle_field = testing_oracles::find_field(testing_oracles::group_of(m)).has_value();
    const auto start = Clock::now();
    const Verdict3 got = eval_sentence(m, field, with_bound(c.bound));
    const double secs = seconds_since(start);
    // The oracle must agree that a field exists exactly for the True cases.
    const bool ok = got == c.want && oracle_field == (c.want == Verdict3::True) && secs < 60;
    out.pass = out.pass && ok;
    out.detail += std::string(out.detail.empty() ? "" : ", ") + c.file + "@" + std::to_string(c.bound) + " " +
                  to_string(got) + " oracle=" + (oracle_field ? "field" : "none") + " " + fmt(secs);
  }
  return out;
}

Outcome power_sort_at_small_sizes() {
  const Formula psa = load_formula(corpus("psa.slf"));
  std::string detail;
  for (std::size_t n = 1; n <= 3; ++n) {
    Structure m;
    for (std::size_t i = 0; i < n; ++i) m.domains[0].push_back("m" + std::to_string(i));
    const std::size_t need = std::size_t{1} << n;
    const std::size_t top = n < 3 ? need + 1 : need;
    for (std::size_t bound = 1; bound <= top; ++bound) {
      const Verdict3 got = eval_sentence(m, psa, with_bound(bound));
      const Verdict3 want = bound >= need ? Verdict3::True : Verdict3::Unknown;
      if (got != want)
        return {false, "|M|=" + std::to_string(n) + " bound " + std::to_string(bound) + ": " + to_string(got)};
    }
    detail += (detail.empty() ? "" : ", ") + std::string("|M|=") + std::to_string(n) + " True from bound " +
              std::to_string(need);
  }
  return {true, detail};
}

Outcome infinite_sort_never_decided() {
  const Formula isa = load_formula(corpus("isa.slf"));
  for (std::size_t k = 1; k <= 4; ++k)
    if (testing_oracles::injective_non_surjective_map_exists(k))
      return {false, "pigeonhole oracle found a map on " + std::to_string(k) + " elements"};
  testing_gen::Rng rng(301);
  const Vocabulary voc = testing_gen::standard_vocabulary();
  std::size_t runs = 0;
  for (int i = 0; i < 20; ++i) {
    const Structure m = testing_gen::random_structure(rng, voc, {0, 1}, 3);
    for (std::size_t bound = 1; bound <= 4; ++bound, ++runs) {
      const Verdict3 got = eval_sentence(m, isa, with_bound(bound));
      if (got != Verdict3::Unknown) return {false, "structure " + std::to_string(i) + " bound " +
                                                       std::to_string(bound) + ": " + to_string(got)};
    }
  }
  return {true, std::to_string(runs) + " runs Unknown, oracle: no witness up to 4 elements"};
}

// ∃X∀ys(X(ys) <-> ψ) or its block form. The first form keeps the remaining
// free variables of ψ as parameters.
Formula comprehension_instance(testing_gen::Rng& rng, bool second) {
  testing_gen::FormulaOptions opt;
  opt.max_rank = 2;
  opt.max_depth = 3;
  opt.sentence = false;
  opt.max_relation_quantifiers = 1;
  Vocabulary voc;
  if (second) {
    opt.base_sorts = {2};
  } else {
    voc.add("P", {0});
    voc.add("R", {0, 1});
  }
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const Formula psi = testing_gen::random_formula(rng, voc, opt);
    const auto free = free_individual_vars(psi);
    std::vector<IndVar> ys(free.begin(), free.end());
    std::shuffle(ys.begin(), ys.end(), rng);
    if (second) {
      if (!free_relation_vars(psi).empty() || ys.empty() || ys.size() > 2) continue;
    } else {
      if (ys.empty()) ys.push_back(IndVar{"y", 0});
      ys.resize(std::min<std::size_t>(ys.size(), 1 + attempt % 2));
    }
    std::vector<SortId> sorts;
    for (const auto& y : ys) sorts.push_back(y.sort);
    const RelVar c{"C", sorts};
    Formula body = iff(relation_atom(c, ys), psi);
    for (auto it = ys.rbegin(); it != ys.rend(); ++it) body = forall(*it, body);
    const Formula f = second ? exists_new({c}, body) : exists(c, body);
    const auto kind = recognize_comprehension(f);
    if (kind != (second ? ComprehensionKind::Second : ComprehensionKind::First)) continue;
    if (!well_formed(voc, f).empty()) continue;
    return f;
  }
  throw std::runtime_error("no comprehension instance generated");
}

Outcome comprehension_holds() {
  Vocabulary voc;
  voc.add("P", {0});
  voc.add("R", {0, 1});
  std::vector<Structure> structures;
  for (auto& m : testing_gen::all_structures(voc, {0, 1}, 2))
    if (m.total_size() <= 3) structures.push_back(std::move(m));
  testing_gen::Rng rng(404);
  std::size_t evaluations = 0, firsts = 0;
  for (int i = 0; i < 50; ++i) {
    const bool second = i % 10 >= 7;
    firsts += !second;
    const Formula f = comprehension_instance(rng, second);
    for (const auto& m : structures) {
      const bool held = for_each_assignment(m, f, [&](const Assignment& s) {
        ++evaluations;
        return eval(m, s, f, with_bound(2)) == Verdict3::True;
      });
      if (!held) return {false, "fails: " + render_formula(f)};
    }
  }
  return {true, "50 instances (" + std::to_string(firsts) + " First, " + std::to_string(50 - firsts) +
                    " Second) on " + std::to_string(structures.size()) + " structures, " +
                    std::to_string(evaluations) + " evaluations all True"};
}

Outcome model_independence() {
  const Vocabulary voc = testing_gen::standard_vocabulary();
  std::vector<Formula> sentences = {
      infinite_sort_axiom(5),
      must(parse_formula("Es X:(5). E u:5, v:5. ~u = v", {}), "sentence"),
      must(parse_formula("~Es X:(5). E u:5. X(u) & ~X(u)", {}), "sentence"),
      must(parse_formula("Es (X:(5), Y:(5,6)). (A u:5. E w:6. Y(u, w)) & E u:5. X(u) & A v:5. u = v", {}), "sentence"),
  };
  testing_gen::Rng rng(505);
  testing_gen::FormulaOptions opt;
  opt.max_rank = 2;
  opt.max_depth = 3;
  opt.max_relation_quantifiers = 1;
  while (sentences.size() < 10) {
    const Formula closed = sort_closure(testing_gen::random_formula(rng, voc, opt), voc);
    if (free_sorts(closed).empty()) sentences.push_back(closed);
  }
  std::vector<Structure> models;
  while (models.size() < 5) {
    Structure m = testing_gen::random_structure(rng, voc, {0, 1}, 3);
    bool fresh = true;
    for (const auto& other : models) fresh = fresh && !isomorphic(m, other);
    if (fresh) models.push_back(std::move(m));
  }
  std::size_t evaluations = 0;
  std::map<Verdict3, std::size_t> seen;
  for (const auto& f : sentences)
    for (std::size_t bound = 1; bound <= 2; ++bound) {
      const Verdict3 first = eval_sentence(models.front(), f, with_bound(bound));
      ++seen[first];
      for (const auto& m : models) {
        ++evaluations;
        if (eval_sentence(m, f, with_bound(bound)) != first)
          return {false, "verdicts differ for " + render_formula(f)};
      }
    }
  return {true, "10 sentences x 5 models x 2 budgets, " + std::to_string(evaluations) + " evaluations consistent (" +
                    std::to_string(seen[Verdict3::True]) + " True, " + std::to_string(seen[Verdict3::False]) +
                    " False, " + std::to_string(seen[Verdict3::Unknown]) + " Unknown per model)"};
}

Outcome bound_monotonicity() {
  const Vocabulary voc = testing_gen::standard_vocabulary();
  testing_gen::Rng rng(606);
  testing_gen::FormulaOptions opt;
  opt.max_rank = 3;
  opt.max_depth = 4;
  opt.block_quantifiers = true;
  opt.max_relation_quantifiers = 1;
  std::vector<Budget> grid;
  for (std::size_t bound = 1; bound <= 4; ++bound)
    for (std::uint64_t rel : {2u, 16u, 65536u})
      for (std::uint64_t steps : {300u, 30000u}) grid.push_back(Budget{bound, rel, steps});
  auto below = [](const Budget& a, const Budget& b) {
    return a.domain_bound <= b.domain_bound && a.relation_cap <= b.relation_cap && a.step_cap <= b.step_cap;
  };
  std::size_t definite = 0;
  for (int pair = 0; pair < 200; ++pair) {
    const Structure m = testing_gen::random_structure(rng, voc, {0, 1}, 2);
    const Formula f = testing_gen::random_formula(rng, voc, opt);
    std::vector<Verdict3> verdicts;
    for (const auto& b : grid) verdicts.push_back(eval_sentence(m, f, b));
    for (std::size_t i = 0; i < grid.size(); ++i) {
      definite += verdicts[i] != Verdict3::Unknown;
      for (std::size_t j = 0; j < grid.size(); ++j)
        // Unknown is not definite: a larger domain bound may spend the step
        // cap elsewhere, so only True/False disagreements count.
        if (below(grid[i], grid[j]) && verdicts[i] != Verdict3::Unknown && verdicts[j] != Verdict3::Unknown &&
            verdicts[j] != verdicts[i])
          return {false, "pair " + std::to_string(pair) + " flips from " + to_string(verdicts[i]) + " at " +
                             describe(grid[i]) + " to " + to_string(verdicts[j]) + " at " + describe(grid[j]) +
                             ": " + render_formula(f) + " in " + render_structure(m)};
    }
  }
  return {true, "200 pairs x " + std::to_string(grid.size()) + " budgets, " + std::to_string(definite) +
                    " definite verdicts, no flips"};
}

Outcome exact_fragment() {
  std::size_t checks = 0, truths = 0;
  auto compare = [&](const Structure& m, const Formula& f) {
    ++checks;
    Budget b;
    b.relation_cap = std::uint64_t{1} << 40;
    b.step_cap = std::uint64_t{1} << 40;
    const Verdict3 got = eval_sentence(m, f, b);
    truths += got == Verdict3::True;
    return got == (testing_oracles::brute_eval_sentence(m, f) ? Verdict3::True : Verdict3::False);
  };
  // Every structure over a small vocabulary with up to three elements per sort.
  Vocabulary small;
  small.add("P", {0});
  small.add("Q", {1});
  const auto structures = testing_gen::all_structures(small, {0, 1}, 3);
  testing_gen::Rng rng(707);
  testing_gen::FormulaOptions opt;
  opt.max_relation_arity = 1;
  for (int i = 0; i < 30; ++i) {
    const Formula f = testing_gen::random_formula(rng, small, opt);
    for (const auto& m : structures)
      if (!compare(m, f)) return {false, "discrepancy on " + render_formula(f)};
  }
  // Random structures over the full vocabulary, binary relation variables included.
  const Vocabulary voc = testing_gen::standard_vocabulary();
  opt = {};
  opt.max_relation_quantifiers = 1;
  for (int i = 0; i < 400; ++i) {
    const Structure m = testing_gen::random_structure(rng, voc, {0, 1}, 3);
    const Formula f = testing_gen::random_formula(rng, voc, opt);
    if (!compare(m, f)) return {false, "discrepancy on " + render_formula(f)};
  }
  return {true, std::to_string(checks) + " checks (" + std::to_string(structures.size()) +
                    " exhaustive structures x 30 sentences + 400 random pairs, " + std::to_string(truths) +
                    " True), 0 discrepancies"};
}

const std::map<std::string, std::size_t>& corrupted_lines() {
  static const std::map<std::string, std::size_t> lines = {
      {"01_capture_individual", 1},
      {"02_capture_relation", 1},
      {"03_genind_free_in_consequent", 2},
      {"04_genind_wrong_variable", 2},
      {"05_genrel_free_in_consequent", 2},
      {"06_gennewsort_free_sort_in_consequent", 2},
      {"07_gennewsort_free_sort_in_theory", 2},
      {"08_mp_mismatch", 3},
      {"09_comprehension_self_reference", 1},
      {"10_identity_not_reflexive", 1},
  };
  return lines;
}

std::vector<std::filesystem::path> good_proofs() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(corpus("proofs")))
    if (e.path().extension() == ".slp") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

Outcome proof_checker() {
  std::size_t good = 0;
  for (const auto& path : good_proofs()) {
    const auto verdicts = check_proof(load_proof(path.string()));
    if (!proof_ok(verdicts)) return {false, path.filename().string() + " rejected"};
    ++good;
  }
  const Proof demo = load_proof(corpus("proofs/demo.slp"));
  if (demo.lines.size() != 3 || !alpha_equal(demo.lines.back().formula, must(parse_formula("E x:0. x = x", {}), "")))
    return {false, "demo.slp is not the three-line derivation of E x:0. x = x"};
  std::size_t bad = 0;
  for (const auto& [stem, line] : corrupted_lines()) {
    const auto verdicts = check_proof(load_proof(corpus("proofs/bad/" + stem + ".slp")));
    for (const auto& v : verdicts) {
      const bool should_fail = v.index == line;
      if (v.ok == should_fail) return {false, stem + " line " + std::to_string(v.index) + " misjudged"};
      if (should_fail && v.diagnostic.empty()) return {false, stem + " has no diagnostic"};
    }
    ++bad;
  }
  return {true, std::to_string(good) + " proofs verify, " + std::to_string(bad) +
                    " corrupted proofs rejected at the corrupted line"};
}

void collect_relation_types(const Formula& f, std::set<std::vector<SortId>>& types, SortSet& sorts) {
  if (const auto* e = f.as<Equation>()) {
    sorts.insert(e->lhs.sort);
  } else if (const auto* a = f.as<PredicateAtom>()) {
    for (const auto& x : a->args) sorts.insert(x.sort);
  } else if (const auto* r = f.as<RelationAtom>()) {
    types.insert(r->var.sorts);
  } else if (const auto* n = f.as<Negation>()) {
    collect_relation_types(n->body, types, sorts);
  } else if (const auto* d = f.as<Disjunction>()) {
    collect_relation_types(d->lhs, types, sorts);
    collect_relation_types(d->rhs, types, sorts);
  } else if (const auto* q = f.as<ExistsIndividual>()) {
    sorts.insert(q->var.sort);
    collect_relation_types(q->body, types, sorts);
  } else if (const auto* q = f.as<ExistsRelation>()) {
    types.insert(q->var.sorts);
    collect_relation_types(q->body, types, sorts);
  } else if (const auto* b = f.as<ExistsNewSorts>()) {
    for (const auto& v : b->block) types.insert(v.sorts);
    collect_relation_types(b->body, types, sorts);
  }
}

// Every assignment of free variables over base domains and G records.
bool holds_everywhere(const HenkinStructure& h, const Formula& f) {
  std::vector<IndVar> inds;
  for (const auto& v : free_individual_vars(f)) inds.push_back(v);
  std::vector<RelVar> rels;
  for (const auto& v : free_relation_vars(f)) rels.push_back(v);
  Assignment s;
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k < inds.size()) {
      for (const auto& e : *h.base.domain(inds[k].sort)) {
        s.individuals[inds[k]] = e;
        if (!rec(k + 1)) return false;
      }
      return true;
    }
    if (k - inds.size() < rels.size()) {
      const RelVar& v = rels[k - inds.size()];
      for (const auto& g : h.G) {
        if (g.sorts != v.sorts) continue;
        bool inside = true;
        for (const auto& t : g.tuples)
          for (std::size_t i = 0; i < t.size(); ++i) {
            const auto& dom = *h.base.domain(v.sorts[i]);
            inside = inside && std::find(dom.begin(), dom.end(), t[i]) != dom.end();
          }
        if (!inside) continue;
        s.relations[v] = g.tuples;
        if (!rec(k + 1)) return false;
      }
      return true;
    }
    return eval_henkin(h, s, f);
  };
  return rec(0);
}

Outcome soundness_fuzz() {
  struct Subject {
    std::string name;
    Proof proof;
    std::vector<SortId> sorts;
    std::vector<std::vector<SortId>> types;
  };
  std::vector<Subject> subjects;
  for (const auto& path : good_proofs()) {
    Proof p = load_proof(path.string());
    // Finite Henkin structures cannot model the set-existence axioms.
    bool set_axiom = false;
    for (const auto& line : p.lines)
      set_axiom = set_axiom || line.just.rule == Rule::PowerSort || line.just.rule == Rule::InfiniteSort;
    if (set_axiom) continue;
    SortSet base{0}, all;
    std::set<std::vector<SortId>> types;
    std::vector<Formula> formulas = p.theory;
    for (const auto& line : p.lines) formulas.push_back(line.formula);
    for (const auto& f : formulas) {
      for (SortId s : free_sorts(f)) base.insert(s);
      collect_relation_types(f, types, all);
    }
    for (const auto& sym : p.vocabulary.symbols()) base.insert(sym.sorts.begin(), sym.sorts.end());
    subjects.push_back({path.filename().string(), std::move(p), std::vector<SortId>(base.begin(), base.end()),
                        std::vector<std::vector<SortId>>(types.begin(), types.end())});
  }
  testing_gen::Rng rng(909);
  std::size_t pairs = 0, attempts = 0, lines = 0;
  while (pairs < 500 && attempts < 50000) {
    const Subject& sub = subjects[attempts++ % subjects.size()];
    const HenkinStructure h = testing_gen::random_henkin(rng, sub.proof.vocabulary, sub.sorts, sub.types, 2);
    if (!check_comprehension(h, 1, 4).passed()) continue;
    bool models_theory = true;
    for (const auto& t : sub.proof.theory) models_theory = models_theory && eval_henkin_sentence(h, t);
    if (!models_theory) continue;
    ++pairs;
    for (std::size_t k = 0; k < sub.proof.lines.size(); ++k, ++lines)
      if (!holds_everywhere(h, sub.proof.lines[k].formula))
        return {false, sub.name + " line " + std::to_string(k + 1) + " false in " + render_henkin(h)};
  }
  if (pairs < 500) return {false, "only " + std::to_string(pairs) + " admissible structure/proof pairs"};
  return {true, std::to_string(pairs) + " pairs over " + std::to_string(subjects.size()) + " proofs (" +
                    std::to_string(attempts) + " structures drawn), " + std::to_string(lines) +
                    " lines true, 0 counterexamples"};
}

Outcome countermodel_search_criterion() {
  const auto start = Clock::now();
  const SearchResult found = countermodel_search({}, {}, must(parse_formula("A x:0, y:0. x = y", {}), ""), {});
  const double secs = seconds_since(start);
  if (!found.countermodel) return {false, "no countermodel for A x:0, y:0. x = y"};
  const std::size_t size = found.countermodel->base.total_size();
  SearchBounds b;
  b.max_pool = 3;
  const SearchResult none = countermodel_search({}, {}, must(parse_formula("A x:0. x = x", {}), ""), b);
  const bool ok = size == 2 && secs < 5 && !none.countermodel && none.exhausted;
  return {ok, std::to_string(size) + "-element countermodel in " + fmt(secs) + "; A x:0. x = x: " +
                  (none.countermodel ? "Found" : "NotFound") + (none.exhausted ? " (exhausted)" : " (capped)")};
}

Outcome round_trip() {
  const Vocabulary voc = testing_gen::standard_vocabulary();
  testing_gen::Rng rng(1111);
  for (int i = 0; i < 1000; ++i) {
    testing_gen::FormulaOptions opt;
    opt.block_quantifiers = i % 2 == 0;
    opt.sentence = i % 3 != 0;
    const Formula f = testing_gen::random_formula(rng, voc, opt);
    const auto back = parse_formula(render_formula(f), voc);
    if (!back || back.value() != f) return {false, "formula: " + render_formula(f)};
  }
  for (int i = 0; i < 100; ++i) {
    const Structure m = testing_gen::random_structure(rng, voc, {0, 1, 2}, 3);
    const auto back = parse_structure(render_structure(m));
    if (!back || back.value() != m) return {false, "structure: " + render_structure(m)};
  }
  for (int i = 0; i < 20; ++i) {
    const Proof p = testing_gen::random_proof(rng, voc, 8);
    const auto back = parse_proof(render_proof(p));
    if (!back || back.value() != p) return {false, "proof: " + render_proof(p)};
  }
  return {true, "1000 formulas, 100 structures, 20 proofs"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"field example", field_example},
      {"power sort axiom at desk scale", power_sort_at_small_sizes},
      {"infinite sort axiom at desk scale", infinite_sort_never_decided},
      {"comprehension instances hold", comprehension_holds},
      {"model independence of sort-free sentences", model_independence},
      {"bound monotonicity", bound_monotonicity},
      {"exact fragment matches brute force", exact_fragment},
      {"proof checker corpus", proof_checker},
      {"soundness fuzz", soundness_fuzz},
      {"countermodel search", countermodel_search_criterion},
      {"round trip", round_trip},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %2zu %s: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str(),
                fmt(seconds_since(start)).c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
