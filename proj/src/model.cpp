#include "sortlogic/model.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "expansion_shapes.hpp"

namespace sortlogic {

namespace detail {

namespace {

struct ShapeBuilder {
  std::size_t old_count, k, bound, total;
  std::vector<std::vector<std::uint32_t>> masks_by_pop;
  std::vector<std::size_t> counts;  // per pattern, pattern p = index + 1
  std::vector<Shape> level;

  void counts_rec(std::size_t pi, std::vector<std::size_t>& fresh) {
    const std::size_t npat = (std::size_t{1} << k) - 1;
    if (pi == npat) {
      std::size_t fresh_sum = std::accumulate(fresh.begin(), fresh.end(), std::size_t{0});
      if (fresh_sum > total) return;
      std::vector<std::size_t> pops(k);
      pops_rec(0, total - fresh_sum, fresh, pops);
      return;
    }
    const std::size_t pattern = pi + 1;
    for (std::size_t c = 0;; ++c) {
      bool ok = true;
      for (std::size_t i = 0; i < k; ++i)
        if ((pattern >> i) & 1) ok = ok && fresh[i] + c <= bound;
      if (!ok) break;
      counts[pi] = c;
      for (std::size_t i = 0; i < k; ++i)
        if ((pattern >> i) & 1) fresh[i] += c;
      counts_rec(pi + 1, fresh);
      for (std::size_t i = 0; i < k; ++i)
        if ((pattern >> i) & 1) fresh[i] -= c;
    }
    counts[pi] = 0;
  }

  void pops_rec(std::size_t i, std::size_t remaining, const std::vector<std::size_t>& fresh,
                std::vector<std::size_t>& pops) {
    if (i == k) {
      if (remaining == 0) subsets_rec(0, fresh, pops, std::vector<std::uint32_t>(k));
      return;
    }
    const std::size_t lo = fresh[i] == 0 ? 1 : 0;
    const std::size_t hi = std::min(old_count, bound - fresh[i]);
    for (std::size_t p = lo; p <= hi && p <= remaining; ++p) {
      pops[i] = p;
      pops_rec(i + 1, remaining - p, fresh, pops);
    }
  }

  void subsets_rec(std::size_t i, const std::vector<std::size_t>& fresh, const std::vector<std::size_t>& pops,
                   std::vector<std::uint32_t> chosen) {
    if (i == k) {
      emit(chosen);
      return;
    }
    for (std::uint32_t m : masks_by_pop[pops[i]]) {
      chosen[i] = m;
      subsets_rec(i + 1, fresh, pops, chosen);
    }
  }

  void emit(const std::vector<std::uint32_t>& chosen) {
    Shape shape(k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t e = 0; e < old_count; ++e)
        if ((chosen[i] >> e) & 1) shape[i].push_back(e);
    std::size_t next = old_count;
    for (std::size_t pi = 0; pi < counts.size(); ++pi) {
      const std::size_t pattern = pi + 1;
      for (std::size_t c = 0; c < counts[pi]; ++c, ++next)
        for (std::size_t i = 0; i < k; ++i)
          if ((pattern >> i) & 1) shape[i].push_back(next);
    }
    level.push_back(std::move(shape));
  }
};

}  // namespace

bool for_each_expansion_shape(std::size_t old_count, std::size_t sort_count, std::size_t bound,
                              const std::function<bool(const Shape&)>& visit) {
  if (bound == 0 || sort_count == 0) return true;
  if (old_count > 24 || sort_count > 6) throw BudgetExceeded("expansion enumeration too large");
  ShapeBuilder b{old_count, sort_count, bound, 0, {}, {}, {}};
  b.masks_by_pop.resize(old_count + 1);
  for (std::uint32_t m = 0; m < (std::uint32_t{1} << old_count); ++m)
    b.masks_by_pop[std::popcount(m)].push_back(m);
  b.counts.assign((std::size_t{1} << sort_count) - 1, 0);
  for (std::size_t t = sort_count; t <= sort_count * bound; ++t) {
    b.total = t;
    b.level.clear();
    std::vector<std::size_t> fresh(sort_count, 0);
    b.counts_rec(0, fresh);
    std::sort(b.level.begin(), b.level.end());
    for (const auto& shape : b.level)
      if (!visit(shape)) return false;
  }
  return true;
}

}  // namespace detail

const std::vector<Element>* Structure::domain(SortId s) const {
  auto it = domains.find(s);
  return it == domains.end() ? nullptr : &it->second;
}

const TupleSet& Structure::relation(const std::string& pred) const {
  static const TupleSet empty;
  auto it = relations.find(pred);
  return it == relations.end() ? empty : it->second;
}

std::vector<Element> Structure::universe() const {
  std::vector<Element> out;
  for (const auto& [s, d] : domains) out.insert(out.end(), d.begin(), d.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t Structure::total_size() const {
  std::size_t n = 0;
  for (const auto& [s, d] : domains) n += d.size();
  return n;
}

Issues validate_structure(const Vocabulary& voc, const Structure& m) {
  Issues issues = validate_vocabulary(voc);
  for (const auto& [s, d] : m.domains) {
    if (d.empty()) issues.push_back({IssueKind::EmptyDomain, "sort " + std::to_string(s) + " has an empty domain"});
    std::set<Element> seen;
    for (const auto& e : d)
      if (!seen.insert(e).second)
        issues.push_back({IssueKind::DuplicateElement,
                          "element '" + e + "' listed twice in sort " + std::to_string(s)});
  }
  for (const auto& sym : voc.symbols())
    for (SortId s : sym.sorts) {
      const auto* d = m.domain(s);
      if (!d)
        issues.push_back({IssueKind::MissingDomain,
                          "predicate '" + sym.name + "' uses sort " + std::to_string(s) + " which has no domain"});
    }
  for (const auto& [name, tuples] : m.relations) {
    const auto* sym = voc.find(name);
    if (!sym) {
      issues.push_back({IssueKind::UnknownSymbol, "relation '" + name + "' is not in the vocabulary"});
      continue;
    }
    for (const auto& t : tuples) {
      if (t.size() != sym->sorts.size()) {
        issues.push_back({IssueKind::ArityMismatch, "tuple of wrong length in relation '" + name + "'"});
        continue;
      }
      for (std::size_t i = 0; i < t.size(); ++i) {
        const auto* d = m.domain(sym->sorts[i]);
        if (!d || std::find(d->begin(), d->end(), t[i]) == d->end()) {
          issues.push_back({IssueKind::TupleOutOfDomain, "element '" + t[i] + "' in relation '" + name +
                                                             "' is not in the domain of sort " +
                                                             std::to_string(sym->sorts[i])});
          break;
        }
      }
    }
  }
  return issues;
}

Assignment modify(const Structure& m, const Assignment& s, const IndVar& x, const Element& a) {
  const auto* d = m.domain(x.sort);
  if (!d || std::find(d->begin(), d->end(), a) == d->end())
    throw SortViolation("'" + a + "' is not in the domain of sort " + std::to_string(x.sort));
  Assignment out = s;
  out.individuals[x] = a;
  return out;
}

Assignment modify(const Structure& m, const Assignment& s, const RelVar& x, TupleSet a) {
  for (const auto& t : a) {
    if (t.size() != x.sorts.size()) throw SortViolation("tuple of wrong arity for " + x.name);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto* d = m.domain(x.sorts[i]);
      if (!d || std::find(d->begin(), d->end(), t[i]) == d->end())
        throw SortViolation("'" + t[i] + "' is not in the domain of sort " + std::to_string(x.sorts[i]));
    }
  }
  Assignment out = s;
  out.relations[x] = std::move(a);
  return out;
}

namespace {

std::vector<Element> fresh_names(const std::vector<Element>& used, std::size_t count) {
  std::set<Element> taken(used.begin(), used.end());
  std::vector<Element> out;
  for (std::size_t i = 0; out.size() < count; ++i) {
    Element name = "new" + std::to_string(i);
    if (!taken.count(name)) out.push_back(std::move(name));
  }
  return out;
}

}  // namespace

ExpansionStream enumerate_expansions(const Structure& m, const SortSet& block_sorts, std::size_t domain_bound,
                                     std::size_t max_candidates) {
  ExpansionStream out;
  const std::vector<Element> old = m.universe();
  const std::vector<SortId> sorts(block_sorts.begin(), block_sorts.end());
  const std::vector<Element> fresh = fresh_names(old, sorts.size() * domain_bound);
  detail::for_each_expansion_shape(old.size(), sorts.size(), domain_bound, [&](const detail::Shape& shape) {
    if (out.candidates.size() >= max_candidates) {
      out.budget_exceeded = true;
      return false;
    }
    ExpansionCandidate c;
    for (std::size_t i = 0; i < sorts.size(); ++i) {
      auto& dom = c.new_domains[sorts[i]];
      for (std::size_t idx : shape[i]) dom.push_back(idx < old.size() ? old[idx] : fresh[idx - old.size()]);
    }
    out.candidates.push_back(std::move(c));
    return true;
  });
  return out;
}

Structure expand(const Structure& m, const ExpansionCandidate& c) {
  Structure out;
  for (const auto& sym : m.vocabulary.symbols()) {
    const bool touched = std::any_of(sym.sorts.begin(), sym.sorts.end(),
                                     [&](SortId s) { return c.new_domains.count(s) > 0; });
    if (touched) continue;
    out.vocabulary.add(sym);
    if (auto it = m.relations.find(sym.name); it != m.relations.end()) out.relations.insert(*it);
  }
  out.domains = m.domains;
  for (const auto& [s, d] : c.new_domains) out.domains[s] = d;
  return out;
}

std::vector<Tuple> product(const std::vector<const std::vector<Element>*>& factors) {
  std::vector<Tuple> out{Tuple{}};
  for (const auto* f : factors) {
    std::vector<Tuple> next;
    for (const auto& prefix : out)
      for (const auto& e : *f) {
        Tuple t = prefix;
        t.push_back(e);
        next.push_back(std::move(t));
      }
    out = std::move(next);
  }
  return out;
}

std::uint64_t subset_count(std::size_t n) { return n >= 63 ? (std::uint64_t{1} << 63) : (std::uint64_t{1} << n); }

std::vector<TupleSet> enumerate_relations(const std::vector<Tuple>& tuples, std::uint64_t cap) {
  const std::uint64_t count = subset_count(tuples.size());
  if (tuples.size() >= 63 || count > cap)
    throw BudgetExceeded(std::to_string(tuples.size()) + "-tuple product has more than " + std::to_string(cap) +
                         " subsets");
  std::vector<TupleSet> out;
  out.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    TupleSet s;
    for (std::size_t i = 0; i < tuples.size(); ++i)
      if ((mask >> i) & 1) s.insert(tuples[i]);
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

struct IsoSearch {
  const Structure& a;
  const Structure& b;
  std::vector<Element> ua, ub;
  std::map<Element, Element> map;
  std::set<Element> used;

  bool same_membership(const Element& x, const Element& y) const {
    for (const auto& [s, d] : a.domains) {
      const bool in_a = std::find(d.begin(), d.end(), x) != d.end();
      const auto* db = b.domain(s);
      const bool in_b = std::find(db->begin(), db->end(), y) != db->end();
      if (in_a != in_b) return false;
    }
    return true;
  }

  bool relations_match() const {
    for (const auto& sym : a.vocabulary.symbols()) {
      const auto& ra = a.relation(sym.name);
      const auto& rb = b.relation(sym.name);
      if (ra.size() != rb.size()) return false;
      for (const auto& t : ra) {
        Tuple image;
        for (const auto& e : t) image.push_back(map.at(e));
        if (!rb.count(image)) return false;
      }
    }
    return true;
  }

  bool run(std::size_t i) {
    if (i == ua.size()) return relations_match();
    for (const auto& y : ub) {
      if (used.count(y) || !same_membership(ua[i], y)) continue;
      map[ua[i]] = y;
      used.insert(y);
      if (run(i + 1)) return true;
      used.erase(y);
    }
    map.erase(ua[i]);
    return false;
  }
};

}  // namespace

bool isomorphic(const Structure& a, const Structure& b) {
  std::set<std::string> va, vb;
  for (const auto& s : a.vocabulary.symbols()) va.insert(s.name);
  for (const auto& s : b.vocabulary.symbols()) vb.insert(s.name);
  if (va != vb) return false;
  for (const auto& s : a.vocabulary.symbols())
    if (b.vocabulary.find(s.name)->sorts != s.sorts) return false;
  if (a.domains.size() != b.domains.size()) return false;
  for (const auto& [s, d] : a.domains) {
    const auto* db = b.domain(s);
    if (!db || db->size() != d.size()) return false;
  }
  IsoSearch search{a, b, a.universe(), b.universe(), {}, {}};
  if (search.ua.size() != search.ub.size()) return false;
  return search.run(0);
}

}  // namespace sortlogic
