// Finite many-sorted structures with their assignments. Also the bounded
// enumeration of relations and expansions.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sortlogic/syntax.hpp"

namespace sortlogic {

/// Elements are opaque names; equal names denote the same element across sorts.
using Element = std::string;
using Tuple = std::vector<Element>;
using TupleSet = std::set<Tuple>;

struct Structure {
  Vocabulary vocabulary;
  std::map<SortId, std::vector<Element>> domains;
  std::map<std::string, TupleSet> relations;

  const std::vector<Element>* domain(SortId s) const;
  /// Interpretation of `pred`; absent relations are empty.
  const TupleSet& relation(const std::string& pred) const;
  /// Every element of every domain, sorted and deduplicated.
  std::vector<Element> universe() const;
  std::size_t total_size() const;

  friend bool operator==(const Structure&, const Structure&) = default;
};

Issues validate_structure(const Vocabulary& voc, const Structure& m);
inline Issues validate_structure(const Structure& m) { return validate_structure(m.vocabulary, m); }

struct Assignment {
  std::map<IndVar, Element> individuals;
  std::map<RelVar, TupleSet> relations;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

class SortViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// s[a/x]. Throws SortViolation if `a` is not in the domain of x's sort.
Assignment modify(const Structure& m, const Assignment& s, const IndVar& x, const Element& a);
/// s[A/X]. Throws SortViolation unless A lies inside the product of X's sorts.
Assignment modify(const Structure& m, const Assignment& s, const RelVar& x, TupleSet a);

struct Budget {
  std::size_t domain_bound = 3;
  std::uint64_t relation_cap = 65536;
  std::uint64_t step_cap = 10'000'000;
};

/// Raised by evaluators when their inputs do not meet the evaluation
/// preconditions (ill-formed formula, invalid structure, missing domains or
/// unassigned free variables).
class PreconditionViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// New domains for the sorts of a block; elements are either taken from the
/// old structure or fresh.
struct ExpansionCandidate {
  std::map<SortId, std::vector<Element>> new_domains;

  friend bool operator==(const ExpansionCandidate&, const ExpansionCandidate&) = default;
};

struct ExpansionStream {
  std::vector<ExpansionCandidate> candidates;
  bool budget_exceeded = false;
};

/// All expansion candidates with every new domain of size at most
/// `domain_bound`, one per isomorphism type over the fixed old elements,
/// ordered by total size and then lexicographically. Enumeration stops with
/// `budget_exceeded` once more than `max_candidates` would be produced.
ExpansionStream enumerate_expansions(const Structure& m, const SortSet& block_sorts, std::size_t domain_bound,
                                     std::size_t max_candidates = 1'000'000);

/// M with the block sorts' domains replaced by `c`; symbols over replaced
/// sorts are dropped.
Structure expand(const Structure& m, const ExpansionCandidate& c);

/// Tuples of the product of the given domains in lexicographic order of positions.
std::vector<Tuple> product(const std::vector<const std::vector<Element>*>& factors);

/// Every subset of `product`, in binary counting order (bit i = tuple i).
/// Throws BudgetExceeded if there are more than `cap` subsets.
std::vector<TupleSet> enumerate_relations(const std::vector<Tuple>& product, std::uint64_t cap);

/// Number of subsets of a product of size n, saturating at 2^63.
std::uint64_t subset_count(std::size_t n);

bool isomorphic(const Structure& a, const Structure& b);

}  // namespace sortlogic
