// Reference implementations used to cross-check the library. They share the
// data types but none of the evaluation code.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "sortlogic/model.hpp"
#include "sortlogic/syntax.hpp"

namespace testing_oracles {

using namespace sortlogic;

/// Textbook two-valued evaluation of a formula without block quantifiers:
/// relation quantifiers run over every subset of the product of domains.
bool brute_eval(const Structure& m, const Assignment& s, const Formula& f);
bool brute_eval_sentence(const Structure& m, const Formula& f);

/// A finite abelian group written multiplicatively, elements 0..n-1 with 0
/// the identity.
struct Group {
  std::size_t n = 0;
  std::vector<std::vector<std::size_t>> mul;
};

/// Reads the group from a structure with `mul` and `one` over sort 0.
Group group_of(const Structure& m);

/// An addition on the group plus a zero (index n) turning it into the
/// multiplicative group of a field, if one exists.
std::optional<std::vector<std::vector<std::size_t>>> find_field(const Group& g);

/// Whether some map on an n-element set is injective but not surjective.
/// Checked over all n^n maps, so it is false for every finite n.
bool injective_non_surjective_map_exists(std::size_t n);

/// Sorted domains with the elements outside `old` renamed "~0", "~1", ...
/// so that the result is least among all such renamings.
std::map<SortId, std::vector<Element>> canonical_expansion(const std::map<SortId, std::vector<Element>>& d,
                                                           const std::set<Element>& old);

/// Every way of choosing domains of size 1..bound for `sorts` from `old`
/// plus fresh elements, up to renaming of the fresh elements.
std::vector<std::map<SortId, std::vector<Element>>> naive_expansions(const std::vector<Element>& old,
                                                                     const std::vector<SortId>& sorts,
                                                                     std::size_t bound);

}  // namespace testing_oracles
