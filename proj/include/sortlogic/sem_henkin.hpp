// Exact evaluation over finite Henkin structures, with a bounded
// comprehension check and a countermodel search built on it.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sortlogic/model.hpp"
#include "sortlogic/syntax.hpp"

namespace sortlogic {

/// A typed relation available to second-order quantifiers.
struct GRelation {
  std::vector<SortId> sorts;
  TupleSet tuples;

  friend auto operator<=>(const GRelation&, const GRelation&) = default;
  friend bool operator==(const GRelation&, const GRelation&) = default;
};

/// A base structure together with the domains (U) that new sorts may take
/// and the relations (G) that relation variables may range over.
struct HenkinStructure {
  Structure base;
  std::vector<std::vector<Element>> U;
  std::vector<GRelation> G;

  friend bool operator==(const HenkinStructure&, const HenkinStructure&) = default;
};

/// Base structure checks plus: every U member nonempty without repeats, and
/// every G tuple of the record's arity.
Issues validate_henkin(const HenkinStructure& h);

/// Relational second-order quantifiers range over the G records of the
/// variable's sort tuple lying inside the current product. A block picks a
/// U member for each of its sorts and G records for its variables. Throws
/// PreconditionViolation on ill-formed input, as the full evaluator does.
bool eval_henkin(const HenkinStructure& h, const Assignment& s, const Formula& f);
bool eval_henkin_sentence(const HenkinStructure& h, const Formula& f);

struct ComprehensionFailure {
  Formula instance;    // with parameters free
  std::string status;  // the parameter values under which it fails
};

struct ComprehensionReport {
  std::size_t depth_bound = 0;
  std::size_t size_bound = 0;
  std::size_t checked_instances = 0;
  std::vector<ComprehensionFailure> failures;

  bool passed() const { return failures.empty(); }
};

/// Checks every First and Second Comprehension instance whose defining
/// formula has quantifier rank at most `depth_bound` and at most
/// `size_bound` nodes. Defining formulas use equality, the base vocabulary,
/// one individual parameter per base sort and unary relation parameters,
/// where parameters range over the base domains and G. Instances are taken
/// for every unary type of a base sort and every sort tuple in G.
/// `max_failures` stops the check early.
ComprehensionReport check_comprehension(const HenkinStructure& h, std::size_t depth_bound, std::size_t size_bound,
                                        std::size_t max_failures = 1);

struct SearchBounds {
  std::size_t max_pool = 3;  // elements shared by all base domains
  std::size_t comprehension_depth = 1;
  std::size_t comprehension_size = 4;
  std::uint64_t max_candidates = 200'000;
};

struct SearchResult {
  std::optional<HenkinStructure> countermodel;
  std::uint64_t candidates_examined = 0;
  bool exhausted = false;  // true when the whole space within the bounds was searched
  SearchBounds bounds;
};

/// The first Henkin structure (by total base size, then |U|, then |G|, then
/// lexicographically) that passes the comprehension check, satisfies every
/// sentence of `theory` and refutes `phi`.
SearchResult countermodel_search(const Vocabulary& voc, const std::vector<Formula>& theory, const Formula& phi,
                                 const SearchBounds& bounds);

}  // namespace sortlogic
