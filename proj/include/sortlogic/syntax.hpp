// Sort logic syntax: formulas over sorted variables and the purely syntactic
// operations on them.
#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sortlogic {

using SortId = std::uint32_t;
using SortSet = std::set<SortId>;

/// An individual variable. Two variables with the same name but different
/// sorts are different variables.
struct IndVar {
  std::string name;
  SortId sort = 0;

  friend auto operator<=>(const IndVar&, const IndVar&) = default;
  friend bool operator==(const IndVar&, const IndVar&) = default;
};

/// A relation variable; its arity is `sorts.size()`.
struct RelVar {
  std::string name;
  std::vector<SortId> sorts;

  std::size_t arity() const { return sorts.size(); }

  friend auto operator<=>(const RelVar&, const RelVar&) = default;
  friend bool operator==(const RelVar&, const RelVar&) = default;
};

struct PredicateSymbol {
  std::string name;
  std::size_t arity = 0;
  std::vector<SortId> sorts;

  friend bool operator==(const PredicateSymbol&, const PredicateSymbol&) = default;
};

/// A many-sorted relational vocabulary. Declarations are kept in the order
/// given so that validation can report duplicates.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<PredicateSymbol> symbols) : symbols_(std::move(symbols)) {}

  /// Adds `name` with arity `sorts.size()`.
  void add(std::string name, std::vector<SortId> sorts);
  void add(PredicateSymbol symbol) { symbols_.push_back(std::move(symbol)); }

  const PredicateSymbol* find(const std::string& name) const;
  const std::vector<PredicateSymbol>& symbols() const { return symbols_; }
  bool empty() const { return symbols_.empty(); }

  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;

 private:
  std::vector<PredicateSymbol> symbols_;
};

enum class IssueKind {
  DuplicateSymbol,
  ArityMismatch,
  UnknownSymbol,
  SortMismatchAtAtom,
  NewSortViolation,
  EmptyBlock,
  MissingDomain,
  EmptyDomain,
  DuplicateElement,
  TupleOutOfDomain,
  BadRelation,
};

const char* to_string(IssueKind kind);

/// One validation finding.
struct Issue {
  IssueKind kind;
  std::string detail;
};

using Issues = std::vector<Issue>;

std::string describe(const Issue& issue);

class Formula;
struct FormulaNode;

/// Immutable, shared formula handle. Copying is cheap.
class Formula {
 public:
  Formula() = default;
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}

  const FormulaNode& node() const { return *node_; }
  bool valid() const { return node_ != nullptr; }

  template <class T>
  const T* as() const;

  /// Structural equality (bound variable names included).
  friend bool operator==(const Formula& a, const Formula& b);

 private:
  std::shared_ptr<const FormulaNode> node_;
};

struct Equation {
  IndVar lhs, rhs;
  friend bool operator==(const Equation&, const Equation&) = default;
};
struct PredicateAtom {
  std::string pred;
  std::vector<IndVar> args;
  friend bool operator==(const PredicateAtom&, const PredicateAtom&) = default;
};
struct RelationAtom {
  RelVar var;
  std::vector<IndVar> args;
  friend bool operator==(const RelationAtom&, const RelationAtom&) = default;
};
struct Negation {
  Formula body;
  friend bool operator==(const Negation&, const Negation&) = default;
};
struct Disjunction {
  Formula lhs, rhs;
  friend bool operator==(const Disjunction&, const Disjunction&) = default;
};
struct ExistsIndividual {
  IndVar var;
  Formula body;
  friend bool operator==(const ExistsIndividual&, const ExistsIndividual&) = default;
};
struct ExistsRelation {
  RelVar var;
  Formula body;
  friend bool operator==(const ExistsRelation&, const ExistsRelation&) = default;
};
/// Block new-sort quantifier over one or more relation variables.
struct ExistsNewSorts {
  std::vector<RelVar> block;
  Formula body;
  friend bool operator==(const ExistsNewSorts&, const ExistsNewSorts&) = default;
};

struct FormulaNode {
  std::variant<Equation, PredicateAtom, RelationAtom, Negation, Disjunction, ExistsIndividual,
               ExistsRelation, ExistsNewSorts>
      v;
};

template <class T>
const T* Formula::as() const {
  return std::get_if<T>(&node_->v);
}

// Primitive constructors.
Formula equation(IndVar lhs, IndVar rhs);
Formula predicate(std::string name, std::vector<IndVar> args);
Formula relation_atom(RelVar var, std::vector<IndVar> args);
Formula negation(Formula body);
Formula disjunction(Formula lhs, Formula rhs);
Formula exists(IndVar var, Formula body);
Formula exists(RelVar var, Formula body);
Formula exists_new(std::vector<RelVar> block, Formula body);

// Shorthands, expanded into the primitive connectives and quantifiers.
Formula conjunction(Formula lhs, Formula rhs);
Formula implies(Formula lhs, Formula rhs);
Formula iff(Formula lhs, Formula rhs);
Formula forall(IndVar var, Formula body);
Formula forall(RelVar var, Formula body);
Formula forall_new(std::vector<RelVar> block, Formula body);

// Recognizers for the expanded shorthands.
std::optional<std::pair<Formula, Formula>> match_conjunction(const Formula& f);
std::optional<std::pair<Formula, Formula>> match_implication(const Formula& f);
std::optional<std::pair<Formula, Formula>> match_iff(const Formula& f);
std::optional<std::pair<IndVar, Formula>> match_forall_ind(const Formula& f);
std::optional<std::pair<RelVar, Formula>> match_forall_rel(const Formula& f);
std::optional<std::pair<std::vector<RelVar>, Formula>> match_forall_new(const Formula& f);

/// Splits nested conjunctions (any association) into their conjuncts.
std::vector<Formula> flatten_conjunction(const Formula& f);

bool is_atomic(const Formula& f);

/// Sorts bound by a block: the union of the sort tuples, ascending.
SortSet block_sorts(const std::vector<RelVar>& block);

Issues validate_vocabulary(const Vocabulary& voc);

/// Checks atom sorts and the New Sort Condition at every block quantifier.
Issues well_formed(const Vocabulary& voc, const Formula& f);

std::set<IndVar> free_individual_vars(const Formula& f);
std::set<RelVar> free_relation_vars(const Formula& f);
bool is_sentence(const Formula& f);

/// Predicate symbols occurring anywhere in `f`.
std::set<std::string> symbols_of(const Formula& f);

SortSet free_sorts(const Formula& f);

/// Nesting depth of quantifiers; a block counts as a single quantifier.
std::size_t quantifier_rank(const Formula& f);

/// Number of AST nodes.
std::size_t formula_size(const Formula& f);

class SubstitutionError : public std::runtime_error {
 public:
  enum class Kind { SortClash, CaptureViolation };
  SubstitutionError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// φ(y/x). Throws SubstitutionError when sorts differ or y is not free for x.
Formula substitute(const Formula& f, const IndVar& x, const IndVar& y);
/// φ(Y/X) for relation variables.
Formula substitute(const Formula& f, const RelVar& x, const RelVar& y);

bool free_for(const Formula& f, const IndVar& x, const IndVar& y);
bool free_for(const Formula& f, const RelVar& x, const RelVar& y);

/// Equality up to consistent renaming of bound variables.
bool alpha_equal(const Formula& a, const Formula& b);

/// Relativizes individual quantifiers to the unary predicate symbol or
/// relation variable `guard`. Throws SubstitutionError(SortClash) if some
/// individual quantifier ranges over another sort.
Formula relativize(const Formula& f, const PredicateSymbol& guard);
Formula relativize(const Formula& f, const RelVar& guard);

/// Replaces the predicate symbol `pred` by the relation variable `var`.
Formula replace_symbol(const Formula& f, const std::string& pred, const RelVar& var);

/// ∀̃-closure of a sentence: every vocabulary symbol is replaced by a fresh
/// relation variable bound by one universal block, which also covers any
/// remaining free sort through an unused unary variable. The result has no
/// free sorts.
Formula sort_closure(const Formula& sentence, const Vocabulary& voc);

/// A relation-variable name not used by any variable or symbol in `f`.
std::string fresh_relation_name(const Formula& f, const Vocabulary& voc, const std::string& stem);

}  // namespace sortlogic
