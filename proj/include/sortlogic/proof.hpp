// Hilbert-style derivations in sort logic: axiom recognizers and a line-by-line
// proof checker.
#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sortlogic/syntax.hpp"

namespace sortlogic {

enum class Rule {
  Premise,
  Tautology,
  Identity,
  QuantAxiomInd,
  QuantAxiomRel,
  QuantAxiomNewSort,
  Comprehension1,
  Comprehension2,
  PowerSort,
  InfiniteSort,
  MP,
  GenInd,
  GenRel,
  GenNewSort,
};

std::string to_string(Rule r);
std::optional<Rule> rule_from_string(const std::string& name);

/// How a proof line was obtained. Line references are 1-based. `i` and `j`
/// are used by MP (line j must be line i -> current); `i` with `var` by
/// GenInd, with `vars` (one variable) by GenRel and (the block) by GenNewSort.
struct Justification {
  Rule rule = Rule::Premise;
  std::size_t i = 0;
  std::size_t j = 0;
  IndVar var;
  std::vector<RelVar> vars;

  friend bool operator==(const Justification&, const Justification&) = default;
};

struct ProofLine {
  Formula formula;
  Justification just;

  friend bool operator==(const ProofLine&, const ProofLine&) = default;
};

struct Proof {
  Vocabulary vocabulary;
  std::vector<Formula> theory;
  std::vector<ProofLine> lines;

  friend bool operator==(const Proof&, const Proof&) = default;
};

struct LineVerdict {
  std::size_t index = 0;  // 1-based
  bool ok = false;
  std::string diagnostic;
  bool over_budget = false;  // rejected because a check hit its cap
};

/// Raised when a tautology check would need more than the atom cap.
class AtomCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::size_t kTautologyAtomCap = 16;

/// Truth-table check of the propositional skeleton. Maximal non-propositional
/// subformulas are atoms; alpha-equivalent ones are the same atom.
bool recognize_tautology(const Formula& f);
bool recognize_identity(const Formula& f);

enum class QuantAxiomKind { Individual, Relation, NewSort };
std::optional<QuantAxiomKind> recognize_quant_axiom(const Formula& f);

enum class ComprehensionKind { First, Second };
std::optional<ComprehensionKind> recognize_comprehension(const Formula& f);

bool recognize_power_sort(const Formula& f);
bool recognize_infinite_sort(const Formula& f);

/// Canonical instances of the two set-existence axioms. `n` is the arity of
/// the coded relations; the sorts must satisfy the side conditions.
Formula power_sort_axiom(std::size_t n, SortId u_sort, SortId x_sort, SortId z_sort);
Formula infinite_sort_axiom(SortId sort);

/// One verdict per line; an empty diagnostic means the line checks.
std::vector<LineVerdict> check_proof(const Proof& p);
bool proof_ok(const std::vector<LineVerdict>& verdicts);

}  // namespace sortlogic
