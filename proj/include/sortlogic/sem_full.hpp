// Bounded three-valued evaluation under full semantics.
#pragma once

#include <cstdint>
#include <string>

#include "sortlogic/model.hpp"
#include "sortlogic/syntax.hpp"

namespace sortlogic {

/// Kleene truth values; Unknown means a budget stopped the search.
enum class Verdict3 { True, False, Unknown };

std::string to_string(Verdict3 v);

constexpr Verdict3 kleene_not(Verdict3 v) {
  return v == Verdict3::True ? Verdict3::False : v == Verdict3::False ? Verdict3::True : Verdict3::Unknown;
}
constexpr Verdict3 kleene_or(Verdict3 a, Verdict3 b) {
  if (a == Verdict3::True || b == Verdict3::True) return Verdict3::True;
  if (a == Verdict3::False && b == Verdict3::False) return Verdict3::False;
  return Verdict3::Unknown;
}
constexpr Verdict3 kleene_and(Verdict3 a, Verdict3 b) { return kleene_not(kleene_or(kleene_not(a), kleene_not(b))); }

/// Counters filled in by an evaluation.
struct EvalStats {
  std::uint64_t steps = 0;
  std::uint64_t expansion_candidates = 0;  // candidates whose body was grounded
  std::uint64_t sat_calls = 0;
  std::uint64_t sat_conflicts = 0;
  bool relation_cap_hit = false;
  bool step_cap_hit = false;
  bool domain_bound_hit = false;  // some block found no witness within the bound
};

/// Truth of φ in M under s. Blocks of new sorts are searched for witnesses
/// with every new domain of at most `b.domain_bound` elements; failing that
/// they are Unknown, never False. Throws PreconditionViolation when φ is
/// ill-formed for M's vocabulary, M is invalid, s misses a free variable or
/// assigns outside the domains, or a free sort of φ has no domain.
Verdict3 eval(const Structure& m, const Assignment& s, const Formula& f, const Budget& b,
              EvalStats* stats = nullptr);

Verdict3 eval_sentence(const Structure& m, const Formula& f, const Budget& b, EvalStats* stats = nullptr);

}  // namespace sortlogic
