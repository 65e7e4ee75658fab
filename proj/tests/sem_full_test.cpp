#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "sortlogic/parser.hpp"
#include "sortlogic/sem_full.hpp"

namespace sortlogic {

namespace {

Structure small() {
  Structure m;
  m.vocabulary.add("P", {0});
  m.vocabulary.add("R", {0, 1});
  m.domains[0] = {"a", "b", "c"};
  m.domains[1] = {"d", "e"};
  m.relations["P"] = {{"a"}, {"b"}};
  m.relations["R"] = {{"a", "d"}, {"c", "e"}};
  return m;
}

Formula parse(const std::string& text, const Vocabulary& voc) {
  auto r = parse_formula(text, voc);
  if (!r) ADD_FAILURE() << text << ": " << describe(r.error());
  return r.value();
}

Verdict3 ev(const std::string& text, const Budget& b = {}, EvalStats* stats = nullptr) {
  const Structure m = small();
  return eval_sentence(m, parse(text, m.vocabulary), b, stats);
}

}  // namespace

TEST(Kleene, tables) {
  constexpr auto T = Verdict3::True, F = Verdict3::False, U = Verdict3::Unknown;
  static_assert(kleene_not(U) == U && kleene_not(T) == F);
  static_assert(kleene_or(U, T) == T && kleene_or(U, F) == U && kleene_or(F, F) == F);
  static_assert(kleene_and(U, F) == F && kleene_and(U, T) == U && kleene_and(T, T) == T);
  EXPECT_EQ(to_string(U), "Unknown");
}

TEST(SemFull, first_order) {
  EXPECT_EQ(ev("E x:0. P(x)"), Verdict3::True);
  EXPECT_EQ(ev("A x:0. P(x)"), Verdict3::False);
  EXPECT_EQ(ev("A x:0. P(x) | E u:1. R(x, u)"), Verdict3::True);
  EXPECT_EQ(ev("A u:1. E x:0. R(x, u)"), Verdict3::True);
  EXPECT_EQ(ev("E x:0, y:0. ~x = y & P(x) & P(y)"), Verdict3::True);
  EXPECT_EQ(ev("E x:0, y:0, z:0. ~x = y & ~x = z & ~y = z & P(x) & P(y) & P(z)"), Verdict3::False);
}

TEST(SemFull, second_order_is_exact_within_the_cap) {
  EXPECT_EQ(ev("E2 X:(0). A x:0. X(x) <-> P(x)"), Verdict3::True);
  EXPECT_EQ(ev("A2 X:(0). E x:0. X(x)"), Verdict3::False);
  EXPECT_EQ(ev("E2 X:(0,1). A x:0. E u:1. X(x, u)"), Verdict3::True);
  // No relation both has and lacks a reflexive point.
  EXPECT_EQ(ev("E2 X:(0,0). E x:0. X(x, x) & A y:0. ~X(y, y)"), Verdict3::False);
}

TEST(SemFull, relation_cap_yields_unknown) {
  Budget b;
  b.relation_cap = 4;
  EvalStats stats;
  // 2^9 relations on a 3x3 product; the first four masks do not witness it.
  EXPECT_EQ(ev("E2 X:(0,0). A x:0, y:0. X(x, y)", b, &stats), Verdict3::Unknown);
  EXPECT_TRUE(stats.relation_cap_hit);
  // A witness among the first masks is still found.
  EXPECT_EQ(ev("E2 X:(0,0). A x:0, y:0. ~X(x, y)", b), Verdict3::True);
}

TEST(SemFull, block_quantifier_is_never_false) {
  EvalStats stats;
  EXPECT_EQ(ev("Es X:(5). E u:5. X(u) & ~X(u)", {}, &stats), Verdict3::Unknown);
  EXPECT_TRUE(stats.domain_bound_hit);
  EXPECT_EQ(ev("Es X:(5). E u:5. X(u)"), Verdict3::True);
  EXPECT_EQ(ev("~Es X:(5). E u:5. X(u)"), Verdict3::False);
  EXPECT_EQ(ev("~Es X:(5). E u:5. X(u) & ~X(u)"), Verdict3::Unknown);
  // Three distinct elements need a bound of three.
  const std::string three = "Es X:(5). E u:5, v:5, w:5. ~u = v & ~u = w & ~v = w";
  Budget b;
  b.domain_bound = 2;
  EXPECT_EQ(ev(three, b), Verdict3::Unknown);
  b.domain_bound = 3;
  EXPECT_EQ(ev(three, b), Verdict3::True);
}

TEST(SemFull, block_over_an_existing_sort) {
  // Sort 0 is rebound to a fresh domain of exactly one element.
  EXPECT_EQ(ev("Es X:(0). (E x:0. X(x)) & A x:0, y:0. x = y"), Verdict3::True);
  // The new domain may share elements with the old structure.
  EXPECT_EQ(ev("E u:1. Es X:(0). E x:0. x = u & X(x)"), Verdict3::True);
}

TEST(SemFull, nested_blocks_are_grounded) {
  EXPECT_EQ(ev("Es X:(5). (E u:5. X(u)) & (Es Y:(6). A v:6. Y(v) & E u:5. X(u) & u = v)"), Verdict3::True);
  EXPECT_EQ(ev("Es X:(5). (A u:5. X(u)) & ~Es Y:(6). E v:6. Y(v)"), Verdict3::Unknown);
}

TEST(SemFull, relation_variables_inside_blocks) {
  // A bijection between two new sorts of size two.
  const std::string bij =
      "Es (F:(5,6)). (E u:5, v:5. ~u = v) & (A u:5. E w:6. F(u, w)) & "
      "(A u:5, v:5, w:6. F(u, w) & F(v, w) -> u = v) & (A w:6. E u:5. F(u, w)) & "
      "(A u:5, w:6, z:6. F(u, w) & F(u, z) -> w = z) & (E2 G:(6). (E w:6. G(w)) & E w:6. ~G(w))";
  EXPECT_EQ(ev(bij), Verdict3::True);
}

TEST(SemFull, step_cap_yields_unknown) {
  Budget b;
  b.step_cap = 5;
  EvalStats stats;
  EXPECT_EQ(ev("A x:0, y:0. E u:1. R(x, u) | x = y | P(y)", b, &stats), Verdict3::Unknown);
  EXPECT_TRUE(stats.step_cap_hit);
}

TEST(SemFull, assignments_and_preconditions) {
  const Structure m = small();
  const Formula f = parse("P(x:0) & R(x, u:1)", m.vocabulary);
  Assignment s;
  s.individuals[IndVar{"x", 0}] = "a";
  s.individuals[IndVar{"u", 1}] = "d";
  EXPECT_EQ(eval(m, s, f, {}), Verdict3::True);
  s.individuals[IndVar{"u", 1}] = "e";
  EXPECT_EQ(eval(m, s, f, {}), Verdict3::False);
  const Formula g = parse("X:(0)(x:0)", m.vocabulary);
  s.relations[RelVar{"X", {0}}] = {{"a"}};
  EXPECT_EQ(eval(m, s, g, {}), Verdict3::True);

  EXPECT_THROW(eval(m, Assignment{}, f, {}), PreconditionViolation);
  s.individuals[IndVar{"x", 0}] = "d";
  EXPECT_THROW(eval(m, s, f, {}), PreconditionViolation);
  EXPECT_THROW(eval_sentence(m, f, {}), PreconditionViolation);
  EXPECT_THROW(eval_sentence(m, parse("E x:9. x = x", m.vocabulary), {}), PreconditionViolation);
  EXPECT_THROW(eval_sentence(m, predicate("Nope", {IndVar{"x", 0}}), {}), PreconditionViolation);
  Structure broken = m;
  broken.relations["P"].insert({"zz"});
  EXPECT_THROW(eval_sentence(broken, parse("E x:0. P(x)", m.vocabulary), {}), PreconditionViolation);
}

TEST(SemFull, matches_brute_force_on_random_first_and_second_order_sentences) {
  testing_gen::Rng rng(7);
  const Vocabulary voc = testing_gen::standard_vocabulary();
  testing_gen::FormulaOptions opt;
  opt.max_relation_quantifiers = 1;
  for (int round = 0; round < 150; ++round) {
    const Structure m = testing_gen::random_structure(rng, voc, {0, 1}, 2);
    const Formula f = testing_gen::random_formula(rng, voc, opt);
    const Verdict3 got = eval_sentence(m, f, {});
    const bool want = testing_oracles::brute_eval_sentence(m, f);
    EXPECT_EQ(got, want ? Verdict3::True : Verdict3::False) << render_formula(f);
  }
}

}  // namespace sortlogic
