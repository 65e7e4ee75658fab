#include <gtest/gtest.h>

#include "sortlogic/parser.hpp"
#include "sortlogic/proof.hpp"
#include "sortlogic/syntax.hpp"

namespace sortlogic {

namespace {

const IndVar x{"x", 0}, y{"y", 0}, z{"z", 0}, u{"u", 1};
const RelVar X{"X", {0}}, Y{"Y", {0}}, B{"B", {1}};

Vocabulary voc() {
  Vocabulary v;
  v.add("P", {0});
  v.add("R", {0, 1});
  return v;
}

Formula parse(const std::string& text, const Vocabulary& v = voc()) {
  auto r = parse_formula(text, v);
  if (!r) ADD_FAILURE() << describe(r.error());
  return r.value();
}

}  // namespace

TEST(Syntax, sugar_round_trips_through_matchers) {
  const Formula a = predicate("P", {x}), b = equation(x, y);
  const Formula c = conjunction(a, b);
  ASSERT_TRUE(match_conjunction(c));
  EXPECT_EQ(match_conjunction(c)->first, a);
  EXPECT_EQ(match_conjunction(c)->second, b);
  EXPECT_FALSE(match_conjunction(disjunction(a, b)));
  ASSERT_TRUE(match_implication(implies(a, b)));
  ASSERT_TRUE(match_iff(iff(a, b)));
  EXPECT_EQ(match_iff(iff(a, b))->second, b);
  ASSERT_TRUE(match_forall_ind(forall(x, a)));
  EXPECT_EQ(match_forall_ind(forall(x, a))->first, x);
  ASSERT_TRUE(match_forall_rel(forall(X, relation_atom(X, {x}))));
  ASSERT_TRUE(match_forall_new(forall_new({B}, relation_atom(B, {u}))));
}

TEST(Syntax, flatten_conjunction_ignores_association) {
  const Formula a = predicate("P", {x}), b = predicate("P", {y}), c = predicate("P", {z});
  const auto left = flatten_conjunction(conjunction(conjunction(a, b), c));
  const auto right = flatten_conjunction(conjunction(a, conjunction(b, c)));
  EXPECT_EQ(left, right);
  EXPECT_EQ(left.size(), 3u);
}

TEST(Syntax, free_variables) {
  const Formula f = exists(x, disjunction(equation(x, y), relation_atom(X, {x})));
  EXPECT_EQ(free_individual_vars(f), std::set<IndVar>{y});
  EXPECT_EQ(free_relation_vars(f), std::set<RelVar>{X});
  EXPECT_FALSE(is_sentence(f));
  EXPECT_TRUE(is_sentence(exists(y, exists(X, f))));
  // Same name, different sort: a different variable.
  EXPECT_EQ(free_individual_vars(exists(IndVar{"x", 1}, equation(x, x))), std::set<IndVar>{x});
}

TEST(Syntax, free_sorts_follow_blocks) {
  EXPECT_EQ(free_sorts(parse("E x:0. P(x)")), SortSet{0});
  EXPECT_EQ(free_sorts(parse("Es B:(1). E u:1. B(u)")), SortSet{});
  EXPECT_EQ(free_sorts(parse("Es B:(1). E u:1. E x:0. B(u) & x = x")), SortSet{0});
  EXPECT_EQ(free_sorts(power_sort_axiom(1, 0, 2, 1)), SortSet{0});
  EXPECT_EQ(free_sorts(power_sort_axiom(2, 3, 4, 5)), SortSet{3});
  EXPECT_EQ(free_sorts(infinite_sort_axiom(7)), SortSet{});
}

TEST(Syntax, new_sort_condition) {
  // A free variable of a block sort inside the block.
  Formula bad = exists_new({B}, relation_atom(B, {u}));
  auto issues = well_formed(voc(), bad);
  ASSERT_FALSE(issues.empty());
  EXPECT_EQ(issues.front().kind, IssueKind::NewSortViolation);
  // A vocabulary symbol over a block sort.
  bad = exists_new({RelVar{"C", {0}}}, exists(x, predicate("P", {x})));
  ASSERT_FALSE(well_formed(voc(), bad).empty());
  EXPECT_EQ(well_formed(voc(), bad).front().kind, IssueKind::NewSortViolation);
  // A free relation variable touching a block sort.
  bad = exists_new({B}, exists(u, relation_atom(RelVar{"D", {1}}, {u})));
  EXPECT_FALSE(well_formed(voc(), bad).empty());
  // Bound occurrences are fine.
  EXPECT_TRUE(well_formed(voc(), exists_new({B}, exists(u, relation_atom(B, {u})))).empty());
  EXPECT_TRUE(well_formed(voc(), exists_new({B}, exists(x, predicate("P", {x})))).empty());
  EXPECT_EQ(well_formed(voc(), exists_new({}, equation(x, x))).front().kind, IssueKind::EmptyBlock);
}

TEST(Syntax, atom_sorts_are_checked) {
  EXPECT_EQ(well_formed(voc(), predicate("P", {u})).front().kind, IssueKind::SortMismatchAtAtom);
  // A wrong argument count is a sort mismatch at the atom.
  EXPECT_EQ(well_formed(voc(), predicate("P", {x, x})).front().kind, IssueKind::SortMismatchAtAtom);
  EXPECT_EQ(well_formed(voc(), predicate("Nope", {x})).front().kind, IssueKind::UnknownSymbol);
  EXPECT_EQ(well_formed(voc(), relation_atom(X, {u})).front().kind, IssueKind::SortMismatchAtAtom);
  EXPECT_TRUE(well_formed(voc(), predicate("R", {x, u})).empty());
}

TEST(Syntax, vocabulary_validation) {
  Vocabulary v = voc();
  EXPECT_TRUE(validate_vocabulary(v).empty());
  v.add("P", {1});
  EXPECT_EQ(validate_vocabulary(v).front().kind, IssueKind::DuplicateSymbol);
}

TEST(Syntax, substitution_respects_capture) {
  const Formula f = exists(y, equation(x, y));
  EXPECT_EQ(substitute(f, x, z), exists(y, equation(z, y)));
  EXPECT_FALSE(free_for(f, x, y));
  try {
    substitute(f, x, y);
    FAIL() << "expected a capture violation";
  } catch (const SubstitutionError& e) {
    EXPECT_EQ(e.kind(), SubstitutionError::Kind::CaptureViolation);
  }
  try {
    substitute(f, x, u);
    FAIL() << "expected a sort clash";
  } catch (const SubstitutionError& e) {
    EXPECT_EQ(e.kind(), SubstitutionError::Kind::SortClash);
  }
  // Bound occurrences are left alone.
  EXPECT_EQ(substitute(exists(x, equation(x, x)), x, z), exists(x, equation(x, x)));
  const Formula g = exists(Y, relation_atom(X, {x}));
  EXPECT_EQ(substitute(g, X, RelVar{"Z", {0}}), exists(Y, relation_atom(RelVar{"Z", {0}}, {x})));
  EXPECT_FALSE(free_for(g, X, Y));
}

TEST(Syntax, alpha_equivalence) {
  EXPECT_TRUE(alpha_equal(exists(x, predicate("P", {x})), exists(y, predicate("P", {y}))));
  EXPECT_FALSE(alpha_equal(exists(x, equation(x, z)), exists(z, equation(z, z))));
  EXPECT_TRUE(alpha_equal(exists(X, relation_atom(X, {x})), exists(Y, relation_atom(Y, {x}))));
  EXPECT_FALSE(alpha_equal(exists(x, predicate("P", {x})), exists(y, predicate("P", {x}))));
  // Renaming every bound variable of an axiom leaves it alpha-equal.
  const std::string text = render_formula(infinite_sort_axiom(4));
  std::string renamed;
  for (char c : text) renamed += c == 'X' ? 'W' : c == 'x' ? 'q' : c;
  EXPECT_TRUE(alpha_equal(parse(renamed, {}), infinite_sort_axiom(4)));
  EXPECT_NE(parse(renamed, {}), infinite_sort_axiom(4));
}

TEST(Syntax, rank_and_size) {
  EXPECT_EQ(quantifier_rank(equation(x, x)), 0u);
  EXPECT_EQ(quantifier_rank(exists(x, exists(X, relation_atom(X, {x})))), 2u);
  EXPECT_EQ(quantifier_rank(exists_new({B, RelVar{"C", {1, 1}}}, exists(u, relation_atom(B, {u})))), 2u);
  EXPECT_EQ(formula_size(negation(disjunction(equation(x, x), equation(y, y)))), 4u);
}

TEST(Syntax, relativization) {
  const PredicateSymbol p{"P", 1, {0}};
  const Formula f = relativize(exists(x, equation(x, x)), p);
  EXPECT_TRUE(alpha_equal(f, exists(x, conjunction(predicate("P", {x}), equation(x, x)))));
  // A universal is a negated existential, so the guard lands inside.
  const Formula g = relativize(forall(x, equation(x, x)), X);
  EXPECT_EQ(g, negation(exists(x, conjunction(relation_atom(X, {x}), negation(equation(x, x))))));
  EXPECT_THROW(relativize(exists(u, equation(u, u)), p), SubstitutionError);
}

TEST(Syntax, sort_closure_removes_free_sorts) {
  const Vocabulary v = voc();
  const Formula f = parse("A x:0. E u:1. R(x, u) | P(x)", v);
  const Formula c = sort_closure(f, v);
  EXPECT_TRUE(free_sorts(c).empty());
  EXPECT_TRUE(is_sentence(c));
  EXPECT_TRUE(symbols_of(c).empty());
  EXPECT_TRUE(well_formed(v, c).empty());
  EXPECT_TRUE(match_forall_new(c));
}

TEST(Syntax, replace_symbol_and_fresh_names) {
  const Formula f = exists(x, predicate("P", {x}));
  EXPECT_EQ(replace_symbol(f, "P", X), exists(x, relation_atom(X, {x})));
  const std::string name = fresh_relation_name(exists(X, relation_atom(X, {x})), voc(), "X");
  EXPECT_NE(name, "X");
  EXPECT_NE(name, "P");
}

}  // namespace sortlogic
