// Concrete syntax for formulas, plus the JSON file formats for everything
// else the tools read and write.
#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "sortlogic/model.hpp"
#include "sortlogic/proof.hpp"
#include "sortlogic/sem_henkin.hpp"
#include "sortlogic/syntax.hpp"

namespace sortlogic {

struct SourceSpan {
  std::size_t start = 0;  // byte offsets, end exclusive
  std::size_t end = 0;
  std::size_t line = 1;    // 1-based
  std::size_t column = 1;  // 1-based, in bytes
};

struct ParseError {
  enum class Kind { Lex, Syntax, Sort, NewSort };
  SourceSpan span;
  Kind kind = Kind::Syntax;
  std::string message;
};

const char* to_string(ParseError::Kind kind);
/// "line:column: kind error: message"
std::string describe(const ParseError& e);

template <class T>
class ParseResult {
 public:
  ParseResult(T value) : v_(std::move(value)) {}
  ParseResult(ParseError error) : v_(std::move(error)) {}

  bool ok() const { return v_.index() == 0; }
  explicit operator bool() const { return ok(); }
  const T& value() const { return std::get<0>(v_); }
  T& value() { return std::get<0>(v_); }
  const ParseError& error() const { return std::get<1>(v_); }

 private:
  std::variant<T, ParseError> v_;
};

/// Grammar, loosest binding first:
///   formula := imp ['<->' formula]     imp  := disj ['->' imp]
///   disj    := conj ('|' conj)*        conj := unary ('&' unary)*
///   unary   := '~' unary | quant | atom | '(' formula ')'
///   quant   := ('E'|'A') x:s {',' y:s} '.' formula
///            | ('E2'|'A2') X:(s,..) {',' ...} '.' formula
///            | ('Es'|'As') ( X:(s,..) | '(' X:(s,..) {',' ...} ')' ) '.' formula
///   atom    := ref '=' ref | NAME '(' ref {',' ref} ')' | X:(s,..) '(' ... ')'
/// A quantifier body extends as far right as possible. A bare variable name
/// refers to the innermost binder of that name; a free variable must be
/// written with its sort unless the position fixes it (predicate or relation
/// argument, or the other side of an equation). A bare atom head is the
/// innermost bound relation variable, else a vocabulary predicate.
/// `#` starts a comment running to the end of the line.
ParseResult<Formula> parse_formula(std::string_view text, const Vocabulary& voc);

/// Deterministic rendering that parse_formula maps back to an equal AST.
/// Shorthands are restored and free variables always carry their sort.
std::string render_formula(const Formula& f);

ParseResult<IndVar> parse_ind_var(std::string_view text);
ParseResult<RelVar> parse_rel_var(std::string_view text);
std::string render_var(const IndVar& v);
std::string render_var(const RelVar& v);

/// A formula file: leading `pred NAME:(s1,...)` declarations extend `base`,
/// the remaining text is one formula.
struct FormulaFile {
  Vocabulary vocabulary;
  Formula formula;
};
ParseResult<FormulaFile> parse_formula_file(std::string_view text, const Vocabulary& base);

/// JSON object mapping predicate names to sort lists.
ParseResult<Vocabulary> parse_vocabulary(std::string_view text);
std::string render_vocabulary(const Vocabulary& voc);

/// JSON object with "sorts" (sort id -> element names), "relations"
/// (predicate -> tuples) and an optional "vocabulary". Without one, each
/// argument position is typed by the smallest sort containing all elements
/// seen there.
ParseResult<Structure> parse_structure(std::string_view text);
std::string render_structure(const Structure& m);

/// A structure file with "U" (list of domains) and "G" (list of records with
/// "sorts" and "tuples").
ParseResult<HenkinStructure> parse_henkin(std::string_view text);
std::string render_henkin(const HenkinStructure& h);

/// JSON object with an optional "vocabulary" (added to `base`), "theory"
/// (formula strings) and "lines" ({"formula", "just"}); a justification is
/// {"rule", "i", "j", "var", "vars"} with the fields the rule needs.
ParseResult<Proof> parse_proof(std::string_view text, const Vocabulary& base = {});
std::string render_proof(const Proof& p);

}  // namespace sortlogic
