#include "sortlogic/parser.hpp"

#include <cctype>
#include <optional>

#include "parse_util.hpp"

namespace sortlogic {

using detail::make_error;

const char* to_string(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::Lex: return "lex";
    case ParseError::Kind::Syntax: return "syntax";
    case ParseError::Kind::Sort: return "sort";
    case ParseError::Kind::NewSort: return "new-sort";
  }
  return "syntax";
}

std::string describe(const ParseError& e) {
  return std::to_string(e.span.line) + ":" + std::to_string(e.span.column) + ": " + to_string(e.kind) +
         " error: " + e.message;
}

namespace {

enum class Tok { Ident, Number, LParen, RParen, Comma, Colon, Dot, Tilde, Bar, Amp, Arrow, DArrow, Eq, End };

struct Token {
  Tok kind;
  std::size_t start, end;
  std::string text;
};

struct Failure {
  ParseError error;
};

bool is_keyword(const std::string& s) {
  return s == "E" || s == "A" || s == "E2" || s == "A2" || s == "Es" || s == "As";
}

std::vector<Token> lex(std::string_view text, std::size_t begin, std::size_t end) {
  std::vector<Token> out;
  std::size_t i = begin;
  auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; };
  while (i < end) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '#') {
      while (i < end && text[i] != '\n') ++i;
      continue;
    }
    const std::size_t start = i;
    auto single = [&](Tok k) {
      out.push_back({k, start, start + 1, std::string(1, c)});
      ++i;
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < end && ident_char(text[i])) ++i;
      out.push_back({Tok::Ident, start, i, std::string(text.substr(start, i - start))});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < end && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({Tok::Number, start, i, std::string(text.substr(start, i - start))});
    } else if (c == '-' && i + 1 < end && text[i + 1] == '>') {
      out.push_back({Tok::Arrow, start, start + 2, "->"});
      i += 2;
    } else if (c == '<' && i + 2 < end && text[i + 1] == '-' && text[i + 2] == '>') {
      out.push_back({Tok::DArrow, start, start + 3, "<->"});
      i += 3;
    } else if (c == '(') {
      single(Tok::LParen);
    } else if (c == ')') {
      single(Tok::RParen);
    } else if (c == ',') {
      single(Tok::Comma);
    } else if (c == ':') {
      single(Tok::Colon);
    } else if (c == '.') {
      single(Tok::Dot);
    } else if (c == '~') {
      single(Tok::Tilde);
    } else if (c == '|') {
      single(Tok::Bar);
    } else if (c == '&') {
      single(Tok::Amp);
    } else if (c == '=') {
      single(Tok::Eq);
    } else {
      throw Failure{make_error(text, start, start + 1, ParseError::Kind::Lex,
                               std::string("unexpected character '") + c + "'")};
    }
  }
  out.push_back({Tok::End, end, end, ""});
  return out;
}

struct VarRef {
  std::string name;
  std::optional<SortId> sort;
  std::size_t start, end;
};

class Parser {
 public:
  Parser(std::string_view text, std::vector<Token> toks, const Vocabulary& voc)
      : text_(text), toks_(std::move(toks)), voc_(voc) {}

  Formula parse_all() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail(peek(), "unexpected '" + peek().text + "' after formula");
    return f;
  }

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }

  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(peek(), std::string("expected ") + what);
    return next();
  }

  [[noreturn]] void fail(const Token& t, std::string message,
                         ParseError::Kind kind = ParseError::Kind::Syntax) const {
    throw Failure{make_error(text_, t.start, std::max(t.end, t.start + (t.kind == Tok::End ? 0 : 1)), kind,
                             std::move(message))};
  }

  [[noreturn]] void fail_span(std::size_t start, std::size_t end, std::string message,
                              ParseError::Kind kind) const {
    throw Failure{make_error(text_, start, end, kind, std::move(message))};
  }

  SortId number() {
    const Token& t = expect(Tok::Number, "a sort number");
    try {
      const unsigned long v = std::stoul(t.text);
      if (v > 0xffffffffUL) throw std::out_of_range("sort");
      return static_cast<SortId>(v);
    } catch (const std::exception&) {
      fail(t, "sort number out of range");
    }
  }

  std::vector<SortId> sort_tuple() {
    expect(Tok::LParen, "'(' opening a sort list");
    std::vector<SortId> sorts{number()};
    while (accept(Tok::Comma)) sorts.push_back(number());
    expect(Tok::RParen, "')' closing a sort list");
    return sorts;
  }

  std::string var_name(const char* what) {
    const Token& t = expect(Tok::Ident, what);
    if (is_keyword(t.text)) fail(t, "keyword '" + t.text + "' cannot name a variable");
    return t.text;
  }

  IndVar ind_binder() {
    std::string name = var_name("an individual variable");
    expect(Tok::Colon, "':' and a sort after a bound variable");
    return IndVar{std::move(name), number()};
  }

  RelVar rel_binder() {
    const Token& t = peek();
    std::string name = var_name("a relation variable");
    if (voc_.find(name)) fail(t, "relation variable '" + name + "' clashes with a vocabulary predicate");
    expect(Tok::Colon, "':' and a sort list after a relation variable");
    return RelVar{std::move(name), sort_tuple()};
  }

  // formula := imp ['<->' formula]
  Formula formula() {
    Formula lhs = imp();
    if (accept(Tok::DArrow)) return iff(lhs, formula());
    return lhs;
  }

  Formula imp() {
    Formula lhs = disj();
    if (accept(Tok::Arrow)) return implies(lhs, imp());
    return lhs;
  }

  Formula disj() {
    Formula f = conj();
    while (accept(Tok::Bar)) f = disjunction(f, conj());
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (accept(Tok::Amp)) f = conjunction(f, unary());
    return f;
  }

  Formula unary() {
    const Token& t = peek();
    if (accept(Tok::Tilde)) return negation(unary());
    if (t.kind == Tok::LParen) {
      next();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind == Tok::Ident && is_keyword(t.text)) return quantifier();
    if (t.kind == Tok::Ident) return atom();
    fail(t, t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }

  Formula quantifier() {
    const std::string kw = next().text;
    const bool universal = kw[0] == 'A';
    if (kw.size() == 1) {
      std::vector<IndVar> vars{ind_binder()};
      while (accept(Tok::Comma)) vars.push_back(ind_binder());
      expect(Tok::Dot, "'.' after the bound variables");
      for (const auto& v : vars) ind_scope_.push_back(v);
      Formula body = formula();
      ind_scope_.resize(ind_scope_.size() - vars.size());
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = universal ? forall(*it, body) : exists(*it, body);
      return body;
    }
    if (kw[1] == '2') {
      std::vector<RelVar> vars{rel_binder()};
      while (accept(Tok::Comma)) vars.push_back(rel_binder());
      expect(Tok::Dot, "'.' after the bound variables");
      for (const auto& v : vars) rel_scope_.push_back(v);
      Formula body = formula();
      rel_scope_.resize(rel_scope_.size() - vars.size());
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = universal ? forall(*it, body) : exists(*it, body);
      return body;
    }
    std::vector<RelVar> block;
    if (accept(Tok::LParen)) {
      block.push_back(rel_binder());
      while (accept(Tok::Comma)) block.push_back(rel_binder());
      expect(Tok::RParen, "')' closing the block");
    } else {
      block.push_back(rel_binder());
    }
    expect(Tok::Dot, "'.' after the block");
    for (const auto& v : block) rel_scope_.push_back(v);
    Formula body = formula();
    rel_scope_.resize(rel_scope_.size() - block.size());
    return universal ? forall_new(block, body) : exists_new(block, body);
  }

  VarRef var_ref() {
    const Token& t = peek();
    VarRef r{var_name("a variable"), std::nullopt, t.start, t.end};
    if (peek().kind == Tok::Colon) {
      next();
      r.sort = number();
      r.end = toks_[pos_ - 1].end;
    }
    return r;
  }

  std::optional<IndVar> resolve(const VarRef& r) const {
    if (r.sort) return IndVar{r.name, *r.sort};
    for (auto it = ind_scope_.rbegin(); it != ind_scope_.rend(); ++it)
      if (it->name == r.name) return *it;
    return std::nullopt;
  }

  IndVar resolve_at(const VarRef& r, SortId expected) const {
    auto v = resolve(r);
    if (!v) return IndVar{r.name, expected};
    if (v->sort != expected)
      fail_span(r.start, r.end,
                "variable '" + r.name + "' has sort " + std::to_string(v->sort) + " where sort " +
                    std::to_string(expected) + " is required",
                ParseError::Kind::Sort);
    return *v;
  }

  std::vector<VarRef> arg_list() {
    expect(Tok::LParen, "'(' opening the arguments");
    std::vector<VarRef> args{var_ref()};
    while (accept(Tok::Comma)) args.push_back(var_ref());
    expect(Tok::RParen, "')' closing the arguments");
    return args;
  }

  std::vector<IndVar> typed_args(const std::vector<VarRef>& refs, const std::vector<SortId>& sorts,
                                 const std::string& head, std::size_t head_start) const {
    if (refs.size() != sorts.size())
      fail_span(head_start, refs.back().end,
                "'" + head + "' takes " + std::to_string(sorts.size()) + " arguments, given " +
                    std::to_string(refs.size()),
                ParseError::Kind::Sort);
    std::vector<IndVar> out;
    for (std::size_t i = 0; i < refs.size(); ++i) out.push_back(resolve_at(refs[i], sorts[i]));
    return out;
  }

  Formula atom() {
    const Token& head = peek();
    // Annotated relation variable head: X:(s..)(args)
    if (peek(1).kind == Tok::Colon && peek(2).kind == Tok::LParen) {
      const std::size_t start = head.start;
      RelVar var{var_name("a relation variable"), {}};
      next();
      var.sorts = sort_tuple();
      const auto refs = arg_list();
      return relation_atom(var, typed_args(refs, var.sorts, var.name, start));
    }
    if (peek(1).kind == Tok::LParen) {
      const std::size_t start = head.start;
      const std::string name = var_name("a predicate or relation variable");
      const auto refs = arg_list();
      for (auto it = rel_scope_.rbegin(); it != rel_scope_.rend(); ++it)
        if (it->name == name) return relation_atom(*it, typed_args(refs, it->sorts, name, start));
      if (const auto* sym = voc_.find(name)) return predicate(name, typed_args(refs, sym->sorts, name, start));
      fail_span(start, head.end, "unknown predicate or relation variable '" + name + "'", ParseError::Kind::Syntax);
    }
    const VarRef lhs = var_ref();
    expect(Tok::Eq, "'=' or an argument list");
    const VarRef rhs = var_ref();
    auto l = resolve(lhs);
    auto r = resolve(rhs);
    if (!l && r) l = IndVar{lhs.name, r->sort};
    if (!r && l) r = IndVar{rhs.name, l->sort};
    if (!l)
      fail_span(lhs.start, rhs.end, "free variables '" + lhs.name + "' and '" + rhs.name + "' need a sort annotation",
                ParseError::Kind::Syntax);
    return equation(*l, *r);
  }

 private:
  std::string_view text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Vocabulary& voc_;
  std::vector<IndVar> ind_scope_;
  std::vector<RelVar> rel_scope_;
};

ParseError::Kind issue_kind(const Issue& issue) {
  switch (issue.kind) {
    case IssueKind::NewSortViolation:
    case IssueKind::EmptyBlock: return ParseError::Kind::NewSort;
    case IssueKind::UnknownSymbol: return ParseError::Kind::Syntax;
    default: return ParseError::Kind::Sort;
  }
}

// Rendering.

struct Renderer {
  std::vector<IndVar> inds;
  std::vector<RelVar> rels;

  std::string ref(const IndVar& v) const {
    for (auto it = inds.rbegin(); it != inds.rend(); ++it)
      if (it->name == v.name) return *it == v ? v.name : render_var(v);
    return render_var(v);
  }

  std::string head(const RelVar& v) const {
    for (auto it = rels.rbegin(); it != rels.rend(); ++it)
      if (it->name == v.name) return *it == v ? v.name : render_var(v);
    return render_var(v);
  }

  std::string args(const std::vector<IndVar>& xs) const {
    std::string out = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + ref(xs[i]);
    return out + ")";
  }

  static bool closed(const std::string& s) { return !s.empty() && (s[0] == '(' || std::isalpha((unsigned char)s[0])) && !starts_quant(s); }

  static bool starts_quant(const std::string& s) {
    const auto sp = s.find(' ');
    return sp != std::string::npos && is_keyword(s.substr(0, sp));
  }

  std::string operand(const Formula& f) {
    std::string s = go(f);
    return closed(s) ? s : "(" + s + ")";
  }

  std::string binary(const Formula& a, const char* op, const Formula& b) {
    return "(" + operand(a) + " " + op + " " + operand(b) + ")";
  }

  template <class Var>
  std::string quant(const char* kw, const Var& v, std::vector<Var>& scope, const Formula& body) {
    scope.push_back(v);
    std::string out = std::string(kw) + " " + render_var(v) + ". " + go(body);
    scope.pop_back();
    return out;
  }

  std::string block(const char* kw, const std::vector<RelVar>& vs, const Formula& body) {
    std::string out = std::string(kw) + " (";
    for (std::size_t i = 0; i < vs.size(); ++i) out += (i ? ", " : "") + render_var(vs[i]);
    out += "). ";
    rels.insert(rels.end(), vs.begin(), vs.end());
    out += go(body);
    rels.resize(rels.size() - vs.size());
    return out;
  }

  std::string go(const Formula& f) {
    if (auto m = match_forall_new(f)) return block("As", m->first, m->second);
    if (auto m = match_forall_rel(f)) return quant("A2", m->first, rels, m->second);
    if (auto m = match_forall_ind(f)) return quant("A", m->first, inds, m->second);
    if (auto m = match_iff(f)) return binary(m->first, "<->", m->second);
    if (auto m = match_conjunction(f)) return binary(m->first, "&", m->second);
    if (auto m = match_implication(f)) return binary(m->first, "->", m->second);
    if (const auto* e = f.as<Equation>()) return ref(e->lhs) + " = " + ref(e->rhs);
    if (const auto* a = f.as<PredicateAtom>()) return a->pred + args(a->args);
    if (const auto* r = f.as<RelationAtom>()) return head(r->var) + args(r->args);
    if (const auto* n = f.as<Negation>()) return "~" + go(n->body);
    if (const auto* d = f.as<Disjunction>()) return binary(d->lhs, "|", d->rhs);
    if (const auto* q = f.as<ExistsIndividual>()) return quant("E", q->var, inds, q->body);
    if (const auto* q = f.as<ExistsRelation>()) return quant("E2", q->var, rels, q->body);
    const auto* b = f.as<ExistsNewSorts>();
    return block("Es", b->block, b->body);
  }
};

template <class T, class F>
ParseResult<T> guarded(F&& body) {
  try {
    return body();
  } catch (const Failure& f) {
    return f.error;
  }
}

}  // namespace

namespace detail {

ParseResult<Formula> parse_formula_at(std::string_view text, std::size_t offset, std::size_t length,
                                      const Vocabulary& voc) {
  return guarded<Formula>([&]() -> ParseResult<Formula> {
    Parser p(text, lex(text, offset, offset + length), voc);
    Formula f = p.parse_all();
    if (auto issues = well_formed(voc, f); !issues.empty())
      return make_error(text, offset, offset + length, issue_kind(issues.front()), describe(issues.front()));
    return f;
  });
}

}  // namespace detail

ParseResult<Formula> parse_formula(std::string_view text, const Vocabulary& voc) {
  return detail::parse_formula_at(text, 0, text.size(), voc);
}

std::string render_formula(const Formula& f) { return Renderer{}.go(f); }

std::string render_var(const IndVar& v) { return v.name + ":" + std::to_string(v.sort); }

std::string render_var(const RelVar& v) {
  std::string out = v.name + ":(";
  for (std::size_t i = 0; i < v.sorts.size(); ++i) out += (i ? "," : "") + std::to_string(v.sorts[i]);
  return out + ")";
}

ParseResult<IndVar> parse_ind_var(std::string_view text) {
  return guarded<IndVar>([&]() -> ParseResult<IndVar> {
    Parser p(text, lex(text, 0, text.size()), Vocabulary{});
    IndVar v = p.ind_binder();
    if (p.peek().kind != Tok::End) p.fail(p.peek(), "unexpected '" + p.peek().text + "'");
    return v;
  });
}

ParseResult<RelVar> parse_rel_var(std::string_view text) {
  return guarded<RelVar>([&]() -> ParseResult<RelVar> {
    Parser p(text, lex(text, 0, text.size()), Vocabulary{});
    RelVar v = p.rel_binder();
    if (p.peek().kind != Tok::End) p.fail(p.peek(), "unexpected '" + p.peek().text + "'");
    return v;
  });
}

ParseResult<FormulaFile> parse_formula_file(std::string_view text, const Vocabulary& base) {
  return guarded<FormulaFile>([&]() -> ParseResult<FormulaFile> {
    FormulaFile out{base, {}};
    const auto toks = lex(text, 0, text.size());
    std::size_t k = 0;
    while (toks[k].kind == Tok::Ident && toks[k].text == "pred" && toks[k + 1].kind == Tok::Ident) {
      const Token& name = toks[k + 1];
      if (toks[k + 2].kind != Tok::Colon || toks[k + 3].kind != Tok::LParen)
        throw Failure{make_error(text, name.start, name.end, ParseError::Kind::Syntax,
                                 "expected ':(' after the declared name")};
      std::size_t j = k + 4;
      std::vector<SortId> sorts;
      for (;;) {
        if (toks[j].kind != Tok::Number)
          throw Failure{make_error(text, toks[j].start, toks[j].end, ParseError::Kind::Syntax, "expected a sort number")};
        sorts.push_back(static_cast<SortId>(std::stoul(toks[j].text)));
        ++j;
        if (toks[j].kind == Tok::Comma) {
          ++j;
          continue;
        }
        if (toks[j].kind == Tok::RParen) break;
        throw Failure{make_error(text, toks[j].start, toks[j].end, ParseError::Kind::Syntax, "expected ',' or ')'")};
      }
      if (const auto* old = out.vocabulary.find(name.text)) {
        if (old->sorts != sorts)
          throw Failure{make_error(text, name.start, name.end, ParseError::Kind::Sort,
                                   "predicate '" + name.text + "' redeclared with different sorts")};
      } else {
        out.vocabulary.add(name.text, sorts);
      }
      k = j + 1;
    }
    const std::size_t start = toks[k].start;
    auto f = detail::parse_formula_at(text, start, text.size() - start, out.vocabulary);
    if (!f) return f.error();
    out.formula = f.value();
    return out;
  });
}

}  // namespace sortlogic
