#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "parse_util.hpp"
#include "sortlogic/parser.hpp"

namespace sortlogic {

using detail::make_error;
using Json = nlohmann::ordered_json;

namespace {

struct Failure {
  ParseError error;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  // Rejects objects with repeated keys, which the JSON library would
  // otherwise collapse silently.
  Json parse() {
    std::vector<std::set<std::string>> open;
    std::optional<std::string> duplicate;
    auto check = [&](int, Json::parse_event_t event, Json& parsed) {
      if (event == Json::parse_event_t::object_start) {
        open.emplace_back();
      } else if (event == Json::parse_event_t::object_end) {
        open.pop_back();
      } else if (event == Json::parse_event_t::key && !open.back().insert(parsed.get<std::string>()).second) {
        if (!duplicate) duplicate = parsed.get<std::string>();
      }
      return true;
    };
    try {
      Json j = Json::parse(text_.begin(), text_.end(), check);
      if (duplicate) fail(ParseError::Kind::Syntax, "duplicate key \"" + *duplicate + "\"");
      return j;
    } catch (const Json::parse_error& e) {
      const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
      fail(at, at + 1, ParseError::Kind::Syntax, std::string("invalid JSON: ") + e.what());
    }
  }

  [[noreturn]] void fail(std::size_t start, std::size_t end, ParseError::Kind kind, std::string message) const {
    throw Failure{make_error(text_, start, end, kind, std::move(message))};
  }

  [[noreturn]] void fail(ParseError::Kind kind, std::string message) const {
    fail(0, text_.size(), kind, std::move(message));
  }

  const Json& field(const Json& obj, const char* key, const char* where) const {
    if (!obj.is_object()) fail(ParseError::Kind::Syntax, std::string(where) + " must be a JSON object");
    auto it = obj.find(key);
    if (it == obj.end()) fail(ParseError::Kind::Syntax, std::string(where) + " lacks \"" + key + "\"");
    return *it;
  }

  std::string string(const Json& j, const std::string& what) const {
    if (!j.is_string()) fail(ParseError::Kind::Syntax, what + " must be a string");
    return j.get<std::string>();
  }

  SortId sort(const Json& j, const std::string& what) const {
    if (!j.is_number_unsigned()) fail(ParseError::Kind::Syntax, what + " must be a nonnegative integer");
    const auto v = j.get<std::uint64_t>();
    if (v > 0xffffffffULL) fail(ParseError::Kind::Syntax, what + " is out of range");
    return static_cast<SortId>(v);
  }

  SortId sort_key(const std::string& key) const {
    if (key.empty() || key.size() > 9 || key.find_first_not_of("0123456789") != std::string::npos)
      fail(ParseError::Kind::Syntax, "sort key \"" + key + "\" is not a number");
    return static_cast<SortId>(std::stoul(key));
  }

  std::vector<SortId> sorts(const Json& j, const std::string& what) const {
    if (!j.is_array()) fail(ParseError::Kind::Syntax, what + " must be a list of sorts");
    std::vector<SortId> out;
    for (const auto& s : j) out.push_back(sort(s, what));
    return out;
  }

  std::vector<Element> elements(const Json& j, const std::string& what) const {
    if (!j.is_array()) fail(ParseError::Kind::Syntax, what + " must be a list of element names");
    std::vector<Element> out;
    for (const auto& e : j) out.push_back(string(e, "an element of " + what));
    return out;
  }

  TupleSet tuples(const Json& j, const std::string& what) const {
    if (!j.is_array()) fail(ParseError::Kind::Syntax, what + " must be a list of tuples");
    TupleSet out;
    for (const auto& t : j) out.insert(elements(t, "a tuple of " + what));
    return out;
  }

  Vocabulary vocabulary(const Json& j) const {
    if (!j.is_object()) fail(ParseError::Kind::Syntax, "a vocabulary must map predicate names to sort lists");
    Vocabulary voc;
    for (const auto& [name, sorts_json] : j.items()) voc.add(name, sorts(sorts_json, "the sorts of " + name));
    check(validate_vocabulary(voc));
    return voc;
  }

  void check(const Issues& issues) const {
    if (!issues.empty()) fail(ParseError::Kind::Sort, describe(issues.front()));
  }

  // The byte range of the JSON string literal `s`, searching from `from`.
  std::pair<std::size_t, std::size_t> locate(const std::string& s, std::size_t& from) const {
    const std::string lit = Json(s).dump();
    const auto at = text_.find(lit, from);
    if (at == std::string_view::npos || lit.size() != s.size() + 2) return {0, text_.size()};
    from = at + lit.size();
    return {at + 1, s.size()};
  }

  Formula formula(const Json& j, const Vocabulary& voc, std::size_t& from, const std::string& what) const {
    const std::string s = string(j, what);
    const auto [offset, length] = locate(s, from);
    if (length == text_.size() && offset == 0) {
      auto f = parse_formula(s, voc);
      if (!f) fail(f.error().kind, what + ": " + f.error().message);
      return f.value();
    }
    auto f = detail::parse_formula_at(text_, offset, length, voc);
    if (!f) throw Failure{f.error()};
    return f.value();
  }

  std::string_view text() const { return text_; }

 private:
  std::string_view text_;
};

template <class T, class F>
ParseResult<T> guarded(F&& body) {
  try {
    return body();
  } catch (const Failure& f) {
    return f.error;
  }
}

Json vocabulary_json(const Vocabulary& voc) {
  Json out = Json::object();
  for (const auto& sym : voc.symbols()) out[sym.name] = sym.sorts;
  return out;
}

Json tuples_json(const TupleSet& ts) {
  Json out = Json::array();
  for (const auto& t : ts) out.push_back(t);
  return out;
}

Json structure_json(const Structure& m) {
  Json out = Json::object();
  Json sorts = Json::object();
  for (const auto& [s, d] : m.domains) sorts[std::to_string(s)] = d;
  out["sorts"] = std::move(sorts);
  Json rels = Json::object();
  for (const auto& [name, ts] : m.relations) rels[name] = tuples_json(ts);
  out["relations"] = std::move(rels);
  out["vocabulary"] = vocabulary_json(m.vocabulary);
  return out;
}

Structure read_structure(const Reader& r, const Json& j) {
  Structure m;
  const Json& sorts = r.field(j, "sorts", "a structure");
  if (!sorts.is_object()) r.fail(ParseError::Kind::Syntax, "\"sorts\" must map sort numbers to element lists");
  for (const auto& [key, d] : sorts.items()) {
    auto dom = r.elements(d, "the domain of sort " + key);
    if (dom.empty()) r.fail(ParseError::Kind::Sort, "the domain of sort " + key + " is empty");
    m.domains[r.sort_key(key)] = std::move(dom);
  }
  const Json& rels = r.field(j, "relations", "a structure");
  if (!rels.is_object()) r.fail(ParseError::Kind::Syntax, "\"relations\" must map predicate names to tuple lists");
  std::vector<std::string> order;
  for (const auto& [name, ts] : rels.items()) {
    m.relations[name] = r.tuples(ts, "relation " + name);
    order.push_back(name);
  }
  if (auto it = j.find("vocabulary"); it != j.end()) {
    m.vocabulary = r.vocabulary(*it);
    for (const auto& name : order)
      if (!m.vocabulary.find(name)) r.fail(ParseError::Kind::Sort, "relation " + name + " is not in the vocabulary");
  } else {
    for (const auto& name : order) {
      const TupleSet& ts = m.relations[name];
      if (ts.empty()) r.fail(ParseError::Kind::Sort, "cannot infer the sorts of empty relation " + name);
      const std::size_t arity = ts.begin()->size();
      std::vector<SortId> inferred;
      for (std::size_t i = 0; i < arity; ++i) {
        std::optional<SortId> found;
        for (const auto& [s, d] : m.domains) {
          const bool all = std::all_of(ts.begin(), ts.end(), [&](const Tuple& t) {
            return i < t.size() && std::find(d.begin(), d.end(), t[i]) != d.end();
          });
          if (all) {
            found = s;
            break;
          }
        }
        if (!found)
          r.fail(ParseError::Kind::Sort,
                 "no sort contains every element at position " + std::to_string(i + 1) + " of " + name);
        inferred.push_back(*found);
      }
      m.vocabulary.add(name, inferred);
    }
  }
  r.check(validate_structure(m));
  return m;
}

}  // namespace

ParseResult<Vocabulary> parse_vocabulary(std::string_view text) {
  return guarded<Vocabulary>([&]() -> ParseResult<Vocabulary> {
    Reader r(text);
    return r.vocabulary(r.parse());
  });
}

std::string render_vocabulary(const Vocabulary& voc) { return vocabulary_json(voc).dump(2) + "\n"; }

ParseResult<Structure> parse_structure(std::string_view text) {
  return guarded<Structure>([&]() -> ParseResult<Structure> {
    Reader r(text);
    return read_structure(r, r.parse());
  });
}

std::string render_structure(const Structure& m) { return structure_json(m).dump(2) + "\n"; }

ParseResult<HenkinStructure> parse_henkin(std::string_view text) {
  return guarded<HenkinStructure>([&]() -> ParseResult<HenkinStructure> {
    Reader r(text);
    const Json j = r.parse();
    HenkinStructure h;
    h.base = read_structure(r, j);
    const Json& u = r.field(j, "U", "a Henkin structure");
    if (!u.is_array()) r.fail(ParseError::Kind::Syntax, "\"U\" must be a list of domains");
    for (const auto& d : u) h.U.push_back(r.elements(d, "a member of U"));
    const Json& g = r.field(j, "G", "a Henkin structure");
    if (!g.is_array()) r.fail(ParseError::Kind::Syntax, "\"G\" must be a list of relation records");
    for (const auto& rec : g)
      h.G.push_back(GRelation{r.sorts(r.field(rec, "sorts", "a G record"), "the sorts of a G record"),
                              r.tuples(r.field(rec, "tuples", "a G record"), "a G record")});
    r.check(validate_henkin(h));
    return h;
  });
}

std::string render_henkin(const HenkinStructure& h) {
  Json out = structure_json(h.base);
  out["U"] = h.U;
  Json g = Json::array();
  for (const auto& rec : h.G) g.push_back(Json{{"sorts", rec.sorts}, {"tuples", tuples_json(rec.tuples)}});
  out["G"] = std::move(g);
  return out.dump(2) + "\n";
}

namespace {

bool uses_i(Rule r) { return r == Rule::MP || r == Rule::GenInd || r == Rule::GenRel || r == Rule::GenNewSort; }

Justification read_justification(const Reader& r, const Json& j, const std::string& where) {
  Justification out;
  const std::string name = r.string(r.field(j, "rule", where.c_str()), "the rule of " + where);
  const auto rule = rule_from_string(name);
  if (!rule) r.fail(ParseError::Kind::Syntax, where + ": unknown rule \"" + name + "\"");
  out.rule = *rule;
  auto index = [&](const char* key) -> std::size_t {
    const Json& v = r.field(j, key, where.c_str());
    if (!v.is_number_unsigned()) r.fail(ParseError::Kind::Syntax, where + ": \"" + key + "\" must be a line number");
    return v.get<std::size_t>();
  };
  if (uses_i(out.rule)) out.i = index("i");
  if (out.rule == Rule::MP) out.j = index("j");
  if (out.rule == Rule::GenInd) {
    const auto v = parse_ind_var(r.string(r.field(j, "var", where.c_str()), where + " variable"));
    if (!v) r.fail(ParseError::Kind::Syntax, where + ": " + v.error().message);
    out.var = v.value();
  }
  if (out.rule == Rule::GenRel || out.rule == Rule::GenNewSort) {
    const Json& vars = r.field(j, "vars", where.c_str());
    if (!vars.is_array() || vars.empty())
      r.fail(ParseError::Kind::Syntax, where + ": \"vars\" must be a nonempty list");
    for (const auto& s : vars) {
      const auto v = parse_rel_var(r.string(s, where + " variable"));
      if (!v) r.fail(ParseError::Kind::Syntax, where + ": " + v.error().message);
      out.vars.push_back(v.value());
    }
    if (out.rule == Rule::GenRel && out.vars.size() != 1)
      r.fail(ParseError::Kind::Syntax, where + ": GenRel takes exactly one variable");
  }
  return out;
}

Json justification_json(const Justification& j) {
  Json out = Json::object();
  out["rule"] = to_string(j.rule);
  if (uses_i(j.rule)) out["i"] = j.i;
  if (j.rule == Rule::MP) out["j"] = j.j;
  if (j.rule == Rule::GenInd) out["var"] = render_var(j.var);
  if (j.rule == Rule::GenRel || j.rule == Rule::GenNewSort) {
    Json vars = Json::array();
    for (const auto& v : j.vars) vars.push_back(render_var(v));
    out["vars"] = std::move(vars);
  }
  return out;
}

}  // namespace

ParseResult<Proof> parse_proof(std::string_view text, const Vocabulary& base) {
  return guarded<Proof>([&]() -> ParseResult<Proof> {
    Reader r(text);
    const Json j = r.parse();
    if (!j.is_object()) r.fail(ParseError::Kind::Syntax, "a proof must be a JSON object");
    Proof p;
    p.vocabulary = base;
    if (auto it = j.find("vocabulary"); it != j.end()) {
      const Vocabulary extra = r.vocabulary(*it);
      for (const auto& sym : extra.symbols()) {
        if (const auto* old = p.vocabulary.find(sym.name)) {
          if (old->sorts != sym.sorts)
            r.fail(ParseError::Kind::Sort, "predicate " + sym.name + " declared with conflicting sorts");
        } else {
          p.vocabulary.add(sym);
        }
      }
    }
    std::size_t cursor = 0;
    if (auto it = j.find("theory"); it != j.end()) {
      if (!it->is_array()) r.fail(ParseError::Kind::Syntax, "\"theory\" must be a list of formulas");
      for (const auto& s : *it) {
        Formula f = r.formula(s, p.vocabulary, cursor, "a theory sentence");
        if (!is_sentence(f)) r.fail(ParseError::Kind::Syntax, "theory member " + render_formula(f) + " is not a sentence");
        p.theory.push_back(f);
      }
    }
    const Json& lines = r.field(j, "lines", "a proof");
    if (!lines.is_array()) r.fail(ParseError::Kind::Syntax, "\"lines\" must be a list");
    for (std::size_t k = 0; k < lines.size(); ++k) {
      const std::string where = "line " + std::to_string(k + 1);
      ProofLine line;
      line.formula = r.formula(r.field(lines[k], "formula", where.c_str()), p.vocabulary, cursor, where);
      line.just = read_justification(r, r.field(lines[k], "just", where.c_str()), where);
      p.lines.push_back(std::move(line));
    }
    return p;
  });
}

std::string render_proof(const Proof& p) {
  Json out = Json::object();
  out["vocabulary"] = vocabulary_json(p.vocabulary);
  Json theory = Json::array();
  for (const auto& f : p.theory) theory.push_back(render_formula(f));
  out["theory"] = std::move(theory);
  Json lines = Json::array();
  for (const auto& l : p.lines)
    lines.push_back(Json{{"formula", render_formula(l.formula)}, {"just", justification_json(l.just)}});
  out["lines"] = std::move(lines);
  return out.dump(2) + "\n";
}

}  // namespace sortlogic
