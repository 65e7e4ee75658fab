// sortlog: command-line front end for the sort-logic workbench.
//
// Reports go to standard output (plain text or, with --format json, one JSON
// object); diagnostics go to standard error.
// Exit codes: 0 success, 1 usage, 2 parse or validation failure, 3 a proof
// check ran out of budget.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sortlogic/parser.hpp"
#include "sortlogic/proof.hpp"
#include "sortlogic/sem_full.hpp"
#include "sortlogic/sem_henkin.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace sortlogic;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitProofBudget = 3;

// Raised for anything that should end the run with exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "text";
  Budget budget;
  bool timing = false;

  std::string formula_file;
  std::string structure_file;
  std::string henkin_file;
  std::string vocabulary_file;
  std::string proof_file;
  std::vector<std::string> theory_files;
  bool free_sorts_only = false;

  std::size_t depth = 1;
  std::size_t size = 4;
  std::size_t max_failures = 1;
  SearchBounds search;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class T>
T take(const std::string& path, ParseResult<T> r) {
  if (!r.ok()) throw InputError(path + ":" + describe(r.error()));
  return std::move(r.value());
}

Structure load_structure_file(const std::string& path) {
  Structure m = take(path, parse_structure(read_file(path)));
  if (auto issues = validate_structure(m); !issues.empty()) throw InputError(path + ": " + describe(issues.front()));
  return m;
}

HenkinStructure load_henkin_file(const std::string& path) {
  HenkinStructure h = take(path, parse_henkin(read_file(path)));
  if (auto issues = validate_henkin(h); !issues.empty()) throw InputError(path + ": " + describe(issues.front()));
  return h;
}

Vocabulary base_vocabulary(const Options& o) {
  if (!o.vocabulary_file.empty()) return take(o.vocabulary_file, parse_vocabulary(read_file(o.vocabulary_file)));
  if (!o.structure_file.empty()) return load_structure_file(o.structure_file).vocabulary;
  if (!o.henkin_file.empty()) return load_henkin_file(o.henkin_file).base.vocabulary;
  return {};
}

FormulaFile load_formula_file(const std::string& path, const Vocabulary& base) {
  return take(path, parse_formula_file(read_file(path), base));
}

std::string sort_set_text(const SortSet& s) {
  std::string out = "{";
  for (auto it = s.begin(); it != s.end(); ++it) {
    if (it != s.begin()) out += ", ";
    out += std::to_string(*it);
  }
  return out + "}";
}

template <class Set>
std::vector<std::string> rendered(const Set& vars) {
  std::vector<std::string> out;
  for (const auto& v : vars) out.push_back(render_var(v));
  return out;
}

std::string joined(const std::vector<std::string>& items) {
  if (items.empty()) return "none";
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

json budget_json(const Budget& b) {
  return json{{"domain_bound", b.domain_bound}, {"relation_cap", b.relation_cap}, {"step_cap", b.step_cap}};
}

json stats_json(const EvalStats& s) {
  return json{{"steps", s.steps},
              {"expansion_candidates", s.expansion_candidates},
              {"sat_calls", s.sat_calls},
              {"sat_conflicts", s.sat_conflicts},
              {"relation_cap_hit", s.relation_cap_hit},
              {"step_cap_hit", s.step_cap_hit},
              {"domain_bound_hit", s.domain_bound_hit}};
}

// Collects the report for one run. Text lines and JSON fields are filled in
// side by side so that both formats carry the same content.
struct Report {
  json doc;
  std::vector<std::string> lines;
  int exit_code = kExitOk;
};

Report run_parse(const Options& o) {
  const FormulaFile ff = load_formula_file(o.formula_file, base_vocabulary(o));
  const Formula& f = ff.formula;
  Report r;
  const auto inds = rendered(free_individual_vars(f));
  const auto rels = rendered(free_relation_vars(f));
  const std::string fs = sort_set_text(free_sorts(f));
  r.doc["inputs"] = json{{"formula", o.formula_file}};
  r.doc["formula"] = render_formula(f);
  r.doc["free_individual_vars"] = inds;
  r.doc["free_relation_vars"] = rels;
  r.doc["free_sorts"] = free_sorts(f);
  r.doc["quantifier_rank"] = quantifier_rank(f);
  r.doc["size"] = formula_size(f);
  if (o.free_sorts_only) {
    r.lines.push_back(fs);
  } else {
    r.lines.push_back("formula: " + render_formula(f));
    r.lines.push_back("free individual variables: " + joined(inds));
    r.lines.push_back("free relation variables: " + joined(rels));
    r.lines.push_back("free sorts: " + fs);
  }
  return r;
}

// The parser already refuses ill-formed formulas; this reports the outcome
// rather than aborting on it.
Report run_check(const Options& o) {
  const Vocabulary base = base_vocabulary(o);
  const std::string text = read_file(o.formula_file);
  Report r;
  r.doc["inputs"] = json{{"formula", o.formula_file}};
  auto parsed = parse_formula_file(text, base);
  if (!parsed.ok()) {
    const ParseError& e = parsed.error();
    r.doc["well_formed"] = false;
    r.doc["error"] = json{{"kind", to_string(e.kind)},
                          {"line", e.span.line},
                          {"column", e.span.column},
                          {"message", e.message}};
    r.lines.push_back("not well-formed: " + o.formula_file + ":" + describe(e));
    r.exit_code = kExitInvalid;
    return r;
  }
  r.doc["well_formed"] = true;
  r.doc["sentence"] = is_sentence(parsed.value().formula);
  r.lines.push_back("well-formed");
  return r;
}

Report run_eval(const Options& o) {
  const Structure m = load_structure_file(o.structure_file);
  const Formula f = load_formula_file(o.formula_file, m.vocabulary).formula;
  if (!is_sentence(f)) throw InputError(o.formula_file + ": formula has free variables");
  EvalStats stats;
  const Verdict3 v = eval_sentence(m, f, o.budget, &stats);
  Report r;
  r.doc["inputs"] = json{{"structure", o.structure_file}, {"formula", o.formula_file}};
  r.doc["budget"] = budget_json(o.budget);
  r.doc["verdict"] = to_string(v);
  r.doc["stats"] = stats_json(stats);
  r.lines.push_back(to_string(v));
  return r;
}

Report run_heval(const Options& o) {
  const HenkinStructure h = load_henkin_file(o.henkin_file);
  const Formula f = load_formula_file(o.formula_file, h.base.vocabulary).formula;
  if (!is_sentence(f)) throw InputError(o.formula_file + ": formula has free variables");
  const bool v = eval_henkin_sentence(h, f);
  Report r;
  r.doc["inputs"] = json{{"henkin", o.henkin_file}, {"formula", o.formula_file}};
  r.doc["verdict"] = v ? "True" : "False";
  r.lines.push_back(v ? "True" : "False");
  return r;
}

Report run_henkin_check(const Options& o) {
  const HenkinStructure h = load_henkin_file(o.henkin_file);
  const ComprehensionReport c = check_comprehension(h, o.depth, o.size, o.max_failures);
  Report r;
  r.doc["inputs"] = json{{"henkin", o.henkin_file}};
  r.doc["depth_bound"] = c.depth_bound;
  r.doc["size_bound"] = c.size_bound;
  r.doc["checked_instances"] = c.checked_instances;
  r.doc["passed"] = c.passed();
  json failures = json::array();
  for (const auto& fail : c.failures)
    failures.push_back(json{{"instance", render_formula(fail.instance)}, {"status", fail.status}});
  r.doc["failures"] = failures;
  r.lines.push_back(std::string(c.passed() ? "passed" : "failed") + ": " + std::to_string(c.checked_instances) +
                    " instances checked (depth " + std::to_string(c.depth_bound) + ", size " +
                    std::to_string(c.size_bound) + ")");
  for (const auto& fail : c.failures)
    r.lines.push_back("  fails: " + render_formula(fail.instance) + ": " + fail.status);
  return r;
}

Report run_prove(const Options& o) {
  const Proof p = take(o.proof_file, parse_proof(read_file(o.proof_file), base_vocabulary(o)));
  const auto verdicts = check_proof(p);
  Report r;
  r.doc["inputs"] = json{{"proof", o.proof_file}};
  json lines = json::array();
  bool over_budget = false;
  for (const auto& v : verdicts) {
    json line{{"line", v.index}, {"ok", v.ok}};
    if (!v.ok) line["diagnostic"] = v.diagnostic;
    lines.push_back(line);
    r.lines.push_back("line " + std::to_string(v.index) + ": " + (v.ok ? "ok" : "rejected: " + v.diagnostic));
    over_budget = over_budget || v.over_budget;
  }
  const bool ok = proof_ok(verdicts);
  r.doc["lines"] = lines;
  r.doc["verified"] = ok;
  r.lines.push_back(ok ? "proof verified" : "proof rejected");
  if (!ok) r.exit_code = over_budget ? kExitProofBudget : kExitInvalid;
  return r;
}

Report run_search(const Options& o) {
  const Vocabulary base = base_vocabulary(o);
  const FormulaFile goal = load_formula_file(o.formula_file, base);
  std::vector<Formula> theory;
  for (const auto& path : o.theory_files) theory.push_back(load_formula_file(path, goal.vocabulary).formula);
  for (const auto& t : theory)
    if (!is_sentence(t)) throw InputError("theory formulas must be sentences");
  if (!is_sentence(goal.formula)) throw InputError(o.formula_file + ": formula has free variables");
  const SearchResult res = countermodel_search(goal.vocabulary, theory, goal.formula, o.search);
  Report r;
  r.doc["inputs"] = json{{"formula", o.formula_file}, {"theory", o.theory_files}};
  r.doc["bounds"] = json{{"max_pool", o.search.max_pool},
                         {"comprehension_depth", o.search.comprehension_depth},
                         {"comprehension_size", o.search.comprehension_size},
                         {"max_candidates", o.search.max_candidates}};
  r.doc["candidates_examined"] = res.candidates_examined;
  r.doc["exhausted"] = res.exhausted;
  if (res.countermodel) {
    r.doc["result"] = "Found";
    r.doc["countermodel"] = json::parse(render_henkin(*res.countermodel));
    r.lines.push_back("Found");
    r.lines.push_back(render_henkin(*res.countermodel));
  } else {
    r.doc["result"] = "NotFound";
    r.lines.push_back(std::string("NotFound") + (res.exhausted ? "" : " (candidate cap reached)"));
  }
  return r;
}

void add_budget_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--bound", o.budget.domain_bound, "largest domain tried for a new sort")->capture_default_str();
  cmd->add_option("--rel-cap", o.budget.relation_cap, "relations tried per second-order quantifier")
      ->capture_default_str();
  cmd->add_option("--step-cap", o.budget.step_cap, "evaluation steps before giving up")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"sortlog: many-sorted logic with new-sort quantifiers"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  app.add_flag("--timing", o.timing, "add elapsed time to the report");
  app.fallthrough();

  auto* parse = app.add_subcommand("parse", "echo a formula with its free variables and free sorts");
  parse->add_option("-f,--formula", o.formula_file, "formula file")->required();
  parse->add_option("-s,--structure", o.structure_file, "take the vocabulary from a structure");
  parse->add_option("--vocabulary", o.vocabulary_file, "vocabulary file");
  parse->add_flag("--free-sorts", o.free_sorts_only, "print only the free sorts");

  auto* check = app.add_subcommand("check", "well-formedness, including the New Sort Condition");
  check->add_option("-f,--formula", o.formula_file, "formula file")->required();
  check->add_option("-s,--structure", o.structure_file, "take the vocabulary from a structure");
  check->add_option("--vocabulary", o.vocabulary_file, "vocabulary file");

  auto* eval = app.add_subcommand("eval", "evaluate a sentence under full semantics");
  eval->add_option("-s,--structure", o.structure_file, "structure file")->required();
  eval->add_option("-f,--formula", o.formula_file, "formula file")->required();
  add_budget_flags(eval, o);

  auto* heval = app.add_subcommand("heval", "evaluate a sentence in a Henkin structure");
  heval->add_option("-H,--henkin", o.henkin_file, "Henkin structure file")->required();
  heval->add_option("-f,--formula", o.formula_file, "formula file")->required();

  auto* hcheck = app.add_subcommand("henkin-check", "bounded comprehension check of a Henkin structure");
  hcheck->add_option("-H,--henkin", o.henkin_file, "Henkin structure file")->required();
  hcheck->add_option("--depth", o.depth, "quantifier rank of defining formulas")->capture_default_str();
  hcheck->add_option("--size", o.size, "node count of defining formulas")->capture_default_str();
  hcheck->add_option("--max-failures", o.max_failures, "stop after this many failures")->capture_default_str();

  auto* prove = app.add_subcommand("prove", "verify a proof line by line");
  prove->add_option("proof", o.proof_file, "proof file")->required();
  prove->add_option("--vocabulary", o.vocabulary_file, "vocabulary file");

  auto* search = app.add_subcommand("search", "look for a Henkin countermodel");
  search->add_option("-f,--formula", o.formula_file, "formula to refute")->required();
  search->add_option("-t,--theory", o.theory_files, "theory sentence files");
  search->add_option("--vocabulary", o.vocabulary_file, "vocabulary file");
  search->add_option("--pool", o.search.max_pool, "largest base pool")->capture_default_str();
  search->add_option("--depth", o.search.comprehension_depth, "comprehension check depth")->capture_default_str();
  search->add_option("--size", o.search.comprehension_size, "comprehension check size")->capture_default_str();
  search->add_option("--max-candidates", o.search.max_candidates, "candidate cap")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version report success; anything else is a usage error.
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  const auto started = std::chrono::steady_clock::now();
  Report report;
  std::string command;
  try {
    if (*parse) {
      command = "parse";
      report = run_parse(o);
    } else if (*check) {
      command = "check";
      report = run_check(o);
    } else if (*eval) {
      command = "eval";
      report = run_eval(o);
    } else if (*heval) {
      command = "heval";
      report = run_heval(o);
    } else if (*hcheck) {
      command = "henkin-check";
      report = run_henkin_check(o);
    } else if (*prove) {
      command = "prove";
      report = run_prove(o);
    } else {
      command = "search";
      report = run_search(o);
    }
  } catch (const std::exception& e) {
    // Library preconditions surface as exceptions; all of them are input problems.
    std::cerr << "sortlog: " << e.what() << "\n";
    return kExitInvalid;
  }
  const double elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();

  if (o.format == "json") {
    json out{{"command", command}};
    for (auto& [key, value] : report.doc.items()) out[key] = value;
    out["exit_code"] = report.exit_code;
    if (o.timing) out["elapsed_ms"] = elapsed_ms;
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& line : report.lines) std::cout << line << "\n";
    if (o.timing) std::cout << "elapsed: " << elapsed_ms << " ms\n";
  }
  return report.exit_code;
}
