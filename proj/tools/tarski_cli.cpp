// tarski: command-line front end for the library.
//
// Every subcommand produces one report. With --format json the report is the
// envelope
//   {"schema":"tarski-report/1","command":...,"status":...,"exit_code":...,"result":{...}}
// and otherwise a short text rendering. Exit codes: 0 determined and passing,
// 1 failure or input error, 2 undetermined within the budget.

#include "CLI11.hpp"
#include "tarski/forcing.hpp"
#include "tarski/henkin.hpp"
#include "tarski/io.hpp"
#include "tarski/model_tools.hpp"
#include "tarski/presburger.hpp"
#include "tarski/testing/acceptance.hpp"
#include "tarski/truth_hierarchy.hpp"
#include "tarski/undefinability.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace tarski;

enum class Status { Pass, Fail, Unknown, Error };

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Unknown:
      return "unknown";
    case Status::Error:
      return "error";
  }
  return "error";
}

int exit_code(Status s) {
  switch (s) {
    case Status::Pass:
      return 0;
    case Status::Unknown:
      return 2;
    default:
      return 1;
  }
}

struct Report {
  std::string command;
  Status status = Status::Pass;
  Json result = Json::object();
  std::ostringstream text;
};

struct Globals {
  std::string format = "text";
  std::optional<std::uint64_t> witness_bound;
  std::optional<std::uint32_t> depth_bound;

  Budget budget() const {
    Budget b;
    if (const char* env = std::getenv("TARSKI_BUDGET")) {
      std::string s(env);
      auto comma = s.find(',');
      try {
        b.witness_bound = std::stoull(s.substr(0, comma));
        if (comma != std::string::npos) b.depth_bound = static_cast<std::uint32_t>(std::stoul(s.substr(comma + 1)));
      } catch (const std::exception&) {
        throw Error("TARSKI_BUDGET must look like 'witness,depth', got '" + s + "'");
      }
    }
    if (witness_bound) b.witness_bound = *witness_bound;
    if (depth_bound) b.depth_bound = *depth_bound;
    b.validate();
    return b;
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Positional text, or the contents of --file.
std::string formula_text(const std::string& text, const std::string& file) {
  if (!file.empty()) return read_file(file);
  if (text.empty()) throw Error("no formula given");
  return text;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::vector<std::string> out;
  std::istringstream in(read_file(path));
  for (std::string line; std::getline(in, line);) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(line.substr(first));
  }
  return out;
}

std::vector<Element> parse_elements(const std::string& s) {
  std::vector<Element> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    try {
      out.push_back(static_cast<Element>(std::stoul(item)));
    } catch (const std::exception&) {
      throw Error("bad element '" + item + "'");
    }
  }
  return out;
}

std::string join(const std::vector<Element>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return "{" + out + "}";
}

Status of(const TruthValue3& v) { return v.determined() ? Status::Pass : Status::Unknown; }

// ---------------------------------------------------------------------------

struct EvalArgs {
  std::string formula, file, structure;
  unsigned level = 0;
};

void cmd_eval(const Globals& g, const EvalArgs& a, Report& r) {
  const std::string text = formula_text(a.formula, a.file);
  if (!a.structure.empty()) {
    const FiniteStructure s = structure_from_json(read_json_file(a.structure));
    const Formula f = parse_formula(text, diagram_signature(s));
    if (!is_sentence(f)) throw Error("formula has free variables: " + to_text(f));
    const bool v = eval_finite(s, f);
    r.result = {{"formula", to_text(f)}, {"domain", "structure"}, {"size", s.size()}, {"value", to_json(TruthValue3::of(v))}};
    r.text << to_text(f) << "\n" << (v ? "true" : "false") << "\n";
    return;
  }
  const Formula f = parse_formula(text, language_level(a.level, std::max(a.level, kDefaultMaxLevel)));
  if (!is_sentence(f)) throw Error("formula has free variables: " + to_text(f));
  const Budget b = g.budget();
  const LevelResult res = eval_level_traced(f, {}, b, a.level, std::max(a.level, kDefaultMaxLevel));
  r.status = of(res.value);
  r.result = {{"formula", to_text(f)},
              {"domain", "naturals"},
              {"level", a.level},
              {"budget", {{"witness_bound", b.witness_bound}, {"depth_bound", b.depth_bound}}},
              {"value", to_json(res.value)},
              {"dereferences", res.stats.by_level}};
  r.text << to_text(f) << "\n" << to_string(res.value) << "\n";
}

struct LiarArgs {
  std::string predicate, file;
  unsigned level = 0;
};

void cmd_liar(const Globals& g, const LiarArgs& a, Report& r) {
  const Formula phi = parse_formula(formula_text(a.predicate, a.file), language_level(a.level, std::max(a.level, kDefaultMaxLevel)));
  const DemonstrationReport d = tarski_demonstrate(phi, g.budget(), a.level);
  r.status = d.conclusion == Conclusion::Disagreement ? Status::Pass
             : d.conclusion == Conclusion::Unknown    ? Status::Unknown
                                                      : Status::Fail;
  r.result = to_json(d);
  std::string sigma = d.sigma;
  if (sigma.size() > 160) sigma = sigma.substr(0, 160) + "...";
  r.text << "candidate        " << d.candidate << "\n"
         << "sigma            " << sigma << "\n"
         << "value of sigma   " << to_string(d.sigma_value) << "\n"
         << "phi(code sigma)  " << to_string(d.candidate_value) << "\n"
         << "conclusion       " << to_string(d.conclusion) << "\n"
         << d.explanation << "\n";
}

struct PresburgerArgs {
  std::string formula, file, set = "squares";
  std::uint64_t verify = 1000;
  std::uint64_t bound = 10000;
  std::size_t witnesses = 50;
};

std::function<bool(std::uint64_t)> named_set(const std::string& name) {
  if (name == "squares") return [](std::uint64_t n) { return testing::is_square(n); };
  if (name == "cubes")
    return [](std::uint64_t n) {
      std::uint64_t k = 0;
      while (k * k * k < n) ++k;
      return k * k * k == n;
    };
  if (name == "powers2") return [](std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; };
  if (name == "primes")
    return [](std::uint64_t n) {
      if (n < 2) return false;
      for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
      return true;
    };
  if (name == "evens") return [](std::uint64_t n) { return n % 2 == 0; };
  if (name == "odds") return [](std::uint64_t n) { return n % 2 == 1; };
  if (name.rfind("below:", 0) == 0) {
    const std::uint64_t k = std::stoull(name.substr(6));
    return [k](std::uint64_t n) { return n < k; };
  }
  throw Error("unknown set '" + name + "' (squares, cubes, powers2, primes, evens, odds, below:N)");
}

void cmd_presburger(const std::string& mode, const PresburgerArgs& a, Report& r) {
  r.command = "presburger " + mode;
  if (mode == "refute") {
    const RefutationReport rep = periodicity_refute(named_set(a.set), a.bound);
    r.result = to_json(rep, a.witnesses);
    r.result["set"] = a.set;
    r.status = Status::Pass;
    r.text << "set " << a.set << ", bound " << a.bound << "\n"
           << rep.pairs_refuted << " of " << rep.pairs_tested << " (threshold, period) pairs refuted\n"
           << (rep.refuted_all() ? "every pair refuted" : "some pairs survive") << "\n"
           << rep.note << "\n";
    return;
  }
  const Formula f = parse_formula(formula_text(a.formula, a.file), presburger_signature());
  if (mode == "decide") {
    const bool v = decide(f);
    r.result = {{"sentence", to_text(f)}, {"value", to_json(TruthValue3::of(v))}};
    r.text << to_text(f) << "\n" << (v ? "true" : "false") << "\n";
  } else if (mode == "eliminate") {
    const LinearFormula qf = eliminate_quantifiers(f);
    const Formula back = to_formula(qf);
    r.result = {{"formula", to_text(f)}, {"eliminated", to_text(back)}, {"linear", to_string(qf)}};
    r.text << to_text(back) << "\n";
  } else if (mode == "period") {
    const PeriodicityCertificate c = definable_set_period(f, a.verify);
    r.result = to_json(c);
    r.result["formula"] = to_text(f);
    auto bits = [](const std::vector<bool>& v) {
      std::string s;
      for (bool b : v) s.push_back(b ? '1' : '0');
      return s;
    };
    r.text << "threshold " << c.threshold << ", period " << c.period << ", prefix [" << bits(c.prefix)
           << "], table [" << bits(c.table) << "], verified to " << c.verified_to << "\n";
  } else {
    throw Error("unknown presburger mode '" + mode + "'");
  }
}

struct HierarchyArgs {
  std::string sentence, corpus;
  unsigned level = 1;
  std::optional<unsigned> against;
};

void cmd_hierarchy(const Globals& g, const HierarchyArgs& a, Report& r) {
  const unsigned top = std::max({a.level, a.against.value_or(0), kDefaultMaxLevel});
  const Signature sig = language_level(a.level, top);
  std::vector<Formula> corpus;
  if (!a.corpus.empty()) {
    for (const auto& line : read_lines(a.corpus)) corpus.push_back(parse_formula(line, sig));
  }
  if (!a.sentence.empty()) corpus.push_back(parse_formula(a.sentence, sig));
  if (corpus.empty()) throw Error("no sentences given");
  const Budget b = g.budget();
  if (a.against) {
    const CoherenceReport c = coherence_check(a.level, *a.against, corpus, b);
    r.result = to_json(c);
    r.status = !c.coherent() ? Status::Fail : (c.unknown_j || c.unknown_k) ? Status::Unknown : Status::Pass;
    r.text << corpus.size() << " sentences, levels " << a.level << " and " << *a.against << ": "
           << c.disagreements.size() << " determined disagreements, " << c.unknown_j << "/" << c.unknown_k
           << " unknown\n";
    for (std::size_t i : c.disagreements) r.text << "  " << c.entries[i].sentence << "\n";
    return;
  }
  Json entries = Json::array();
  bool any_unknown = false;
  for (const auto& f : corpus) {
    const LevelResult res = eval_level_traced(f, {}, b, a.level, top);
    any_unknown = any_unknown || !res.value.determined();
    entries.push_back({{"sentence", to_text(f)}, {"value", to_json(res.value)}, {"dereferences", res.stats.by_level}});
    r.text << to_string(res.value) << "  " << to_text(f) << "\n";
  }
  r.status = any_unknown ? Status::Unknown : Status::Pass;
  r.result = {{"level", a.level}, {"entries", entries}};
}

struct DisagreeArgs {
  std::string structure, subset, params;
};

void cmd_disagree(const DisagreeArgs& a, Report& r) {
  const FiniteStructure s = structure_from_json(read_json_file(a.structure));
  const auto xs = parse_elements(a.subset);
  const std::set<Element> X(xs.begin(), xs.end());
  const auto params = parse_elements(a.params);
  const auto w = disagreement_pair(s, X, params);
  std::vector<Element> xv(X.begin(), X.end());
  if (!w) {
    r.result = {{"definable", true}, {"X", to_json(X)}, {"params", params}, {"witness", nullptr}};
    r.text << "X = " << join(xv) << " is a union of orbits with params " << join(params) << "; no witness\n";
    return;
  }
  r.result = {{"definable", false}, {"X", to_json(X)}, {"params", params}, {"witness", to_json(*w, X)}};
  const auto image = apply_automorphism(X, w->pi);
  r.text << "X = " << join(xv) << " is not definable with params " << join(params) << "\n"
         << "pi = " << join(w->pi.perm) << " fixes the params and sends t = " << w->t << " (outside X) to s = " << w->s
         << " (in X)\n"
         << "(S, X) and (S, pi(X)) with pi(X) = " << join(std::vector<Element>(image.begin(), image.end()))
         << " are isomorphic expansions of one structure that disagree on the predicate\n";
}

struct BackForthArgs {
  std::string a, b;
};

void cmd_backforth(const BackForthArgs& a, Report& r) {
  const FiniteStructure A = structure_from_json(read_json_file(a.a));
  const FiniteStructure B = structure_from_json(read_json_file(a.b));
  const auto m = back_and_forth(A, B);
  r.result = {{"isomorphic", m.has_value()}, {"map", m ? Json(*m) : Json(nullptr)}};
  r.text << (m ? "isomorphic via " + join(*m) : std::string("not isomorphic")) << "\n";
}

struct HenkinArgs {
  std::size_t depth = 1;
  std::size_t cap = 9;
  std::size_t show = 20;
  bool check = false;
};

void cmd_henkin(const HenkinArgs& a, Report& r) {
  const TheoryOracle oracle = presburger_oracle();
  const HenkinState st = henkin_extend(oracle, a.depth, a.cap);
  const TermModel m = term_model(st);
  r.result = {{"state", to_json(st, a.show)}, {"term_model", to_json(m)}};
  r.text << "depth " << st.depth << ", size cap " << st.size_cap << ": " << st.considered << " sentences considered, "
         << st.accepted.size() << " accepted, " << st.constant_pool.size() << " witnesses\n"
         << "term model: " << m.size() << " classes";
  for (std::size_t i = 0; i < m.size(); ++i) r.text << (i ? ", " : " ") << "[" << to_text(m.representatives[i]) << "]";
  r.text << "\n";
  for (std::size_t i = 0; i < st.accepted.size() && i < a.show; ++i) r.text << "  " << to_text(st.accepted[i]) << "\n";
  if (!a.check) return;
  SentenceEnumerator en(oracle.signature);
  std::size_t total = 0, determined = 0, disagreements = 0;
  for (const auto& s : en.sentences(a.cap)) {
    ++total;
    const TruthValue3 v = m.eval(s);
    if (!v.determined()) continue;
    ++determined;
    if (v.is_true() != decide(s)) ++disagreements;
  }
  r.result["check"] = {{"sentences", total}, {"determined", determined}, {"disagreements", disagreements}};
  r.status = disagreements ? Status::Fail : Status::Pass;
  r.text << "check: " << determined << " of " << total << " sentences determined by the term model, "
         << disagreements << " disagreements with decide\n";
}

struct ForceArgs {
  std::vector<std::string> requirements;
  std::string from;
  std::size_t bound = 16;
  std::vector<std::uint64_t> sections;
  std::size_t width = 8;
};

void cmd_force(const ForceArgs& a, Report& r) {
  validate_bits(a.from);
  std::vector<Requirement> reqs;
  for (const auto& t : a.requirements) reqs.push_back(parse_requirement(t));
  Construction c;
  c.condition = Condition{a.from};
  for (const auto& q : reqs) {
    auto [next, status] = extend_to_meet(c.condition, q, c.condition.length() + a.bound);
    c.condition = next;
    c.statuses.push_back(status);
  }
  Json st = Json::array();
  bool exhausted = false;
  r.text << "condition " << (c.condition.bits.empty() ? "(empty)" : c.condition.bits) << "\n";
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    Json e = to_json(c.statuses[i]);
    e["requirement"] = reqs[i].label;
    st.push_back(e);
    exhausted = exhausted || c.statuses[i].kind == MeetStatus::Kind::Exhausted;
    r.text << "  " << to_string(c.statuses[i].kind) << "  " << reqs[i].label << "\n";
  }
  Json secs = Json::object();
  for (auto n : a.sections) {
    std::string row;
    for (const auto& b : section(c.condition, Nat(n), a.width)) row.push_back(b ? (*b ? '1' : '0') : '?');
    secs[std::to_string(n)] = row;
    r.text << "  section " << n << ": " << row << "\n";
  }
  r.status = exhausted ? Status::Unknown : Status::Pass;
  r.result = {{"condition", c.condition.bits}, {"statuses", st}, {"sections", secs}};
}

struct SuiteArgs {
  std::vector<std::string> filters;
  std::uint64_t seed = 1;
  bool rig_flip = false;
  bool timings = false;
};

void cmd_suite(const Globals& g, const SuiteArgs& a, Report& r, bool stream) {
  testing::SuiteOptions opt;
  opt.seed = a.seed;
  opt.budget = g.budget();
  opt.rig_flip = a.rig_flip;
  opt.filters = a.filters;
  Json crit = Json::array();
  bool all = true;
  auto outcomes = testing::run_suite(opt, [&](const testing::CriterionOutcome& o) {
    std::ostringstream line;
    line << (o.passed() ? "PASS" : "FAIL") << "  C" << o.id << "  " << o.name;
    if (a.timings) line << "  (" << o.seconds << " s, limit " << o.limit_seconds << " s)";
    line << "  " << o.detail << "\n";
    if (stream) std::cout << line.str() << std::flush;
    r.text << (stream ? "" : line.str());
    Json j = {{"id", o.id}, {"name", o.name}, {"tags", o.tags}, {"passed", o.passed()}, {"detail", o.detail},
              {"limit_seconds", o.limit_seconds}};
    if (a.timings) j["seconds"] = o.seconds;
    crit.push_back(j);
    all = all && o.passed();
  });
  if (outcomes.empty()) throw Error("no criterion matches the filter");
  r.status = all ? Status::Pass : Status::Fail;
  r.result = {{"seed", a.seed}, {"rig_flip", a.rig_flip}, {"criteria", crit}};
  r.text << outcomes.size() << " criteria, " << (all ? "all passed" : "failures") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truth definitions, arithmetization and their finite analogues"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--witness-bound", g.witness_bound, "Quantifier search bound over the naturals");
  app.add_option("--depth-bound", g.depth_bound, "Nesting bound for quantifiers and truth dereferences");
  app.footer("Default budget from TARSKI_BUDGET=\"witness,depth\"; flags override.");

  Report r;
  std::function<void(Report&)> action;

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate a sentence over the naturals or a structure file");
  eval->add_option("formula", ea.formula, "Sentence text");
  eval->add_option("--file", ea.file, "Read the sentence from a file");
  eval->add_option("--structure", ea.structure, "Structure file (JSON)");
  eval->add_option("--level", ea.level, "Truth-hierarchy level of the language");
  eval->callback([&] { action = [&](Report& rep) { cmd_eval(g, ea, rep); }; });

  LiarArgs la;
  auto* liar_cmd = app.add_subcommand("liar", "Run a candidate truth predicate against its liar sentence");
  liar_cmd->add_option("predicate", la.predicate, "Predicate with free variable x");
  liar_cmd->add_option("--file", la.file, "Read the predicate from a file");
  liar_cmd->add_option("--level", la.level, "Truth-hierarchy level of the language");
  liar_cmd->callback([&] { action = [&](Report& rep) { cmd_liar(g, la, rep); }; });

  PresburgerArgs pa;
  std::string pmode;
  auto* pres = app.add_subcommand("presburger", "Presburger arithmetic");
  pres->require_subcommand(1);
  const std::pair<const char*, const char*> modes[] = {
      {"decide", "Decide a sentence"},
      {"eliminate", "Eliminate quantifiers from a formula"},
      {"period", "Threshold and period of a formula in x"}};
  for (const auto& [mode, about] : modes) {
    auto* sub = pres->add_subcommand(mode, about);
    sub->add_option("formula", pa.formula, "Formula text");
    sub->add_option("--file", pa.file, "Read the formula from a file");
    if (std::string(mode) == "period") sub->add_option("--verify", pa.verify, "Verify the certificate up to this n");
    sub->callback([&, mode] { action = [&, mode](Report& rep) { cmd_presburger(mode, pa, rep); }; });
  }
  auto* refute = pres->add_subcommand("refute", "Refute eventual periodicity of a named set");
  refute->add_option("--set", pa.set, "squares, cubes, powers2, primes, evens, odds or below:N");
  refute->add_option("--bound", pa.bound, "Search bound");
  refute->add_option("--witnesses", pa.witnesses, "Periods listed in the report");
  refute->callback([&] { action = [&](Report& rep) { cmd_presburger("refute", pa, rep); }; });

  HierarchyArgs ha;
  auto* hier = app.add_subcommand("hierarchy", "Evaluate at a level, or compare two levels");
  hier->add_option("sentence", ha.sentence, "Sentence text");
  hier->add_option("--corpus", ha.corpus, "File with one sentence per line");
  hier->add_option("--level", ha.level, "Level of the language");
  hier->add_option("--against", ha.against, "Compare verdicts with this higher level");
  hier->callback([&] { action = [&](Report& rep) { cmd_hierarchy(g, ha, rep); }; });

  DisagreeArgs da;
  auto* dis = app.add_subcommand("disagree", "Find an automorphism moving a subset off itself");
  dis->add_option("--structure", da.structure, "Structure file (JSON)")->required();
  dis->add_option("--subset", da.subset, "Comma-separated elements of X");
  dis->add_option("--params", da.params, "Comma-separated parameters");
  dis->callback([&] { action = [&](Report& rep) { cmd_disagree(da, rep); }; });

  BackForthArgs ba;
  auto* bf = app.add_subcommand("backforth", "Search for an isomorphism between two structures");
  bf->add_option("A", ba.a, "First structure file")->required();
  bf->add_option("B", ba.b, "Second structure file")->required();
  bf->callback([&] { action = [&](Report& rep) { cmd_backforth(ba, rep); }; });

  HenkinArgs hk;
  auto* hen = app.add_subcommand("henkin", "Henkin construction over Presburger arithmetic");
  hen->add_option("--depth", hk.depth, "Rounds of witness introduction");
  hen->add_option("--cap", hk.cap, "Sentence size cap");
  hen->add_option("--show", hk.show, "Accepted sentences listed");
  hen->add_flag("--check", hk.check, "Compare the term model with decide on every sentence");
  hen->callback([&] { action = [&](Report& rep) { cmd_henkin(hk, rep); }; });

  ForceArgs fa;
  auto* force = app.add_subcommand("force", "Meet requirements by finite extension");
  force->add_option("requirements", fa.requirements, "Requirements in the mini-language");
  force->add_option("--from", fa.from, "Starting condition");
  force->add_option("--bound", fa.bound, "Extension allowance per requirement");
  force->add_option("--section", fa.sections, "Rows of the plane-coded set to print");
  force->add_option("--width", fa.width, "Positions printed per section");
  force->callback([&] { action = [&](Report& rep) { cmd_force(fa, rep); }; });

  SuiteArgs sa;
  auto* suite = app.add_subcommand("suite", "Run the acceptance criteria");
  suite->add_option("--filter", sa.filters, "Tag, name or id of criteria to run");
  suite->add_option("--seed", sa.seed, "Seed for generated corpora");
  suite->add_flag("--rig-flip", sa.rig_flip, "Negative control: flip one exact truth-set bit");
  suite->add_flag("--timings", sa.timings, "Include run times in the report");
  suite->callback([&] {
    action = [&](Report& rep) { cmd_suite(g, sa, rep, g.format == "text"); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  for (auto* sub : app.get_subcommands()) r.command = sub->get_name();
  try {
    action(r);
  } catch (const std::exception& e) {
    r.status = Status::Error;
    r.result = {{"error", e.what()}};
    r.text.str("");
    r.text << "error: " << e.what() << "\n";
  }

  if (g.format == "json") {
    Json env = {{"schema", "tarski-report/1"},
                {"command", r.command},
                {"status", status_name(r.status)},
                {"exit_code", exit_code(r.status)},
                {"result", r.result}};
    std::cout << env.dump(2) << "\n";
  } else {
    (r.status == Status::Error ? std::cerr : std::cout) << r.text.str();
  }
  return exit_code(r.status);
}
