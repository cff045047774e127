#pragma once

// JSON forms of formulas, structures and reports.
//
// Term nodes:    {"tag":"var","index":n} {"tag":"const","name":s}
//                {"tag":"numeral","value":"n"} {"tag":"apply","fn":s,"args":[...]}
// Formula nodes: {"tag":"atom","relation":s,"terms":[...]} {"tag":"not","body":f}
//                {"tag":"and"|"or"|"implies","lhs":f,"rhs":f}
//                {"tag":"exists"|"forall","var":n,"body":f}
// Structure:     {"size":n,
//                 "signature":{"constants":[s...],"functions":[{"name":s,"arity":k}...],
//                              "relations":[{"name":s,"arity":k}...]},
//                 "constants":{s:e...}, "functions":{s:[row-major table]...},
//                 "relations":{s:[[e...]...]...}}
// Codes are decimal strings.

#include "json.hpp"
#include "tarski/forcing.hpp"
#include "tarski/henkin.hpp"
#include "tarski/model_tools.hpp"
#include "tarski/undefinability.hpp"

#include <fstream>
#include <sstream>

namespace tarski {

using Json = nlohmann::ordered_json;

class FormatError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Syntax

inline Json to_json(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return {{"tag", "var"}, {"index", t.var()}};
    case Term::Kind::Constant:
      return {{"tag", "const"}, {"name", t.symbol()}};
    case Term::Kind::Numeral:
      return {{"tag", "numeral"}, {"value", t.value().str()}};
    case Term::Kind::Apply: {
      Json args = Json::array();
      for (const auto& a : t.args()) args.push_back(to_json(a));
      return {{"tag", "apply"}, {"fn", t.symbol()}, {"args", args}};
    }
  }
  return {};
}

inline Json to_json(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atomic: {
      Json ts = Json::array();
      for (const auto& t : f.terms()) ts.push_back(to_json(t));
      return {{"tag", "atom"}, {"relation", f.relation()}, {"terms", ts}};
    }
    case Formula::Kind::Not:
      return {{"tag", "not"}, {"body", to_json(f.child())}};
    case Formula::Kind::And:
      return {{"tag", "and"}, {"lhs", to_json(f.lhs())}, {"rhs", to_json(f.rhs())}};
    case Formula::Kind::Or:
      return {{"tag", "or"}, {"lhs", to_json(f.lhs())}, {"rhs", to_json(f.rhs())}};
    case Formula::Kind::Implies:
      return {{"tag", "implies"}, {"lhs", to_json(f.lhs())}, {"rhs", to_json(f.rhs())}};
    case Formula::Kind::Exists:
      return {{"tag", "exists"}, {"var", f.bound_var()}, {"body", to_json(f.body())}};
    case Formula::Kind::Forall:
      return {{"tag", "forall"}, {"var", f.bound_var()}, {"body", to_json(f.body())}};
  }
  return {};
}

inline Term term_from_json(const Json& j) {
  try {
    const std::string tag = j.at("tag");
    if (tag == "var") return Term::variable(j.at("index").get<VarIndex>());
    if (tag == "const") return Term::constant(j.at("name").get<std::string>());
    if (tag == "numeral") return numeral(parse_bigint(j.at("value").get<std::string>()));
    if (tag == "apply") {
      std::vector<Term> args;
      for (const auto& a : j.at("args")) args.push_back(term_from_json(a));
      return Term::apply(j.at("fn").get<std::string>(), std::move(args));
    }
    throw FormatError("unknown term tag '" + tag + "'");
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed term: ") + e.what());
  }
}

inline Formula formula_from_json(const Json& j) {
  try {
    const std::string tag = j.at("tag");
    if (tag == "atom") {
      std::vector<Term> ts;
      for (const auto& t : j.at("terms")) ts.push_back(term_from_json(t));
      return Formula::atomic(j.at("relation").get<std::string>(), std::move(ts));
    }
    if (tag == "not") return neg(formula_from_json(j.at("body")));
    if (tag == "and") return conj(formula_from_json(j.at("lhs")), formula_from_json(j.at("rhs")));
    if (tag == "or") return disj(formula_from_json(j.at("lhs")), formula_from_json(j.at("rhs")));
    if (tag == "implies") return implies(formula_from_json(j.at("lhs")), formula_from_json(j.at("rhs")));
    if (tag == "exists") return exists(j.at("var").get<VarIndex>(), formula_from_json(j.at("body")));
    if (tag == "forall") return forall(j.at("var").get<VarIndex>(), formula_from_json(j.at("body")));
    throw FormatError("unknown formula tag '" + tag + "'");
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed formula: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Structures

inline Json to_json(const Signature& sig) {
  Json fs = Json::array(), rs = Json::array();
  for (const auto& f : sig.functions()) fs.push_back({{"name", f.name}, {"arity", f.arity}});
  for (const auto& r : sig.relations()) rs.push_back({{"name", r.name}, {"arity", r.arity}});
  return {{"constants", sig.constants()}, {"functions", fs}, {"relations", rs}};
}

inline Signature signature_from_json(const Json& j) {
  try {
    Signature sig;
    for (const auto& c : j.value("constants", Json::array())) sig.add_constant(c.get<std::string>());
    for (const auto& f : j.value("functions", Json::array()))
      sig.add_function(f.at("name").get<std::string>(), f.at("arity").get<std::size_t>());
    for (const auto& r : j.value("relations", Json::array()))
      sig.add_relation(r.at("name").get<std::string>(), r.at("arity").get<std::size_t>());
    return sig;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed signature: ") + e.what());
  }
}

inline Json to_json(const FiniteStructure& s) {
  Json consts = Json::object(), funcs = Json::object(), rels = Json::object();
  for (const auto& c : s.signature().constants())
    if (s.has_constant_value(c)) consts[c] = s.constant(c);
  for (const auto& f : s.signature().functions()) funcs[f.name] = s.function_table(f.name);
  for (const auto& r : s.signature().relations()) rels[r.name] = s.tuples(r.name);
  return {{"size", s.size()}, {"signature", to_json(s.signature())}, {"constants", consts}, {"functions", funcs},
          {"relations", rels}};
}

inline FiniteStructure structure_from_json(const Json& j) {
  try {
    FiniteStructure s(j.at("size").get<std::size_t>(), signature_from_json(j.at("signature")));
    const Json consts = j.value("constants", Json::object());
    const Json funcs = j.value("functions", Json::object());
    const Json rels = j.value("relations", Json::object());
    for (const auto& [name, e] : consts.items()) s.set_constant(name, e.get<Element>());
    for (const auto& [name, table] : funcs.items()) s.set_function(name, table.get<std::vector<Element>>());
    for (const auto& [name, tuples] : rels.items())
      for (const auto& t : tuples) s.set_holds(name, t.get<std::vector<Element>>());
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed structure: ") + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports

inline Json to_json(const TruthValue3& v) {
  Json j = {{"verdict", to_string(v)}};
  if (!v.determined()) j["depth"] = v.depth;
  return j;
}

inline Json to_json(const TruthConditionsReport& r) {
  Json vs = Json::array(), us = Json::array();
  for (const auto& v : r.violations)
    vs.push_back({{"clause", to_string(v.clause)},
                  {"code", v.code.str()},
                  {"sentence", v.sentence},
                  {"expected", v.expected},
                  {"found", v.found}});
  for (const auto& u : r.unverified)
    us.push_back({{"clause", to_string(u.clause)}, {"code", u.code.str()}, {"sentence", u.sentence}, {"reason", u.reason}});
  return {{"checked", r.checked}, {"violations", vs}, {"unverified", us}};
}

inline Json to_json(const DemonstrationReport& r) {
  return {{"candidate", r.candidate},
          {"level", r.level},
          {"sigma", r.sigma},
          {"sigma_code", r.sigma_code.str()},
          {"sigma_value", to_json(r.sigma_value)},
          {"candidate_value", to_json(r.candidate_value)},
          {"conclusion", to_string(r.conclusion)},
          {"explanation", r.explanation}};
}

inline Json to_json(const CoherenceReport& r) {
  Json es = Json::array();
  for (const auto& e : r.entries)
    es.push_back({{"sentence", e.sentence}, {"code", e.code.str()}, {"level_j", to_json(e.at_j)}, {"level_k", to_json(e.at_k)}});
  return {{"j", r.j},
          {"k", r.k},
          {"entries", es},
          {"disagreements", r.disagreements},
          {"unknown_j", r.unknown_j},
          {"unknown_k", r.unknown_k}};
}

inline Json bits_to_json(const std::vector<bool>& bits) {
  std::string s;
  for (bool b : bits) s.push_back(b ? '1' : '0');
  return s;
}

inline Json to_json(const PeriodicityCertificate& c) {
  return {{"threshold", c.threshold},
          {"period", c.period},
          {"table", bits_to_json(c.table)},
          {"prefix", bits_to_json(c.prefix)},
          {"verified_to", c.verified_to}};
}

/// Summary plus the witnesses of the first `max_witnesses` periods.
inline Json to_json(const RefutationReport& r, std::size_t max_witnesses = 50) {
  Json ws = Json::array();
  Json unrefuted = Json::array();
  for (const auto& w : r.witnesses) {
    if (ws.size() < max_witnesses) {
      Json e = {{"period", w.period}, {"max_threshold", w.max_threshold}};
      e["violation"] = w.violation ? Json(*w.violation) : Json(nullptr);
      ws.push_back(e);
    }
    if (!w.violation && unrefuted.size() < max_witnesses) unrefuted.push_back(w.period);
  }
  return {{"bound", r.bound},
          {"pairs_tested", r.pairs_tested},
          {"pairs_refuted", r.pairs_refuted},
          {"refuted_all", r.refuted_all()},
          {"periods_with_unrefuted_thresholds", unrefuted},
          {"witnesses", ws},
          {"note", r.note}};
}

inline Json to_json(const std::set<Element>& xs) { return std::vector<Element>(xs.begin(), xs.end()); }

inline Json to_json(const DisagreementWitness& w, const std::set<Element>& X) {
  return {{"pi", w.pi.perm},
          {"s", w.s},
          {"t", w.t},
          {"fixed_params", w.fixed_params},
          {"X", to_json(X)},
          {"pi_X", to_json(apply_automorphism(X, w.pi))}};
}

inline Json to_json(const HenkinState& st, std::size_t max_sentences = 200) {
  Json acc = Json::array();
  for (std::size_t i = 0; i < st.accepted.size() && i < max_sentences; ++i) acc.push_back(to_text(st.accepted[i]));
  Json wit = Json::array();
  std::size_t listed = 0;
  for (const auto& c : st.constant_pool) {
    if (listed++ >= max_sentences) break;
    wit.push_back({{"constant", c}, {"witnesses", to_text(st.definitions.at(c))}});
  }
  return {{"depth", st.depth},
          {"size_cap", st.size_cap},
          {"considered", st.considered},
          {"accepted_count", st.accepted.size()},
          {"accepted", acc},
          {"witnesses", wit},
          {"pool_size", st.constant_pool.size()}};
}

inline Json to_json(const TermModel& m) {
  Json classes = Json::array();
  for (const auto& cls : m.classes) {
    Json members = Json::array();
    for (const auto& t : cls) members.push_back(to_text(t));
    classes.push_back(members);
  }
  Json plus = Json::array();
  for (const auto& row : m.plus) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(v ? Json(*v) : Json(nullptr));
    plus.push_back(r);
  }
  Json consts = Json::object();
  for (const auto& [c, k] : m.constant_class) consts[c] = k;
  return {{"term_bound", m.term_bound},
          {"classes", classes},
          {"plus", plus},
          {"less", m.less},
          {"constants", consts},
          {"unsettled_constants", m.unsettled_constants.size()},
          {"undefined_sums", m.undefined_sums}};
}

inline Json to_json(const MeetStatus& s) {
  Json j = {{"status", to_string(s.kind)}, {"searched_to", s.searched_to}};
  if (s.met()) j["length"] = s.length;
  return j;
}

}  // namespace tarski
