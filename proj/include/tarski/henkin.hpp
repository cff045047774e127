#pragma once

// Finite fragments of the canonical Henkin completion of a decidable theory,
// and the term model they induce.
//
// Sentences are enumerated in the fragment {=, <, ~, &, exists} with bound
// variables named by scope depth, ordered by size and then by canonical text.
// A witness constant c for an accepted exists x. phi(x) denotes the least x
// with phi(x); before the oracle sees a sentence mentioning witnesses, each
// witness is replaced by a variable w constrained by
//   phi(w) & forall u. (u < w -> ~phi(u))
// so the abstraction of ~sigma is equivalent to the negation of the
// abstraction of sigma.

#include "tarski/presburger.hpp"

#include <functional>
#include <map>
#include <numeric>

namespace tarski {

struct TheoryOracle {
  Signature signature;
  std::function<bool(const Formula&)> decide;
};

/// Presburger arithmetic over {0, 1, +, <}.
inline TheoryOracle presburger_oracle() {
  Signature sig;
  sig.add_constant("0").add_constant("1");
  sig.add_function("+", 2);
  sig.add_relation("<", 2);
  return {sig, [](const Formula& f) { return decide(f); }};
}

class InconsistencyError : public Error {
 public:
  InconsistencyError(Formula sigma, Formula negation, bool both_accepted)
      : Error(std::string(both_accepted ? "oracle validates both " : "oracle rejects both ") + to_text(sigma) +
              " and " + to_text(negation)),
        sigma_(std::move(sigma)),
        negation_(std::move(negation)) {}
  InconsistencyError(std::string message, Formula sigma, Formula negation)
      : Error(std::move(message)), sigma_(std::move(sigma)), negation_(std::move(negation)) {}
  const Formula& sigma() const { return sigma_; }
  const Formula& negation() const { return negation_; }

 private:
  Formula sigma_;
  Formula negation_;
};

// ---------------------------------------------------------------------------
// Enumeration

/// Closed terms and sentences by exact size. Terms are built from the
/// signature's constants, its binary functions and variables v0..v{k-1} in
/// scope; formulas from its binary relations, =, ~, & and exists v_k.
class SentenceEnumerator {
 public:
  explicit SentenceEnumerator(const Signature& sig) : sig_(sig) {
    for (const auto& f : sig.functions())
      if (f.arity == 2) functions_.push_back(f.name);
    relations_.push_back("=");
    for (const auto& r : sig.relations())
      if (r.arity == 2) relations_.push_back(r.name);
    for (const auto& c : sig.constants()) constants_.push_back(c);
  }

  const std::vector<Term>& terms(std::size_t size, std::size_t scope) {
    auto key = std::make_pair(size, scope);
    if (auto it = term_memo_.find(key); it != term_memo_.end()) return it->second;
    std::vector<Term> out;
    if (size == 1) {
      for (const auto& c : constants_) out.push_back(Term::constant(c));
      for (std::size_t v = 0; v < scope; ++v) out.push_back(Term::variable(static_cast<VarIndex>(v)));
    } else if (size >= 3) {
      for (const auto& f : functions_)
        for (std::size_t a = 1; a + 2 <= size; ++a) {
          const auto& left = terms(a, scope);
          const auto& right = terms(size - 1 - a, scope);
          for (const auto& l : left)
            for (const auto& r : right) out.push_back(Term::apply(f, {l, r}));
        }
    }
    return term_memo_[key] = std::move(out);
  }

  const std::vector<Formula>& formulas(std::size_t size, std::size_t scope) {
    auto key = std::make_pair(size, scope);
    if (auto it = formula_memo_.find(key); it != formula_memo_.end()) return it->second;
    std::vector<Formula> out;
    if (size >= 3) {
      for (const auto& r : relations_)
        for (std::size_t a = 1; a + 2 <= size; ++a) {
          const std::vector<Term> left = terms(a, scope);
          const std::vector<Term> right = terms(size - 1 - a, scope);
          for (const auto& l : left)
            for (const auto& t : right) out.push_back(Formula::atomic(r, {l, t}));
        }
    }
    if (size >= 2)
      for (const auto& f : std::vector<Formula>(formulas(size - 1, scope))) out.push_back(neg(f));
    for (std::size_t a = 3; a + 4 <= size; ++a) {
      const std::vector<Formula> left = formulas(a, scope);
      const std::vector<Formula> right = formulas(size - 1 - a, scope);
      for (const auto& l : left)
        for (const auto& r : right) out.push_back(conj(l, r));
    }
    if (size >= 5)
      for (const auto& f : std::vector<Formula>(formulas(size - 2, scope + 1)))
        out.push_back(exists(static_cast<VarIndex>(scope), f));
    return formula_memo_[key] = std::move(out);
  }

  /// All sentences of size <= cap, by size and then canonical text.
  std::vector<Formula> sentences(std::size_t cap) {
    std::vector<Formula> all;
    for (std::size_t s = 1; s <= cap; ++s) {
      std::vector<std::pair<std::string, Formula>> level;
      for (const auto& f : formulas(s, 0)) level.emplace_back(to_text(f), f);
      std::sort(level.begin(), level.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [t, f] : level) all.push_back(std::move(f));
    }
    return all;
  }

  /// Closed terms of size <= cap, by size and then text.
  std::vector<Term> closed_terms(std::size_t cap) {
    std::vector<Term> all;
    for (std::size_t s = 1; s <= cap; ++s) {
      std::vector<std::pair<std::string, Term>> level;
      for (const auto& t : terms(s, 0)) level.emplace_back(to_text(t), t);
      std::sort(level.begin(), level.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      for (auto& [txt, t] : level) all.push_back(std::move(t));
    }
    return all;
  }

 private:
  Signature sig_;
  std::vector<std::string> functions_, relations_, constants_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Term>> term_memo_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Formula>> formula_memo_;
};

// ---------------------------------------------------------------------------
// The construction

struct HenkinState {
  Signature base;
  std::vector<Formula> accepted;  // in acceptance order
  std::set<Formula> accepted_set;
  std::map<Formula, std::string> witnesses;  // existential -> constant
  std::vector<std::string> constant_pool;
  std::map<std::string, Formula> definitions;  // constant -> existential it witnesses
  std::size_t depth = 0;
  std::size_t size_cap = 0;
  std::size_t considered = 0;
  std::size_t oracle_calls = 0;

  bool accepts(const Formula& f) const { return accepted_set.count(f) > 0; }

  /// Base signature plus the witness constants allocated so far.
  Signature signature() const {
    Signature sig = base;
    for (const auto& c : constant_pool) sig.add_constant(c);
    return sig;
  }
};

inline std::string witness_name(std::size_t i) { return "c" + std::to_string(i); }

namespace detail {

inline std::size_t max_var(const Formula& f) {
  std::set<VarIndex> vs;
  all_vars(f, vs);
  return vs.empty() ? 0 : static_cast<std::size_t>(*vs.rbegin()) + 1;
}

inline Formula replace_constant(const Formula& f, const std::string& c, const Term& t);

inline Term replace_constant(const Term& t, const std::string& c, const Term& r) {
  if (t.kind() == Term::Kind::Constant) return t.symbol() == c ? r : t;
  if (t.kind() != Term::Kind::Apply) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(replace_constant(a, c, r));
  return Term::apply(t.symbol(), std::move(args));
}

inline Formula replace_constant(const Formula& f, const std::string& c, const Term& t) {
  if (f.is_atomic()) {
    std::vector<Term> ts;
    for (const auto& a : f.terms()) ts.push_back(replace_constant(a, c, t));
    return Formula::atomic(f.relation(), std::move(ts));
  }
  std::vector<Formula> kids{replace_constant(f.child(0), c, t)};
  if (f.is_binary()) kids.push_back(replace_constant(f.child(1), c, t));
  return rebuild(f, std::move(kids));
}

/// The oracle-facing form of a sentence that may mention witness constants.
inline Formula abstract_witnesses(const Formula& sigma, const HenkinState& st) {
  std::set<std::string> used;
  collect_constants(sigma, used);
  // Close under dependencies; pool order is allocation order.
  std::set<std::string> needed;
  std::vector<std::string> frontier;
  for (const auto& c : used)
    if (st.definitions.count(c)) frontier.push_back(c);
  while (!frontier.empty()) {
    std::string c = frontier.back();
    frontier.pop_back();
    if (!needed.insert(c).second) continue;
    std::set<std::string> deps;
    collect_constants(st.definitions.at(c), deps);
    for (const auto& d : deps)
      if (st.definitions.count(d)) frontier.push_back(d);
  }
  if (needed.empty()) return sigma;
  std::vector<std::string> order;
  for (const auto& c : st.constant_pool)
    if (needed.count(c)) order.push_back(c);

  std::size_t fresh = max_var(sigma);
  for (const auto& c : order) fresh = std::max(fresh, max_var(st.definitions.at(c)) + 1);
  std::map<std::string, VarIndex> var_of;
  for (const auto& c : order) var_of[c] = static_cast<VarIndex>(fresh++);
  const VarIndex u = static_cast<VarIndex>(fresh++);

  auto eliminate = [&](Formula f) {
    for (const auto& c : order) f = replace_constant(f, c, Term::variable(var_of[c]));
    return f;
  };
  Formula body = eliminate(sigma);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Formula& ex = st.definitions.at(*it);
    const Formula phi = eliminate(ex.body());
    const VarIndex w = var_of[*it];
    Formula at_w = substitute(phi, ex.bound_var(), Term::variable(w));
    Formula at_u = substitute(phi, ex.bound_var(), Term::variable(u));
    Formula least = conj(at_w, forall(u, implies(lt(Term::variable(u), Term::variable(w)), neg(at_u))));
    body = exists(w, conj(least, body));
  }
  return body;
}

}  // namespace detail

/// Rounds 1..depth each enumerate every sentence of size <= size_cap over the
/// base signature plus the witnesses allocated in earlier rounds, and accept
/// that sentence or its negation as the oracle directs. Each accepted
/// existential gets a fresh witness whose instance is accepted at once.
inline HenkinState henkin_extend(const TheoryOracle& oracle, std::size_t depth, std::size_t size_cap) {
  HenkinState st;
  st.base = oracle.signature;
  st.depth = depth;
  st.size_cap = size_cap;

  auto ask = [&](const Formula& f) {
    ++st.oracle_calls;
    return oracle.decide(detail::abstract_witnesses(f, st));
  };
  auto accept = [&](const Formula& f) {
    if (st.accepted_set.insert(f).second) st.accepted.push_back(f);
  };

  for (std::size_t round = 0; round < depth; ++round) {
    SentenceEnumerator en(st.signature());
    for (const auto& sigma : en.sentences(size_cap)) {
      ++st.considered;
      const Formula negation = neg(sigma);
      if (st.accepts(sigma) || st.accepts(negation)) continue;
      const bool yes = ask(sigma);
      const bool no = ask(negation);
      if (yes == no) throw InconsistencyError(sigma, negation, yes);
      Formula chosen = yes ? sigma : negation;
      accept(chosen);
      // An instance may itself be existential and then needs its own witness.
      while (chosen.kind() == Formula::Kind::Exists && !st.witnesses.count(chosen)) {
        const std::string c = witness_name(st.constant_pool.size());
        st.constant_pool.push_back(c);
        st.witnesses.emplace(chosen, c);
        st.definitions.emplace(c, chosen);
        const Formula instance = substitute(chosen.body(), chosen.bound_var(), Term::constant(c));
        // The abstraction of the instance is equivalent to the existential
        // just accepted, so a rejection exposes an unsound oracle.
        if (!ask(instance))
          throw InconsistencyError("oracle rejects the witness instance " + to_text(instance), instance, neg(instance));
        accept(instance);
        chosen = instance;
      }
    }
  }
  return st;
}

// ---------------------------------------------------------------------------
// Term model

/// Closed base terms of size <= (size_cap - 1) / 2, so that every equation and
/// comparison between two of them lies within the cap, quotiented by accepted
/// equations. Sums whose every representative exceeds the term bound are
/// undefined, as are witnesses never equated with such a term.
struct TermModel {
  std::vector<Term> representatives;  // least term of each class
  std::vector<std::vector<Term>> classes;
  std::map<Term, std::size_t> class_of;
  std::vector<std::vector<std::optional<std::size_t>>> plus;
  std::vector<std::vector<char>> less;
  std::map<std::string, std::size_t> constant_class;
  std::vector<std::string> unsettled_constants;
  std::size_t undefined_sums = 0;
  std::size_t term_bound = 0;

  std::size_t size() const { return representatives.size(); }

  std::optional<std::size_t> eval(const Term& t, const std::map<VarIndex, std::size_t>& rho) const {
    switch (t.kind()) {
      case Term::Kind::Variable: {
        auto it = rho.find(t.var());
        if (it == rho.end()) throw EvalError("unassigned variable v" + std::to_string(t.var()));
        return it->second;
      }
      case Term::Kind::Constant: {
        if (auto it = class_of.find(t); it != class_of.end()) return it->second;
        if (auto it = constant_class.find(t.symbol()); it != constant_class.end()) return it->second;
        return std::nullopt;
      }
      case Term::Kind::Numeral: {
        if (auto it = class_of.find(expanded_numeral(static_cast<std::uint64_t>(t.value()))); it != class_of.end())
          return it->second;
        return std::nullopt;
      }
      case Term::Kind::Apply: {
        if (t.symbol() != "+" || t.args().size() != 2) return std::nullopt;
        auto a = eval(t.args()[0], rho);
        auto b = eval(t.args()[1], rho);
        if (!a || !b) return std::nullopt;
        return plus[*a][*b];
      }
    }
    return std::nullopt;
  }

  /// Persistent three-valued evaluation: an existential is true once a
  /// witness is found and a universal false once a counterexample is found;
  /// an atom with an undefined term is unknown. Determined verdicts hold in
  /// every total model extending the quotient consistently.
  TruthValue3 eval(const Formula& f, std::map<VarIndex, std::size_t>& rho) const {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Atomic: {
        if (f.terms().size() != 2) return TruthValue3::unknown(0);
        auto a = eval(f.terms()[0], rho);
        auto b = eval(f.terms()[1], rho);
        if (!a || !b) return TruthValue3::unknown(0);
        if (f.relation() == "=") return TruthValue3::of(*a == *b);
        if (f.relation() == "<") return TruthValue3::of(less[*a][*b] != 0);
        return TruthValue3::unknown(0);
      }
      case K::Not:
        return k_not(eval(f.child(), rho));
      case K::And:
        return k_and(eval(f.lhs(), rho), eval(f.rhs(), rho));
      case K::Or:
        return k_or(eval(f.lhs(), rho), eval(f.rhs(), rho));
      case K::Implies:
        return k_or(k_not(eval(f.lhs(), rho)), eval(f.rhs(), rho));
      case K::Exists:
      case K::Forall: {
        const bool is_exists = f.kind() == K::Exists;
        auto saved = rho.find(f.bound_var()) == rho.end() ? std::optional<std::size_t>{}
                                                           : std::optional<std::size_t>{rho[f.bound_var()]};
        TruthValue3 result = TruthValue3::unknown(0);
        for (std::size_t e = 0; e < size(); ++e) {
          rho[f.bound_var()] = e;
          TruthValue3 v = eval(f.body(), rho);
          if (v.determined() && v.is_true() == is_exists) {
            result = v;
            break;
          }
        }
        if (saved) {
          rho[f.bound_var()] = *saved;
        } else {
          rho.erase(f.bound_var());
        }
        return result;
      }
    }
    return TruthValue3::unknown(0);
  }

  TruthValue3 eval(const Formula& sentence) const {
    std::map<VarIndex, std::size_t> rho;
    return eval(sentence, rho);
  }
};

inline TermModel term_model(const HenkinState& st) {
  TermModel m;
  m.term_bound = st.size_cap == 0 ? 0 : (st.size_cap - 1) / 2;
  SentenceEnumerator en(st.base);
  std::vector<Term> domain;
  for (const auto& t : en.closed_terms(m.term_bound))
    if (st.accepts(eq(t, t))) domain.push_back(t);

  std::vector<std::size_t> parent(domain.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> root = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = root(parent[i]);
  };
  for (std::size_t i = 0; i < domain.size(); ++i)
    for (std::size_t j = i + 1; j < domain.size(); ++j)
      if (st.accepts(eq(domain[i], domain[j])) || st.accepts(eq(domain[j], domain[i]))) {
        const std::size_t a = root(i), b = root(j);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
  std::map<std::size_t, std::size_t> index;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const std::size_t r = root(i);
    if (!index.count(r)) {
      index[r] = m.classes.size();
      m.classes.emplace_back();
      m.representatives.push_back(domain[r]);
    }
    m.classes[index[r]].push_back(domain[i]);
    m.class_of[domain[i]] = index[r];
  }

  const std::size_t n = m.size();
  m.plus.assign(n, std::vector<std::optional<std::size_t>>(n));
  m.less.assign(n, std::vector<char>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      m.less[a][b] = st.accepts(lt(m.representatives[a], m.representatives[b])) ? 1 : 0;
      for (const auto& ra : m.classes[a]) {
        for (const auto& rb : m.classes[b]) {
          auto it = m.class_of.find(plus(ra, rb));
          if (it != m.class_of.end()) {
            m.plus[a][b] = it->second;
            break;
          }
        }
        if (m.plus[a][b]) break;
      }
      if (!m.plus[a][b]) ++m.undefined_sums;
    }

  for (const auto& c : st.constant_pool) {
    const Term ct = Term::constant(c);
    std::optional<std::size_t> cls;
    for (const auto& t : domain)
      if (st.accepts(eq(ct, t)) || st.accepts(eq(t, ct))) {
        cls = m.class_of.at(t);
        break;
      }
    if (cls) {
      m.constant_class[c] = *cls;
    } else {
      m.unsettled_constants.push_back(c);
    }
  }
  return m;
}

}  // namespace tarski
