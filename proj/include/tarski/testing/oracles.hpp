#pragma once

// Reference implementations used to check the main engines. Each one takes a
// deliberately naive route so that it shares no search logic with the code
// under test.

#include "tarski/model_tools.hpp"
#include "tarski/satisfaction.hpp"

#include <algorithm>
#include <numeric>

namespace tarski::testing {

// ---------------------------------------------------------------------------
// Quantifier expansion over finite structures

namespace detail {

inline Formula expand_quantifiers(const Formula& f, std::size_t n) {
  switch (f.kind()) {
    case Formula::Kind::Atomic:
      return f;
    case Formula::Kind::Not:
      return neg(expand_quantifiers(f.child(), n));
    case Formula::Kind::And:
      return conj(expand_quantifiers(f.lhs(), n), expand_quantifiers(f.rhs(), n));
    case Formula::Kind::Or:
      return disj(expand_quantifiers(f.lhs(), n), expand_quantifiers(f.rhs(), n));
    case Formula::Kind::Implies:
      return implies(expand_quantifiers(f.lhs(), n), expand_quantifiers(f.rhs(), n));
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      const bool is_exists = f.kind() == Formula::Kind::Exists;
      // Empty domain: the empty disjunction is false, the empty conjunction true.
      std::optional<Formula> acc;
      for (Element e = 0; e < n; ++e) {
        Formula inst = expand_quantifiers(substitute(f.body(), f.bound_var(), Term::constant(element_name(e))), n);
        acc = !acc ? inst : (is_exists ? disj(*acc, inst) : conj(*acc, inst));
      }
      if (!acc) return is_exists ? neg(eq(Term::constant("#0"), Term::constant("#0"))) : eq(Term::constant("#0"), Term::constant("#0"));
      return *acc;
    }
  }
  return f;
}

inline Element closed_value(const FiniteStructure& s, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Constant:
      return s.constant(t.symbol());
    case Term::Kind::Apply: {
      std::vector<Element> args;
      for (const auto& a : t.args()) args.push_back(closed_value(s, a));
      return s.function_table(t.symbol())[s.index(args)];
    }
    case Term::Kind::Numeral: {
      Element v = s.constant("1");
      for (Nat k = 1; k < t.value(); ++k) v = s.function_table("+")[s.index(std::vector<Element>{s.constant("1"), v})];
      return v;
    }
    default:
      throw EvalError("expansion oracle met a variable");
  }
}

inline bool eval_ground(const FiniteStructure& s, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atomic: {
      std::vector<Element> args;
      for (const auto& t : f.terms()) args.push_back(closed_value(s, t));
      if (f.relation() == "=") return args[0] == args[1];
      auto tuples = s.tuples(f.relation());
      return std::find(tuples.begin(), tuples.end(), args) != tuples.end();
    }
    case Formula::Kind::Not:
      return !eval_ground(s, f.child());
    case Formula::Kind::And:
      return eval_ground(s, f.lhs()) && eval_ground(s, f.rhs());
    case Formula::Kind::Or:
      return eval_ground(s, f.lhs()) || eval_ground(s, f.rhs());
    case Formula::Kind::Implies:
      return !eval_ground(s, f.lhs()) || eval_ground(s, f.rhs());
    default:
      throw EvalError("expansion oracle met a quantifier");
  }
}

}  // namespace detail

/// Replaces free variables by the names of their assigned elements, expands
/// every quantifier into a finite disjunction or conjunction over element
/// names, and evaluates the resulting ground formula.
inline bool expansion_oracle(const FiniteStructure& s, const Formula& f, const std::map<VarIndex, Element>& rho) {
  Formula g = f;
  for (const auto& [v, e] : rho) g = substitute(g, v, Term::constant(element_name(e)));
  if (!is_sentence(g)) throw EvalError("expansion oracle needs every free variable assigned");
  return detail::eval_ground(s, detail::expand_quantifiers(g, s.size()));
}

// ---------------------------------------------------------------------------
// Brute-force permutation searches

/// Direct check over the tuple lists: constants, function graphs and relation
/// sets are mapped and compared as sets.
inline bool brute_preserves(const FiniteStructure& A, const FiniteStructure& B, const std::vector<Element>& m) {
  const auto& sig = A.signature();
  for (const auto& c : sig.constants())
    if (m[A.constant(c)] != B.constant(c)) return false;
  for (const auto& r : sig.relations()) {
    auto ta = A.tuples(r.name);
    auto tb = B.tuples(r.name);
    for (auto& t : ta)
      for (auto& e : t) e = m[e];
    std::sort(ta.begin(), ta.end());
    std::sort(tb.begin(), tb.end());
    if (ta != tb) return false;
  }
  for (const auto& f : sig.functions()) {
    const auto& table_a = A.function_table(f.name);
    const auto& table_b = B.function_table(f.name);
    for (std::size_t i = 0; i < table_a.size(); ++i) {
      auto args = A.unindex(i, f.arity);
      for (auto& e : args) e = m[e];
      if (table_b[B.index(args)] != m[table_a[i]]) return false;
    }
  }
  return true;
}

inline std::vector<std::vector<Element>> brute_isomorphisms(const FiniteStructure& A, const FiniteStructure& B) {
  std::vector<std::vector<Element>> out;
  if (A.size() != B.size()) return out;
  std::vector<Element> m(A.size());
  std::iota(m.begin(), m.end(), Element{0});
  do {
    if (brute_preserves(A, B, m)) out.push_back(m);
  } while (std::next_permutation(m.begin(), m.end()));
  return out;
}

inline bool brute_isomorphic(const FiniteStructure& A, const FiniteStructure& B) {
  if (A.size() != B.size()) return false;
  std::vector<Element> m(A.size());
  std::iota(m.begin(), m.end(), Element{0});
  do {
    if (brute_preserves(A, B, m)) return true;
  } while (std::next_permutation(m.begin(), m.end()));
  return false;
}

inline std::vector<std::vector<Element>> brute_automorphisms(const FiniteStructure& S) { return brute_isomorphisms(S, S); }

/// Orbits of the brute-force group restricted to permutations fixing params.
inline std::vector<std::set<Element>> brute_orbits(const std::vector<std::vector<Element>>& group, std::size_t n,
                                                   const std::vector<Element>& params) {
  std::vector<std::set<Element>> orbit(n);
  for (Element e = 0; e < n; ++e) orbit[e].insert(e);
  for (const auto& g : group) {
    if (!std::all_of(params.begin(), params.end(), [&](Element p) { return g[p] == p; })) continue;
    for (Element e = 0; e < n; ++e) orbit[e].insert(g[e]);
  }
  return orbit;
}

inline bool brute_definable(const std::vector<std::vector<Element>>& group, std::size_t n, const std::set<Element>& X,
                            const std::vector<Element>& params) {
  auto orbit = brute_orbits(group, n, params);
  for (Element e : X)
    for (Element f : orbit[e])
      if (!X.count(f)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Bounded-quantifier evaluation over the naturals

class NotBoundedError : public Error {
 public:
  using Error::Error;
};

/// Exact evaluation of formulas whose quantifiers all have the shape
///   exists y. (y < t & psi)   or   forall y. (y < t -> psi)
/// with y absent from t. Machine integers; + * < = and div(d, t).
inline std::int64_t brute_term(const Term& t, const std::map<VarIndex, std::int64_t>& rho) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return rho.at(t.var());
    case Term::Kind::Constant:
      if (t.symbol() == "0") return 0;
      if (t.symbol() == "1") return 1;
      throw NotBoundedError("unknown constant");
    case Term::Kind::Numeral:
      return static_cast<std::int64_t>(t.value());
    case Term::Kind::Apply: {
      const std::int64_t a = brute_term(t.args()[0], rho);
      const std::int64_t b = brute_term(t.args()[1], rho);
      if (t.symbol() == "+") return a + b;
      if (t.symbol() == "*") return a * b;
      throw NotBoundedError("unsupported function " + t.symbol());
    }
  }
  return 0;
}

inline bool brute_bounded(const Formula& f, std::map<VarIndex, std::int64_t>& rho) {
  switch (f.kind()) {
    case Formula::Kind::Atomic: {
      const std::int64_t a = brute_term(f.terms()[0], rho);
      const std::int64_t b = brute_term(f.terms()[1], rho);
      if (f.relation() == "=") return a == b;
      if (f.relation() == "<") return a < b;
      if (f.relation() == "div") return b % a == 0;
      throw NotBoundedError("unsupported relation " + f.relation());
    }
    case Formula::Kind::Not:
      return !brute_bounded(f.child(), rho);
    case Formula::Kind::And:
      return brute_bounded(f.lhs(), rho) && brute_bounded(f.rhs(), rho);
    case Formula::Kind::Or:
      return brute_bounded(f.lhs(), rho) || brute_bounded(f.rhs(), rho);
    case Formula::Kind::Implies:
      return !brute_bounded(f.lhs(), rho) || brute_bounded(f.rhs(), rho);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      const bool is_exists = f.kind() == Formula::Kind::Exists;
      const Formula& body = f.body();
      const auto want = is_exists ? Formula::Kind::And : Formula::Kind::Implies;
      const VarIndex y = f.bound_var();
      if (body.kind() != want || !body.lhs().is_atomic() || body.lhs().relation() != "<" ||
          !(body.lhs().terms()[0] == Term::variable(y)) || mentions(body.lhs().terms()[1], y))
        throw NotBoundedError("quantifier is not syntactically bounded");
      const std::int64_t bound = brute_term(body.lhs().terms()[1], rho);
      auto saved = rho.find(y) == rho.end() ? std::optional<std::int64_t>{} : std::optional<std::int64_t>{rho[y]};
      bool result = !is_exists;
      for (std::int64_t v = 0; v < bound; ++v) {
        rho[y] = v;
        if (brute_bounded(body.rhs(), rho) == is_exists) {
          result = is_exists;
          break;
        }
      }
      if (saved) {
        rho[y] = *saved;
      } else {
        rho.erase(y);
      }
      return result;
    }
  }
  return false;
}

inline bool brute_bounded(const Formula& f, const std::map<VarIndex, std::int64_t>& rho = {}) {
  auto local = rho;
  return brute_bounded(f, local);
}

/// Membership in the squares, by integer square root.
inline bool is_square(std::uint64_t n) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n;
}

}  // namespace tarski::testing
