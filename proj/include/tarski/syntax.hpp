#pragma once

// Abstract syntax for first-order languages: signatures, terms, formulas,
// substitution and numerals.
//
// Terms and formulas are immutable values backed by shared nodes, so copies
// are cheap and every operation here is pure.

#include "tarski/common.hpp"

#include <algorithm>
#include <compare>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tarski {

struct SymbolDecl {
  std::string name;
  std::size_t arity = 0;
  friend bool operator==(const SymbolDecl&, const SymbolDecl&) = default;
};

class SignatureError : public Error {
 public:
  using Error::Error;
};

/// Constants, function symbols and relation symbols with arities. Equality is
/// built in and never listed. `level` is k for the language that carries the
/// truth predicates Tr0..Tr{k-1}.
class Signature {
 public:
  Signature() = default;

  Signature& add_constant(std::string name) {
    claim(name);
    constants_.push_back(std::move(name));
    return *this;
  }
  Signature& add_function(std::string name, std::size_t arity) {
    claim(name);
    functions_.push_back({std::move(name), arity});
    return *this;
  }
  Signature& add_relation(std::string name, std::size_t arity) {
    claim(name);
    relations_.push_back({std::move(name), arity});
    return *this;
  }

  const std::vector<std::string>& constants() const { return constants_; }
  const std::vector<SymbolDecl>& functions() const { return functions_; }
  const std::vector<SymbolDecl>& relations() const { return relations_; }

  unsigned level() const { return level_; }
  void set_level(unsigned level) { level_ = level; }

  bool has_constant(std::string_view name) const {
    return std::find(constants_.begin(), constants_.end(), name) != constants_.end();
  }
  std::optional<std::size_t> function_arity(std::string_view name) const {
    return find(functions_, name);
  }
  std::optional<std::size_t> relation_arity(std::string_view name) const {
    if (name == "=") return 2;
    return find(relations_, name);
  }
  bool has_symbol(std::string_view name) const {
    return has_constant(name) || function_arity(name) || find(relations_, name);
  }

  /// True when every symbol of `other` occurs here with the same arity.
  bool contains(const Signature& other) const {
    for (const auto& c : other.constants_)
      if (!has_constant(c)) return false;
    for (const auto& f : other.functions_)
      if (function_arity(f.name) != f.arity) return false;
    for (const auto& r : other.relations_)
      if (find(relations_, r.name) != r.arity) return false;
    return true;
  }

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  void claim(const std::string& name) {
    if (name.empty()) throw SignatureError("empty symbol name");
    if (name == "=" || has_symbol(name))
      throw SignatureError("duplicate symbol '" + name + "' in signature");
  }
  static std::optional<std::size_t> find(const std::vector<SymbolDecl>& decls,
                                         std::string_view name) {
    for (const auto& d : decls)
      if (d.name == name) return d.arity;
    return std::nullopt;
  }

  std::vector<std::string> constants_;
  std::vector<SymbolDecl> functions_;
  std::vector<SymbolDecl> relations_;
  unsigned level_ = 0;
};

/// Constants naming the elements of a finite structure ("#0", "#1", ...). They
/// are valid in every signature when the checker works with an elementary
/// diagram, and never clash with user symbols because '#' is not an
/// identifier character.
inline std::string element_name(Element e) { return "#" + std::to_string(e); }

inline std::optional<Element> parse_element_name(std::string_view name) {
  if (name.size() < 2 || name[0] != '#') return std::nullopt;
  Element value = 0;
  for (char c : name.substr(1)) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + static_cast<Element>(c - '0');
  }
  return value;
}

class Term {
 public:
  enum class Kind { Variable, Constant, Numeral, Apply };

  static Term variable(VarIndex index) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    n->var = index;
    return Term(std::move(n));
  }
  static Term constant(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->symbol = std::move(name);
    return Term(std::move(n));
  }
  /// A compact numeral node. It denotes the same value as the right-nested sum
  /// 1+(1+(...+1)) with `value` summands; see expand_numerals().
  static Term numeral_literal(Nat value) {
    if (value < 2) throw Error("numeral literals start at 2; use the constants 0 and 1");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Numeral;
    n->value = std::move(value);
    return Term(std::move(n));
  }
  static Term apply(std::string fn, std::vector<Term> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Apply;
    n->symbol = std::move(fn);
    n->args = std::move(args);
    return Term(std::move(n));
  }

  Kind kind() const { return node_->kind; }
  bool is_variable() const { return kind() == Kind::Variable; }
  VarIndex var() const { return node_->var; }
  const std::string& symbol() const { return node_->symbol; }
  const Nat& value() const { return node_->value; }
  std::span<const Term> args() const { return node_->args; }

  friend std::strong_ordering operator<=>(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    switch (a.kind()) {
      case Kind::Variable:
        return a.var() <=> b.var();
      case Kind::Constant:
        return a.symbol() <=> b.symbol();
      case Kind::Numeral:
        return a.value() < b.value()   ? std::strong_ordering::less
               : b.value() < a.value() ? std::strong_ordering::greater
                                       : std::strong_ordering::equal;
      case Kind::Apply:
        if (auto c = a.symbol() <=> b.symbol(); c != 0) return c;
        return std::lexicographical_compare_three_way(a.args().begin(), a.args().end(),
                                                      b.args().begin(), b.args().end());
    }
    return std::strong_ordering::equal;
  }
  friend bool operator==(const Term& a, const Term& b) { return (a <=> b) == 0; }

 private:
  struct Node {
    Kind kind = Kind::Constant;
    VarIndex var = 0;
    std::string symbol;
    Nat value;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline Term var(VarIndex i) { return Term::variable(i); }
inline Term zero() { return Term::constant("0"); }
inline Term one() { return Term::constant("1"); }
inline Term plus(Term a, Term b) { return Term::apply("+", {std::move(a), std::move(b)}); }
inline Term times(Term a, Term b) { return Term::apply("*", {std::move(a), std::move(b)}); }

/// The numeral for n: the constant 0, the constant 1, or a numeral literal
/// standing for 1+(1+(...)) with n summands.
inline Term numeral(const Nat& n) {
  if (n == 0) return zero();
  if (n == 1) return one();
  return Term::numeral_literal(n);
}

/// The fully spelled-out numeral 1+(1+(...+1)). Linear in n; meant for small n.
inline Term expanded_numeral(std::uint64_t n) {
  if (n == 0) return zero();
  Term t = one();
  for (std::uint64_t i = 1; i < n; ++i) t = plus(one(), t);
  return t;
}

class Formula {
 public:
  enum class Kind { Atomic, Not, And, Or, Implies, Exists, Forall };

  static Formula atomic(std::string relation, std::vector<Term> args) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atomic;
    n->symbol = std::move(relation);
    n->terms = std::move(args);
    return Formula(std::move(n));
  }
  static Formula negation(Formula f) { return unary(Kind::Not, std::move(f)); }
  static Formula conjunction(Formula a, Formula b) {
    return binary(Kind::And, std::move(a), std::move(b));
  }
  static Formula disjunction(Formula a, Formula b) {
    return binary(Kind::Or, std::move(a), std::move(b));
  }
  static Formula implication(Formula a, Formula b) {
    return binary(Kind::Implies, std::move(a), std::move(b));
  }
  static Formula exists(VarIndex v, Formula body) {
    return quantifier(Kind::Exists, v, std::move(body));
  }
  static Formula forall(VarIndex v, Formula body) {
    return quantifier(Kind::Forall, v, std::move(body));
  }

  Kind kind() const { return node_->kind; }
  bool is_atomic() const { return kind() == Kind::Atomic; }
  bool is_quantifier() const { return kind() == Kind::Exists || kind() == Kind::Forall; }
  bool is_binary() const {
    return kind() == Kind::And || kind() == Kind::Or || kind() == Kind::Implies;
  }
  const std::string& relation() const { return node_->symbol; }
  std::span<const Term> terms() const { return node_->terms; }
  VarIndex bound_var() const { return node_->var; }
  const Formula& child(std::size_t i = 0) const { return node_->children.at(i); }
  const Formula& lhs() const { return child(0); }
  const Formula& rhs() const { return child(1); }
  const Formula& body() const { return child(0); }

  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (auto c = a.kind() <=> b.kind(); c != 0) return c;
    if (a.is_atomic()) {
      if (auto c = a.relation() <=> b.relation(); c != 0) return c;
      return std::lexicographical_compare_three_way(a.terms().begin(), a.terms().end(),
                                                    b.terms().begin(), b.terms().end());
    }
    if (a.is_quantifier())
      if (auto c = a.bound_var() <=> b.bound_var(); c != 0) return c;
    const auto& ac = a.node_->children;
    const auto& bc = b.node_->children;
    return std::lexicographical_compare_three_way(ac.begin(), ac.end(), bc.begin(), bc.end());
  }
  friend bool operator==(const Formula& a, const Formula& b) { return (a <=> b) == 0; }

 private:
  struct Node {
    Kind kind = Kind::Atomic;
    std::string symbol;
    std::vector<Term> terms;
    VarIndex var = 0;
    std::vector<Formula> children;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula unary(Kind k, Formula f) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->children.push_back(std::move(f));
    return Formula(std::move(n));
  }
  static Formula binary(Kind k, Formula a, Formula b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->children.push_back(std::move(a));
    n->children.push_back(std::move(b));
    return Formula(std::move(n));
  }
  static Formula quantifier(Kind k, VarIndex v, Formula body) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->var = v;
    n->children.push_back(std::move(body));
    return Formula(std::move(n));
  }
  std::shared_ptr<const Node> node_;
};

inline Formula eq(Term a, Term b) { return Formula::atomic("=", {std::move(a), std::move(b)}); }
inline Formula lt(Term a, Term b) { return Formula::atomic("<", {std::move(a), std::move(b)}); }
inline Formula neg(Formula f) { return Formula::negation(std::move(f)); }
inline Formula conj(Formula a, Formula b) { return Formula::conjunction(std::move(a), std::move(b)); }
inline Formula disj(Formula a, Formula b) { return Formula::disjunction(std::move(a), std::move(b)); }
inline Formula implies(Formula a, Formula b) { return Formula::implication(std::move(a), std::move(b)); }
inline Formula exists(VarIndex v, Formula f) { return Formula::exists(v, std::move(f)); }
inline Formula forall(VarIndex v, Formula f) { return Formula::forall(v, std::move(f)); }

inline std::string truth_predicate_name(unsigned level) { return "Tr" + std::to_string(level); }

/// Level j if `name` is "Tr<j>", otherwise nothing.
inline std::optional<unsigned> truth_predicate_level(std::string_view name) {
  if (name.size() < 3 || name.substr(0, 2) != "Tr") return std::nullopt;
  unsigned level = 0;
  for (char c : name.substr(2)) {
    if (c < '0' || c > '9') return std::nullopt;
    level = level * 10 + static_cast<unsigned>(c - '0');
  }
  if (name.size() > 3 && name[2] == '0') return std::nullopt;
  return level;
}

// ---------------------------------------------------------------------------
// Variables

inline void collect_vars(const Term& t, std::set<VarIndex>& out) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      out.insert(t.var());
      break;
    case Term::Kind::Apply:
      for (const auto& a : t.args()) collect_vars(a, out);
      break;
    default:
      break;
  }
}

inline std::set<VarIndex> vars_of(const Term& t) {
  std::set<VarIndex> out;
  collect_vars(t, out);
  return out;
}

inline bool mentions(const Term& t, VarIndex v) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return t.var() == v;
    case Term::Kind::Apply:
      return std::any_of(t.args().begin(), t.args().end(),
                         [v](const Term& a) { return mentions(a, v); });
    default:
      return false;
  }
}

inline bool is_closed(const Term& t) { return vars_of(t).empty(); }

namespace detail {
inline void free_vars_into(const Formula& f, std::set<VarIndex>& bound, std::set<VarIndex>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atomic:
      for (const auto& t : f.terms()) {
        std::set<VarIndex> vs;
        collect_vars(t, vs);
        for (VarIndex v : vs)
          if (!bound.count(v)) out.insert(v);
      }
      break;
    case Formula::Kind::Not:
      free_vars_into(f.child(), bound, out);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      free_vars_into(f.lhs(), bound, out);
      free_vars_into(f.rhs(), bound, out);
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      bool fresh = bound.insert(f.bound_var()).second;
      free_vars_into(f.body(), bound, out);
      if (fresh) bound.erase(f.bound_var());
      break;
    }
  }
}
}  // namespace detail

inline std::set<VarIndex> free_vars(const Formula& f) {
  std::set<VarIndex> bound, out;
  detail::free_vars_into(f, bound, out);
  return out;
}

inline bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

/// Every variable index occurring anywhere, bound or free.
inline void all_vars(const Formula& f, std::set<VarIndex>& out) {
  if (f.is_atomic()) {
    for (const auto& t : f.terms()) collect_vars(t, out);
    return;
  }
  if (f.is_quantifier()) out.insert(f.bound_var());
  all_vars(f.child(0), out);
  if (f.is_binary()) all_vars(f.child(1), out);
}

// ---------------------------------------------------------------------------
// Substitution

inline Term substitute(const Term& t, VarIndex v, const Term& replacement) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return t.var() == v ? replacement : t;
    case Term::Kind::Apply: {
      if (!mentions(t, v)) return t;
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(substitute(a, v, replacement));
      return Term::apply(t.symbol(), std::move(args));
    }
    default:
      return t;
  }
}

namespace detail {
inline Formula rebuild(const Formula& f, std::vector<Formula> kids) {
  switch (f.kind()) {
    case Formula::Kind::Not:
      return neg(std::move(kids[0]));
    case Formula::Kind::And:
      return conj(std::move(kids[0]), std::move(kids[1]));
    case Formula::Kind::Or:
      return disj(std::move(kids[0]), std::move(kids[1]));
    case Formula::Kind::Implies:
      return implies(std::move(kids[0]), std::move(kids[1]));
    case Formula::Kind::Exists:
      return exists(f.bound_var(), std::move(kids[0]));
    case Formula::Kind::Forall:
      return forall(f.bound_var(), std::move(kids[0]));
    case Formula::Kind::Atomic:
      break;
  }
  return f;
}
}  // namespace detail

/// Replaces the free occurrences of `v` by `t`. A binder that would capture a
/// variable of `t` is first renamed to the least index not used anywhere in
/// the formula or in `t`.
inline Formula substitute(const Formula& f, VarIndex v, const Term& t) {
  switch (f.kind()) {
    case Formula::Kind::Atomic: {
      std::vector<Term> args;
      args.reserve(f.terms().size());
      for (const auto& a : f.terms()) args.push_back(substitute(a, v, t));
      return Formula::atomic(f.relation(), std::move(args));
    }
    case Formula::Kind::Not:
      return neg(substitute(f.child(), v, t));
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return detail::rebuild(f, {substitute(f.lhs(), v, t), substitute(f.rhs(), v, t)});
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      const VarIndex u = f.bound_var();
      if (u == v || !free_vars(f).count(v)) return f;
      Formula body = f.body();
      VarIndex binder = u;
      if (mentions(t, u)) {
        std::set<VarIndex> used = vars_of(t);
        all_vars(f, used);
        used.insert(v);
        binder = 0;
        while (used.count(binder)) ++binder;
        body = substitute(body, u, Term::variable(binder));
      }
      body = substitute(body, v, t);
      return f.kind() == Formula::Kind::Exists ? exists(binder, std::move(body))
                                               : forall(binder, std::move(body));
    }
  }
  return f;
}

/// Replaces every numeral literal by its spelled-out sum. Literals above
/// `limit` are rejected since the expansion is linear in the value.
inline Term expand_numerals(const Term& t, std::uint64_t limit = 100000) {
  switch (t.kind()) {
    case Term::Kind::Numeral:
      if (t.value() > limit) throw Error("numeral " + t.value().str() + " too large to expand");
      return expanded_numeral(static_cast<std::uint64_t>(t.value()));
    case Term::Kind::Apply: {
      std::vector<Term> args;
      for (const auto& a : t.args()) args.push_back(expand_numerals(a, limit));
      return Term::apply(t.symbol(), std::move(args));
    }
    default:
      return t;
  }
}

inline Formula expand_numerals(const Formula& f, std::uint64_t limit = 100000) {
  if (f.is_atomic()) {
    std::vector<Term> args;
    for (const auto& a : f.terms()) args.push_back(expand_numerals(a, limit));
    return Formula::atomic(f.relation(), std::move(args));
  }
  std::vector<Formula> kids{expand_numerals(f.child(0), limit)};
  if (f.is_binary()) kids.push_back(expand_numerals(f.child(1), limit));
  return detail::rebuild(f, std::move(kids));
}

/// Rewrites into the fragment {atomic, ~, &, exists}:
///   a | b = ~(~a & ~b),  a -> b = ~(a & ~b),  forall x. a = ~exists x. ~a.
inline Formula canonicalize(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atomic:
      return f;
    case Formula::Kind::Not:
      return neg(canonicalize(f.child()));
    case Formula::Kind::And:
      return conj(canonicalize(f.lhs()), canonicalize(f.rhs()));
    case Formula::Kind::Or:
      return neg(conj(neg(canonicalize(f.lhs())), neg(canonicalize(f.rhs()))));
    case Formula::Kind::Implies:
      return neg(conj(canonicalize(f.lhs()), neg(canonicalize(f.rhs()))));
    case Formula::Kind::Exists:
      return exists(f.bound_var(), canonicalize(f.body()));
    case Formula::Kind::Forall:
      return neg(exists(f.bound_var(), neg(canonicalize(f.body()))));
  }
  return f;
}

inline bool is_canonical(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atomic:
      return true;
    case Formula::Kind::Not:
    case Formula::Kind::Exists:
      return is_canonical(f.child());
    case Formula::Kind::And:
      return is_canonical(f.lhs()) && is_canonical(f.rhs());
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Size and symbol inventory

/// Symbol count: one per variable, constant, numeral, function application,
/// relation, connective; two per quantifier (the quantifier and its variable).
inline std::size_t size(const Term& t) {
  std::size_t n = 1;
  for (const auto& a : t.args()) n += size(a);
  return n;
}

inline std::size_t size(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atomic: {
      std::size_t n = 1;
      for (const auto& t : f.terms()) n += size(t);
      return n;
    }
    case Formula::Kind::Not:
      return 1 + size(f.child());
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return 2 + size(f.body());
    default:
      return 1 + size(f.lhs()) + size(f.rhs());
  }
}

inline std::size_t quantifier_depth(const Formula& f) {
  if (f.is_atomic()) return 0;
  std::size_t d = quantifier_depth(f.child(0));
  if (f.is_binary()) d = std::max(d, quantifier_depth(f.child(1)));
  return d + (f.is_quantifier() ? 1 : 0);
}

inline void collect_constants(const Term& t, std::set<std::string>& out) {
  if (t.kind() == Term::Kind::Constant) out.insert(t.symbol());
  for (const auto& a : t.args()) collect_constants(a, out);
}

inline void collect_constants(const Formula& f, std::set<std::string>& out) {
  if (f.is_atomic()) {
    for (const auto& t : f.terms()) collect_constants(t, out);
    return;
  }
  collect_constants(f.child(0), out);
  if (f.is_binary()) collect_constants(f.child(1), out);
}

inline void collect_relations(const Formula& f, std::set<std::string>& out) {
  if (f.is_atomic()) {
    out.insert(f.relation());
    return;
  }
  collect_relations(f.child(0), out);
  if (f.is_binary()) collect_relations(f.child(1), out);
}

inline void collect_functions(const Term& t, std::set<std::string>& out) {
  if (t.kind() == Term::Kind::Apply) out.insert(t.symbol());
  for (const auto& a : t.args()) collect_functions(a, out);
}

inline void collect_functions(const Formula& f, std::set<std::string>& out) {
  if (f.is_atomic()) {
    for (const auto& t : f.terms()) collect_functions(t, out);
    return;
  }
  collect_functions(f.child(0), out);
  if (f.is_binary()) collect_functions(f.child(1), out);
}

/// 1 + the largest j with a Tr_j atom, or 0 when no truth predicate occurs.
inline unsigned truth_level(const Formula& f) {
  std::set<std::string> rels;
  collect_relations(f, rels);
  unsigned level = 0;
  for (const auto& r : rels)
    if (auto j = truth_predicate_level(r)) level = std::max(level, *j + 1);
  return level;
}

// ---------------------------------------------------------------------------
// Well-formedness against a signature

namespace detail {
inline void check_term(const Term& t, const Signature& sig, bool allow_elements) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return;
    case Term::Kind::Constant:
      if (sig.has_constant(t.symbol())) return;
      if (allow_elements && parse_element_name(t.symbol())) return;
      throw SignatureError("unknown constant '" + t.symbol() + "'");
    case Term::Kind::Numeral:
      if (!sig.has_constant("1") || sig.function_arity("+") != 2u)
        throw SignatureError("numeral " + t.value().str() + " needs the symbols 1 and +");
      return;
    case Term::Kind::Apply: {
      auto arity = sig.function_arity(t.symbol());
      if (!arity) throw SignatureError("unknown function symbol '" + t.symbol() + "'");
      if (*arity != t.args().size())
        throw SignatureError("function '" + t.symbol() + "' expects " + std::to_string(*arity) +
                             " arguments, got " + std::to_string(t.args().size()));
      for (const auto& a : t.args()) check_term(a, sig, allow_elements);
      return;
    }
  }
}
}  // namespace detail

/// Throws SignatureError for an unknown symbol or an arity mismatch.
inline void check_formula(const Formula& f, const Signature& sig, bool allow_elements = false) {
  if (f.is_atomic()) {
    auto arity = sig.relation_arity(f.relation());
    if (!arity) throw SignatureError("unknown relation symbol '" + f.relation() + "'");
    if (*arity != f.terms().size())
      throw SignatureError("relation '" + f.relation() + "' expects " + std::to_string(*arity) +
                           " arguments, got " + std::to_string(f.terms().size()));
    for (const auto& t : f.terms()) detail::check_term(t, sig, allow_elements);
    return;
  }
  check_formula(f.child(0), sig, allow_elements);
  if (f.is_binary()) check_formula(f.child(1), sig, allow_elements);
}

inline bool conforms(const Formula& f, const Signature& sig, bool allow_elements = false) {
  try {
    check_formula(f, sig, allow_elements);
    return true;
  } catch (const SignatureError&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Standard signatures

/// {0, 1, +, *, <} together with the coding symbols `sub` (substitution on
/// codes) and `pair` (Cantor pairing). The coding symbols are a definitional
/// extension interpreted by the arithmetization module.
inline Signature arithmetic_signature(bool coding_symbols = true) {
  Signature sig;
  sig.add_constant("0").add_constant("1");
  sig.add_function("+", 2).add_function("*", 2);
  if (coding_symbols) sig.add_function("sub", 2).add_function("pair", 2);
  sig.add_relation("<", 2);
  return sig;
}

/// Presburger language {0, 1, +, <} plus `*` (accepted only with a closed
/// factor) and the divisibility relation div(d, t) that elimination emits.
inline Signature presburger_signature() {
  Signature sig;
  sig.add_constant("0").add_constant("1");
  sig.add_function("+", 2).add_function("*", 2);
  sig.add_relation("<", 2).add_relation("div", 2);
  return sig;
}

}  // namespace tarski
