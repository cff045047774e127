#pragma once

// Tarskian satisfaction.
//
//  * eval_finite: exact two-valued evaluation over an explicit finite
//    structure.
//  * NatEvaluator: three-valued evaluation over the standard naturals under a
//    resource budget. A determined verdict is always correct; when the budget
//    cannot settle a quantifier the answer is Unknown.
//  * check_truth_conditions: audits a candidate set of coded sentences against
//    the recursive clauses for atomic sentences, negation, conjunction and the
//    existential quantifier (plus the derived connectives).

#include "tarski/arithmetization.hpp"
#include "tarski/syntax.hpp"
#include "tarski/text.hpp"

#include <functional>
#include <map>
#include <variant>

namespace tarski {

class EvalError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Verdicts and budgets

enum class Verdict { False, True, Unknown };

struct TruthValue3 {
  Verdict verdict = Verdict::Unknown;
  /// Quantifier depth at which the budget ran out (Unknown only).
  std::uint32_t depth = 0;

  static TruthValue3 of(bool b) { return {b ? Verdict::True : Verdict::False, 0}; }
  static TruthValue3 unknown(std::uint32_t at_depth) { return {Verdict::Unknown, at_depth}; }

  bool is_true() const { return verdict == Verdict::True; }
  bool is_false() const { return verdict == Verdict::False; }
  bool determined() const { return verdict != Verdict::Unknown; }

  friend bool operator==(const TruthValue3& a, const TruthValue3& b) {
    return a.verdict == b.verdict && (a.determined() || a.depth == b.depth);
  }
};

inline TruthValue3 k_not(TruthValue3 a) {
  if (!a.determined()) return a;
  return TruthValue3::of(!a.is_true());
}
inline TruthValue3 k_and(TruthValue3 a, TruthValue3 b) {
  if (a.is_false() || b.is_false()) return TruthValue3::of(false);
  if (a.is_true() && b.is_true()) return TruthValue3::of(true);
  return a.determined() ? b : a;
}
inline TruthValue3 k_or(TruthValue3 a, TruthValue3 b) { return k_not(k_and(k_not(a), k_not(b))); }

inline std::string to_string(const TruthValue3& v) {
  switch (v.verdict) {
    case Verdict::True:
      return "true";
    case Verdict::False:
      return "false";
    default:
      return "unknown";
  }
}

struct Budget {
  /// Quantifier search limit over the naturals.
  std::uint64_t witness_bound = 64;
  /// Nesting limit for quantifiers and truth-predicate dereferences.
  std::uint32_t depth_bound = 24;

  void validate() const {
    if (witness_bound == 0 || depth_bound == 0) throw Error("budget bounds must be positive");
  }
  friend bool operator==(const Budget&, const Budget&) = default;
};

// ---------------------------------------------------------------------------
// Assignments

template <class Value>
class Assignment {
 public:
  const Value* find(VarIndex v) const {
    if (v >= slots_.size() || !slots_[v]) return nullptr;
    return &*slots_[v];
  }
  const Value& at(VarIndex v) const {
    if (const Value* p = find(v)) return *p;
    throw EvalError("unassigned variable v" + std::to_string(v));
  }
  void set(VarIndex v, Value value) {
    if (v >= slots_.size()) slots_.resize(v + 1);
    slots_[v] = std::move(value);
  }
  std::optional<Value> take(VarIndex v) {
    if (v >= slots_.size()) return std::nullopt;
    return std::exchange(slots_[v], std::nullopt);
  }
  void restore(VarIndex v, std::optional<Value> old) {
    if (v >= slots_.size()) slots_.resize(v + 1);
    slots_[v] = std::move(old);
  }
  Assignment with(VarIndex v, Value value) const {
    Assignment copy = *this;
    copy.set(v, std::move(value));
    return copy;
  }

 private:
  std::vector<std::optional<Value>> slots_;
};

using FiniteAssignment = Assignment<Element>;
using NatAssignment = Assignment<Nat>;

// ---------------------------------------------------------------------------
// Finite structures

/// Domain {0..size-1}; every constant, function and relation of the signature
/// must be interpreted before evaluation (validate()).
class FiniteStructure {
 public:
  FiniteStructure() = default;
  FiniteStructure(std::size_t size, Signature sig) : size_(size), sig_(std::move(sig)) {
    for (const auto& r : sig_.relations()) relations_[r.name].assign(cells(r.arity), 0);
  }

  std::size_t size() const { return size_; }
  const Signature& signature() const { return sig_; }

  void set_constant(const std::string& name, Element e) {
    if (!sig_.has_constant(name)) throw SignatureError("unknown constant '" + name + "'");
    check_element(e);
    constants_[name] = e;
  }
  /// Row-major table over all argument tuples.
  void set_function(const std::string& name, std::vector<Element> table) {
    auto arity = sig_.function_arity(name);
    if (!arity) throw SignatureError("unknown function symbol '" + name + "'");
    if (table.size() != cells(*arity))
      throw Error("function table for '" + name + "' must have " + std::to_string(cells(*arity)) + " entries");
    for (Element e : table) check_element(e);
    functions_[name] = std::move(table);
  }
  void set_holds(const std::string& name, std::span<const Element> tuple, bool value = true) {
    auto& bits = relation_bits(name, tuple.size());
    bits[index(tuple)] = value ? 1 : 0;
  }
  void add_tuple(const std::string& name, std::initializer_list<Element> tuple) {
    std::vector<Element> t(tuple);
    set_holds(name, t, true);
  }

  Element constant(const std::string& name) const {
    if (auto e = parse_element_name(name)) {
      check_element(*e);
      return *e;
    }
    auto it = constants_.find(name);
    if (it == constants_.end()) throw EvalError("constant '" + name + "' is not interpreted");
    return it->second;
  }
  Element apply(const std::string& name, std::span<const Element> args) const {
    auto it = functions_.find(name);
    if (it == functions_.end()) throw EvalError("function '" + name + "' is not interpreted");
    if (cells(args.size()) != it->second.size()) throw EvalError("arity mismatch for '" + name + "'");
    return it->second[index(args)];
  }
  bool holds(const std::string& name, std::span<const Element> args) const {
    auto it = relations_.find(name);
    if (it == relations_.end()) throw EvalError("relation '" + name + "' is not interpreted");
    if (cells(args.size()) != it->second.size()) throw EvalError("arity mismatch for '" + name + "'");
    return it->second[index(args)] != 0;
  }

  const std::vector<Element>& function_table(const std::string& name) const { return functions_.at(name); }
  const std::vector<char>& relation_table(const std::string& name) const { return relations_.at(name); }
  bool has_constant_value(const std::string& name) const { return constants_.count(name) > 0; }

  std::vector<std::vector<Element>> tuples(const std::string& name) const {
    auto arity = sig_.relation_arity(name);
    if (!arity) throw SignatureError("unknown relation '" + name + "'");
    std::vector<std::vector<Element>> out;
    const auto& bits = relations_.at(name);
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i]) out.push_back(unindex(i, *arity));
    return out;
  }

  /// Throws unless every symbol is interpreted.
  void validate() const {
    for (const auto& c : sig_.constants())
      if (!constants_.count(c)) throw Error("constant '" + c + "' has no interpretation");
    for (const auto& f : sig_.functions())
      if (!functions_.count(f.name)) throw Error("function '" + f.name + "' has no interpretation");
    if (size_ == 0 && !sig_.constants().empty()) throw Error("empty structure cannot interpret constants");
  }

  std::size_t cells(std::size_t arity) const {
    std::size_t n = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      n *= size_;
      if (n > (1u << 26)) throw Error("relation table too large");
    }
    return n;
  }
  std::size_t index(std::span<const Element> tuple) const {
    std::size_t idx = 0;
    for (Element e : tuple) {
      check_element(e);
      idx = idx * size_ + e;
    }
    return idx;
  }
  std::vector<Element> unindex(std::size_t idx, std::size_t arity) const {
    std::vector<Element> t(arity);
    for (std::size_t i = arity; i-- > 0;) {
      t[i] = static_cast<Element>(idx % size_);
      idx /= size_;
    }
    return t;
  }

  friend bool operator==(const FiniteStructure&, const FiniteStructure&) = default;

 private:
  void check_element(Element e) const {
    if (e >= size_) throw Error("element " + std::to_string(e) + " outside domain of size " + std::to_string(size_));
  }
  std::vector<char>& relation_bits(const std::string& name, std::size_t arity) {
    auto declared = sig_.relation_arity(name);
    if (!declared || name == "=") throw SignatureError("unknown relation '" + name + "'");
    if (*declared != arity) throw SignatureError("arity mismatch for '" + name + "'");
    return relations_[name];
  }

  std::size_t size_ = 0;
  Signature sig_;
  std::map<std::string, Element> constants_;
  std::map<std::string, std::vector<Element>> functions_;
  std::map<std::string, std::vector<char>> relations_;
};

/// The signature extended by the element names #0..#(size-1).
inline Signature diagram_signature(const FiniteStructure& s) {
  Signature sig = s.signature();
  for (Element e = 0; e < s.size(); ++e) sig.add_constant(element_name(e));
  return sig;
}

// ---------------------------------------------------------------------------
// Evaluation over finite structures

namespace detail {
/// Value of numeral(n) = 1 + numeral(n-1) in a finite structure. The sequence
/// is eventually periodic, so huge n are resolved by cycle detection.
inline Element finite_numeral(const FiniteStructure& s, const Nat& n) {
  const Element unit = s.constant("1");
  std::vector<Element> seq{unit};
  std::map<Element, std::size_t> first_seen{{unit, 0}};
  while (true) {
    if (n <= seq.size()) return seq[static_cast<std::size_t>(n) - 1];
    Element args[2] = {unit, seq.back()};
    Element next = s.apply("+", args);
    if (auto it = first_seen.find(next); it != first_seen.end()) {
      const std::size_t start = it->second;
      const std::size_t period = seq.size() - start;
      Nat offset = (n - 1 - start) % period;
      return seq[start + static_cast<std::size_t>(offset)];
    }
    first_seen[next] = seq.size();
    seq.push_back(next);
  }
}
}  // namespace detail

inline Element eval_term(const FiniteStructure& s, const Term& t, const FiniteAssignment& rho) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return rho.at(t.var());
    case Term::Kind::Constant:
      return s.constant(t.symbol());
    case Term::Kind::Numeral:
      return detail::finite_numeral(s, t.value());
    case Term::Kind::Apply: {
      Element buf[8];
      std::vector<Element> heap;
      std::span<Element> args;
      if (t.args().size() <= 8) {
        args = std::span<Element>(buf, t.args().size());
      } else {
        heap.resize(t.args().size());
        args = heap;
      }
      for (std::size_t i = 0; i < t.args().size(); ++i) args[i] = eval_term(s, t.args()[i], rho);
      return s.apply(t.symbol(), args);
    }
  }
  return 0;
}

namespace detail {
inline bool eval_finite_rec(const FiniteStructure& s, const Formula& f, FiniteAssignment& rho) {
  switch (f.kind()) {
    case Formula::Kind::Atomic: {
      std::vector<Element> args;
      args.reserve(f.terms().size());
      for (const auto& t : f.terms()) args.push_back(eval_term(s, t, rho));
      if (f.relation() == "=") return args.at(0) == args.at(1);
      return s.holds(f.relation(), args);
    }
    case Formula::Kind::Not:
      return !eval_finite_rec(s, f.child(), rho);
    case Formula::Kind::And:
      return eval_finite_rec(s, f.lhs(), rho) && eval_finite_rec(s, f.rhs(), rho);
    case Formula::Kind::Or:
      return eval_finite_rec(s, f.lhs(), rho) || eval_finite_rec(s, f.rhs(), rho);
    case Formula::Kind::Implies:
      return !eval_finite_rec(s, f.lhs(), rho) || eval_finite_rec(s, f.rhs(), rho);
    case Formula::Kind::Exists:
    case Formula::Kind::Forall: {
      const bool want = f.kind() == Formula::Kind::Exists;
      auto saved = rho.take(f.bound_var());
      bool result = !want;
      for (Element e = 0; e < s.size(); ++e) {
        rho.set(f.bound_var(), e);
        if (eval_finite_rec(s, f.body(), rho) == want) {
          result = want;
          break;
        }
      }
      rho.restore(f.bound_var(), std::move(saved));
      return result;
    }
  }
  return false;
}
}  // namespace detail

/// Exact Tarski semantics over a finite structure. Element names #k are
/// accepted as constants. Throws SignatureError / EvalError.
inline bool eval_finite(const FiniteStructure& s, const Formula& f, const FiniteAssignment& rho = {}) {
  check_formula(f, s.signature(), true);
  FiniteAssignment local = rho;
  return detail::eval_finite_rec(s, f, local);
}

// ---------------------------------------------------------------------------
// Evaluation over the naturals

class NatEvaluator;

/// Interprets relation symbols the base evaluator does not know (truth
/// predicates). Returns nothing when the atom is not handled.
using AtomHook = std::function<std::optional<TruthValue3>(const NatEvaluator&, const std::string& relation,
                                                          std::span<const Nat> args, std::uint32_t depth_left)>;

/// Three-valued evaluation over (N, +, *, 0, 1, <) with `sub` and `pair`.
///
/// Quantifier clause for exists y. psi (dually forall):
///   1. A purely syntactic analysis bounds the candidate witnesses: a
///      conjunct y < t with t closed, or an equation linear in y that fixes its
///      value, confines y to a finite set. Disjunctions, conjunctions and
///      negations combine these sets. When the set is finite and every member
///      lies within the witness bound (isolated solved points are always
///      admitted), all candidates are evaluated and the verdict is exact.
///   2. Otherwise values 0..witness_bound are searched; a witness gives true
///      and anything else is Unknown.
/// Each quantifier and each truth-predicate dereference consumes one unit of
/// depth; at zero the verdict is Unknown.
class NatEvaluator {
 public:
  explicit NatEvaluator(Budget budget, AtomHook hook = {}) : budget_(budget), hook_(std::move(hook)) {
    budget_.validate();
  }

  const Budget& budget() const { return budget_; }

  TruthValue3 eval(const Formula& f, const NatAssignment& rho = {}) const {
    NatAssignment local = rho;
    return eval(f, local, budget_.depth_bound);
  }

  TruthValue3 eval(const Formula& f, NatAssignment& rho, std::uint32_t depth_left) const {
    switch (f.kind()) {
      case Formula::Kind::Atomic:
        return atom(f, rho, depth_left);
      case Formula::Kind::Not:
        return k_not(eval(f.child(), rho, depth_left));
      case Formula::Kind::And: {
        TruthValue3 a = eval(f.lhs(), rho, depth_left);
        if (a.is_false()) return a;
        return k_and(a, eval(f.rhs(), rho, depth_left));
      }
      case Formula::Kind::Or: {
        TruthValue3 a = eval(f.lhs(), rho, depth_left);
        if (a.is_true()) return a;
        return k_or(a, eval(f.rhs(), rho, depth_left));
      }
      case Formula::Kind::Implies: {
        TruthValue3 a = eval(f.lhs(), rho, depth_left);
        if (a.is_false()) return TruthValue3::of(true);
        return k_or(k_not(a), eval(f.rhs(), rho, depth_left));
      }
      case Formula::Kind::Exists:
      case Formula::Kind::Forall:
        return quantifier(f, rho, depth_left);
    }
    return TruthValue3::unknown(0);
  }

  Nat eval_term(const Term& t, const NatAssignment& rho) const {
    switch (t.kind()) {
      case Term::Kind::Variable:
        return rho.at(t.var());
      case Term::Kind::Constant:
        if (t.symbol() == "0") return 0;
        if (t.symbol() == "1") return 1;
        throw EvalError("constant '" + t.symbol() + "' has no interpretation over N");
      case Term::Kind::Numeral:
        return t.value();
      case Term::Kind::Apply: {
        if (t.args().size() != 2) throw EvalError("function '" + t.symbol() + "' has no interpretation over N");
        Nat a = eval_term(t.args()[0], rho);
        Nat b = eval_term(t.args()[1], rho);
        if (t.symbol() == "+") return a + b;
        if (t.symbol() == "*") return a * b;
        if (t.symbol() == "sub") return sub_function(a, b);
        if (t.symbol() == "pair") return pair(a, b);
        throw EvalError("function '" + t.symbol() + "' has no interpretation over N");
      }
    }
    return 0;
  }

 private:
  /// Candidate witnesses: points plus the range [0, below). An absent
  /// optional means "no finite bound derived".
  struct Candidates {
    Nat below = 0;
    std::set<Nat> points;
  };
  using Support = std::optional<Candidates>;

  static Support none() { return Candidates{}; }

  static Support unite(Support a, Support b) {
    if (!a || !b) return std::nullopt;
    Candidates c;
    c.below = std::max(a->below, b->below);
    for (const auto& p : a->points)
      if (p >= c.below) c.points.insert(p);
    for (const auto& p : b->points)
      if (p >= c.below) c.points.insert(p);
    return c;
  }

  static Support intersect(Support a, Support b) {
    if (!a) return b;
    if (!b) return a;
    Candidates c;
    c.below = std::min(a->below, b->below);
    for (const auto& p : a->points)
      if (p >= c.below && (p < b->below || b->points.count(p))) c.points.insert(p);
    for (const auto& p : b->points)
      if (p >= c.below && p < a->below) c.points.insert(p);
    return c;
  }

  /// t = coeff*y + offset with all other variables taken from rho.
  struct Linear {
    Nat coeff;
    Nat offset;
  };

  std::optional<Linear> linear_in(const Term& t, VarIndex y, const NatAssignment& rho) const {
    switch (t.kind()) {
      case Term::Kind::Variable:
        if (t.var() == y) return Linear{1, 0};
        if (const Nat* v = rho.find(t.var())) return Linear{0, *v};
        return std::nullopt;
      case Term::Kind::Constant:
      case Term::Kind::Numeral:
        return Linear{0, eval_term(t, rho)};
      case Term::Kind::Apply: {
        if (t.args().size() != 2) return std::nullopt;
        if (t.symbol() == "+" || t.symbol() == "*") {
          auto a = linear_in(t.args()[0], y, rho);
          if (!a) return std::nullopt;
          auto b = linear_in(t.args()[1], y, rho);
          if (!b) return std::nullopt;
          if (t.symbol() == "+") return Linear{a->coeff + b->coeff, a->offset + b->offset};
          if (a->coeff != 0 && b->coeff != 0) return std::nullopt;
          if (a->coeff == 0) return Linear{a->offset * b->coeff, a->offset * b->offset};
          return Linear{b->offset * a->coeff, b->offset * a->offset};
        }
        if (mentions(t, y)) return std::nullopt;
        for (const auto& a : t.args())
          for (VarIndex v : vars_of(a))
            if (!rho.find(v)) return std::nullopt;
        return Linear{0, eval_term(t, rho)};
      }
    }
    return std::nullopt;
  }

  static Nat ceil_div(const Nat& a, const Nat& b) { return (a + b - 1) / b; }

  /// Superset of the y-values at which `f` can take the truth value `want`.
  Support support(const Formula& f, VarIndex y, bool want, const NatAssignment& rho) const {
    switch (f.kind()) {
      case Formula::Kind::Atomic: {
        if (f.terms().size() != 2 || (f.relation() != "=" && f.relation() != "<")) return std::nullopt;
        auto l = linear_in(f.terms()[0], y, rho);
        if (!l) return std::nullopt;
        auto r = linear_in(f.terms()[1], y, rho);
        if (!r) return std::nullopt;
        if (f.relation() == "=") {
          // An atom constant in y bounds nothing: bounds come only from
          // atoms that constrain y.
          if (l->coeff == r->coeff) return std::nullopt;
          if (!want) return std::nullopt;
          // (lc - rc) y = ro - lo
          Nat num = r->offset - l->offset;
          Nat den = l->coeff - r->coeff;
          if (den < 0) {
            num = -num;
            den = -den;
          }
          if (num < 0 || num % den != 0) return none();
          Candidates c;
          c.points.insert(num / den);
          return c;
        }
        // l < r  <=>  (lc - rc) y < ro - lo
        const Nat a = l->coeff - r->coeff;
        const Nat b = r->offset - l->offset;
        if (a == 0) return std::nullopt;
        if (a > 0) {
          if (!want) return std::nullopt;
          // y < b / a
          Candidates c;
          c.below = b <= 0 ? Nat(0) : ceil_div(b, a);
          return c;
        }
        if (want) return std::nullopt;
        // false when (-a) y <= -b ... i.e. y <= (-b) / (-a)
        const Nat na = -a;
        const Nat nb = -b;
        Candidates c;
        c.below = nb < 0 ? Nat(0) : nb / na + 1;
        return c;
      }
      case Formula::Kind::Not:
        return support(f.child(), y, !want, rho);
      case Formula::Kind::And:
        return want ? intersect(support(f.lhs(), y, true, rho), support(f.rhs(), y, true, rho))
                    : unite(support(f.lhs(), y, false, rho), support(f.rhs(), y, false, rho));
      case Formula::Kind::Or:
        return want ? unite(support(f.lhs(), y, true, rho), support(f.rhs(), y, true, rho))
                    : intersect(support(f.lhs(), y, false, rho), support(f.rhs(), y, false, rho));
      case Formula::Kind::Implies:
        return want ? unite(support(f.lhs(), y, false, rho), support(f.rhs(), y, true, rho))
                    : intersect(support(f.lhs(), y, true, rho), support(f.rhs(), y, false, rho));
      default:
        return std::nullopt;
    }
  }

  TruthValue3 quantifier(const Formula& f, NatAssignment& rho, std::uint32_t depth_left) const {
    const std::uint32_t here = budget_.depth_bound - depth_left;
    if (depth_left == 0) return TruthValue3::unknown(here);
    const bool is_exists = f.kind() == Formula::Kind::Exists;
    const VarIndex y = f.bound_var();
    auto saved = rho.take(y);
    // exists: candidates where the body can be true; forall: where it can fail.
    Support cand = support(f.body(), y, is_exists, rho);
    const TruthValue3 decisive = TruthValue3::of(is_exists);
    TruthValue3 result = TruthValue3::of(!is_exists);
    bool settled = false;
    auto visit = [&](const Nat& n) {
      rho.set(y, n);
      TruthValue3 v = eval(f.body(), rho, depth_left - 1);
      if (v == decisive) {
        result = decisive;
        settled = true;
      } else if (!v.determined() && result.determined()) {
        result = v;
      }
    };
    if (cand && cand->below <= budget_.witness_bound + 1) {
      for (const Nat& p : cand->points) {
        visit(p);
        if (settled) break;
      }
      for (Nat n = 0; !settled && n < cand->below; ++n) visit(n);
    } else {
      if (cand)
        for (const Nat& p : cand->points) {
          visit(p);
          if (settled) break;
        }
      for (std::uint64_t n = 0; !settled && n <= budget_.witness_bound; ++n) visit(Nat(n));
      if (!settled) result = result.determined() ? TruthValue3::unknown(here) : result;
    }
    rho.restore(y, std::move(saved));
    return result;
  }

  TruthValue3 atom(const Formula& f, const NatAssignment& rho, std::uint32_t depth_left) const {
    std::vector<Nat> args;
    args.reserve(f.terms().size());
    for (const auto& t : f.terms()) args.push_back(eval_term(t, rho));
    if (f.relation() == "=" && args.size() == 2) return TruthValue3::of(args[0] == args[1]);
    if (f.relation() == "<" && args.size() == 2) return TruthValue3::of(args[0] < args[1]);
    if (hook_)
      if (auto v = hook_(*this, f.relation(), args, depth_left)) return *v;
    throw EvalError("relation '" + f.relation() + "' has no interpretation over N");
  }

  Budget budget_;
  AtomHook hook_;
};

inline Nat eval_term_nat(const Term& t, const NatAssignment& rho = {}) {
  return NatEvaluator(Budget{}).eval_term(t, rho);
}

/// Budgeted evaluation over the naturals without truth predicates.
inline TruthValue3 eval_nat(const Formula& f, const NatAssignment& rho, const Budget& b) {
  check_formula(f, arithmetic_signature());
  return NatEvaluator(b).eval(f, rho);
}

// ---------------------------------------------------------------------------
// Truth-condition checker

/// Where sentences are interpreted: a finite structure (instances use element
/// names) or the naturals under a budget (instances use numerals).
struct FiniteSemantics {
  const FiniteStructure* structure = nullptr;
};
struct NaturalSemantics {
  Budget budget;
  AtomHook hook;
  Signature signature = arithmetic_signature();
};
using Semantics = std::variant<FiniteSemantics, NaturalSemantics>;

enum class Clause { Atomic, Negation, Conjunction, Disjunction, Implication, Existential, Universal };

inline std::string to_string(Clause c) {
  switch (c) {
    case Clause::Atomic:
      return "atomic";
    case Clause::Negation:
      return "negation";
    case Clause::Conjunction:
      return "conjunction";
    case Clause::Disjunction:
      return "disjunction";
    case Clause::Implication:
      return "implication";
    case Clause::Existential:
      return "existential";
    case Clause::Universal:
      return "universal";
  }
  return "?";
}

struct Violation {
  Clause clause;
  Nat code;
  std::string sentence;
  bool expected;  // membership demanded by the clause
  bool found;     // membership in the candidate
};

struct Unverified {
  Clause clause;
  Nat code;
  std::string sentence;
  std::string reason;
};

struct TruthConditionsReport {
  std::vector<Violation> violations;
  std::vector<Unverified> unverified;
  std::size_t checked = 0;
  bool passed() const { return violations.empty(); }
};

namespace detail {

inline std::vector<Formula> instances(const Formula& q, const Semantics& sem) {
  std::vector<Formula> out;
  if (auto* fin = std::get_if<FiniteSemantics>(&sem)) {
    for (Element e = 0; e < fin->structure->size(); ++e)
      out.push_back(substitute(q.body(), q.bound_var(), Term::constant(element_name(e))));
  } else {
    const auto& nat = std::get<NaturalSemantics>(sem);
    for (std::uint64_t n = 0; n <= nat.budget.witness_bound; ++n)
      out.push_back(substitute(q.body(), q.bound_var(), numeral(n)));
  }
  return out;
}

inline std::vector<Formula> immediate_subsentences(const Formula& f, const Semantics& sem) {
  switch (f.kind()) {
    case Formula::Kind::Atomic:
      return {};
    case Formula::Kind::Not:
      return {f.child()};
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return {f.lhs(), f.rhs()};
    default:
      return instances(f, sem);
  }
}

inline TruthValue3 atomic_truth(const Formula& atom, const Semantics& sem) {
  if (auto* fin = std::get_if<FiniteSemantics>(&sem)) return TruthValue3::of(eval_finite(*fin->structure, atom));
  const auto& nat = std::get<NaturalSemantics>(sem);
  return NatEvaluator(nat.budget, nat.hook).eval(atom);
}

}  // namespace detail

/// Adds the immediate subsentences (with instances) of every corpus sentence.
inline std::vector<Formula> close_one_step(const std::vector<Formula>& corpus, const Semantics& sem) {
  std::vector<Formula> out;
  std::set<Formula> seen;
  auto add = [&](const Formula& f) {
    if (seen.insert(f).second) out.push_back(f);
  };
  for (const auto& f : corpus) add(f);
  for (const auto& f : corpus)
    for (const auto& g : detail::immediate_subsentences(f, sem)) add(g);
  return out;
}

/// Closure under immediate subsentences and instances, to a fixed point.
inline std::vector<Formula> close_fully(const std::vector<Formula>& corpus, const Semantics& sem,
                                        std::size_t limit = 1u << 20) {
  std::vector<Formula> out;
  std::set<Formula> seen;
  std::vector<Formula> work(corpus.rbegin(), corpus.rend());
  while (!work.empty()) {
    Formula f = work.back();
    work.pop_back();
    if (!seen.insert(f).second) continue;
    out.push_back(f);
    if (out.size() > limit) throw Error("corpus closure exceeds limit");
    auto subs = detail::immediate_subsentences(f, sem);
    for (auto it = subs.rbegin(); it != subs.rend(); ++it) work.push_back(*it);
  }
  return out;
}

/// Audits `candidate` against the recursive truth clauses on the one-step
/// closure of `corpus`. A sentence is audited when all of its immediate
/// subsentences lie in the closed corpus, which always holds for the corpus
/// itself. Over the naturals an existential whose instances up to the witness
/// bound are all absent from the candidate is reported as unverified rather
/// than as a violation (dually for universals).
inline TruthConditionsReport check_truth_conditions(const std::set<Nat>& candidate, const Semantics& sem,
                                                    const std::vector<GoedelCode>& corpus_codes) {
  Signature sig;
  if (auto* fin = std::get_if<FiniteSemantics>(&sem)) {
    sig = diagram_signature(*fin->structure);
  } else {
    sig = std::get<NaturalSemantics>(sem).signature;
  }
  for (const Nat& c : candidate) {
    auto f = try_decode(c);
    if (!f) throw Error("candidate contains invalid code " + c.str());
    if (!is_sentence(*f)) throw Error("candidate code " + c.str() + " is not a sentence");
  }
  std::vector<Formula> corpus;
  for (const auto& c : corpus_codes) corpus.push_back(decode(c));
  for (const auto& f : corpus) {
    if (!is_sentence(f)) throw Error("corpus entry is not a sentence: " + to_text(f));
    check_formula(f, sig, true);
  }

  const std::vector<Formula> closed = close_one_step(corpus, sem);
  std::map<Formula, bool> member;
  for (const auto& f : closed) member[f] = candidate.count(encode(f).value) > 0;

  const bool natural = std::holds_alternative<NaturalSemantics>(sem);
  TruthConditionsReport report;
  for (const auto& f : closed) {
    auto subs = detail::immediate_subsentences(f, sem);
    if (!std::all_of(subs.begin(), subs.end(), [&](const Formula& g) { return member.count(g) > 0; })) continue;
    ++report.checked;
    const bool found = member.at(f);
    auto violate = [&](Clause c, bool expected) {
      report.violations.push_back({c, encode(f).value, to_text(f), expected, found});
    };
    switch (f.kind()) {
      case Formula::Kind::Atomic: {
        TruthValue3 v = detail::atomic_truth(f, sem);
        if (!v.determined()) {
          report.unverified.push_back({Clause::Atomic, encode(f).value, to_text(f), "atomic verdict unknown"});
        } else if (v.is_true() != found) {
          violate(Clause::Atomic, v.is_true());
        }
        break;
      }
      case Formula::Kind::Not: {
        const bool expected = !member.at(f.child());
        if (expected != found) violate(Clause::Negation, expected);
        break;
      }
      case Formula::Kind::And: {
        const bool expected = member.at(f.lhs()) && member.at(f.rhs());
        if (expected != found) violate(Clause::Conjunction, expected);
        break;
      }
      case Formula::Kind::Or: {
        const bool expected = member.at(f.lhs()) || member.at(f.rhs());
        if (expected != found) violate(Clause::Disjunction, expected);
        break;
      }
      case Formula::Kind::Implies: {
        const bool expected = !member.at(f.lhs()) || member.at(f.rhs());
        if (expected != found) violate(Clause::Implication, expected);
        break;
      }
      case Formula::Kind::Exists:
      case Formula::Kind::Forall: {
        const bool is_exists = f.kind() == Formula::Kind::Exists;
        const Clause clause = is_exists ? Clause::Existential : Clause::Universal;
        // exists: some instance in; forall: every instance in.
        const bool witnessed = is_exists ? std::any_of(subs.begin(), subs.end(), [&](const Formula& g) { return member.at(g); })
                                         : std::all_of(subs.begin(), subs.end(), [&](const Formula& g) { return member.at(g); });
        if (witnessed == found) break;
        if (natural && (is_exists ? found : !found)) {
          report.unverified.push_back({clause, encode(f).value, to_text(f),
                                       is_exists ? "no instance within the witness bound"
                                                 : "no counterexample within the witness bound"});
        } else {
          violate(clause, witnessed);
        }
        break;
      }
    }
  }
  return report;
}

/// The exact truth set of a finite structure restricted to `corpus`.
inline std::set<Nat> truth_set(const FiniteStructure& s, const std::vector<Formula>& corpus) {
  std::set<Nat> out;
  for (const auto& f : corpus)
    if (eval_finite(s, f)) out.insert(encode(f).value);
  return out;
}

}  // namespace tarski
