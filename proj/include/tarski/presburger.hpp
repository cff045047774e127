#pragma once

// Presburger arithmetic over (N, 0, 1, +, <): Cooper quantifier elimination,
// decision, eventual-periodicity certificates for unary definable sets, and
// periodicity refutation for sets given only by a membership test.
//
// Elimination runs over the integers; every eliminated variable is guarded by
// x >= 0 so the result is equivalent over the naturals for every assignment of
// naturals to the remaining free variables.

#include "tarski/satisfaction.hpp"
#include "tarski/text.hpp"

#include <boost/integer/common_factor.hpp>

#include <functional>

namespace tarski {

class NonLinearError : public Error {
 public:
  using Error::Error;
};

class PresburgerError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Linear terms and atoms

inline BigInt gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }
inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
inline BigInt floor_mod(const BigInt& a, const BigInt& m) { return a - floor_div(a, m) * m; }

/// sum of coeff * var, plus constant. Zero coefficients are never stored.
struct LinearTerm {
  std::map<VarIndex, BigInt> coeffs;
  BigInt constant = 0;

  static LinearTerm of(const BigInt& c) { return {{}, c}; }
  static LinearTerm variable(VarIndex v, const BigInt& c = 1) {
    LinearTerm t;
    if (c != 0) t.coeffs[v] = c;
    return t;
  }

  BigInt coeff(VarIndex v) const {
    auto it = coeffs.find(v);
    return it == coeffs.end() ? BigInt(0) : it->second;
  }
  bool is_constant() const { return coeffs.empty(); }

  LinearTerm& operator+=(const LinearTerm& o) {
    for (const auto& [v, c] : o.coeffs) {
      BigInt& slot = coeffs[v];
      slot += c;
      if (slot == 0) coeffs.erase(v);
    }
    constant += o.constant;
    return *this;
  }
  LinearTerm& operator*=(const BigInt& k) {
    if (k == 0) {
      coeffs.clear();
      constant = 0;
      return *this;
    }
    for (auto& [v, c] : coeffs) c *= k;
    constant *= k;
    return *this;
  }
  friend LinearTerm operator+(LinearTerm a, const LinearTerm& b) { return a += b; }
  friend LinearTerm operator*(LinearTerm a, const BigInt& k) { return a *= k; }
  friend LinearTerm operator-(LinearTerm a) { return a *= -1; }
  friend LinearTerm operator-(LinearTerm a, const LinearTerm& b) { return a += -b; }

  LinearTerm without(VarIndex v) const {
    LinearTerm t = *this;
    t.coeffs.erase(v);
    return t;
  }
  /// Replaces v by `r`.
  LinearTerm substitute(VarIndex v, const LinearTerm& r) const {
    const BigInt c = coeff(v);
    if (c == 0) return *this;
    return without(v) + r * c;
  }
  BigInt evaluate(const std::map<VarIndex, BigInt>& rho) const {
    BigInt s = constant;
    for (const auto& [v, c] : coeffs) {
      auto it = rho.find(v);
      if (it == rho.end()) throw PresburgerError("unassigned variable v" + std::to_string(v));
      s += c * it->second;
    }
    return s;
  }

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

inline std::string to_string(const LinearTerm& t) {
  std::string out;
  for (const auto& [v, c] : t.coeffs) {
    const bool negative = c < 0;
    const BigInt mag = negative ? BigInt(-c) : c;
    if (out.empty()) {
      out += negative ? "-" : "";
    } else {
      out += negative ? " - " : " + ";
    }
    if (mag != 1) out += mag.str();
    out += "v" + std::to_string(v);
  }
  if (out.empty()) return t.constant.str();
  if (t.constant > 0) out += " + " + t.constant.str();
  if (t.constant < 0) out += " - " + BigInt(-t.constant).str();
  return out;
}

/// term REL 0, or modulus | term for the divisibility relations.
struct LinearAtom {
  enum class Rel { Eq, Ne, Lt, Le, Div, NotDiv };
  Rel rel = Rel::Eq;
  LinearTerm term;
  BigInt modulus = 1;

  bool holds(const std::map<VarIndex, BigInt>& rho) const {
    const BigInt v = term.evaluate(rho);
    switch (rel) {
      case Rel::Eq:
        return v == 0;
      case Rel::Ne:
        return v != 0;
      case Rel::Lt:
        return v < 0;
      case Rel::Le:
        return v <= 0;
      case Rel::Div:
        return v % modulus == 0;
      case Rel::NotDiv:
        return v % modulus != 0;
    }
    return false;
  }
  friend bool operator==(const LinearAtom&, const LinearAtom&) = default;
};

inline std::string to_string(const LinearAtom& a) {
  using R = LinearAtom::Rel;
  const std::string t = to_string(a.term);
  switch (a.rel) {
    case R::Eq:
      return t + " = 0";
    case R::Ne:
      return t + " != 0";
    case R::Lt:
      return t + " < 0";
    case R::Le:
      return t + " <= 0";
    case R::Div:
      return a.modulus.str() + " | " + t;
    case R::NotDiv:
      return "~(" + a.modulus.str() + " | " + t + ")";
  }
  return "?";
}

struct LinearFormula {
  enum class Kind { True, False, Atom, Not, And, Or, Exists, Forall };
  Kind kind = Kind::True;
  LinearAtom atom;
  VarIndex var = 0;
  std::vector<LinearFormula> kids;

  static LinearFormula truth(bool b) { return {b ? Kind::True : Kind::False, {}, 0, {}}; }
  static LinearFormula of(LinearAtom a) { return {Kind::Atom, std::move(a), 0, {}}; }
  static LinearFormula negation(LinearFormula f) { return {Kind::Not, {}, 0, {std::move(f)}}; }
  static LinearFormula conjunction(std::vector<LinearFormula> fs) { return {Kind::And, {}, 0, std::move(fs)}; }
  static LinearFormula disjunction(std::vector<LinearFormula> fs) { return {Kind::Or, {}, 0, std::move(fs)}; }
  static LinearFormula exists(VarIndex v, LinearFormula f) { return {Kind::Exists, {}, v, {std::move(f)}}; }
  static LinearFormula forall(VarIndex v, LinearFormula f) { return {Kind::Forall, {}, v, {std::move(f)}}; }

  bool is_true() const { return kind == Kind::True; }
  bool is_false() const { return kind == Kind::False; }

  friend bool operator==(const LinearFormula&, const LinearFormula&) = default;
};

inline std::string to_string(const LinearFormula& f) {
  using K = LinearFormula::Kind;
  switch (f.kind) {
    case K::True:
      return "true";
    case K::False:
      return "false";
    case K::Atom:
      return to_string(f.atom);
    case K::Not:
      return "~(" + to_string(f.kids[0]) + ")";
    case K::And:
    case K::Or: {
      std::string out = "(";
      for (std::size_t i = 0; i < f.kids.size(); ++i) {
        if (i) out += f.kind == K::And ? " & " : " | ";
        out += to_string(f.kids[i]);
      }
      return out + ")";
    }
    case K::Exists:
      return "exists v" + std::to_string(f.var) + ". " + to_string(f.kids[0]);
    case K::Forall:
      return "forall v" + std::to_string(f.var) + ". " + to_string(f.kids[0]);
  }
  return "?";
}

inline void free_vars_into(const LinearFormula& f, std::set<VarIndex>& bound, std::set<VarIndex>& out) {
  using K = LinearFormula::Kind;
  switch (f.kind) {
    case K::Atom:
      for (const auto& [v, c] : f.atom.term.coeffs)
        if (!bound.count(v)) out.insert(v);
      return;
    case K::Exists:
    case K::Forall: {
      const bool fresh = bound.insert(f.var).second;
      free_vars_into(f.kids[0], bound, out);
      if (fresh) bound.erase(f.var);
      return;
    }
    default:
      for (const auto& k : f.kids) free_vars_into(k, bound, out);
  }
}

inline std::set<VarIndex> free_vars(const LinearFormula& f) {
  std::set<VarIndex> bound, out;
  free_vars_into(f, bound, out);
  return out;
}

inline bool is_quantifier_free(const LinearFormula& f) {
  using K = LinearFormula::Kind;
  if (f.kind == K::Exists || f.kind == K::Forall) return false;
  return std::all_of(f.kids.begin(), f.kids.end(), [](const LinearFormula& k) { return is_quantifier_free(k); });
}

/// Evaluates a quantifier-free formula.
inline bool holds(const LinearFormula& f, const std::map<VarIndex, BigInt>& rho) {
  using K = LinearFormula::Kind;
  switch (f.kind) {
    case K::True:
      return true;
    case K::False:
      return false;
    case K::Atom:
      return f.atom.holds(rho);
    case K::Not:
      return !holds(f.kids[0], rho);
    case K::And:
      return std::all_of(f.kids.begin(), f.kids.end(), [&](const LinearFormula& k) { return holds(k, rho); });
    case K::Or:
      return std::any_of(f.kids.begin(), f.kids.end(), [&](const LinearFormula& k) { return holds(k, rho); });
    default:
      throw PresburgerError("holds() needs a quantifier-free formula");
  }
}

// ---------------------------------------------------------------------------
// Translation from the workbench syntax

namespace detail {

inline LinearTerm linearize(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return LinearTerm::variable(t.var());
    case Term::Kind::Constant:
      if (t.symbol() == "0") return LinearTerm::of(0);
      if (t.symbol() == "1") return LinearTerm::of(1);
      throw NonLinearError("constant '" + t.symbol() + "' is not part of Presburger arithmetic");
    case Term::Kind::Numeral:
      return LinearTerm::of(t.value());
    case Term::Kind::Apply: {
      if (t.symbol() == "+" && t.args().size() == 2) return linearize(t.args()[0]) + linearize(t.args()[1]);
      if (t.symbol() == "*" && t.args().size() == 2) {
        LinearTerm a = linearize(t.args()[0]);
        LinearTerm b = linearize(t.args()[1]);
        if (a.is_constant()) return b * a.constant;
        if (b.is_constant()) return a * b.constant;
        throw NonLinearError("product of two non-constant terms: " + to_text(t));
      }
      throw NonLinearError("function '" + t.symbol() + "' is not part of Presburger arithmetic");
    }
  }
  return {};
}

}  // namespace detail

/// Equivalent formula over linear atoms. Accepts =, <, div(d, t) with d a
/// positive closed term, + and * with a closed factor.
inline LinearFormula to_linear(const Formula& f) {
  using K = Formula::Kind;
  using R = LinearAtom::Rel;
  switch (f.kind()) {
    case K::Atomic: {
      const auto& r = f.relation();
      if (truth_predicate_level(r)) throw NonLinearError("truth predicate " + r + " outside Presburger arithmetic");
      if ((r == "=" || r == "<") && f.terms().size() == 2) {
        LinearTerm d = detail::linearize(f.terms()[0]) - detail::linearize(f.terms()[1]);
        return LinearFormula::of({r == "=" ? R::Eq : R::Lt, std::move(d), 1});
      }
      if (r == "div" && f.terms().size() == 2) {
        LinearTerm m = detail::linearize(f.terms()[0]);
        if (!m.is_constant() || m.constant <= 0) throw NonLinearError("div needs a positive constant modulus");
        return LinearFormula::of({R::Div, detail::linearize(f.terms()[1]), m.constant});
      }
      throw NonLinearError("relation '" + r + "' is not part of Presburger arithmetic");
    }
    case K::Not:
      return LinearFormula::negation(to_linear(f.child()));
    case K::And:
      return LinearFormula::conjunction({to_linear(f.lhs()), to_linear(f.rhs())});
    case K::Or:
      return LinearFormula::disjunction({to_linear(f.lhs()), to_linear(f.rhs())});
    case K::Implies:
      return LinearFormula::disjunction({LinearFormula::negation(to_linear(f.lhs())), to_linear(f.rhs())});
    case K::Exists:
      return LinearFormula::exists(f.bound_var(), to_linear(f.body()));
    case K::Forall:
      return LinearFormula::forall(f.bound_var(), to_linear(f.body()));
  }
  return {};
}

// ---------------------------------------------------------------------------
// Normalization

namespace detail {

/// Widest constant range expanded instance by instance instead of by Cooper.
constexpr int kRangeExpansionLimit = 64;


/// Canonical sign for = and !=: first coefficient positive.
inline void orient(LinearTerm& t) {
  if (!t.coeffs.empty() && t.coeffs.begin()->second < 0) t *= -1;
}

/// Normalized atom, or a truth constant.
inline LinearFormula normalize(LinearAtom a) {
  using R = LinearAtom::Rel;
  if (a.rel == R::Le) {
    a.rel = R::Lt;
    a.term.constant -= 1;
  }
  if (a.rel == R::Div || a.rel == R::NotDiv) {
    const bool positive = a.rel == R::Div;
    if (a.modulus <= 0) throw PresburgerError("divisibility modulus must be positive");
    for (auto it = a.term.coeffs.begin(); it != a.term.coeffs.end();) {
      it->second = floor_mod(it->second, a.modulus);
      it = it->second == 0 ? a.term.coeffs.erase(it) : std::next(it);
    }
    a.term.constant = floor_mod(a.term.constant, a.modulus);
    BigInt g = a.modulus;
    for (const auto& [v, c] : a.term.coeffs) g = gcd(g, c);
    g = gcd(g, a.term.constant);
    if (g > 1) {
      a.modulus /= g;
      for (auto& [v, c] : a.term.coeffs) c /= g;
      a.term.constant /= g;
    }
    if (a.modulus == 1) return LinearFormula::truth(positive);
    if (a.term.is_constant()) return LinearFormula::truth((a.term.constant == 0) == positive);
    return LinearFormula::of(std::move(a));
  }
  if (a.term.is_constant()) {
    const BigInt& c = a.term.constant;
    switch (a.rel) {
      case R::Eq:
        return LinearFormula::truth(c == 0);
      case R::Ne:
        return LinearFormula::truth(c != 0);
      default:
        return LinearFormula::truth(c < 0);
    }
  }
  // All variables range over the naturals, so a uniformly signed term has a
  // known sign.
  const bool all_nonneg = std::all_of(a.term.coeffs.begin(), a.term.coeffs.end(), [](const auto& e) { return e.second > 0; });
  const bool all_nonpos = std::all_of(a.term.coeffs.begin(), a.term.coeffs.end(), [](const auto& e) { return e.second < 0; });
  const BigInt& k = a.term.constant;
  if (a.rel == R::Lt) {
    if (all_nonneg && k >= 0) return LinearFormula::truth(false);
    if (all_nonpos && k < 0) return LinearFormula::truth(true);
  } else if ((all_nonneg && k > 0) || (all_nonpos && k < 0)) {
    return LinearFormula::truth(a.rel == R::Ne);
  }
  BigInt g = 0;
  for (const auto& [v, c] : a.term.coeffs) g = gcd(g, c);
  if (a.rel == R::Lt) {
    if (g > 1) {
      for (auto& [v, c] : a.term.coeffs) c /= g;
      a.term.constant = floor_div(a.term.constant, g);
    }
    return LinearFormula::of(std::move(a));
  }
  // Eq / Ne
  if (a.term.constant % g != 0) return LinearFormula::truth(a.rel == R::Ne);
  if (g > 1) {
    for (auto& [v, c] : a.term.coeffs) c /= g;
    a.term.constant /= g;
  }
  orient(a.term);
  return LinearFormula::of(std::move(a));
}

inline LinearFormula make_junction(bool is_and, std::vector<LinearFormula> parts) {
  using K = LinearFormula::Kind;
  const K kind = is_and ? K::And : K::Or;
  std::vector<LinearFormula> flat;
  auto push = [&](LinearFormula f) {
    if (std::find(flat.begin(), flat.end(), f) == flat.end()) flat.push_back(std::move(f));
  };
  for (auto& p : parts) {
    if (p.is_true()) {
      if (!is_and) return LinearFormula::truth(true);
      continue;
    }
    if (p.is_false()) {
      if (is_and) return LinearFormula::truth(false);
      continue;
    }
    if (p.kind == kind) {
      for (auto& k : p.kids) push(std::move(k));
    } else {
      push(std::move(p));
    }
  }
  if (flat.empty()) return LinearFormula::truth(is_and);
  if (flat.size() == 1) return std::move(flat.front());
  return {kind, {}, 0, std::move(flat)};
}

inline LinearAtom negate_atom(const LinearAtom& a) {
  using R = LinearAtom::Rel;
  switch (a.rel) {
    case R::Eq:
      return {R::Ne, a.term, 1};
    case R::Ne:
      return {R::Eq, a.term, 1};
    case R::Lt:  // ~(t < 0)  <=>  -t <= 0
      return {R::Le, -a.term, 1};
    case R::Le:  // ~(t <= 0)  <=>  -t < 0
      return {R::Lt, -a.term, 1};
    case R::Div:
      return {R::NotDiv, a.term, a.modulus};
    case R::NotDiv:
      return {R::Div, a.term, a.modulus};
  }
  return a;
}

/// Negation normal form of a quantifier-free formula with normalized atoms.
inline LinearFormula nnf(const LinearFormula& f, bool negate = false) {
  using K = LinearFormula::Kind;
  switch (f.kind) {
    case K::True:
    case K::False:
      return LinearFormula::truth(f.is_true() != negate);
    case K::Atom:
      return normalize(negate ? negate_atom(f.atom) : f.atom);
    case K::Not:
      return nnf(f.kids[0], !negate);
    case K::And:
    case K::Or: {
      std::vector<LinearFormula> parts;
      for (const auto& k : f.kids) parts.push_back(nnf(k, negate));
      return make_junction((f.kind == K::And) != negate, std::move(parts));
    }
    default:
      throw PresburgerError("nnf() needs a quantifier-free formula");
  }
}

/// Applies `g` to every atom of a negation-normal formula and re-simplifies.
inline LinearFormula map_atoms(const LinearFormula& f, const std::function<LinearFormula(const LinearAtom&)>& g) {
  using K = LinearFormula::Kind;
  switch (f.kind) {
    case K::Atom:
      return g(f.atom);
    case K::And:
    case K::Or: {
      std::vector<LinearFormula> parts;
      parts.reserve(f.kids.size());
      for (const auto& k : f.kids) {
        parts.push_back(map_atoms(k, g));
        if (f.kind == K::And && parts.back().is_false()) return LinearFormula::truth(false);
        if (f.kind == K::Or && parts.back().is_true()) return LinearFormula::truth(true);
      }
      return make_junction(f.kind == K::And, std::move(parts));
    }
    default:
      return f;
  }
}

inline void for_each_atom(const LinearFormula& f, const std::function<void(const LinearAtom&)>& g) {
  if (f.kind == LinearFormula::Kind::Atom) {
    g(f.atom);
    return;
  }
  for (const auto& k : f.kids) for_each_atom(k, g);
}

inline LinearFormula substitute(const LinearFormula& f, VarIndex x, const LinearTerm& r) {
  return map_atoms(f, [&](const LinearAtom& a) {
    if (a.term.coeff(x) == 0) return LinearFormula::of(a);
    return normalize({a.rel, a.term.substitute(x, r), a.modulus});
  });
}

/// exists x. phi over the naturals, phi quantifier-free and negation-normal.
inline LinearFormula cooper(VarIndex x, const LinearFormula& body) {
  using R = LinearAtom::Rel;
  bool mentions_x = false;
  for_each_atom(body, [&](const LinearAtom& a) { mentions_x = mentions_x || a.term.coeff(x) != 0; });
  if (!mentions_x) return body;

  // A top-level conjunct a*x + k < 0 with a > 0 and k constant confines x to
  // 0 .. ceil(-k / a) - 1; a short range is expanded directly.
  std::optional<BigInt> range;
  const std::vector<LinearFormula> single{body};
  for (const auto& c : body.kind == LinearFormula::Kind::And ? body.kids : single) {
    if (c.kind != LinearFormula::Kind::Atom || c.atom.rel != R::Lt) continue;
    const BigInt a = c.atom.term.coeff(x);
    if (a <= 0 || c.atom.term.coeffs.size() != 1) continue;
    const BigInt n = c.atom.term.constant >= 0 ? BigInt(0) : (-c.atom.term.constant + a - 1) / a;
    if (!range || n < *range) range = n;
  }
  if (range && *range <= kRangeExpansionLimit) {
    std::vector<LinearFormula> disjuncts;
    for (BigInt k = 0; k < *range; ++k) {
      LinearFormula f = substitute(body, x, LinearTerm::of(k));
      if (f.is_true()) return f;
      disjuncts.push_back(std::move(f));
    }
    return make_junction(false, std::move(disjuncts));
  }

  // x >= 0, i.e. -x - 1 < 0.
  LinearTerm guard_term = LinearTerm::variable(x, -1);
  guard_term.constant = -1;
  LinearFormula phi = make_junction(true, {body, LinearFormula::of({R::Lt, guard_term, 1})});

  // Scale every x-coefficient to +-l, then write x' = l*x.
  BigInt l = 1;
  for_each_atom(phi, [&](const LinearAtom& a) {
    const BigInt c = a.term.coeff(x);
    if (c != 0) l = lcm(l, boost::multiprecision::abs(c));
  });
  phi = map_atoms(phi, [&](const LinearAtom& a) {
    const BigInt c = a.term.coeff(x);
    if (c == 0) return LinearFormula::of(a);
    const BigInt m = l / boost::multiprecision::abs(c);
    LinearAtom b = a;
    b.term *= m;
    if (b.rel == R::Div || b.rel == R::NotDiv) b.modulus *= m;
    if (b.rel != R::Lt && c < 0) b.term *= -1;
    b.term.coeffs[x] = b.rel == R::Lt && c < 0 ? BigInt(-1) : BigInt(1);
    return LinearFormula::of(std::move(b));
  });
  if (l > 1) phi = make_junction(true, {phi, LinearFormula::of({R::Div, LinearTerm::variable(x), l})});

  BigInt D = 1;
  std::vector<LinearTerm> lower, upper;  // B set and A set
  for_each_atom(phi, [&](const LinearAtom& a) {
    const BigInt c = a.term.coeff(x);
    if (c == 0) return;
    const LinearTerm s = a.term.without(x);
    switch (a.rel) {
      case R::Div:
      case R::NotDiv:
        D = lcm(D, a.modulus);
        break;
      case R::Lt:
        if (c > 0) {
          upper.push_back(-s);  // x < -s
        } else {
          lower.push_back(s);  // x > s
        }
        break;
      case R::Eq:  // x = -s
        lower.push_back(-s - LinearTerm::of(1));
        upper.push_back(-s + LinearTerm::of(1));
        break;
      case R::Ne:  // x != -s
        lower.push_back(-s);
        upper.push_back(-s);
        break;
      default:
        throw PresburgerError("unnormalized atom in elimination");
    }
  });
  auto dedupe = [](std::vector<LinearTerm>& v) {
    std::vector<LinearTerm> out;
    std::set<std::string> seen;
    for (auto& t : v)
      if (seen.insert(to_string(t)).second) out.push_back(std::move(t));
    v = std::move(out);
  };
  dedupe(lower);
  dedupe(upper);

  const bool use_lower = lower.size() <= upper.size();
  // Truth value of x-atoms as x tends to -infinity (use_lower) or +infinity.
  LinearFormula at_infinity = map_atoms(phi, [&](const LinearAtom& a) {
    const BigInt c = a.term.coeff(x);
    if (c == 0 || a.rel == R::Div || a.rel == R::NotDiv) return LinearFormula::of(a);
    if (a.rel == R::Eq) return LinearFormula::truth(false);
    if (a.rel == R::Ne) return LinearFormula::truth(true);
    return LinearFormula::truth((c > 0) == use_lower);
  });

  std::vector<LinearFormula> disjuncts;
  for (BigInt j = 1; j <= D; ++j) {
    const BigInt shift = use_lower ? j : BigInt(-j);
    if (!at_infinity.is_false()) {
      LinearFormula f = substitute(at_infinity, x, LinearTerm::of(shift));
      if (f.is_true()) return f;
      disjuncts.push_back(std::move(f));
    }
    for (const auto& b : use_lower ? lower : upper) {
      LinearFormula f = substitute(phi, x, b + LinearTerm::of(shift));
      if (f.is_true()) return f;
      disjuncts.push_back(std::move(f));
    }
  }
  return make_junction(false, std::move(disjuncts));
}

inline LinearFormula eliminate(const LinearFormula& f) {
  using K = LinearFormula::Kind;
  switch (f.kind) {
    case K::True:
    case K::False:
    case K::Atom:
      return nnf(f);
    case K::Not:
      return nnf(eliminate(f.kids[0]), true);
    case K::And:
    case K::Or: {
      std::vector<LinearFormula> parts;
      for (const auto& k : f.kids) parts.push_back(eliminate(k));
      return make_junction(f.kind == K::And, std::move(parts));
    }
    case K::Exists:
      return cooper(f.var, eliminate(f.kids[0]));
    case K::Forall:
      return nnf(cooper(f.var, nnf(eliminate(f.kids[0]), true)), true);
  }
  return f;
}

}  // namespace detail

/// Quantifier-free, negation-normal equivalent over the naturals. Atoms are
/// normalized: comparisons are t = 0, t != 0, t < 0 and divisibility d | t.
inline LinearFormula eliminate_quantifiers(const LinearFormula& f) { return detail::eliminate(f); }

inline LinearFormula eliminate_quantifiers(const Formula& f) { return eliminate_quantifiers(to_linear(f)); }

inline bool decide(const LinearFormula& sentence) {
  auto fv = free_vars(sentence);
  if (!fv.empty()) throw PresburgerError("decide needs a sentence; v" + std::to_string(*fv.begin()) + " is free");
  LinearFormula qf = eliminate_quantifiers(sentence);
  return holds(qf, {});
}

inline bool decide(const Formula& sentence) { return decide(to_linear(sentence)); }

// ---------------------------------------------------------------------------
// Back to the workbench syntax

namespace detail {

inline Term scaled(const BigInt& k, VarIndex v) {
  if (k == 1) return Term::variable(v);
  return times(numeral(k), Term::variable(v));
}

/// Sum of the positive (sign = 1) or negated negative (sign = -1) parts.
inline Term side(const LinearTerm& t, int sign) {
  std::optional<Term> acc;
  auto add = [&](Term x) { acc = acc ? plus(*acc, std::move(x)) : std::move(x); };
  for (const auto& [v, c] : t.coeffs)
    if ((c > 0) == (sign > 0)) add(scaled(sign > 0 ? c : BigInt(-c), v));
  const BigInt k = sign > 0 ? t.constant : BigInt(-t.constant);
  if (k > 0) add(numeral(k));
  return acc ? *acc : zero();
}

}  // namespace detail

/// Renders a quantifier-free or quantified linear formula in the workbench
/// grammar, with div(d, t) atoms. true is 0 = 0 and false is ~(0 = 0).
inline Formula to_formula(const LinearFormula& f) {
  using K = LinearFormula::Kind;
  using R = LinearAtom::Rel;
  switch (f.kind) {
    case K::True:
      return eq(zero(), zero());
    case K::False:
      return neg(eq(zero(), zero()));
    case K::Atom: {
      LinearAtom a = f.atom;
      if (a.rel == R::Div || a.rel == R::NotDiv) {
        LinearFormula n = detail::normalize(a);
        if (n.kind != K::Atom) return to_formula(n);
        a = n.atom;
        Formula d = Formula::atomic("div", {numeral(a.modulus), detail::side(a.term, 1)});
        return a.rel == R::Div ? d : neg(d);
      }
      Term lhs = detail::side(a.term, 1);
      Term rhs = detail::side(a.term, -1);
      switch (a.rel) {
        case R::Eq:
          return eq(lhs, rhs);
        case R::Ne:
          return neg(eq(lhs, rhs));
        case R::Lt:
          return lt(lhs, rhs);
        default:  // lhs <= rhs
          return neg(lt(rhs, lhs));
      }
    }
    case K::Not:
      return neg(to_formula(f.kids[0]));
    case K::And:
    case K::Or: {
      Formula acc = to_formula(f.kids[0]);
      for (std::size_t i = 1; i < f.kids.size(); ++i)
        acc = f.kind == K::And ? conj(acc, to_formula(f.kids[i])) : disj(acc, to_formula(f.kids[i]));
      return acc;
    }
    case K::Exists:
      return exists(f.var, to_formula(f.kids[0]));
    case K::Forall:
      return forall(f.var, to_formula(f.kids[0]));
  }
  return eq(zero(), zero());
}

// ---------------------------------------------------------------------------
// Periodicity

/// member(n) = prefix[n] for n < threshold, table[(n - threshold) mod period]
/// beyond. Threshold and period are minimal.
struct PeriodicityCertificate {
  std::uint64_t threshold = 0;
  std::uint64_t period = 1;
  std::vector<bool> table;
  std::vector<bool> prefix;
  std::uint64_t verified_to = 0;

  bool member(const Nat& n) const {
    if (n < threshold) return prefix[static_cast<std::size_t>(n)];
    Nat r = (n - threshold) % period;
    return table[static_cast<std::size_t>(r)];
  }
};

class VerificationError : public PresburgerError {
 public:
  using PresburgerError::PresburgerError;
};

/// Eventual-periodicity certificate for {n : phi(n)}, phi linear with exactly
/// one free variable. The raw threshold comes from the comparison atoms of
/// the eliminated form and the raw period is the lcm of its moduli; both are
/// then minimized. The certificate is checked against decide(phi(n)) for
/// n <= verify_bound.
inline PeriodicityCertificate definable_set_period(const Formula& phi, std::uint64_t verify_bound,
                                                   std::uint64_t size_limit = 1u << 20) {
  using R = LinearAtom::Rel;
  auto fv = free_vars(phi);
  if (fv.size() != 1) throw PresburgerError("definable_set_period needs exactly one free variable");
  const VarIndex x = *fv.begin();
  const LinearFormula qf = eliminate_quantifiers(phi);

  BigInt threshold = 0;
  BigInt period = 1;
  detail::for_each_atom(qf, [&](const LinearAtom& a) {
    const BigInt c = a.term.coeff(x);
    if (c == 0) return;
    if (a.rel == R::Div || a.rel == R::NotDiv) {
      period = lcm(period, a.modulus);
    } else {
      BigInt t = boost::multiprecision::abs(a.term.constant) / boost::multiprecision::abs(c) + 1;
      threshold = std::max(threshold, t);
    }
  });
  if (threshold + period > size_limit) throw PresburgerError("periodicity table exceeds the size limit");

  auto at = [&](std::uint64_t n) { return holds(qf, {{x, BigInt(n)}}); };
  std::uint64_t T = static_cast<std::uint64_t>(threshold);
  std::uint64_t p = static_cast<std::uint64_t>(period);
  // Least period dividing p.
  for (std::uint64_t q = 1; q < p; ++q) {
    if (p % q) continue;
    bool ok = true;
    for (std::uint64_t i = 0; ok && i < p; ++i) ok = at(T + i) == at(T + (i % q));
    if (ok) {
      p = q;
      break;
    }
  }
  while (T > 0 && at(T - 1) == at(T - 1 + p)) --T;

  PeriodicityCertificate cert;
  cert.threshold = T;
  cert.period = p;
  for (std::uint64_t i = 0; i < T; ++i) cert.prefix.push_back(at(i));
  for (std::uint64_t i = 0; i < p; ++i) cert.table.push_back(at(T + i));

  for (std::uint64_t n = 0; n <= verify_bound; ++n) {
    const bool truth = decide(substitute(phi, x, numeral(n)));
    if (truth != cert.member(n))
      throw VerificationError("periodicity certificate fails at n = " + std::to_string(n));
  }
  cert.verified_to = verify_bound;
  return cert;
}

inline constexpr const char* kRefutationNote =
    "evidence of non-definability up to the bound, not a proof: a proof needs the semilinearity "
    "theorem applied without bound";

struct PeriodWitness {
  std::uint64_t period;
  /// Largest threshold this period is tested with (bound - 2 * period).
  std::uint64_t max_threshold;
  /// A violation n >= max_threshold with member(n) != member(n + period),
  /// absent when none exists. It also defeats every smaller threshold.
  std::optional<std::uint64_t> violation;
};

struct RefutationReport {
  std::uint64_t bound = 0;
  std::vector<PeriodWitness> witnesses;
  std::size_t pairs_tested = 0;
  std::size_t pairs_refuted = 0;
  std::string note = kRefutationNote;

  bool refuted_all() const { return pairs_tested == pairs_refuted; }
  /// Least violation n >= threshold for the pair, if any.
  std::optional<std::uint64_t> violation_for(std::uint64_t threshold, std::uint64_t period) const {
    if (period == 0 || threshold + 2 * period > bound) return std::nullopt;
    for (std::uint64_t n = threshold; n + period <= bound; ++n)
      if (bits[n] != bits[n + period]) return n;
    return std::nullopt;
  }
  std::vector<bool> bits;
};

/// Tries every (threshold, period) with threshold + 2 * period <= bound and
/// looks for n >= threshold, n + period <= bound, member(n) != member(n + period).
inline RefutationReport periodicity_refute(const std::function<bool(std::uint64_t)>& member, std::uint64_t bound) {
  RefutationReport r;
  r.bound = bound;
  r.bits.resize(bound + 1);
  for (std::uint64_t n = 0; n <= bound; ++n) r.bits[n] = member(n);
  for (std::uint64_t p = 1; 2 * p <= bound; ++p) {
    const std::uint64_t tmax = bound - 2 * p;
    PeriodWitness w{p, tmax, std::nullopt};
    // Latest violation; it serves every threshold up to itself.
    std::uint64_t refuted = 0;
    for (std::uint64_t n = bound - p + 1; n-- > 0;) {
      if (r.bits[n] != r.bits[n + p]) {
        refuted = std::min<std::uint64_t>(n, tmax) + 1;
        if (n >= tmax) w.violation = n;
        break;
      }
    }
    r.pairs_tested += tmax + 1;
    r.pairs_refuted += refuted;
    r.witnesses.push_back(w);
  }
  return r;
}

}  // namespace tarski
