#pragma once

// Gödel coding, Cantor pairing, substitution on codes, and the diagonal
// construction.
//
// Coding scheme (frozen). A code is the natural number whose binary expansion
// is a leading 1 followed by a prefix-free bit string describing the syntax
// tree in preorder. Numbers inside the string use the Elias gamma code of n+1,
// written γ(n). Names are γ(byte length) followed by 8 bits per byte.
//
//   term     VAR     γ(0) γ(index)
//            CONST   γ(1) name
//            NUMERAL γ(2) γ(value)
//            APPLY   γ(3) name γ(argc) term*
//   formula  ATOM    γ(0) name γ(argc) term*
//            NOT     γ(1) formula
//            AND     γ(2) formula formula
//            OR      γ(3) formula formula
//            IMPLIES γ(4) formula formula
//            EXISTS  γ(5) γ(var) formula
//            FORALL  γ(6) γ(var) formula
//
// Code length is linear in the printed size of the formula, so diagonal
// sentences stay small enough to evaluate.

#include "tarski/syntax.hpp"
#include "tarski/text.hpp"

#include <boost/multiprecision/cpp_int/import_export.hpp>

#include <iterator>

namespace tarski {

// ---------------------------------------------------------------------------
// Cantor pairing

/// (a+b)(a+b+1)/2 + b
inline Nat pair(const Nat& a, const Nat& b) {
  Nat s = a + b;
  return s * (s + 1) / 2 + b;
}

struct PlanePoint {
  Nat row;
  Nat col;
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

inline PlanePoint unpair(const Nat& n) {
  // w = floor((sqrt(8n+1) - 1) / 2) is the diagonal holding n.
  Nat disc = 8 * n + 1;
  Nat w = (boost::multiprecision::sqrt(disc) - 1) / 2;
  Nat t = w * (w + 1) / 2;
  Nat col = n - t;
  return {w - col, col};
}

inline std::uint64_t pair64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s * (s + 1) / 2 + b;
}

// ---------------------------------------------------------------------------
// Codes

struct GoedelCode {
  Nat value;
  friend auto operator<=>(const GoedelCode& a, const GoedelCode& b) {
    return a.value < b.value ? std::strong_ordering::less
           : b.value < a.value ? std::strong_ordering::greater
                               : std::strong_ordering::equal;
  }
  friend bool operator==(const GoedelCode&, const GoedelCode&) = default;
};

class DecodeError : public Error {
 public:
  DecodeError(std::size_t bit, const std::string& node, const std::string& why)
      : Error("invalid code: " + why + " in " + node + " node at bit " + std::to_string(bit)),
        bit_(bit),
        node_(node) {}
  std::size_t bit() const { return bit_; }
  const std::string& node() const { return node_; }

 private:
  std::size_t bit_;
  std::string node_;
};

namespace detail {

class BitWriter {
 public:
  void bit(bool b) { bits_.push_back(b ? 1 : 0); }
  void gamma(const Nat& n) {
    const Nat m = n + 1;
    const std::size_t len = boost::multiprecision::msb(m);
    for (std::size_t i = 0; i < len; ++i) bit(false);
    for (std::size_t i = len + 1; i-- > 0;) bit(boost::multiprecision::bit_test(m, static_cast<unsigned>(i)));
  }
  void gamma(std::uint64_t n) { gamma(Nat(n)); }
  void name(const std::string& s) {
    gamma(static_cast<std::uint64_t>(s.size()));
    for (unsigned char c : s)
      for (int i = 7; i >= 0; --i) bit((c >> i) & 1);
  }
  Nat finish() const {
    std::vector<unsigned char> all;
    all.reserve(bits_.size() + 1);
    all.push_back(1);
    all.insert(all.end(), bits_.begin(), bits_.end());
    Nat out;
    boost::multiprecision::import_bits(out, all.begin(), all.end(), 1);
    return out;
  }

 private:
  std::vector<unsigned char> bits_;
};

class BitReader {
 public:
  explicit BitReader(const Nat& code) {
    if (code <= 0) throw DecodeError(0, "root", "code must be positive");
    boost::multiprecision::export_bits(code, std::back_inserter(bits_), 1);
    pos_ = 1;  // skip the sentinel
  }
  std::size_t pos() const { return pos_; }
  bool at_end() const { return pos_ >= bits_.size(); }

  bool bit(const char* node) {
    if (at_end()) throw DecodeError(pos_, node, "truncated");
    return bits_[pos_++] != 0;
  }
  Nat gamma(const char* node) {
    const std::size_t start = pos_;
    std::size_t zeros = 0;
    while (!bit(node)) ++zeros;
    if (zeros > bits_.size()) throw DecodeError(start, node, "malformed number");
    Nat m = 1;
    for (std::size_t i = 0; i < zeros; ++i) m = (m << 1) | (bit(node) ? 1 : 0);
    return m - 1;
  }
  std::uint64_t small(const char* node, std::uint64_t max) {
    const std::size_t start = pos_;
    Nat n = gamma(node);
    if (n > max) throw DecodeError(start, node, "value out of range");
    return static_cast<std::uint64_t>(n);
  }
  std::string name(const char* node) {
    const std::size_t len = small(node, 1u << 16);
    std::string s;
    s.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
      unsigned c = 0;
      for (int j = 0; j < 8; ++j) c = (c << 1) | (bit(node) ? 1u : 0u);
      s.push_back(static_cast<char>(c));
    }
    if (s.empty()) throw DecodeError(pos_, node, "empty symbol name");
    return s;
  }

 private:
  std::vector<unsigned char> bits_;
  std::size_t pos_ = 0;
};

inline void write_term(BitWriter& w, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      w.gamma(0);
      w.gamma(static_cast<std::uint64_t>(t.var()));
      break;
    case Term::Kind::Constant:
      w.gamma(1);
      w.name(t.symbol());
      break;
    case Term::Kind::Numeral:
      w.gamma(2);
      w.gamma(t.value());
      break;
    case Term::Kind::Apply:
      w.gamma(3);
      w.name(t.symbol());
      w.gamma(static_cast<std::uint64_t>(t.args().size()));
      for (const auto& a : t.args()) write_term(w, a);
      break;
  }
}

inline void write_formula(BitWriter& w, const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atomic:
      w.gamma(0);
      w.name(f.relation());
      w.gamma(static_cast<std::uint64_t>(f.terms().size()));
      for (const auto& t : f.terms()) write_term(w, t);
      return;
    case Formula::Kind::Not:
      w.gamma(1);
      write_formula(w, f.child());
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      w.gamma(f.kind() == Formula::Kind::And ? 2u : f.kind() == Formula::Kind::Or ? 3u : 4u);
      write_formula(w, f.lhs());
      write_formula(w, f.rhs());
      return;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      w.gamma(f.kind() == Formula::Kind::Exists ? 5u : 6u);
      w.gamma(static_cast<std::uint64_t>(f.bound_var()));
      write_formula(w, f.body());
      return;
  }
}

constexpr std::uint64_t kMaxArgs = 64;
constexpr std::uint64_t kMaxVar = 1u << 30;
constexpr std::size_t kMaxDepth = 4096;

inline Term read_term(BitReader& r, std::size_t depth) {
  const std::size_t at = r.pos();
  if (depth > kMaxDepth) throw DecodeError(at, "term", "nesting too deep");
  switch (r.small("term", 1u << 20)) {
    case 0:
      return Term::variable(static_cast<VarIndex>(r.small("variable", kMaxVar)));
    case 1:
      return Term::constant(r.name("constant"));
    case 2: {
      Nat v = r.gamma("numeral");
      if (v < 2) throw DecodeError(at, "numeral", "numeral literal below 2");
      return Term::numeral_literal(std::move(v));
    }
    case 3: {
      std::string fn = r.name("application");
      const std::uint64_t argc = r.small("application", kMaxArgs);
      if (argc == 0) throw DecodeError(at, "application", "nullary application");
      std::vector<Term> args;
      for (std::uint64_t i = 0; i < argc; ++i) args.push_back(read_term(r, depth + 1));
      return Term::apply(std::move(fn), std::move(args));
    }
    default:
      throw DecodeError(at, "term", "unknown tag");
  }
}

inline Formula read_formula(BitReader& r, std::size_t depth) {
  const std::size_t at = r.pos();
  if (depth > kMaxDepth) throw DecodeError(at, "formula", "nesting too deep");
  switch (r.small("formula", 1u << 20)) {
    case 0: {
      std::string rel = r.name("atom");
      const std::uint64_t argc = r.small("atom", kMaxArgs);
      std::vector<Term> args;
      for (std::uint64_t i = 0; i < argc; ++i) args.push_back(read_term(r, depth + 1));
      return Formula::atomic(std::move(rel), std::move(args));
    }
    case 1:
      return neg(read_formula(r, depth + 1));
    case 2: {
      Formula a = read_formula(r, depth + 1);
      return conj(std::move(a), read_formula(r, depth + 1));
    }
    case 3: {
      Formula a = read_formula(r, depth + 1);
      return disj(std::move(a), read_formula(r, depth + 1));
    }
    case 4: {
      Formula a = read_formula(r, depth + 1);
      return implies(std::move(a), read_formula(r, depth + 1));
    }
    case 5: {
      auto v = static_cast<VarIndex>(r.small("exists", kMaxVar));
      return exists(v, read_formula(r, depth + 1));
    }
    case 6: {
      auto v = static_cast<VarIndex>(r.small("forall", kMaxVar));
      return forall(v, read_formula(r, depth + 1));
    }
    default:
      throw DecodeError(at, "formula", "unknown tag");
  }
}

}  // namespace detail

inline GoedelCode encode(const Formula& f) {
  detail::BitWriter w;
  detail::write_formula(w, f);
  return {w.finish()};
}

inline GoedelCode encode(const Term& t) {
  detail::BitWriter w;
  detail::write_term(w, t);
  return {w.finish()};
}

/// Throws DecodeError naming the bit offset and kind of the first malformed
/// node; trailing bits after a complete formula are also malformed.
inline Formula decode(const GoedelCode& c) {
  detail::BitReader r(c.value);
  Formula f = detail::read_formula(r, 0);
  if (!r.at_end()) throw DecodeError(r.pos(), "root", "trailing bits after formula");
  return f;
}

inline Term decode_term(const GoedelCode& c) {
  detail::BitReader r(c.value);
  Term t = detail::read_term(r, 0);
  if (!r.at_end()) throw DecodeError(r.pos(), "root", "trailing bits after term");
  return t;
}

inline std::optional<Formula> try_decode(const Nat& n) {
  try {
    return decode(GoedelCode{n});
  } catch (const DecodeError&) {
    return std::nullopt;
  }
}

/// Decodes `n` as a sentence over `sig`, or nothing when `n` is not such a code.
inline std::optional<Formula> decode_sentence(const Nat& n, const Signature& sig) {
  auto f = try_decode(n);
  if (!f || !is_sentence(*f) || !conforms(*f, sig)) return std::nullopt;
  return f;
}

// ---------------------------------------------------------------------------
// Substitution on codes and the diagonal construction

constexpr VarIndex kDiagonalVar = 0;

/// encode(substitute(decode(c), v0, numeral(n))); a code without free
/// variables is returned unchanged.
inline GoedelCode sub_code(const GoedelCode& c, const Nat& n) {
  Formula f = decode(c);
  if (is_sentence(f)) return c;
  return encode(substitute(f, kDiagonalVar, numeral(n)));
}

/// The interpretation of the function symbol `sub` over the naturals: total,
/// with non-codes mapped to themselves.
inline Nat sub_function(const Nat& c, const Nat& n) {
  try {
    return sub_code(GoedelCode{c}, n).value;
  } catch (const DecodeError&) {
    return c;
  }
}

class FreeVariableError : public Error {
 public:
  using Error::Error;
};

inline void require_single_free_v0(const Formula& phi) {
  auto fv = free_vars(phi);
  if (fv != std::set<VarIndex>{kDiagonalVar}) {
    std::string listed;
    for (VarIndex v : fv) listed += (listed.empty() ? "v" : ", v") + std::to_string(v);
    throw FreeVariableError("diagonalization needs exactly the free variable v0, got {" + listed + "}");
  }
}

/// A sentence sigma with sigma <-> phi(code of sigma) under the standard
/// interpretation of `sub`:
///   psi(x)  := phi(sub(x, x))
///   sigma   := psi(numeral(code of psi)) = phi(sub(#psi, #psi))
/// so the term sub(#psi, #psi) denotes the code of sigma itself.
inline Formula diag(const Formula& phi) {
  require_single_free_v0(phi);
  const Term x = Term::variable(kDiagonalVar);
  Formula psi = substitute(phi, kDiagonalVar, Term::apply("sub", {x, x}));
  const Nat psi_code = encode(psi).value;
  return substitute(psi, kDiagonalVar, numeral(psi_code));
}

/// diag(~phi): a sentence whose truth value is the negation of phi's verdict
/// on its own code.
inline Formula liar(const Formula& phi) {
  require_single_free_v0(phi);
  return diag(neg(phi));
}

/// phi(numeral(code of sigma)): the other side of the fixed-point equivalence.
inline Formula instantiate_with_code(const Formula& phi, const Formula& sigma) {
  return substitute(phi, kDiagonalVar, numeral(encode(sigma).value));
}

}  // namespace tarski
