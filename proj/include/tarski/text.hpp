#pragma once

// Concrete grammar: canonical printer and recursive-descent parser.
//
//   formula  := quant | imp
//   quant    := ("exists" | "forall") VAR ["."] formula
//   imp      := disj ["->" imp]                    right associative
//   disj     := conj {"|" conj}                    left associative
//   conj     := unary {"&" unary}                  left associative
//   unary    := "~" unary | quant | "(" formula ")" | atom
//   atom     := REL "(" term {"," term} ")" | REL | term relop term
//   relop    := "=" | "<" | "<=" | ">" | ">=" | "!="
//   term     := product ["+" term]                 right associative
//   product  := primary ["*" product]              right associative
//   primary  := "(" term ")" | DECIMAL | "#"DECIMAL | FN "(" term {"," term} ")"
//             | CONST | VAR
//   VAR      := "x" | "y" | "z" | "v"DECIMAL       (x, y, z are v0, v1, v2)
//
// Unicode spellings are accepted for the connectives and quantifiers
// (¬ ∧ ∨ → ∃ ∀ ≤ ≥ ≠ ·). `<=`, `>`, `>=`, `!=` are sugar and do not survive a
// round trip. Decimal literals become numeral(n). The printer emits the
// canonical text: ASCII, variables as vN, minimal parentheses.

#include "tarski/syntax.hpp"

#include <cstring>
#include <sstream>

namespace tarski {

// ---------------------------------------------------------------------------
// Printing

namespace detail {

inline int term_prec(const Term& t) {
  if (t.kind() == Term::Kind::Apply && t.args().size() == 2) {
    if (t.symbol() == "+") return 1;
    if (t.symbol() == "*") return 2;
  }
  return 3;
}

inline void print_term(std::ostream& os, const Term& t, int ctx) {
  const int p = term_prec(t);
  const bool parens = p < ctx;
  if (parens) os << '(';
  switch (t.kind()) {
    case Term::Kind::Variable:
      os << 'v' << t.var();
      break;
    case Term::Kind::Constant:
      os << t.symbol();
      break;
    case Term::Kind::Numeral:
      os << t.value();
      break;
    case Term::Kind::Apply:
      if (p < 3) {
        // Right associative: a left operand at the same level needs parentheses.
        print_term(os, t.args()[0], p + 1);
        os << ' ' << t.symbol() << ' ';
        print_term(os, t.args()[1], p);
      } else {
        os << t.symbol() << '(';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) os << ", ";
          print_term(os, t.args()[i], 0);
        }
        os << ')';
      }
      break;
  }
  if (parens) os << ')';
}

inline int formula_prec(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      return 0;
    case Formula::Kind::Implies:
      return 1;
    case Formula::Kind::Or:
      return 2;
    case Formula::Kind::And:
      return 3;
    case Formula::Kind::Not:
      return 4;
    case Formula::Kind::Atomic:
      return 5;
  }
  return 5;
}

inline bool is_infix_relation(const std::string& r) { return r == "=" || r == "<"; }

inline void print_formula(std::ostream& os, const Formula& f, int ctx) {
  const int p = formula_prec(f);
  const bool parens = p < ctx;
  if (parens) os << '(';
  switch (f.kind()) {
    case Formula::Kind::Atomic:
      if (is_infix_relation(f.relation()) && f.terms().size() == 2) {
        print_term(os, f.terms()[0], 0);
        os << ' ' << f.relation() << ' ';
        print_term(os, f.terms()[1], 0);
      } else {
        os << f.relation();
        if (!f.terms().empty()) {
          os << '(';
          for (std::size_t i = 0; i < f.terms().size(); ++i) {
            if (i) os << ", ";
            print_term(os, f.terms()[i], 0);
          }
          os << ')';
        }
      }
      break;
    case Formula::Kind::Not:
      os << '~';
      print_formula(os, f.child(), 4);
      break;
    case Formula::Kind::And:
      print_formula(os, f.lhs(), 3);
      os << " & ";
      print_formula(os, f.rhs(), 4);
      break;
    case Formula::Kind::Or:
      print_formula(os, f.lhs(), 2);
      os << " | ";
      print_formula(os, f.rhs(), 3);
      break;
    case Formula::Kind::Implies:
      print_formula(os, f.lhs(), 2);
      os << " -> ";
      print_formula(os, f.rhs(), 1);
      break;
    case Formula::Kind::Exists:
    case Formula::Kind::Forall:
      os << (f.kind() == Formula::Kind::Exists ? "exists v" : "forall v") << f.bound_var() << ". ";
      print_formula(os, f.body(), 0);
      break;
  }
  if (parens) os << ')';
}

}  // namespace detail

inline std::string to_text(const Term& t) {
  std::ostringstream os;
  detail::print_term(os, t, 0);
  return os.str();
}

inline std::string to_text(const Formula& f) {
  std::ostringstream os;
  detail::print_formula(os, f, 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

class ParseError : public Error {
 public:
  enum class Kind { Syntax, UnknownSymbol, ArityMismatch };
  ParseError(Kind kind, std::size_t position, const std::string& message)
      : Error(message + " at position " + std::to_string(position)),
        kind_(kind),
        position_(position) {}
  Kind kind() const { return kind_; }
  std::size_t position() const { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

namespace detail {

enum class Tok {
  Ident, Number, ElementConst, LParen, RParen, Comma, Dot, Not, And, Or, Imp,
  Eq, Lt, Le, Gt, Ge, Ne, Plus, Times, Exists, Forall, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

inline std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto starts = [&](const char* lit) { return s.substr(i, std::strlen(lit)) == lit; };
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isalpha(c) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      std::string word(s.substr(start, i - start));
      Tok k = word == "exists" ? Tok::Exists : word == "forall" ? Tok::Forall : Tok::Ident;
      out.push_back({k, std::move(word), start});
      continue;
    }
    if (std::isdigit(c)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Number, std::string(s.substr(start, i - start)), start});
      continue;
    }
    if (c == '#') {
      ++i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i == start + 1) throw ParseError(ParseError::Kind::Syntax, start, "'#' must be followed by digits");
      out.push_back({Tok::ElementConst, std::string(s.substr(start, i - start)), start});
      continue;
    }
    struct Lit {
      const char* text;
      Tok kind;
    };
    static const Lit lits[] = {
        {"->", Tok::Imp}, {"<=", Tok::Le}, {">=", Tok::Ge}, {"!=", Tok::Ne},
        {"\xE2\x86\x92", Tok::Imp},     // →
        {"\xC2\xAC", Tok::Not},         // ¬
        {"\xE2\x88\xA7", Tok::And},     // ∧
        {"\xE2\x88\xA8", Tok::Or},      // ∨
        {"\xE2\x88\x83", Tok::Exists},  // ∃
        {"\xE2\x88\x80", Tok::Forall},  // ∀
        {"\xE2\x89\xA4", Tok::Le},      // ≤
        {"\xE2\x89\xA5", Tok::Ge},      // ≥
        {"\xE2\x89\xA0", Tok::Ne},      // ≠
        {"\xC2\xB7", Tok::Times},       // ·
        {"(", Tok::LParen}, {")", Tok::RParen}, {",", Tok::Comma}, {".", Tok::Dot},
        {"~", Tok::Not}, {"&", Tok::And}, {"|", Tok::Or}, {"=", Tok::Eq},
        {"<", Tok::Lt}, {">", Tok::Gt}, {"+", Tok::Plus}, {"*", Tok::Times},
    };
    bool matched = false;
    for (const auto& lit : lits) {
      if (starts(lit.text)) {
        i += std::strlen(lit.text);
        out.push_back({lit.kind, lit.text, start});
        matched = true;
        break;
      }
    }
    if (!matched)
      throw ParseError(ParseError::Kind::Syntax, start,
                       std::string("unexpected character '") + static_cast<char>(c) + "'");
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

inline std::optional<VarIndex> variable_name(const std::string& w) {
  if (w == "x") return 0;
  if (w == "y") return 1;
  if (w == "z") return 2;
  if (w.size() >= 2 && w[0] == 'v' &&
      std::all_of(w.begin() + 1, w.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    if (w.size() > 2 && w[1] == '0') return std::nullopt;
    if (w.size() > 10) return std::nullopt;
    return static_cast<VarIndex>(std::stoul(w.substr(1)));
  }
  return std::nullopt;
}

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig) : toks_(tokenize(text)), sig_(sig) {}

  Formula formula_eof() {
    Formula f = formula();
    expect(Tok::End, "end of input");
    return f;
  }
  Term term_eof() {
    Term t = term();
    expect(Tok::End, "end of input");
    return t;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(ParseError::Kind::Syntax, std::string("expected ") + what);
  }
  [[noreturn]] void fail(ParseError::Kind kind, const std::string& msg) const {
    const Token& t = peek();
    throw ParseError(kind, t.pos, msg + (t.kind == Tok::End ? " (found end of input)" : " (found '" + t.text + "')"));
  }

  Formula formula() {
    if (peek().kind == Tok::Exists || peek().kind == Tok::Forall) return quantified();
    return implication();
  }

  Formula quantified() {
    const bool is_exists = peek().kind == Tok::Exists;
    ++pos_;
    const Token& v = peek();
    auto index = v.kind == Tok::Ident && !sig_.has_symbol(v.text) ? variable_name(v.text) : std::nullopt;
    if (!index) fail(ParseError::Kind::Syntax, "expected a variable after quantifier");
    ++pos_;
    accept(Tok::Dot);
    Formula body = formula();
    return is_exists ? exists(*index, std::move(body)) : forall(*index, std::move(body));
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (accept(Tok::Imp)) return implies(std::move(lhs), implication_or_quantifier());
    return lhs;
  }
  Formula implication_or_quantifier() {
    if (peek().kind == Tok::Exists || peek().kind == Tok::Forall) return quantified();
    return implication();
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (accept(Tok::Or)) f = disj(std::move(f), conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (accept(Tok::And)) f = conj(std::move(f), unary());
    return f;
  }

  Formula unary() {
    if (accept(Tok::Not)) return neg(unary());
    if (peek().kind == Tok::Exists || peek().kind == Tok::Forall) return quantified();
    if (peek().kind == Tok::LParen) {
      // Either a parenthesised formula or an atom whose left term is
      // parenthesised; try the atom first and keep the error that got further.
      const std::size_t save = pos_;
      try {
        return atom();
      } catch (const ParseError& as_atom) {
        const std::size_t atom_reach = as_atom.position();
        pos_ = save;
        try {
          ++pos_;
          Formula f = formula();
          expect(Tok::RParen, "')'");
          return f;
        } catch (const ParseError& as_formula) {
          if (as_formula.kind() != ParseError::Kind::Syntax || as_formula.position() >= atom_reach) throw;
          throw as_atom;
        }
      }
    }
    return atom();
  }

  std::vector<Term> arguments() {
    std::vector<Term> args;
    expect(Tok::LParen, "'('");
    if (accept(Tok::RParen)) return args;
    do {
      args.push_back(term());
    } while (accept(Tok::Comma));
    expect(Tok::RParen, "')' or ','");
    return args;
  }

  Formula atom() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      if (auto arity = sig_.relation_arity(t.text); arity && t.text != "=") {
        const std::size_t at = t.pos;
        std::string name = t.text;
        ++pos_;
        std::vector<Term> args;
        if (peek().kind == Tok::LParen) args = arguments();
        if (args.size() != *arity)
          throw ParseError(ParseError::Kind::ArityMismatch, at,
                           "relation '" + name + "' expects " + std::to_string(*arity) +
                               " arguments, got " + std::to_string(args.size()));
        return Formula::atomic(std::move(name), std::move(args));
      }
      if (peek(1).kind == Tok::LParen && !sig_.function_arity(t.text))
        throw ParseError(ParseError::Kind::UnknownSymbol, t.pos, "unknown relation symbol '" + t.text + "'");
    }
    Term lhs = term();
    const Tok op = peek().kind;
    switch (op) {
      case Tok::Eq:
      case Tok::Lt:
      case Tok::Le:
      case Tok::Gt:
      case Tok::Ge:
      case Tok::Ne:
        ++pos_;
        break;
      default:
        fail(ParseError::Kind::Syntax, "expected a relation symbol");
    }
    if (op != Tok::Eq && op != Tok::Ne && !sig_.relation_arity("<"))
      fail(ParseError::Kind::UnknownSymbol, "signature has no '<'");
    Term rhs = term();
    switch (op) {
      case Tok::Eq:
        return eq(std::move(lhs), std::move(rhs));
      case Tok::Lt:
        return lt(std::move(lhs), std::move(rhs));
      case Tok::Le:
        return disj(lt(lhs, rhs), eq(lhs, rhs));
      case Tok::Gt:
        return lt(std::move(rhs), std::move(lhs));
      case Tok::Ge:
        return disj(lt(rhs, lhs), eq(lhs, rhs));
      default:
        return neg(eq(std::move(lhs), std::move(rhs)));
    }
  }

  Term term() {
    Term lhs = product();
    if (peek().kind == Tok::Plus) {
      const std::size_t at = peek().pos;
      ++pos_;
      if (sig_.function_arity("+") != 2u)
        throw ParseError(ParseError::Kind::UnknownSymbol, at, "signature has no '+'");
      return plus(std::move(lhs), term());
    }
    return lhs;
  }

  Term product() {
    Term lhs = primary();
    if (peek().kind == Tok::Times) {
      const std::size_t at = peek().pos;
      ++pos_;
      if (sig_.function_arity("*") != 2u)
        throw ParseError(ParseError::Kind::UnknownSymbol, at, "signature has no '*'");
      return times(std::move(lhs), product());
    }
    return lhs;
  }

  Term primary() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::LParen: {
        ++pos_;
        Term inner = term();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Number: {
        ++pos_;
        Nat n = parse_bigint(t.text);
        if (n >= 2 && (!sig_.has_constant("1") || sig_.function_arity("+") != 2u))
          throw ParseError(ParseError::Kind::UnknownSymbol, t.pos, "numeral needs the symbols 1 and +");
        if (n < 2 && !sig_.has_constant(t.text))
          throw ParseError(ParseError::Kind::UnknownSymbol, t.pos, "unknown constant '" + t.text + "'");
        return numeral(n);
      }
      case Tok::ElementConst:
        ++pos_;
        return Term::constant(t.text);
      case Tok::Ident: {
        ++pos_;
        if (auto arity = sig_.function_arity(t.text)) {
          std::vector<Term> args = arguments();
          if (args.size() != *arity)
            throw ParseError(ParseError::Kind::ArityMismatch, t.pos,
                             "function '" + t.text + "' expects " + std::to_string(*arity) +
                                 " arguments, got " + std::to_string(args.size()));
          return Term::apply(t.text, std::move(args));
        }
        if (sig_.has_constant(t.text)) return Term::constant(t.text);
        if (sig_.relation_arity(t.text)) {
          --pos_;
          fail(ParseError::Kind::Syntax, "relation symbol used as a term");
        }
        if (auto v = variable_name(t.text)) return Term::variable(*v);
        throw ParseError(ParseError::Kind::UnknownSymbol, t.pos, "unknown symbol '" + t.text + "'");
      }
      default:
        fail(ParseError::Kind::Syntax, "expected a term");
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
};

}  // namespace detail

/// Parses formula text over `sig`. Throws ParseError carrying the byte
/// position and whether the failure is syntax, an unknown symbol, or an arity
/// mismatch.
inline Formula parse_formula(std::string_view text, const Signature& sig) {
  return detail::Parser(text, sig).formula_eof();
}

inline Term parse_term(std::string_view text, const Signature& sig) {
  return detail::Parser(text, sig).term_eof();
}

}  // namespace tarski
