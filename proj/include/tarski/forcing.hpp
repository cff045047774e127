#pragma once

// Finite-extension constructions. A condition is a finite binary string read
// as a partial characteristic function of B subset of N, with N x N folded
// into N by Cantor pairing. Requirements are decidable sets of strings; each
// is either entered by extending the condition or certified unenterable up to
// a search bound.
//
// Requirement mini-language:
//   expr   := conj ('|' conj)*
//   conj   := unary ('&' unary)*
//   unary  := '~' unary | '(' expr ')' | atom
//   atom   := contains(BITS) | prefix(BITS) | suffix(BITS)
//           | ones(even) | ones(odd) | len>=N | bit(N,B)
//           | section(R,K,B) | true | false
// where BITS is a string over {0,1}, N, R, K are naturals and B is 0 or 1.
// section(R,K,B) holds when the bit at position pair(R,K) is decided and
// equals B.

#include "tarski/arithmetization.hpp"

#include <functional>
#include <random>

namespace tarski {

struct Condition {
  std::string bits;

  std::size_t length() const { return bits.size(); }
  bool extends(const Condition& c) const { return bits.size() >= c.bits.size() && bits.compare(0, c.bits.size(), c.bits) == 0; }
  std::optional<bool> at(const Nat& i) const {
    if (i >= bits.size()) return std::nullopt;
    return bits[static_cast<std::size_t>(i)] == '1';
  }
  friend bool operator==(const Condition&, const Condition&) = default;
};

inline void validate_bits(std::string_view s) {
  for (char ch : s)
    if (ch != '0' && ch != '1') throw Error("condition strings use only 0 and 1");
}

/// The condition of length index + 1 that is 0 everywhere except `value` at
/// `index`, or `c` padded with zeros and updated at `index`.
inline Condition with_bit(Condition c, std::size_t index, bool value) {
  if (c.bits.size() <= index) c.bits.resize(index + 1, '0');
  c.bits[index] = value ? '1' : '0';
  return c;
}

using StringPredicate = std::function<bool(std::string_view)>;

struct Requirement {
  std::string label;
  StringPredicate member;
  std::optional<bool> dense_hint;
};

struct MeetStatus {
  enum class Kind { Met, Sealed, Exhausted };
  Kind kind = Kind::Exhausted;
  /// Met: length of the initial segment found in the requirement.
  std::size_t length = 0;
  /// Length up to which extensions were searched.
  std::size_t searched_to = 0;
  std::size_t nodes = 0;

  bool met() const { return kind == Kind::Met; }
  bool sealed() const { return kind == Kind::Sealed; }
  friend bool operator==(const MeetStatus&, const MeetStatus&) = default;
};

inline std::string to_string(MeetStatus::Kind k) {
  switch (k) {
    case MeetStatus::Kind::Met:
      return "met";
    case MeetStatus::Kind::Sealed:
      return "sealed";
    case MeetStatus::Kind::Exhausted:
      return "exhausted";
  }
  return "?";
}

constexpr std::size_t kDefaultNodeBudget = std::size_t{1} << 22;

/// Searches initial segments of c first, then extensions of c by length up to
/// `bound` and lexicographically within a length. Sealed means no string of
/// length <= bound extending c lies in the requirement; it is a fact about the
/// bound, not a proof that no extension exists.
inline std::pair<Condition, MeetStatus> extend_to_meet(const Condition& c, const Requirement& r, std::size_t bound,
                                                       std::size_t node_budget = kDefaultNodeBudget) {
  if (bound < c.length()) throw Error("search bound is shorter than the condition");
  MeetStatus st;
  for (std::size_t len = 0; len <= c.length(); ++len) {
    ++st.nodes;
    if (r.member(std::string_view(c.bits).substr(0, len))) {
      st.kind = MeetStatus::Kind::Met;
      st.length = len;
      st.searched_to = c.length();
      return {c, st};
    }
  }
  std::string s = c.bits;
  for (std::size_t extra = 1; c.length() + extra <= bound; ++extra) {
    if (extra >= 63) throw Error("extension search too wide");
    const std::uint64_t count = std::uint64_t{1} << extra;
    s.resize(c.length() + extra);
    for (std::uint64_t k = 0; k < count; ++k) {
      if (st.nodes >= node_budget) {
        st.kind = MeetStatus::Kind::Exhausted;
        st.searched_to = c.length() + extra - 1;
        return {c, st};
      }
      ++st.nodes;
      for (std::size_t i = 0; i < extra; ++i) s[c.length() + i] = (k >> (extra - 1 - i)) & 1 ? '1' : '0';
      if (r.member(s)) {
        st.kind = MeetStatus::Kind::Met;
        st.length = s.size();
        st.searched_to = s.size();
        return {Condition{s}, st};
      }
    }
  }
  st.kind = MeetStatus::Kind::Sealed;
  st.searched_to = bound;
  return {c, st};
}

struct Construction {
  Condition condition;
  std::vector<MeetStatus> statuses;
  std::vector<Condition> stages;  // condition after each requirement
};

/// Threads one condition through the requirements in order. Each stage may
/// extend the current condition by at most `bound` bits.
inline Construction run_construction(const std::vector<Requirement>& reqs, std::size_t bound,
                                     std::size_t node_budget = kDefaultNodeBudget) {
  Construction out;
  for (const auto& r : reqs) {
    auto [next, status] = extend_to_meet(out.condition, r, out.condition.length() + bound, node_budget);
    out.condition = std::move(next);
    out.statuses.push_back(status);
    out.stages.push_back(out.condition);
  }
  return out;
}

/// Row n of the plane-coded set: position k is decided when pair(n, k) lies
/// within the condition. Reports `width` positions, or the decided ones when
/// width is zero.
inline std::vector<std::optional<bool>> section(const Condition& c, const Nat& n, std::size_t width = 0) {
  std::vector<std::optional<bool>> out;
  for (std::size_t k = 0;; ++k) {
    const Nat idx = pair(n, Nat(k));
    if (width == 0 && idx >= c.length()) break;
    if (width != 0 && k >= width) break;
    out.push_back(c.at(idx));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Built-in requirements

inline Requirement contains_requirement(const std::string& pattern) {
  validate_bits(pattern);
  return {"contains(" + pattern + ")",
          [pattern](std::string_view s) { return s.find(pattern) != std::string_view::npos; }, true};
}

inline Requirement prefix_requirement(const std::string& pattern) {
  validate_bits(pattern);
  return {"prefix(" + pattern + ")", [pattern](std::string_view s) { return s.substr(0, pattern.size()) == pattern; },
          false};
}

inline Requirement parity_requirement(bool even) {
  return {even ? "ones(even)" : "ones(odd)",
          [even](std::string_view s) { return (std::count(s.begin(), s.end(), '1') % 2 == 0) == even; }, true};
}

inline Requirement section_requirement(const Nat& row, const Nat& k, bool value) {
  const Nat idx = pair(row, k);
  return {"section(" + row.str() + "," + k.str() + "," + (value ? "1" : "0") + ")",
          [idx, value](std::string_view s) { return idx < s.size() && (s[static_cast<std::size_t>(idx)] == '1') == value; },
          std::nullopt};
}

class RequirementParseError : public Error {
 public:
  RequirementParseError(const std::string& what, std::size_t pos)
      : Error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

class RequirementParser {
 public:
  explicit RequirementParser(std::string_view text) : s_(text) {}

  StringPredicate parse() {
    StringPredicate p = disjunction();
    skip();
    if (i_ != s_.size()) fail("unexpected input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw RequirementParseError(what, i_); }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(std::string_view tok) {
    skip();
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::string word() {
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    return std::string(s_.substr(start, i_ - start));
  }
  std::string bits() {
    std::string w = word();
    if (w.empty()) fail("expected a bit string");
    for (char ch : w)
      if (ch != '0' && ch != '1') fail("bit strings use only 0 and 1");
    return w;
  }
  std::uint64_t natural() {
    std::string w = word();
    if (w.empty() || !std::all_of(w.begin(), w.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
      fail("expected a natural number");
    return std::stoull(w);
  }
  bool bit_value() {
    auto n = natural();
    if (n > 1) fail("expected 0 or 1");
    return n == 1;
  }

  StringPredicate disjunction() {
    StringPredicate p = conjunction();
    while (eat("|")) {
      StringPredicate q = conjunction();
      p = [p, q](std::string_view s) { return p(s) || q(s); };
    }
    return p;
  }
  StringPredicate conjunction() {
    StringPredicate p = unary();
    while (eat("&")) {
      StringPredicate q = unary();
      p = [p, q](std::string_view s) { return p(s) && q(s); };
    }
    return p;
  }
  StringPredicate unary() {
    if (eat("~")) {
      StringPredicate p = unary();
      return [p](std::string_view s) { return !p(s); };
    }
    if (eat("(")) {
      StringPredicate p = disjunction();
      expect(")");
      return p;
    }
    return atom();
  }
  StringPredicate atom() {
    const std::size_t at = (skip(), i_);
    const std::string name = word();
    if (name == "true") return [](std::string_view) { return true; };
    if (name == "false") return [](std::string_view) { return false; };
    if (name == "len") {
      expect(">=");
      const auto n = natural();
      return [n](std::string_view s) { return s.size() >= n; };
    }
    if (name == "contains" || name == "prefix" || name == "suffix") {
      expect("(");
      const std::string b = bits();
      expect(")");
      if (name == "contains") return contains_requirement(b).member;
      if (name == "prefix") return prefix_requirement(b).member;
      return [b](std::string_view s) { return s.size() >= b.size() && s.substr(s.size() - b.size()) == b; };
    }
    if (name == "ones") {
      expect("(");
      const std::string w = word();
      if (w != "even" && w != "odd") fail("expected even or odd");
      expect(")");
      return parity_requirement(w == "even").member;
    }
    if (name == "bit") {
      expect("(");
      const auto n = natural();
      expect(",");
      const bool b = bit_value();
      expect(")");
      return [n, b](std::string_view s) { return n < s.size() && (s[n] == '1') == b; };
    }
    if (name == "section") {
      expect("(");
      const auto r = natural();
      expect(",");
      const auto k = natural();
      expect(",");
      const bool b = bit_value();
      expect(")");
      return section_requirement(Nat(r), Nat(k), b).member;
    }
    i_ = at;
    fail(name.empty() ? "expected a requirement" : "unknown requirement '" + name + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline Requirement parse_requirement(std::string_view text, std::string label = {}) {
  StringPredicate p = detail::RequirementParser(text).parse();
  return {label.empty() ? std::string(text) : std::move(label), std::move(p), std::nullopt};
}

/// Sampled density: every sampled string of length <= max_length has an
/// extension by at most `reach` bits in the requirement.
inline bool dense_by_sampling(const Requirement& r, std::size_t samples, std::size_t max_length, std::size_t reach,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_length)(rng);
    Condition c;
    for (std::size_t k = 0; k < len; ++k) c.bits.push_back(rng() & 1 ? '1' : '0');
    if (!extend_to_meet(c, r, len + reach).second.met()) return false;
  }
  return true;
}

}  // namespace tarski
