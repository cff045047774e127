#pragma once

// Automorphisms and definability on finite structures.
//
// Over a finite structure a set X is first-order definable with parameters p
// exactly when every automorphism fixing p maps X onto itself, i.e. when X is
// a union of orbits of the pointwise stabilizer of p. A non-definable X comes
// with an automorphism moving some t outside X onto some s inside X, which
// yields two expansions (S, X) and (S, pi(X)) of one structure that disagree
// on the added predicate.

#include "tarski/satisfaction.hpp"

#include <functional>
#include <numeric>

namespace tarski {

constexpr std::size_t kDefaultSizeLimit = 10;

class SizeLimitError : public Error {
 public:
  using Error::Error;
};

struct Automorphism {
  std::vector<Element> perm;

  Element operator()(Element e) const { return perm.at(e); }
  friend bool operator==(const Automorphism&, const Automorphism&) = default;
  friend auto operator<=>(const Automorphism&, const Automorphism&) = default;
};

inline Automorphism identity_automorphism(std::size_t n) {
  Automorphism a;
  a.perm.resize(n);
  std::iota(a.perm.begin(), a.perm.end(), Element{0});
  return a;
}

inline Automorphism inverse(const Automorphism& a) {
  Automorphism inv;
  inv.perm.resize(a.perm.size());
  for (std::size_t i = 0; i < a.perm.size(); ++i) inv.perm.at(a.perm[i]) = static_cast<Element>(i);
  return inv;
}

/// (a after b)(x) = a(b(x)).
inline Automorphism compose(const Automorphism& a, const Automorphism& b) {
  Automorphism c;
  c.perm.resize(b.perm.size());
  for (std::size_t i = 0; i < b.perm.size(); ++i) c.perm[i] = a.perm.at(b.perm[i]);
  return c;
}

namespace detail {

inline void for_each_tuple(std::size_t n, std::size_t arity, const std::function<void(std::span<const Element>)>& f) {
  std::vector<Element> t(arity, 0);
  if (arity > 0 && n == 0) return;
  while (true) {
    f(t);
    std::size_t i = arity;
    while (i > 0) {
      --i;
      if (++t[i] < n) break;
      t[i] = 0;
      if (i == 0) return;
    }
    if (arity == 0) return;
  }
}

}  // namespace detail

/// True when m : A -> B is a bijection preserving constants, function tables
/// and relations in both directions. Independent of the search below.
inline bool is_isomorphism(const FiniteStructure& A, const FiniteStructure& B, const std::vector<Element>& m) {
  if (A.size() != B.size() || m.size() != A.size() || !(A.signature() == B.signature())) return false;
  std::vector<char> hit(B.size(), 0);
  for (Element e : m) {
    if (e >= B.size() || hit[e]) return false;
    hit[e] = 1;
  }
  for (const auto& c : A.signature().constants())
    if (m[A.constant(c)] != B.constant(c)) return false;
  std::vector<Element> image;
  for (const auto& f : A.signature().functions()) {
    bool ok = true;
    detail::for_each_tuple(A.size(), f.arity, [&](std::span<const Element> t) {
      if (!ok) return;
      image.assign(t.size(), 0);
      for (std::size_t i = 0; i < t.size(); ++i) image[i] = m[t[i]];
      ok = m[A.apply(f.name, t)] == B.apply(f.name, image);
    });
    if (!ok) return false;
  }
  for (const auto& r : A.signature().relations()) {
    bool ok = true;
    detail::for_each_tuple(A.size(), r.arity, [&](std::span<const Element> t) {
      if (!ok) return;
      image.assign(t.size(), 0);
      for (std::size_t i = 0; i < t.size(); ++i) image[i] = m[t[i]];
      ok = A.holds(r.name, t) == B.holds(r.name, image);
    });
    if (!ok) return false;
  }
  return true;
}

inline bool verify_automorphism(const FiniteStructure& S, const Automorphism& pi) {
  return is_isomorphism(S, S, pi.perm);
}

namespace detail {

/// Joint color refinement of two structures over one signature. Elements of
/// different colors cannot correspond under any isomorphism respecting the
/// individualized pairs.
class JointColoring {
 public:
  JointColoring(const FiniteStructure& A, const FiniteStructure& B,
                const std::vector<std::pair<Element, Element>>& individualized) {
    std::vector<std::vector<long>> sa(A.size()), sb(B.size());
    for (std::size_t i = 0; i < individualized.size(); ++i) {
      sa.at(individualized[i].first).push_back(1000 + static_cast<long>(i));
      sb.at(individualized[i].second).push_back(1000 + static_cast<long>(i));
    }
    const auto& sig = A.signature();
    for (std::size_t c = 0; c < sig.constants().size(); ++c) {
      sa[A.constant(sig.constants()[c])].push_back(-1 - static_cast<long>(c));
      sb[B.constant(sig.constants()[c])].push_back(-1 - static_cast<long>(c));
    }
    assign(sa, sb);
    std::size_t classes = count();
    while (true) {
      refine(A, sa, ca_);
      refine(B, sb, cb_);
      assign(sa, sb);
      const std::size_t now = count();
      if (now == classes) break;
      classes = now;
    }
  }

  int color_a(Element e) const { return ca_[e]; }
  int color_b(Element e) const { return cb_[e]; }
  bool compatible() const {
    std::vector<int> a = ca_, b = cb_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  }

 private:
  void assign(std::vector<std::vector<long>>& sa, std::vector<std::vector<long>>& sb) {
    std::map<std::vector<long>, int> palette;
    for (auto& s : sa) palette.emplace(s, 0);
    for (auto& s : sb) palette.emplace(s, 0);
    int next = 0;
    for (auto& [k, v] : palette) v = next++;
    ca_.assign(sa.size(), 0);
    cb_.assign(sb.size(), 0);
    for (std::size_t i = 0; i < sa.size(); ++i) ca_[i] = palette[sa[i]];
    for (std::size_t i = 0; i < sb.size(); ++i) cb_[i] = palette[sb[i]];
  }

  std::size_t count() const {
    std::set<int> s(ca_.begin(), ca_.end());
    s.insert(cb_.begin(), cb_.end());
    return s.size();
  }

  /// New signature of each element: old color plus, for every tuple of every
  /// symbol in which it occurs, the symbol, its position, the truth bit or
  /// value color, and the colors of the whole tuple.
  static void refine(const FiniteStructure& S, std::vector<std::vector<long>>& sig_out, const std::vector<int>& color) {
    const std::size_t n = S.size();
    std::vector<std::vector<std::vector<long>>> items(n);
    const auto& sig = S.signature();
    long sym = 0;
    for (const auto& r : sig.relations()) {
      const long id = sym++;
      for_each_tuple(n, r.arity, [&](std::span<const Element> t) {
        std::vector<long> row{id, S.holds(r.name, t) ? 1L : 0L};
        for (Element e : t) row.push_back(color[e]);
        for (std::size_t i = 0; i < t.size(); ++i) {
          auto item = row;
          item.push_back(static_cast<long>(i));
          items[t[i]].push_back(std::move(item));
        }
      });
    }
    for (const auto& f : sig.functions()) {
      const long id = sym++;
      for_each_tuple(n, f.arity, [&](std::span<const Element> t) {
        const Element v = S.apply(f.name, t);
        std::vector<long> row{id, color[v]};
        for (Element e : t) row.push_back(color[e]);
        for (std::size_t i = 0; i < t.size(); ++i) {
          auto item = row;
          item.push_back(static_cast<long>(i));
          items[t[i]].push_back(std::move(item));
        }
        auto item = row;
        item.push_back(-1);
        items[v].push_back(std::move(item));
      });
    }
    for (std::size_t e = 0; e < n; ++e) {
      std::sort(items[e].begin(), items[e].end());
      std::vector<long> s{color[e]};
      for (const auto& it : items[e]) {
        s.push_back(-7);
        s.insert(s.end(), it.begin(), it.end());
      }
      sig_out[e] = std::move(s);
    }
  }

  std::vector<int> ca_, cb_;
};

/// Backtracking search for isomorphisms A -> B extending fixed pairs.
/// Lexicographic mode extends the least unmapped element of A and tries
/// images in increasing order, so isomorphisms arrive in lexicographic order.
/// Alternating mode extends from the A side and the B side in turn.
class IsoSearch {
 public:
  IsoSearch(const FiniteStructure& A, const FiniteStructure& B, std::vector<std::pair<Element, Element>> fixed)
      : A_(A), B_(B), fixed_(std::move(fixed)), colors_(A, B, fixed_) {}

  /// visit returns false to stop. Returns the number of isomorphisms visited.
  std::size_t run(const std::function<bool(const std::vector<Element>&)>& visit, bool alternate = false) {
    visited_ = 0;
    stop_ = false;
    const std::size_t n = A_.size();
    if (n != B_.size() || !colors_.compatible()) return 0;
    fwd_.assign(n, kNone);
    bwd_.assign(n, kNone);
    for (const auto& [a, b] : fixed_) {
      if (a >= n || b >= n) return 0;
      if (fwd_[a] != kNone && fwd_[a] != b) return 0;
      if (bwd_[b] != kNone && bwd_[b] != a) return 0;
      if (colors_.color_a(a) != colors_.color_b(b)) return 0;
      fwd_[a] = b;
      bwd_[b] = a;
    }
    for (const auto& [a, b] : fixed_)
      if (!consistent(a)) return 0;
    for (const auto& c : A_.signature().constants()) {
      const Element a = A_.constant(c), b = B_.constant(c);
      if (fwd_[a] == kNone && bwd_[b] == kNone) {
        fwd_[a] = b;
        bwd_[b] = a;
        if (!consistent(a)) return 0;
      } else if (fwd_[a] != b) {
        return 0;
      }
    }
    visit_ = &visit;
    alternate_ = alternate;
    extend(0);
    return visited_;
  }

 private:
  static constexpr Element kNone = static_cast<Element>(-1);

  void extend(std::size_t step) {
    if (stop_) return;
    const std::size_t n = A_.size();
    Element a_free = kNone, b_free = kNone;
    for (Element e = 0; e < n && a_free == kNone; ++e)
      if (fwd_[e] == kNone) a_free = e;
    if (a_free == kNone) {
      ++visited_;
      if (!(*visit_)(fwd_)) stop_ = true;
      return;
    }
    for (Element e = 0; e < n && b_free == kNone; ++e)
      if (bwd_[e] == kNone) b_free = e;
    const bool from_b = alternate_ && step % 2 == 1;
    for (Element cand = 0; cand < n && !stop_; ++cand) {
      const Element a = from_b ? cand : a_free;
      const Element b = from_b ? b_free : cand;
      if (fwd_[a] != kNone || bwd_[b] != kNone) continue;
      if (colors_.color_a(a) != colors_.color_b(b)) continue;
      fwd_[a] = b;
      bwd_[b] = a;
      if (consistent(a)) extend(step + 1);
      fwd_[a] = kNone;
      bwd_[b] = kNone;
    }
  }

  /// Checks every tuple of mapped elements that involves `a`.
  bool consistent(Element a) {
    std::vector<Element> dom;
    for (Element e = 0; e < A_.size(); ++e)
      if (fwd_[e] != kNone) dom.push_back(e);
    const auto& sig = A_.signature();
    std::vector<Element> t, img;
    auto check = [&](std::size_t arity, const std::function<bool()>& test) {
      bool ok = true;
      for_each_tuple(dom.size(), arity, [&](std::span<const Element> idx) {
        if (!ok) return;
        t.assign(arity, 0);
        img.assign(arity, 0);
        bool involves = false;
        for (std::size_t i = 0; i < arity; ++i) {
          t[i] = dom[idx[i]];
          img[i] = fwd_[t[i]];
          involves = involves || t[i] == a;
        }
        if (involves || arity == 0) ok = test();
      });
      return ok;
    };
    for (const auto& r : sig.relations())
      if (!check(r.arity, [&] { return A_.holds(r.name, t) == B_.holds(r.name, img); })) return false;
    // A function tuple is affected when its arguments, its value or the
    // image of its value changed; rechecking every mapped tuple is cheap.
    for (const auto& f : sig.functions()) {
      bool ok = true;
      for_each_tuple(dom.size(), f.arity, [&](std::span<const Element> idx) {
        if (!ok) return;
        t.assign(f.arity, 0);
        img.assign(f.arity, 0);
        for (std::size_t i = 0; i < f.arity; ++i) {
          t[i] = dom[idx[i]];
          img[i] = fwd_[t[i]];
        }
        const Element va = A_.apply(f.name, t);
        const Element vb = B_.apply(f.name, img);
        ok = fwd_[va] != kNone ? fwd_[va] == vb : bwd_[vb] == kNone;
      });
      if (!ok) return false;
    }
    return true;
  }

  const FiniteStructure& A_;
  const FiniteStructure& B_;
  std::vector<std::pair<Element, Element>> fixed_;
  JointColoring colors_;
  std::vector<Element> fwd_, bwd_;
  const std::function<bool(const std::vector<Element>&)>* visit_ = nullptr;
  bool alternate_ = false;
  bool stop_ = false;
  std::size_t visited_ = 0;
};

inline void check_limit(const FiniteStructure& S, std::size_t limit) {
  if (S.size() > limit)
    throw SizeLimitError("structure of size " + std::to_string(S.size()) + " exceeds the limit " + std::to_string(limit));
}

inline void check_elements(const FiniteStructure& S, const std::vector<Element>& xs, const char* what) {
  for (Element e : xs)
    if (e >= S.size()) throw Error(std::string(what) + " element " + std::to_string(e) + " outside the domain");
}

inline std::vector<std::pair<Element, Element>> fixing(const std::vector<Element>& params) {
  std::vector<std::pair<Element, Element>> out;
  for (Element p : params) out.emplace_back(p, p);
  return out;
}

}  // namespace detail

/// The complete automorphism group in lexicographic order.
inline std::vector<Automorphism> automorphisms(const FiniteStructure& S, std::size_t limit = kDefaultSizeLimit) {
  detail::check_limit(S, limit);
  S.validate();
  std::vector<Automorphism> out;
  detail::IsoSearch(S, S, {}).run([&](const std::vector<Element>& m) {
    out.push_back({m});
    return true;
  });
  return out;
}

/// Lexicographically least automorphism fixing params and sending `from` to
/// `to`, if any.
inline std::optional<Automorphism> find_automorphism(const FiniteStructure& S, const std::vector<Element>& params,
                                                     Element from, Element to, std::size_t limit = kDefaultSizeLimit) {
  detail::check_limit(S, limit);
  detail::check_elements(S, params, "parameter");
  auto fixed = detail::fixing(params);
  fixed.emplace_back(from, to);
  std::optional<Automorphism> found;
  detail::IsoSearch(S, S, fixed).run([&](const std::vector<Element>& m) {
    found = Automorphism{m};
    return false;
  });
  return found;
}

using Partition = std::vector<std::vector<Element>>;

/// Orbits of the automorphisms fixing params pointwise, each sorted, listed by
/// least element.
inline Partition orbits(const FiniteStructure& S, const std::vector<Element>& params,
                        std::size_t limit = kDefaultSizeLimit) {
  detail::check_limit(S, limit);
  S.validate();
  detail::check_elements(S, params, "parameter");
  const std::size_t n = S.size();
  std::vector<Element> parent(n);
  std::iota(parent.begin(), parent.end(), Element{0});
  std::function<Element(Element)> root = [&](Element e) { return parent[e] == e ? e : parent[e] = root(parent[e]); };
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b) {
      if (root(a) == root(b)) continue;
      if (find_automorphism(S, params, a, b, limit)) parent[root(b)] = root(a);
    }
  std::map<Element, std::vector<Element>> groups;
  for (Element e = 0; e < n; ++e) groups[root(e)].push_back(e);
  Partition out;
  for (auto& [r, g] : groups) out.push_back(std::move(g));
  std::sort(out.begin(), out.end());
  return out;
}

inline bool definable_with_params(const std::set<Element>& X, const FiniteStructure& S,
                                  const std::vector<Element>& params, std::size_t limit = kDefaultSizeLimit) {
  detail::check_elements(S, std::vector<Element>(X.begin(), X.end()), "subset");
  for (const auto& orbit : orbits(S, params, limit)) {
    const std::size_t inside = std::count_if(orbit.begin(), orbit.end(), [&](Element e) { return X.count(e) > 0; });
    if (inside != 0 && inside != orbit.size()) return false;
  }
  return true;
}

struct DisagreementWitness {
  Automorphism pi;
  Element s = 0;
  Element t = 0;
  std::vector<Element> fixed_params;
};

/// Lexicographically least (s, t) with s in X, t outside X and an
/// automorphism fixing params sending t to s; pi is the least such map.
inline std::optional<DisagreementWitness> disagreement_pair(const FiniteStructure& S, const std::set<Element>& X,
                                                            const std::vector<Element>& params,
                                                            std::size_t limit = kDefaultSizeLimit) {
  detail::check_limit(S, limit);
  S.validate();
  detail::check_elements(S, std::vector<Element>(X.begin(), X.end()), "subset");
  detail::check_elements(S, params, "parameter");
  for (Element s : X)
    for (Element t = 0; t < S.size(); ++t) {
      if (X.count(t)) continue;
      if (auto pi = find_automorphism(S, params, t, s, limit)) return DisagreementWitness{*pi, s, t, params};
    }
  return std::nullopt;
}

inline std::set<Element> apply_automorphism(const std::set<Element>& X, const Automorphism& pi) {
  std::set<Element> out;
  for (Element e : X) out.insert(pi(e));
  return out;
}

/// The expansion of S by a unary predicate interpreted as X.
inline FiniteStructure expand_with_predicate(const FiniteStructure& S, const std::string& name,
                                             const std::set<Element>& X) {
  Signature sig = S.signature();
  sig.add_relation(name, 1);
  FiniteStructure out(S.size(), sig);
  for (const auto& c : S.signature().constants()) out.set_constant(c, S.constant(c));
  for (const auto& f : S.signature().functions()) out.set_function(f.name, S.function_table(f.name));
  for (const auto& r : S.signature().relations())
    for (const auto& t : S.tuples(r.name)) out.set_holds(r.name, t);
  for (Element e : X) out.set_holds(name, std::vector<Element>{e});
  return out;
}

/// An isomorphism A -> B built by alternately extending a partial isomorphism
/// from the A side and from the B side, backtracking on failure.
inline std::optional<std::vector<Element>> back_and_forth(const FiniteStructure& A, const FiniteStructure& B,
                                                          std::size_t limit = kDefaultSizeLimit) {
  if (!(A.signature() == B.signature())) throw SignatureError("back_and_forth needs structures over one signature");
  detail::check_limit(A, limit);
  detail::check_limit(B, limit);
  A.validate();
  B.validate();
  if (A.size() != B.size()) return std::nullopt;
  std::optional<std::vector<Element>> found;
  detail::IsoSearch(A, B, {}).run(
      [&](const std::vector<Element>& m) {
        found = m;
        return false;
      },
      true);
  return found;
}

}  // namespace tarski
