#pragma once

// Finite levels of the iterated truth-predicate hierarchy. Level k is the
// arithmetic language plus unary predicates Tr0..Tr{k-1}; Trj(t) holds when
// the value of t codes a true sentence of level j.

#include "tarski/satisfaction.hpp"

#include <memory>

namespace tarski {

constexpr unsigned kDefaultMaxLevel = 4;

class LevelError : public Error {
 public:
  using Error::Error;
};

struct HierarchyLevel {
  unsigned k = 0;
  Signature signature;
};

inline Signature language_level(unsigned k, unsigned max_level = kDefaultMaxLevel) {
  if (k > max_level)
    throw LevelError("level " + std::to_string(k) + " exceeds the configured maximum " + std::to_string(max_level));
  Signature sig = arithmetic_signature();
  for (unsigned j = 0; j < k; ++j) sig.add_relation(truth_predicate_name(j), 1);
  sig.set_level(k);
  return sig;
}

inline HierarchyLevel hierarchy_level(unsigned k, unsigned max_level = kDefaultMaxLevel) {
  return {k, language_level(k, max_level)};
}

/// Dereference counts per level recorded while evaluating.
struct DerefStats {
  std::vector<std::size_t> by_level;
  std::size_t non_codes = 0;

  std::size_t at(unsigned j) const { return j < by_level.size() ? by_level[j] : 0; }
};

struct LevelResult {
  TruthValue3 value;
  DerefStats stats;
};

namespace detail {

/// Hook interpreting Trj atoms. Signatures are built once per level.
inline AtomHook truth_hook(unsigned level, std::shared_ptr<DerefStats> stats) {
  auto sigs = std::make_shared<std::vector<Signature>>();
  for (unsigned j = 0; j < level; ++j) sigs->push_back(language_level(j, level));
  return [sigs, stats](const NatEvaluator& ev, const std::string& relation, std::span<const Nat> args,
                       std::uint32_t depth_left) -> std::optional<TruthValue3> {
    auto j = truth_predicate_level(relation);
    if (!j || args.size() != 1) return std::nullopt;
    if (*j >= sigs->size()) throw LevelError("predicate " + relation + " is above the evaluation level");
    if (stats) {
      if (stats->by_level.size() <= *j) stats->by_level.resize(*j + 1);
      ++stats->by_level[*j];
    }
    auto sentence = decode_sentence(args[0], (*sigs)[*j]);
    if (!sentence) {
      if (stats) ++stats->non_codes;
      return TruthValue3::of(false);
    }
    if (depth_left == 0) return TruthValue3::unknown(ev.budget().depth_bound);
    NatAssignment empty;
    return ev.eval(*sentence, empty, depth_left - 1);
  };
}

}  // namespace detail

/// Budgeted evaluation at level k. Throws LevelError when phi mentions Trj
/// with j >= k, and SignatureError for other foreign symbols.
inline LevelResult eval_level_traced(const Formula& phi, const NatAssignment& rho, const Budget& b, unsigned k,
                                     unsigned max_level = kDefaultMaxLevel) {
  const Signature sig = language_level(k, max_level);
  const unsigned needed = truth_level(phi);
  if (needed > k)
    throw LevelError("formula uses " + truth_predicate_name(needed - 1) + " but the evaluation level is " +
                     std::to_string(k));
  check_formula(phi, sig);
  auto stats = std::make_shared<DerefStats>();
  NatEvaluator ev(b, detail::truth_hook(k, stats));
  LevelResult r;
  r.value = ev.eval(phi, rho);
  r.stats = *stats;
  return r;
}

inline TruthValue3 eval_level(const Formula& phi, const NatAssignment& rho, const Budget& b, unsigned k,
                              unsigned max_level = kDefaultMaxLevel) {
  return eval_level_traced(phi, rho, b, k, max_level).value;
}

/// Semantics for the truth-conditions checker at level k.
inline NaturalSemantics level_semantics(unsigned k, const Budget& b) {
  NaturalSemantics sem;
  sem.budget = b;
  sem.hook = detail::truth_hook(k, nullptr);
  sem.signature = language_level(k, std::max(k, kDefaultMaxLevel));
  return sem;
}

struct CoherenceEntry {
  std::string sentence;
  Nat code;
  TruthValue3 at_j;
  TruthValue3 at_k;
};

struct CoherenceReport {
  unsigned j = 0;
  unsigned k = 0;
  std::vector<CoherenceEntry> entries;
  std::vector<std::size_t> disagreements;  // indices into entries
  std::size_t unknown_j = 0;
  std::size_t unknown_k = 0;
  bool coherent() const { return disagreements.empty(); }
};

/// Compares verdicts of every level-j sentence at levels j and k.
inline CoherenceReport coherence_check(unsigned j, unsigned k, const std::vector<Formula>& corpus, const Budget& b) {
  if (j > k) throw LevelError("coherence check needs j <= k");
  const Signature sig_j = language_level(j, std::max(k, kDefaultMaxLevel));
  for (const auto& f : corpus) {
    if (!is_sentence(f)) throw LevelError("corpus entry is not a sentence: " + to_text(f));
    if (!conforms(f, sig_j)) throw LevelError("corpus entry is not a level-" + std::to_string(j) + " sentence: " + to_text(f));
  }
  CoherenceReport report{j, k, {}, {}, 0, 0};
  const unsigned max_level = std::max(k, kDefaultMaxLevel);
  for (const auto& f : corpus) {
    CoherenceEntry e{to_text(f), encode(f).value, eval_level(f, {}, b, j, max_level), eval_level(f, {}, b, k, max_level)};
    if (!e.at_j.determined()) ++report.unknown_j;
    if (!e.at_k.determined()) ++report.unknown_k;
    if (e.at_j.determined() && e.at_k.determined() && e.at_j.verdict != e.at_k.verdict)
      report.disagreements.push_back(report.entries.size());
    report.entries.push_back(std::move(e));
  }
  return report;
}

/// Trj(numeral(code of inner)).
inline Formula truth_atom(unsigned j, const Formula& inner) {
  return Formula::atomic(truth_predicate_name(j), {numeral(encode(inner).value)});
}

}  // namespace tarski
