#include "tarski/testing/generators.hpp"
#include "tarski/text.hpp"
#include "tarski/undefinability.hpp"

#include <gtest/gtest.h>

using namespace tarski;
namespace gen = tarski::testing;
using gen::Rng;

namespace {

const Budget kBudget{64, 24};
const Formula kZeroEqZero = eq(zero(), zero());

}  // namespace

TEST(Levels, Signatures) {
  const Signature l0 = language_level(0);
  EXPECT_EQ(l0.relations(), arithmetic_signature().relations());
  const Signature l1 = language_level(1);
  EXPECT_EQ(l1.relation_arity("Tr0"), 1u);
  EXPECT_FALSE(l1.relation_arity("Tr1"));
  const Signature l2 = language_level(2);
  EXPECT_EQ(l2.relation_arity("Tr0"), 1u);
  EXPECT_EQ(l2.relation_arity("Tr1"), 1u);
  EXPECT_EQ(l2.relations().size(), l0.relations().size() + 2);
  EXPECT_THROW(language_level(kDefaultMaxLevel + 1), LevelError);
  EXPECT_EQ(hierarchy_level(2).signature, l2);
}

TEST(Levels, TruthAtomExamples) {
  const Formula inner = truth_atom(0, kZeroEqZero);
  EXPECT_TRUE(eval_level(inner, {}, kBudget, 1).is_true());
  EXPECT_TRUE(eval_level(truth_atom(0, neg(kZeroEqZero)), {}, kBudget, 1).is_false());

  const LevelResult two = eval_level_traced(truth_atom(1, inner), {}, kBudget, 2);
  EXPECT_TRUE(two.value.is_true());
  EXPECT_EQ(two.stats.at(1), 1u);
  EXPECT_EQ(two.stats.at(0), 1u);

  const LevelResult bogus = eval_level_traced(Formula::atomic("Tr0", {numeral(7)}), {}, kBudget, 1);
  EXPECT_TRUE(bogus.value.is_false());
  EXPECT_EQ(bogus.stats.non_codes, 1u);
}

TEST(Levels, CodeOfHigherLevelSentenceIsNotALowerCode) {
  // Tr0 applied to the code of a level-1 sentence: not a level-0 sentence.
  const Formula level1 = truth_atom(0, kZeroEqZero);
  EXPECT_TRUE(eval_level(truth_atom(0, level1), {}, kBudget, 1).is_false());
  EXPECT_TRUE(eval_level(truth_atom(1, level1), {}, kBudget, 2).is_true());
}

TEST(Levels, LevelViolation) {
  EXPECT_THROW(eval_level(truth_atom(0, kZeroEqZero), {}, kBudget, 0), LevelError);
  EXPECT_THROW(eval_level(truth_atom(2, kZeroEqZero), {}, kBudget, 2), LevelError);
}

TEST(Levels, DepthBoundCoversDereferences) {
  Formula f = kZeroEqZero;
  for (unsigned j = 0; j < 3; ++j) f = truth_atom(j, f);
  EXPECT_TRUE(eval_level(f, {}, kBudget, 3).is_true());
  EXPECT_FALSE(eval_level(f, {}, Budget{64, 2}, 3).determined());
}

TEST(Coherence, TinyCorpus) {
  const auto r = coherence_check(0, 3, {kZeroEqZero, neg(kZeroEqZero)}, kBudget);
  EXPECT_TRUE(r.coherent());
  EXPECT_EQ(r.entries.size(), 2u);
  EXPECT_EQ(r.unknown_j, 0u);
  EXPECT_TRUE(r.entries[0].at_k.is_true());
  EXPECT_TRUE(r.entries[1].at_k.is_false());
}

TEST(Coherence, RandomLevelZeroCorpus) {
  Rng rng(77);
  std::vector<Formula> corpus;
  for (int i = 0; i < 100; ++i) corpus.push_back(gen::random_level_sentence(rng, 0));
  const auto r = coherence_check(0, 2, corpus, kBudget);
  EXPECT_TRUE(r.coherent());
  EXPECT_LT(r.unknown_j, corpus.size());
}

TEST(Coherence, RandomHigherLevels) {
  Rng rng(78);
  for (unsigned j = 1; j <= 2; ++j) {
    std::vector<Formula> corpus;
    for (int i = 0; i < 60; ++i) corpus.push_back(gen::random_level_sentence(rng, j));
    EXPECT_TRUE(coherence_check(j, 3, corpus, kBudget).coherent());
  }
}

TEST(Coherence, RejectsSentenceAboveLevel) {
  EXPECT_THROW(coherence_check(0, 2, {truth_atom(0, kZeroEqZero)}, kBudget), LevelError);
  EXPECT_THROW(coherence_check(2, 1, {kZeroEqZero}, kBudget), LevelError);
}

TEST(Clauses, HoldAtEveryLevel) {
  Rng rng(79);
  for (unsigned k = 0; k <= 2; ++k) {
    const NaturalSemantics sem = level_semantics(k, kBudget);
    std::vector<Formula> seed;
    for (int i = 0; i < 30; ++i) seed.push_back(gen::random_level_sentence(rng, k, 2));
    std::vector<GoedelCode> codes;
    for (const auto& f : seed) codes.push_back(encode(f));
    // The checker audits the one-step closure, so the candidate covers it.
    std::set<Nat> cand;
    for (const auto& f : close_one_step(seed, sem))
      if (eval_level(f, {}, kBudget, k).is_true()) cand.insert(encode(f).value);
    const auto report = check_truth_conditions(cand, sem, codes);
    EXPECT_TRUE(report.passed()) << "level " << k << ": " << report.violations.size() << " violations";
  }
}

TEST(Demonstration, Tautology) {
  const auto r = tarski_demonstrate(parse_formula("x = x", arithmetic_signature()), kBudget);
  EXPECT_EQ(r.conclusion, Conclusion::Disagreement);
  EXPECT_TRUE(r.sigma_value.is_false());
  EXPECT_TRUE(r.candidate_value.is_true());
  EXPECT_EQ(r.sigma_code, encode(parse_formula(r.sigma, language_level(0))).value);
}

TEST(Demonstration, TruthPredicateCandidate) {
  const auto r = tarski_demonstrate(parse_formula("Tr0(x)", language_level(1)), kBudget, 1);
  EXPECT_EQ(r.conclusion, Conclusion::Disagreement);
  EXPECT_NE(r.sigma_value.verdict, r.candidate_value.verdict);
}

TEST(Demonstration, ParityCandidate) {
  const auto r = tarski_demonstrate(parse_formula("exists y. x = y + y", arithmetic_signature()), kBudget);
  EXPECT_EQ(r.conclusion, Conclusion::Disagreement);
  EXPECT_EQ(r.candidate_value.is_true(), r.sigma_code % 2 == 0);
}

TEST(Demonstration, ExhaustedBudgetClaimsNothing) {
  const auto r = tarski_demonstrate(parse_formula("exists y. exists z. x = y + z", arithmetic_signature()),
                                    Budget{64, 1});
  EXPECT_EQ(r.conclusion, Conclusion::Unknown);
  EXPECT_FALSE(r.sigma_value.determined() && r.candidate_value.determined());
}
