#include "tarski/satisfaction.hpp"
#include "tarski/testing/generators.hpp"
#include "tarski/testing/oracles.hpp"
#include "tarski/text.hpp"

#include <gtest/gtest.h>

using namespace tarski;
namespace gen = tarski::testing;
using gen::Rng;

namespace {

const Signature& arith() {
  static const Signature sig = arithmetic_signature();
  return sig;
}

Formula P(const char* text) { return parse_formula(text, arith()); }

FiniteStructure strict_order(std::size_t n) {
  Signature sig;
  sig.add_constant("0");
  sig.add_relation("<", 2);
  FiniteStructure s(n, sig);
  s.set_constant("0", 0);
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b) s.add_tuple("<", {a, b});
  return s;
}

std::vector<GoedelCode> codes_of(const std::vector<Formula>& fs) {
  std::vector<GoedelCode> out;
  for (const auto& f : fs) out.push_back(encode(f));
  return out;
}

}  // namespace

TEST(Terms, NaturalNumberValues) {
  EXPECT_EQ(eval_term_nat(plus(one(), one())), 2);
  EXPECT_EQ(eval_term_nat(numeral(5)), 5);
  EXPECT_EQ(eval_term_nat(parse_term("(1 + 1) * (1 + 1 + 1)", arith())), 6);
  EXPECT_THROW(eval_term_nat(var(0)), EvalError);
}

TEST(Terms, FunctionTableLookup) {
  Signature sig;
  sig.add_constant("0").add_function("f", 1);
  FiniteStructure s(2, sig);
  s.set_constant("0", 0);
  s.set_function("f", {1, 0});
  EXPECT_EQ(eval_term(s, Term::apply("f", {zero()}), {}), 1u);
}

TEST(Finite, Examples) {
  const FiniteStructure s = strict_order(4);
  EXPECT_TRUE(eval_finite(s, eq(zero(), zero())));
  EXPECT_FALSE(eval_finite(s, exists(0, lt(var(0), var(0)))));
  EXPECT_TRUE(eval_finite(s, exists(0, lt(zero(), var(0)))));
  EXPECT_FALSE(eval_finite(s, forall(0, exists(1, lt(var(0), var(1))))));
}

TEST(Finite, UnassignedVariableThrows) {
  const FiniteStructure s = strict_order(2);
  EXPECT_THROW(eval_finite(s, lt(var(0), var(1))), EvalError);
}

TEST(Finite, AgreesWithExpansionOracle) {
  Rng rng(99);
  const Signature sig = gen::mixed_signature();
  for (int trial = 0; trial < 1000; ++trial) {
    FiniteStructure s = gen::random_structure(rng, 1 + trial % 5, sig);
    gen::FormulaShape shape;
    shape.depth = 1 + trial % 4;
    Formula f = gen::random_formula(rng, sig, 2, shape);
    std::map<VarIndex, Element> rho{{0, static_cast<Element>(gen::pick(rng, s.size()))},
                                    {1, static_cast<Element>(gen::pick(rng, s.size()))}};
    FiniteAssignment a;
    for (const auto& [v, e] : rho) a.set(v, e);
    ASSERT_EQ(eval_finite(s, f, a), gen::expansion_oracle(s, f, rho)) << to_text(f);
  }
}

TEST(Natural, Examples) {
  const Budget b{64, 24};
  EXPECT_TRUE(eval_nat(exists(0, eq(plus(var(0), var(0)), numeral(4))), {}, b).is_true());
  EXPECT_TRUE(eval_nat(P("forall x. x < 3 -> exists y. x = y + y | x = y + y + 1"), {}, b).is_true());
  const TruthValue3 v = eval_nat(P("exists x. ~(x = x)"), {}, b);
  EXPECT_FALSE(v.determined());
  EXPECT_FALSE(eval_nat(P("exists x. ~(x = x)"), {}, Budget{4096, 24}).determined());
  EXPECT_TRUE(eval_nat(P("exists x. x < 5 & x * x = 9"), {}, b).is_true());
  EXPECT_TRUE(eval_nat(P("exists x. x < 5 & x * x = 7"), {}, b).is_false());
}

TEST(Natural, KleeneConnectives) {
  const TruthValue3 t = TruthValue3::of(true), f = TruthValue3::of(false), u = TruthValue3::unknown(3);
  EXPECT_EQ(k_and(f, u), f);
  EXPECT_EQ(k_or(t, u), t);
  EXPECT_FALSE(k_and(t, u).determined());
  EXPECT_FALSE(k_not(u).determined());
  const Budget b{64, 24};
  EXPECT_TRUE(eval_nat(P("0 = 1 & exists x. ~(x = x)"), {}, b).is_false());
  EXPECT_TRUE(eval_nat(P("0 = 0 | exists x. ~(x = x)"), {}, b).is_true());
}

TEST(Natural, BudgetMonotonicity) {
  Rng rng(17);
  const std::vector<Budget> budgets{{4, 4}, {8, 8}, {16, 12}, {64, 24}, {256, 24}};
  std::size_t determined = 0;
  for (int trial = 0; trial < 300; ++trial) {
    gen::FormulaShape shape;
    shape.depth = 3;
    shape.max_vars = 2;
    Formula f = gen::random_sentence(rng, arith(), shape);
    std::optional<TruthValue3> first;
    for (const auto& b : budgets) {
      const TruthValue3 v = eval_nat(f, {}, b);
      if (first) {
        ASSERT_EQ(v.verdict, first->verdict) << to_text(f);
      } else if (v.determined()) {
        first = v;
        ++determined;
      }
    }
  }
  EXPECT_GT(determined, 100u);
}

TEST(Natural, BoundedFragmentSoundness) {
  Rng rng(23);
  std::size_t compared = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Formula f = gen::random_bounded_formula(rng, 0);
    if (!conforms(f, arith())) continue;
    const TruthValue3 v = eval_nat(f, {}, Budget{64, 24});
    if (!v.determined()) continue;
    ASSERT_EQ(v.is_true(), gen::brute_bounded(f)) << to_text(f);
    ++compared;
  }
  EXPECT_GT(compared, 50u);
}

TEST(TruthConditions, ExactSetPassesAndFlipsAreCaught) {
  Rng rng(31);
  const Signature sig = gen::mixed_signature();
  for (int trial = 0; trial < 10; ++trial) {
    FiniteStructure s = gen::random_structure(rng, 1 + trial % 3, sig);
    const FiniteSemantics sem{&s};
    std::vector<Formula> seed;
    gen::FormulaShape shape;
    shape.depth = 3;
    shape.max_vars = 2;
    for (int i = 0; i < 3; ++i) seed.push_back(gen::random_sentence(rng, sig, shape));
    const auto corpus = close_fully(seed, sem);
    const auto exact = truth_set(s, corpus);
    const auto report = check_truth_conditions(exact, sem, codes_of(corpus));
    ASSERT_TRUE(report.passed());
    EXPECT_EQ(report.checked, corpus.size());
    for (const auto& f : corpus) {
      auto flipped = exact;
      const Nat c = encode(f).value;
      if (!flipped.erase(c)) flipped.insert(c);
      ASSERT_FALSE(check_truth_conditions(flipped, sem, codes_of(corpus)).passed()) << to_text(f);
    }
  }
}

TEST(TruthConditions, EmptyCandidateMissesTrueAtom) {
  const FiniteStructure s = strict_order(2);
  const Formula zz = eq(zero(), zero());
  const auto report = check_truth_conditions({}, FiniteSemantics{&s}, {encode(zz)});
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].clause, Clause::Atomic);
  EXPECT_EQ(report.violations[0].code, encode(zz).value);
  EXPECT_TRUE(report.violations[0].expected);
  EXPECT_FALSE(report.violations[0].found);

  NaturalSemantics nat;
  const auto over_n = check_truth_conditions({}, nat, {encode(zz)});
  ASSERT_EQ(over_n.violations.size(), 1u);
  EXPECT_EQ(over_n.violations[0].clause, Clause::Atomic);
}

TEST(TruthConditions, UnboundedExistentialIsUnverified) {
  NaturalSemantics nat;
  nat.budget = Budget{8, 8};
  const Formula f = P("exists x. x = 100");
  const auto corpus = close_one_step({f}, nat);
  std::set<Nat> cand{encode(f).value};
  for (const auto& g : corpus)
    if (eval_nat(g, {}, nat.budget).is_true()) cand.insert(encode(g).value);
  const auto report = check_truth_conditions(cand, nat, codes_of(corpus));
  EXPECT_TRUE(report.passed());
  EXPECT_FALSE(report.unverified.empty());
}

TEST(TruthConditions, InvalidCandidateCodeThrows) {
  const FiniteStructure s = strict_order(2);
  EXPECT_THROW(check_truth_conditions({Nat(0)}, FiniteSemantics{&s}, {}), Error);
}

TEST(TruthConditions, PassingCandidatesAreUnique) {
  Rng rng(41);
  const Signature sig = gen::graph_signature();
  std::size_t tested = 0;
  for (int trial = 0; trial < 40 && tested < 8; ++trial) {
    FiniteStructure s = gen::random_structure(rng, 2, sig);
    const FiniteSemantics sem{&s};
    gen::FormulaShape shape;
    shape.depth = 2;
    shape.max_vars = 1;
    const auto corpus = close_fully({gen::random_sentence(rng, sig, shape)}, sem);
    if (corpus.size() > 12) continue;
    ++tested;
    const auto exact = truth_set(s, corpus);
    std::vector<Nat> codes;
    for (const auto& f : corpus) codes.push_back(encode(f).value);
    std::size_t passing = 0;
    for (std::uint32_t mask = 0; mask < (1u << corpus.size()); ++mask) {
      std::set<Nat> cand;
      for (std::size_t i = 0; i < corpus.size(); ++i)
        if (mask >> i & 1) cand.insert(codes[i]);
      if (check_truth_conditions(cand, sem, codes_of(corpus)).passed()) {
        ++passing;
        ASSERT_EQ(cand, exact);
      }
    }
    EXPECT_EQ(passing, 1u);
  }
  EXPECT_GT(tested, 0u);
}

TEST(Structure, ValidationAndTuples) {
  FiniteStructure s = strict_order(3);
  EXPECT_NO_THROW(s.validate());
  EXPECT_EQ(s.tuples("<").size(), 3u);
  s.set_holds("<", std::vector<Element>{0, 1}, false);
  EXPECT_EQ(s.tuples("<").size(), 2u);
  EXPECT_THROW(s.set_constant("0", 7), Error);
  EXPECT_THROW(s.set_constant("nope", 0), SignatureError);
}
