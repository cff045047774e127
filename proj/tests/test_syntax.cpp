#include "tarski/satisfaction.hpp"
#include "tarski/testing/generators.hpp"
#include "tarski/text.hpp"
#include "tarski/truth_hierarchy.hpp"

#include <gtest/gtest.h>

using namespace tarski;
namespace gen = tarski::testing;
using gen::Rng;

namespace {

Signature level1_with_c() {
  Signature sig = language_level(1);
  sig.add_constant("c");
  return sig;
}

}  // namespace

TEST(Parse, ZeroEqualsZero) {
  Formula f = parse_formula("0 = 0", arithmetic_signature());
  EXPECT_EQ(f, eq(zero(), zero()));
  EXPECT_EQ(f.relation(), "=");
}

TEST(Parse, ExistentialWithLiteralSum) {
  Formula f = parse_formula("exists x. x + x = 1 + 1 + 1 + 1", arithmetic_signature());
  const Term x = var(0);
  const Term four = plus(one(), plus(one(), plus(one(), one())));
  EXPECT_EQ(f, exists(0, eq(plus(x, x), four)));
}

TEST(Parse, TruthPredicateNeedsLevel) {
  Formula f = parse_formula("Tr0(c)", level1_with_c());
  EXPECT_EQ(f.relation(), "Tr0");
  ASSERT_EQ(f.terms().size(), 1u);
  EXPECT_EQ(f.terms()[0], Term::constant("c"));

  Signature level0 = language_level(0);
  level0.add_constant("c");
  try {
    parse_formula("Tr0(c)", level0);
    FAIL() << "level 0 accepted Tr0";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::UnknownSymbol);
  }
}

TEST(Parse, ErrorsCarryPositions) {
  try {
    parse_formula("0 = ", arithmetic_signature());
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.kind(), ParseError::Kind::Syntax);
    EXPECT_GE(e.position(), 3u);
  }
  Signature sig = level1_with_c();
  EXPECT_THROW(parse_formula("Tr0(c, c)", sig), ParseError);
  EXPECT_THROW(parse_formula("exists . 0 = 0", sig), ParseError);
}

TEST(Parse, DecimalLiteralsAreNumerals) {
  Formula f = parse_formula("7 = x", arithmetic_signature());
  EXPECT_EQ(f.terms()[0], numeral(7));
}

TEST(Numeral, SmallCases) {
  EXPECT_EQ(numeral(0), zero());
  EXPECT_EQ(numeral(1), one());
  EXPECT_EQ(expanded_numeral(3), plus(one(), plus(one(), one())));
  EXPECT_EQ(expand_numerals(eq(numeral(3), zero())), eq(expanded_numeral(3), zero()));
}

TEST(Numeral, EvaluatesToItsValue) {
  EXPECT_EQ(eval_term_nat(numeral(7)), 7);
  EXPECT_EQ(eval_term_nat(expanded_numeral(7)), 7);
  for (std::uint64_t n = 0; n <= 10000; ++n) ASSERT_EQ(eval_term_nat(numeral(n)), n);
  for (std::uint64_t n = 0; n <= 200; ++n) ASSERT_EQ(eval_term_nat(expanded_numeral(n)), n);
}

TEST(Substitute, Examples) {
  const Term x = var(0), y = var(1);
  EXPECT_EQ(substitute(eq(x, x), 0, numeral(2)), eq(numeral(2), numeral(2)));
  EXPECT_EQ(expand_numerals(substitute(eq(x, x), 0, numeral(2))), eq(plus(one(), one()), plus(one(), one())));
  EXPECT_EQ(substitute(exists(0, eq(x, y)), 1, numeral(0)), exists(0, eq(x, zero())));
  EXPECT_EQ(substitute(exists(0, eq(x, x)), 0, numeral(5)), exists(0, eq(x, x)));
}

TEST(Substitute, AvoidsCapture) {
  const Signature sig = gen::mixed_signature();
  const Term x = var(0), y = var(1);
  const Formula phi = exists(0, Formula::atomic("E", {x, y}));
  const Term t = Term::apply("f", {x});
  const Formula out = substitute(phi, 1, t);
  ASSERT_EQ(out.kind(), Formula::Kind::Exists);
  EXPECT_NE(out.bound_var(), 0u);
  EXPECT_EQ(free_vars(out), std::set<VarIndex>{0});

  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    FiniteStructure s = gen::random_structure(rng, 1 + trial % 4, sig);
    for (Element a = 0; a < s.size(); ++a) {
      FiniteAssignment rho;
      rho.set(0, a);
      const std::vector<Element> arg{a};
      FiniteAssignment direct;
      direct.set(1, s.apply("f", arg));
      ASSERT_EQ(eval_finite(s, out, rho), eval_finite(s, phi, direct));
    }
  }
}

TEST(Substitute, CommutesWithEvaluation) {
  Rng rng(11);
  const Signature sig = gen::mixed_signature();
  for (int trial = 0; trial < 300; ++trial) {
    FiniteStructure s = gen::random_structure(rng, 1 + trial % 4, sig);
    Formula phi = gen::random_formula(rng, sig, 2);
    for (Element a = 0; a < s.size(); ++a)
      for (Element b = 0; b < s.size(); ++b) {
        FiniteAssignment rho;
        rho.set(0, a);
        rho.set(1, b);
        FiniteAssignment only_b;
        only_b.set(1, b);
        Formula inst = substitute(phi, 0, Term::constant(element_name(a)));
        ASSERT_EQ(eval_finite(s, inst, only_b), eval_finite(s, phi, rho)) << to_text(phi);
      }
  }
}

TEST(FreeVars, Examples) {
  const Signature sig = arithmetic_signature();
  EXPECT_TRUE(free_vars(parse_formula("0 = 0", sig)).empty());
  EXPECT_EQ(free_vars(parse_formula("exists x. x < y", sig)), std::set<VarIndex>{1});
  const Formula f = parse_formula("x = 0 & (exists x. x = 1)", sig);
  EXPECT_EQ(free_vars(f), std::set<VarIndex>{0});
  // Only the free x matters: the verdict moves with the assignment to x.
  Budget b;
  EXPECT_TRUE(eval_nat(f, NatAssignment{}.with(0, Nat(0)), b).is_true());
  EXPECT_TRUE(eval_nat(f, NatAssignment{}.with(0, Nat(3)), b).is_false());
}

TEST(Measures, SizeDepthAndLevel) {
  const Signature sig = level1_with_c();
  const Formula f = parse_formula("exists x. forall y. x < y | Tr0(c)", sig);
  EXPECT_EQ(quantifier_depth(f), 2u);
  EXPECT_EQ(truth_level(f), 1u);
  EXPECT_EQ(truth_level(parse_formula("0 = 0", sig)), 0u);
  EXPECT_GT(size(f), size(parse_formula("Tr0(c)", sig)));
}

TEST(Signature, ArityChecks) {
  const Signature sig = gen::mixed_signature();
  EXPECT_TRUE(conforms(Formula::atomic("E", {var(0), var(1)}), sig));
  EXPECT_FALSE(conforms(Formula::atomic("E", {var(0)}), sig));
  EXPECT_FALSE(conforms(Formula::atomic("Q", {var(0)}), sig));
  EXPECT_THROW(check_formula(eq(Term::apply("f", {var(0), var(0)}), var(0)), sig), SignatureError);
}

TEST(Canonicalize, UsesCoreConnectivesAndPreservesTruth) {
  Rng rng(3);
  const Signature sig = gen::mixed_signature();
  std::function<bool(const Formula&)> core = [&](const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atomic:
        return true;
      case Formula::Kind::Not:
      case Formula::Kind::Exists:
        return core(f.child(0));
      case Formula::Kind::And:
        return core(f.lhs()) && core(f.rhs());
      default:
        return false;
    }
  };
  for (int trial = 0; trial < 200; ++trial) {
    FiniteStructure s = gen::random_structure(rng, 1 + trial % 3, sig);
    Formula phi = gen::random_sentence(rng, sig);
    Formula c = canonicalize(phi);
    ASSERT_TRUE(core(c)) << to_text(c);
    ASSERT_EQ(eval_finite(s, c), eval_finite(s, phi)) << to_text(phi);
  }
}

TEST(RoundTrip, PrintParseIdentity) {
  Rng rng(2024);
  const Signature sig = gen::mixed_signature();
  for (int trial = 0; trial < 1000; ++trial) {
    gen::FormulaShape shape;
    shape.depth = 1 + trial % 6;
    Formula f = gen::random_formula(rng, sig, trial % 3, shape);
    const std::string text = to_text(f);
    Formula back = parse_formula(text, sig);
    ASSERT_EQ(back, f) << text;
    ASSERT_EQ(to_text(back), text);
  }
}

TEST(RoundTrip, ArithmeticText) {
  const Signature sig = arithmetic_signature();
  for (const char* text : {"v0 + v1 * v2 = 5", "(v0 + v1) * v2 < 1", "~(0 = 0) -> exists v3. v3 = v3",
                           "forall v0. v0 = 0 | 0 < v0", "(v0 = 0 -> v1 = 0) -> v2 = 0"}) {
    Formula f = parse_formula(text, sig);
    EXPECT_EQ(parse_formula(to_text(f), sig), f) << text;
  }
}
