#include "tarski/presburger.hpp"
#include "tarski/testing/generators.hpp"
#include "tarski/testing/oracles.hpp"
#include "tarski/text.hpp"
#include "tarski/truth_hierarchy.hpp"

#include <gtest/gtest.h>

using namespace tarski;
namespace gen = tarski::testing;
using gen::Rng;

namespace {

Formula P(const char* text) { return parse_formula(text, presburger_signature()); }

bool eliminated_holds(const LinearFormula& qf, std::int64_t x) { return holds(qf, {{0, BigInt(x)}}); }

}  // namespace

TEST(Linear, FoldsNumerals) {
  const LinearFormula f = to_linear(P("x + x < 1 + 1 + 1"));
  ASSERT_EQ(f.kind, LinearFormula::Kind::Atom);
  EXPECT_EQ(f.atom.rel, LinearAtom::Rel::Lt);
  EXPECT_EQ(f.atom.term.coeff(0), 2);
  EXPECT_EQ(f.atom.term.constant, -3);
  EXPECT_EQ(f.atom.term.coeffs.size(), 1u);
}

TEST(Linear, RejectsNonLinearTerms) {
  EXPECT_THROW(to_linear(P("x * y = y")), NonLinearError);
  EXPECT_NO_THROW(to_linear(P("3 * x = y")));
  Signature sig = language_level(0);
  sig.add_relation("Tr0", 1);
  EXPECT_THROW(to_linear(parse_formula("Tr0(x)", sig)), NonLinearError);
}

TEST(Linear, ExistentialTranslation) {
  const LinearFormula f = to_linear(P("exists y. x = y + y"));
  ASSERT_EQ(f.kind, LinearFormula::Kind::Exists);
  EXPECT_EQ(f.var, 1u);
  const LinearAtom& a = f.kids[0].atom;
  EXPECT_EQ(a.rel, LinearAtom::Rel::Eq);
  EXPECT_EQ(a.term.coeff(0), 1);
  EXPECT_EQ(a.term.coeff(1), -2);
  EXPECT_EQ(a.term.constant, 0);
}

TEST(Elimination, EvenNumbers) {
  const LinearFormula qf = eliminate_quantifiers(P("exists y. x = y + y"));
  EXPECT_TRUE(is_quantifier_free(qf));
  for (std::int64_t x = 0; x <= 100; ++x) {
    bool brute = false;
    for (std::int64_t y = 0; y <= x; ++y) brute = brute || x == 2 * y;
    ASSERT_EQ(eliminated_holds(qf, x), brute) << x;
  }
}

TEST(Elimination, ClosedExamples) {
  EXPECT_TRUE(eliminate_quantifiers(P("exists x. 0 < x & x < 1 + 1")).is_true());
  EXPECT_TRUE(eliminate_quantifiers(P("forall x. x >= 0")).is_true());
  EXPECT_TRUE(eliminate_quantifiers(P("exists x. x + 1 = 0")).is_false());
}

TEST(Elimination, AgreesWithBruteForceOnGrid) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    Formula f = gen::random_bounded_formula(rng, 1);
    const LinearFormula qf = eliminate_quantifiers(f);
    ASSERT_TRUE(is_quantifier_free(qf));
    for (std::int64_t x = 0; x <= 50; ++x)
      ASSERT_EQ(eliminated_holds(qf, x), gen::brute_bounded(f, {{0, x}})) << to_text(f) << " at " << x;
  }
}

TEST(Elimination, RoundTripsThroughSyntax) {
  Rng rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    Formula f = gen::random_bounded_formula(rng, 1);
    const Formula back = to_formula(eliminate_quantifiers(f));
    EXPECT_EQ(quantifier_depth(back), 0u);
    for (std::int64_t x = 0; x <= 20; ++x)
      ASSERT_EQ(decide(substitute(back, 0, numeral(x))), gen::brute_bounded(f, {{0, x}})) << to_text(f);
  }
}

TEST(Decide, Examples) {
  EXPECT_TRUE(decide(P("forall x. exists y. x = y + y | x = y + y + 1")));
  for (std::int64_t x = 0; x <= 64; ++x) {
    bool some = false;
    for (std::int64_t y = 0; y <= x; ++y) some = some || x == 2 * y || x == 2 * y + 1;
    ASSERT_TRUE(some);
  }
  EXPECT_FALSE(decide(P("exists x. x + 1 = 0")));

  const Formula dense = P("forall x. forall y. x < y -> exists z. x < z & z < y + 1");
  EXPECT_TRUE(decide(dense));
  for (int x = 0; x <= 20; ++x)
    for (int y = 0; y <= 20; ++y) {
      if (!(x < y)) continue;
      bool found = false;
      for (int z = 0; z <= y && !found; ++z) found = x < z && z < y + 1;
      ASSERT_TRUE(found);
    }
  EXPECT_FALSE(decide(P("forall x. forall y. x < y -> exists z. x < z & z < y")));
}

TEST(Decide, RejectsOpenFormulas) { EXPECT_THROW(decide(P("x = 0")), PresburgerError); }

TEST(Decide, NeverAcceptsBothSides) {
  Rng rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    Formula s = gen::random_bounded_formula(rng, 0);
    const bool v = decide(s);
    ASSERT_NE(v, decide(neg(s)));
    ASSERT_EQ(v, gen::brute_bounded(s)) << to_text(s);
  }
  EXPECT_TRUE(decide(P("forall x. x = x")));
}

TEST(Period, Examples) {
  const auto evens = definable_set_period(P("exists y. x = y + y"), 100);
  EXPECT_EQ(evens.period, 2u);
  EXPECT_EQ(evens.threshold, 0u);
  EXPECT_EQ(evens.table, (std::vector<bool>{true, false}));
  EXPECT_EQ(evens.verified_to, 100u);

  const auto small = definable_set_period(P("x < 5"), 100);
  EXPECT_EQ(small.threshold, 5u);
  EXPECT_EQ(small.period, 1u);
  EXPECT_EQ(small.table, std::vector<bool>{false});
  EXPECT_EQ(small.prefix, std::vector<bool>(5, true));

  const auto all = definable_set_period(P("x = x"), 100);
  EXPECT_EQ(all.period, 1u);
  EXPECT_EQ(all.table, std::vector<bool>{true});
}

TEST(Period, EveryUnaryFormulaHasACertificate) {
  Rng rng(16);
  for (int trial = 0; trial < 60; ++trial) {
    Formula f = gen::random_bounded_formula(rng, 1);
    if (free_vars(f).size() != 1) continue;
    const auto cert = definable_set_period(f, 60);
    for (std::int64_t x = 0; x <= 60; ++x) ASSERT_EQ(cert.member(x), gen::brute_bounded(f, {{0, x}}));
  }
}

TEST(Period, ThreeStepResidue) {
  const auto c = definable_set_period(P("exists y. x = y + y + y + 1 & 4 < x"), 200);
  EXPECT_EQ(c.period, 3u);
  EXPECT_EQ(c.threshold, 5u);
}

TEST(Refute, Squares) {
  const auto r = periodicity_refute([](std::uint64_t n) { return gen::is_square(n); }, 10000);
  EXPECT_TRUE(r.refuted_all());
  EXPECT_EQ(r.witnesses.size(), 5000u);
  for (const auto& w : r.witnesses) {
    ASSERT_TRUE(w.violation.has_value()) << w.period;
    ASSERT_NE(gen::is_square(*w.violation), gen::is_square(*w.violation + w.period));
  }
  EXPECT_NE(r.note.find("not a proof"), std::string::npos);
}

TEST(Refute, PeriodicSetsSurvive) {
  const auto evens = periodicity_refute([](std::uint64_t n) { return n % 2 == 0; }, 10000);
  EXPECT_FALSE(evens.refuted_all());
  EXPECT_FALSE(evens.violation_for(0, 2).has_value());

  const auto below = periodicity_refute([](std::uint64_t n) { return n < 7; }, 100);
  EXPECT_FALSE(below.refuted_all());
  EXPECT_FALSE(below.violation_for(7, 1).has_value());
  EXPECT_TRUE(below.violation_for(0, 1).has_value());
}
