#include "tarski/model_tools.hpp"
#include "tarski/testing/generators.hpp"
#include "tarski/testing/oracles.hpp"

#include <gtest/gtest.h>

using namespace tarski;
namespace gen = tarski::testing;
using gen::Rng;

namespace {

FiniteStructure cycle3() {
  FiniteStructure s(3, gen::graph_signature());
  s.add_tuple("E", {0, 1});
  s.add_tuple("E", {1, 2});
  s.add_tuple("E", {2, 0});
  return s;
}

FiniteStructure linear_order(std::size_t n, bool reversed = false) {
  Signature sig;
  sig.add_relation("<", 2);
  FiniteStructure s(n, sig);
  for (Element a = 0; a < n; ++a)
    for (Element b = a + 1; b < n; ++b) {
      if (reversed) {
        s.add_tuple("<", {b, a});
      } else {
        s.add_tuple("<", {a, b});
      }
    }
  return s;
}

std::vector<Automorphism> as_automorphisms(const std::vector<std::vector<Element>>& maps) {
  std::vector<Automorphism> out;
  for (const auto& m : maps) out.push_back({m});
  return out;
}

}  // namespace

TEST(Automorphisms, ThreeCycleHasTheRotations) {
  const FiniteStructure s = cycle3();
  const auto group = automorphisms(s);
  EXPECT_EQ(group, as_automorphisms(gen::brute_automorphisms(s)));
  ASSERT_EQ(group.size(), 3u);
  EXPECT_EQ(group[0], identity_automorphism(3));
  for (const auto& g : group) EXPECT_TRUE(verify_automorphism(s, g));
}

TEST(Automorphisms, NamedElementsAreRigid) {
  Signature sig;
  sig.add_constant("a").add_constant("b").add_constant("c");
  FiniteStructure s(3, sig);
  s.set_constant("a", 2);
  s.set_constant("b", 0);
  s.set_constant("c", 1);
  const auto group = automorphisms(s);
  ASSERT_EQ(group.size(), 1u);
  EXPECT_EQ(group[0], identity_automorphism(3));
}

TEST(Automorphisms, EmptySignature) {
  FiniteStructure s(2, Signature{});
  const auto group = automorphisms(s);
  EXPECT_EQ(group.size(), 2u);
}

TEST(Automorphisms, SizeLimit) {
  FiniteStructure s(11, Signature{});
  EXPECT_THROW(automorphisms(s), SizeLimitError);
  EXPECT_EQ(automorphisms(FiniteStructure(5, Signature{})).size(), 120u);
}

TEST(Orbits, ThreeCycle) {
  const FiniteStructure s = cycle3();
  EXPECT_EQ(orbits(s, {}), (Partition{{0, 1, 2}}));
  EXPECT_EQ(orbits(s, {0}), (Partition{{0}, {1}, {2}}));
}

TEST(Orbits, FixingTheWholeDomain) {
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    FiniteStructure s = gen::random_structure(rng, 1 + trial % 5, gen::graph_signature());
    std::vector<Element> all(s.size());
    std::iota(all.begin(), all.end(), Element{0});
    Partition singletons;
    for (Element e : all) singletons.push_back({e});
    EXPECT_EQ(orbits(s, all), singletons);
  }
}

TEST(Definability, ThreeCycle) {
  const FiniteStructure s = cycle3();
  EXPECT_FALSE(definable_with_params({0}, s, {}));
  EXPECT_TRUE(definable_with_params({0}, s, {0}));
  EXPECT_TRUE(definable_with_params({}, s, {}));
  EXPECT_TRUE(definable_with_params({0, 1, 2}, s, {}));
  EXPECT_THROW(definable_with_params({5}, s, {}), Error);
}

TEST(Disagreement, ThreeCycleWitness) {
  const FiniteStructure s = cycle3();
  const auto w = disagreement_pair(s, {0}, {});
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->s, 0u);
  EXPECT_EQ(w->t, 1u);
  EXPECT_EQ(w->pi(w->t), w->s);
  EXPECT_EQ(w->pi, (Automorphism{{2, 0, 1}}));
  EXPECT_TRUE(verify_automorphism(s, w->pi));

  // Same structure, two interpretations of the predicate.
  const std::set<Element> image = apply_automorphism({0}, w->pi);
  EXPECT_EQ(image, std::set<Element>{2});
  const FiniteStructure a = expand_with_predicate(s, "X", {0});
  const FiniteStructure b = expand_with_predicate(s, "X", image);
  EXPECT_EQ(a.tuples("E"), b.tuples("E"));
  EXPECT_NE(a.tuples("X"), b.tuples("X"));

  EXPECT_FALSE(disagreement_pair(s, {0}, {0}).has_value());
  EXPECT_FALSE(disagreement_pair(s, {}, {}).has_value());
}

TEST(Disagreement, ExhaustiveAgainstBruteForce) {
  const Signature sig = gen::graph_signature();
  std::size_t cases = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& s : gen::all_relational_structures(n, sig)) {
      const auto group = gen::brute_automorphisms(s);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::set<Element> X;
        for (Element e = 0; e < n; ++e)
          if (mask >> e & 1) X.insert(e);
        for (const std::vector<Element>& params : {std::vector<Element>{}, std::vector<Element>{0}}) {
          const bool expected = gen::brute_definable(group, n, X, params);
          ASSERT_EQ(definable_with_params(X, s, params), expected);
          const auto w = disagreement_pair(s, X, params);
          ASSERT_EQ(w.has_value(), !expected);
          if (w) {
            ASSERT_TRUE(X.count(w->s) && !X.count(w->t));
            ASSERT_EQ(w->pi(w->t), w->s);
            for (Element p : params) ASSERT_EQ(w->pi(p), p);
            ASSERT_TRUE(gen::brute_preserves(s, s, w->pi.perm));
          }
          ++cases;
        }
      }
    }
  EXPECT_GT(cases, 1000u);
}

TEST(Automorphisms, ImagePreservesDefinability) {
  Rng rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    FiniteStructure s = gen::random_structure(rng, 2 + trial % 4, gen::graph_signature(), 0.3);
    const auto group = automorphisms(s);
    const Automorphism& pi = group[gen::pick(rng, group.size())];
    std::set<Element> X;
    for (Element e = 0; e < s.size(); ++e)
      if (gen::coin(rng)) X.insert(e);
    const std::vector<Element> params{0};
    const std::vector<Element> moved{pi(0)};
    ASSERT_EQ(definable_with_params(X, s, params), definable_with_params(apply_automorphism(X, pi), s, moved));
    ASSERT_EQ(apply_automorphism(apply_automorphism(X, pi), inverse(pi)), X);
    ASSERT_EQ(apply_automorphism(X, identity_automorphism(s.size())), X);
    ASSERT_EQ(compose(pi, inverse(pi)), identity_automorphism(s.size()));
  }
}

TEST(BackAndForth, LinearOrders) {
  const auto m = back_and_forth(linear_order(2), linear_order(2, true));
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(*m, (std::vector<Element>{1, 0}));
  EXPECT_EQ(back_and_forth(linear_order(5), linear_order(5)), (std::vector<Element>{0, 1, 2, 3, 4}));
  EXPECT_FALSE(back_and_forth(linear_order(3), linear_order(4)).has_value());
}

TEST(BackAndForth, CycleVersusAntichain) {
  const FiniteStructure antichain(3, gen::graph_signature());
  EXPECT_FALSE(back_and_forth(cycle3(), antichain).has_value());
  FiniteStructure other(3, Signature{});
  EXPECT_THROW(back_and_forth(cycle3(), other), SignatureError);
}

TEST(BackAndForth, RandomPairsAgreeWithBruteForce) {
  Rng rng(5);
  for (int trial = 0; trial < 150; ++trial) {
    const Signature sig = trial % 2 ? gen::graph_signature() : gen::unary_function_signature();
    const std::size_t n = 1 + trial % 7;
    FiniteStructure a = gen::random_structure(rng, n, sig);
    FiniteStructure b = trial % 3 == 0 ? gen::random_structure(rng, n, sig) : gen::permuted_copy(rng, a);
    const auto m = back_and_forth(a, b);
    ASSERT_EQ(m.has_value(), gen::brute_isomorphic(a, b));
    if (m) ASSERT_TRUE(gen::brute_preserves(a, b, *m));
  }
}
