#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <set>

#include "oracles.hpp"
#include "symplectica/error.hpp"
#include "symplectica/extensions.hpp"
#include "symplectica/symplectic.hpp"

using namespace symplectica;

namespace {

GroupElement random_element(SplitMix64& rng, const FinAbGroup& g) {
  GroupElement x(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) x[i] = rng.below(g.modulus(i));
  return x;
}

std::vector<GroupElement> random_elements(SplitMix64& rng, const FinAbGroup& g, std::size_t k) {
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(random_element(rng, g));
  return out;
}

// The standard pair on A pulled back along a random automorphism of A x A^.
SymplecticPair scrambled_standard(SplitMix64& rng, const FinAbGroup& a, int steps = 10) {
  const SymplecticPair std_pair = standard_pair(a).pair;
  const HomMatrix sigma = random_automorphism(std_pair.group(), rng, steps);
  return SymplecticPair{SymplecticForm(std_pair.form.pullback(sigma)), std::nullopt};
}

// Independent re-check of a standardization: standard values on every
// generator pair and (for small groups) bijectivity by enumeration.
void expect_standardizes(const SymplecticPair& pair, const StandardizationResult& r) {
  ASSERT_TRUE(r.verified);
  const std::size_t n = 2 * r.a.rank();
  const FinAbGroup aa = r.a.product(r.a);
  ASSERT_EQ(r.iso.source(), aa);
  ASSERT_EQ(r.iso.target(), pair.group());
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      // chi(y) - lam(x) for basis vectors (x, chi) = e_u and (y, lam) = e_v.
      QmodZ expected;
      const std::size_t r0 = r.a.rank();
      if (u >= r0 && v == u - r0) expected = QmodZ(1, r.a.modulus(v));
      if (v >= r0 && u == v - r0) expected = -QmodZ(1, r.a.modulus(u));
      EXPECT_EQ(pair.form.evaluate(r.iso.entries().col(u), r.iso.entries().col(v)), expected);
    }
  if (pair.group().order() <= 4096) {
    EXPECT_TRUE(oracle::is_bijective(r.iso));
  } else {
    EXPECT_TRUE(r.iso.inverse().has_value());
  }
  EXPECT_TRUE(verify_standardization(pair, r));
}

}  // namespace

TEST(Subgroup, MatchesSpan) {
  SplitMix64 rng(51);
  for (int t = 0; t < 150; ++t) {
    const long p = t % 2 ? 2 : 3;
    const FinAbGroup g(p, oracle::random_lambda(rng, 1 + rng.below(3), 3));
    if (g.order() > 2000) continue;
    const auto gens = random_elements(rng, g, rng.below(3));
    const Subgroup s(g, gens);
    const auto expected = oracle::span(g, gens);
    EXPECT_EQ(oracle::members(s), expected);
    EXPECT_EQ(s.order(), Int(static_cast<unsigned long>(expected.size())));
    for (const auto& x : g.elements()) EXPECT_EQ(s.contains(x), expected.count(g.index_of(x).get_ui()) == 1);
    // Same subgroup from its own generators: same normal form.
    EXPECT_EQ(Subgroup(g, s.generators()), s);
  }
}

TEST(Subgroup, SumIntersectionAndLeastOutside) {
  SplitMix64 rng(52);
  for (int t = 0; t < 120; ++t) {
    const FinAbGroup g(t % 2 ? 2 : 3, oracle::random_lambda(rng, 1 + rng.below(3), 2));
    const Subgroup a(g, random_elements(rng, g, rng.below(3)));
    const Subgroup b(g, random_elements(rng, g, rng.below(3)));
    const auto ma = oracle::members(a), mb = oracle::members(b);
    std::set<unsigned long> inter;
    for (auto x : ma)
      if (mb.count(x)) inter.insert(x);
    EXPECT_EQ(oracle::members(a.intersect(b)), inter);
    std::vector<GroupElement> both = a.generators();
    for (const auto& x : b.generators()) both.push_back(x);
    EXPECT_EQ(oracle::members(a + b), oracle::span(g, both));
    EXPECT_EQ(a.is_subgroup_of(b), std::includes(mb.begin(), mb.end(), ma.begin(), ma.end()));

    // Least element of a outside b, in enumeration order.
    std::optional<unsigned long> least;
    for (auto x : ma)
      if (!mb.count(x)) {
        least = x;
        break;
      }
    const auto got = a.least_element_outside(b);
    ASSERT_EQ(got.has_value(), least.has_value());
    if (got) {
      EXPECT_EQ(g.index_of(*got).get_ui(), *least);
    }
  }
}

TEST(Subgroup, InvariantFactorBasis) {
  SplitMix64 rng(53);
  for (int t = 0; t < 80; ++t) {
    const FinAbGroup g(t % 2 ? 5 : 3, oracle::random_lambda(rng, 1 + rng.below(3), 3));
    const Subgroup s(g, random_elements(rng, g, 1 + rng.below(3)));
    const SubgroupBasis b = s.basis();
    EXPECT_EQ(b.group.order(), s.order());
    for (std::size_t i = 0; i + 1 < b.group.rank(); ++i)
      EXPECT_GE(b.group.exponents()[i], b.group.exponents()[i + 1]);
    std::vector<GroupElement> elems;
    for (std::size_t j = 0; j < b.group.rank(); ++j) elems.push_back(b.element(j));
    EXPECT_EQ(Subgroup(g, elems), s);
    // The embedding is injective: orders match and coordinates invert it.
    for (int k = 0; k < 10; ++k) {
      GroupElement c = random_element(rng, b.group);
      const GroupElement x = b.embedding.apply(c);
      EXPECT_EQ(b.coordinates(x), c);
    }
  }
}

TEST(Subgroup, KernelOfFunctionals) {
  const FinAbGroup g(3, {2, 1});
  // x -> (x_0 / 9) + (x_1 / 3) with values in (1/9)Z/Z.
  const Subgroup k = kernel_of_functionals(g, IntMatrix{{1, 3}}, 9);
  std::set<unsigned long> expected;
  for (const auto& x : g.elements())
    if (mod(x[0] + 3 * x[1], 9) == 0) expected.insert(g.index_of(x).get_ui());
  EXPECT_EQ(oracle::members(k), expected);
}

TEST(AlternatingForm, Invariants) {
  const FinAbGroup g(3, {1, 1});
  EXPECT_THROW(AlternatingForm(g, IntMatrix{{1, 0}, {0, 0}}), InvariantViolation);
  EXPECT_THROW(AlternatingForm(g, IntMatrix{{0, 1}, {1, 0}}), InvariantViolation);
  EXPECT_NO_THROW(AlternatingForm(g, IntMatrix{{0, 1}, {2, 0}}));
  // No nondegenerate form on a nontrivial cyclic group.
  try {
    SymplecticForm(FinAbGroup(5, {2}), IntMatrix{{0}});
    FAIL();
  } catch (const InvariantViolation& e) {
    EXPECT_EQ(e.invariant(), "nondegenerate");
  }
}

TEST(AlternatingForm, NondegeneracyMatchesEnumeration) {
  SplitMix64 rng(54);
  int nondeg = 0;
  for (int t = 0; t < 300; ++t) {
    const long p = t % 2 ? 2 : 3;
    const FinAbGroup g(p, oracle::random_lambda(rng, 1 + rng.below(4), 2));
    if (g.order() > 729) continue;
    const AlternatingForm f(g, oracle::random_alternating(rng, g));
    const bool brute = oracle::nondegenerate(f);
    EXPECT_EQ(f.nondegenerate(), brute) << g.str() << f.numerators();
    nondeg += brute;
  }
  EXPECT_GT(nondeg, 10);
}

TEST(AlternatingForm, FunctionalsAndHom) {
  SplitMix64 rng(55);
  for (int t = 0; t < 40; ++t) {
    const FinAbGroup g(3, oracle::random_lambda(rng, 1 + rng.below(3), 3));
    const AlternatingForm f(g, oracle::random_alternating(rng, g));
    const HomMatrix nabla = f.as_hom();
    EXPECT_EQ(nabla.adjoint(), -nabla);
    for (int k = 0; k < 10; ++k) {
      const GroupElement x = random_element(rng, g), y = random_element(rng, g);
      EXPECT_EQ(f.evaluate(x, y), dual_pairing(g, nabla.apply(x), y));
      EXPECT_EQ(f.evaluate(x, y), -f.evaluate(y, x));
    }
  }
}

TEST(StandardPair, ZThreeExample) {
  const StandardPair sp = standard_pair(FinAbGroup(3, {1}));
  EXPECT_EQ(sp.pair.form.numerators(), (IntMatrix{{0, 2}, {1, 0}}));
  EXPECT_EQ(sp.pair.form.evaluate({1, 0}, {0, 1}), QmodZ(2, 3));
  EXPECT_EQ(sp.m0, Subgroup(sp.pair.group(), {{1, 0}}));
  EXPECT_TRUE(oracle::nondegenerate(sp.pair.form));
}

TEST(StandardPair, WithSubgroupB) {
  const FinAbGroup a(3, {2, 1});
  const Subgroup b(a, {{3, 1}});
  const StandardPair sp = standard_pair(a, b);
  const auto m0 = oracle::members(sp.m0);
  EXPECT_TRUE(oracle::isotropic(sp.pair.form, m0));
  EXPECT_EQ(oracle::perp(sp.pair.form, m0), m0);
}

TEST(Isotropy, ComplementMatchesEnumeration) {
  SplitMix64 rng(56);
  for (int t = 0; t < 40; ++t) {
    const FinAbGroup a(t % 2 ? 2 : 3, oracle::random_lambda(rng, 1 + rng.below(2), 2));
    const SymplecticPair pair = scrambled_standard(rng, a);
    if (pair.group().order() > 729) continue;
    const Subgroup s(pair.group(), random_elements(rng, pair.group(), 1 + rng.below(2)));
    EXPECT_EQ(oracle::members(orthogonal_complement(pair.form, s)), oracle::perp(pair.form, oracle::members(s)));
    EXPECT_EQ(is_isotropic(pair.form, s), oracle::isotropic(pair.form, oracle::members(s)));
  }
}

TEST(GrowIsotropic, FromZeroOnZThreeSquared) {
  const StandardPair sp = standard_pair(FinAbGroup(3, {1}));
  const Subgroup g = grow_maximal_isotropic(sp.pair, Subgroup::trivial(sp.pair.group()));
  EXPECT_EQ(g, Subgroup(sp.pair.group(), {{1, 0}}));
}

TEST(GrowIsotropic, RandomSeeds) {
  SplitMix64 rng(57);
  for (int t = 0; t < 60; ++t) {
    const FinAbGroup a(t % 3 == 0 ? 2 : 3, oracle::random_lambda(rng, 1 + rng.below(3), 2));
    const SymplecticPair pair = scrambled_standard(rng, a);
    // A cyclic seed is always isotropic.
    const Subgroup seed(pair.group(), {random_element(rng, pair.group())});
    const Subgroup g = grow_maximal_isotropic(pair, seed);
    EXPECT_TRUE(seed.is_subgroup_of(g));
    EXPECT_TRUE(is_maximal_isotropic(pair.form, g));
    EXPECT_EQ(g.order() * g.order(), pair.group().order());
    if (pair.group().order() <= 729) {
      const auto m = oracle::members(g);
      EXPECT_EQ(oracle::perp(pair.form, m), m);
    }
  }
  const StandardPair sp = standard_pair(FinAbGroup(3, {1}));
  EXPECT_THROW(grow_maximal_isotropic(sp.pair, Subgroup::whole(sp.pair.group())), PreconditionError);
}

TEST(Subquotient, NineByNine) {
  const StandardPair sp = standard_pair(FinAbGroup(3, {2}));
  const Subgroup a(sp.pair.group(), {{3, 0}});
  const SymplecticPair q = subquotient(sp.pair, a);
  EXPECT_EQ(q.group(), FinAbGroup(3, {1, 1}));
  ASSERT_TRUE(q.provenance);
  EXPECT_EQ(q.provenance->how, "subquotient");
  // Exhaustive isomorphism search onto the standard pair of Z/3.
  const SymplecticPair target = standard_pair(FinAbGroup(3, {1})).pair;
  bool found = false;
  for (const auto& c0 : q.group().elements())
    for (const auto& c1 : q.group().elements()) {
      const HomMatrix h(target.group(), q.group(), IntMatrix::from_columns(2, {c0, c1}));
      if (oracle::is_bijective(h) && q.form.pullback(h) == target.form) found = true;
    }
  EXPECT_TRUE(found);
  // The form on representatives agrees with the original.
  const auto& reps = q.provenance->images;
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j)
      EXPECT_EQ(q.form.evaluate(q.group().reduce(IntMatrix::identity(2).col(i)),
                                q.group().reduce(IntMatrix::identity(2).col(j))),
                sp.pair.form.evaluate(reps[i], reps[j]));
}

TEST(Subquotient, RejectsNonIsotropic) {
  const StandardPair sp = standard_pair(FinAbGroup(3, {1}));
  EXPECT_THROW(subquotient(sp.pair, Subgroup::whole(sp.pair.group())), PreconditionError);
}

TEST(Peel, CyclicSummandOfAntidualPair) {
  const ExtensionMatrix xi(ExponentProfile(3, {2, 1}), IntMatrix{{0, 1}, {2, 0}});
  const AntidualPair ap = symplectic_from_antidual(xi);
  const FinAbGroup& l = ap.pair.group();
  // Cyclic summand: first basis vector (maximal exponent); complement: the rest.
  std::vector<GroupElement> rest;
  for (std::size_t i = 1; i < l.rank(); ++i) rest.push_back(IntMatrix::identity(l.rank()).col(i));
  const Subgroup a(l, {IntMatrix::identity(l.rank()).col(0)});
  const Subgroup b(l, rest);
  const PeelResult r = peel(ap.pair, a, b);
  EXPECT_TRUE(r.outer.form.nondegenerate());
  EXPECT_TRUE(r.residual.form.nondegenerate());
  EXPECT_EQ(r.outer.group().order() * r.residual.group().order(), l.order());
  if (l.order() <= 4096) {
    EXPECT_TRUE(oracle::is_bijective(r.recombination));
  }
  // Images of the two parts are orthogonal.
  const std::size_t no = r.outer.group().rank();
  const IntMatrix& m = r.recombination.entries();
  for (std::size_t i = 0; i < no; ++i)
    for (std::size_t j = no; j < m.cols(); ++j) EXPECT_TRUE(ap.pair.form.evaluate(m.col(i), m.col(j)).is_zero());
}

TEST(IsotropicComplement, ShearedStandardPair) {
  const FinAbGroup a(3, {1, 1});
  const StandardPair sp = standard_pair(a);
  const FinAbGroup& l = sp.pair.group();
  const Subgroup l1(l, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  // 0 x A^ moved by the shear (0, chi) -> (M chi, chi), M not symmetric.
  const Subgroup l2(l, {{1, 2, 1, 0}, {0, 1, 0, 1}});
  ASSERT_FALSE(is_isotropic(sp.pair.form, l2));
  const Subgroup c = isotropic_complement(sp.pair, l1, l2);
  const auto mc = oracle::members(c);
  EXPECT_TRUE(oracle::isotropic(sp.pair.form, mc));
  EXPECT_EQ(mc.size(), 9u);
  EXPECT_EQ(c.intersect(l1), Subgroup::trivial(l));
}

TEST(IsotropicComplement, ExponentTwo) {
  const FinAbGroup a(2, {1, 1});
  const StandardPair sp = standard_pair(a);
  const FinAbGroup& l = sp.pair.group();
  const Subgroup l1(l, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  // Restricted to l2 the form has Gram matrix [[0, 1], [1, 0]].
  const Subgroup l2(l, {{1, 0, 0, 1}, {0, 0, 1, 0}});
  EXPECT_TRUE(sp.pair.form.evaluate({1, 0, 0, 1}, {0, 0, 1, 0}) == QmodZ(1, 2));
  const Subgroup c = isotropic_complement(sp.pair, l1, l2);
  EXPECT_TRUE(oracle::isotropic(sp.pair.form, oracle::members(c)));
  EXPECT_EQ(c.order(), 4);
  EXPECT_EQ(c.intersect(l1), Subgroup::trivial(l));
}

TEST(IsotropicComplement, MixedTwoPowerUnsupported) {
  const FinAbGroup a(2, {2, 1});
  const StandardPair sp = standard_pair(a);
  const FinAbGroup& l = sp.pair.group();
  const Subgroup l1(l, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  const Subgroup l2(l, {{0, 0, 1, 0}, {2, 0, 0, 1}});
  EXPECT_THROW(isotropic_complement(sp.pair, l1, l2), PreconditionError);
}

TEST(Polarize, TransportsStandardForm) {
  const FinAbGroup a(5, {2, 1});
  const StandardPair sp = standard_pair(a);
  const FinAbGroup& l = sp.pair.group();
  const Subgroup l1(l, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  const Subgroup l2(l, {{0, 0, 1, 0}, {0, 0, 0, 1}});
  const Polarization pol = polarize(sp.pair, l1, l2);
  EXPECT_EQ(pol.a.order(), a.order());
  const SymplecticForm std_form = standard_pair(pol.a).pair.form;
  EXPECT_EQ(sp.pair.form.pullback(pol.iso), std_form);
}

TEST(Standardize, SmallExamples) {
  // (Z/2)^2 carries a single nondegenerate alternating form.
  const SymplecticPair two{SymplecticForm(FinAbGroup(2, {1, 1}), IntMatrix{{0, 1}, {1, 0}}), std::nullopt};
  const StandardizationResult r = standardize_pair(two);
  EXPECT_EQ(r.a, FinAbGroup(2, {1}));
  expect_standardizes(two, r);

  const StandardPair sp = standard_pair(FinAbGroup(3, {1}));
  expect_standardizes(sp.pair, standardize_pair(sp.pair, StandardizeRoute::Polarization));
  expect_standardizes(sp.pair, standardize_pair(sp.pair, StandardizeRoute::Peel));
}

TEST(Standardize, ScrambledStandardPairs) {
  SplitMix64 rng(58);
  for (int t = 0; t < 80; ++t) {
    const long p = std::array<long, 3>{2, 3, 5}[t % 3];
    const FinAbGroup a(p, oracle::random_lambda(rng, 1 + rng.below(3), 3));
    const SymplecticPair pair = scrambled_standard(rng, a);
    const StandardizationResult r = standardize_pair(pair);
    std::vector<int> ea = r.a.exponents(), eb = a.exponents();
    std::sort(ea.begin(), ea.end());
    std::sort(eb.begin(), eb.end());
    EXPECT_EQ(ea, eb);
    expect_standardizes(pair, r);
  }
}

TEST(Standardize, ExponentPPolarizationRoute) {
  SplitMix64 rng(59);
  for (int t = 0; t < 60; ++t) {
    const long p = t % 2 ? 2 : 3;
    const FinAbGroup g(p, std::vector<int>(2 * (1 + rng.below(3)), 1));
    const AlternatingForm f(g, oracle::random_alternating(rng, g));
    if (!f.nondegenerate()) continue;
    const SymplecticPair pair{SymplecticForm(f), std::nullopt};
    const StandardizationResult r = standardize_pair(pair, StandardizeRoute::Polarization);
    EXPECT_EQ(r.route, StandardizeRoute::Polarization);
    expect_standardizes(pair, r);
  }
}

TEST(Standardize, AntidualPairsHalveTheMiddleGroup) {
  SplitMix64 rng(60);
  for (int t = 0; t < 30; ++t) {
    const ExtensionMatrix xi = oracle::random_antidual(rng, t % 2 ? 3 : 5, oracle::random_lambda(rng, 1 + rng.below(3), 2));
    const AntidualPair ap = symplectic_from_antidual(xi);
    const StandardizationResult r = standardize_pair(ap.pair);
    expect_standardizes(ap.pair, r);
    std::vector<int> doubled;
    for (int e : r.a.exponents()) doubled.insert(doubled.end(), {e, e});
    std::sort(doubled.rbegin(), doubled.rend());
    EXPECT_EQ(doubled, extension_group(xi).exponents());
  }
}
