#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "symplectica/error.hpp"
#include "symplectica/heisenberg.hpp"

using namespace symplectica;

namespace {

using Dense = std::vector<std::vector<std::complex<double>>>;

std::complex<double> e(const QmodZ& q) { return std::polar(1.0, 2 * M_PI * q.value().get_d()); }

QmodZ character(const FinAbGroup& a, const GroupElement& chi, const GroupElement& z) {
  QmodZ out;
  for (std::size_t i = 0; i < a.rank(); ++i) out = out + QmodZ(chi[i] * z[i], a.modulus(i));
  return out;
}

// U(x, chi) straight from its definition on the basis of delta functions.
Dense dense_weyl(const FinAbGroup& a, const GroupElement& x, const GroupElement& chi) {
  const auto elems = a.elements();
  const std::size_t n = elems.size();
  Dense m(n, std::vector<std::complex<double>>(n));
  for (std::size_t z = 0; z < n; ++z) {
    GroupElement w(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) w[i] = elems[z][i] - x[i];
    m[z][a.index_of(a.reduce(w)).get_ui()] = e(character(a, chi, elems[z]));
  }
  return m;
}

Dense dense(const MonomialOperator& t) {
  const std::size_t n = t.dimension();
  Dense m(n, std::vector<std::complex<double>>(n));
  for (std::size_t z = 0; z < n; ++z) m[z][t.source()[z]] = e(t.phase()[z]);
  return m;
}

Dense multiply(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense c(n, std::vector<std::complex<double>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (std::abs(a[i][k]) > 0)
        for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

double distance(const Dense& a, const Dense& b, std::complex<double> scale = 1.0) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) d = std::max(d, std::abs(a[i][j] - scale * b[i][j]));
  return d;
}

// Checks a(x + y) - a(x) - a(y) == psi(x, y) - psi2(x, y) on every pair.
void expect_splits(const Cocycle& psi, const Cocycle& psi2, const Splitting& s) {
  const FinAbGroup& g = psi.group();
  const auto elems = g.elements();
  for (const auto& x : elems)
    for (const auto& y : elems)
      ASSERT_EQ(s.at(g, element_add(g, x, y)) - s.at(g, x) - s.at(g, y), psi(x, y) - psi2(x, y));
}

}  // namespace

TEST(Cocycle, StandardValues) {
  const Cocycle psi = standard_cocycle(FinAbGroup(3, {1}));
  EXPECT_EQ(psi({1, 0}, {0, 1}), QmodZ(2, 3));
  EXPECT_EQ(psi({0, 1}, {1, 0}), QmodZ());
  const CommutatorForm b = commutator_form(psi);
  EXPECT_EQ(b.form.numerators(), (IntMatrix{{0, 2}, {1, 0}}));
  EXPECT_TRUE(b.nondegenerate);
}

TEST(Cocycle, CommutatorOfBilinearIsAntisymmetrization) {
  SplitMix64 rng(71);
  for (int t = 0; t < 40; ++t) {
    const FinAbGroup g(t % 2 ? 3 : 2, oracle::random_lambda(rng, 1 + rng.below(3), 2));
    const std::size_t n = g.rank();
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.below(Int(81));
    const Cocycle psi = Cocycle::bilinear(g, m);
    const AlternatingForm b = commutator_form(psi).form;
    EXPECT_EQ(b, AlternatingForm(g, m - m.transpose()));
    // Symmetric part contributes nothing.
    EXPECT_TRUE(commutator_form(Cocycle::bilinear(g, m + m.transpose())).form.numerators().is_zero());
  }
}

TEST(Cocycle, StandardCommutatorMatchesStandardPair) {
  for (const auto& a : {FinAbGroup(3, {1}), FinAbGroup(2, {2, 1}), FinAbGroup(5, {1, 1}), FinAbGroup(3, {2})}) {
    const CommutatorForm b = commutator_form(standard_cocycle(a));
    EXPECT_EQ(b.form, standard_pair(a).pair.form) << a.str();
    EXPECT_TRUE(b.nondegenerate);
  }
}

TEST(Cocycle, TableRoundTripAndDefect) {
  const Cocycle psi = standard_cocycle(FinAbGroup(2, {1, 1}));
  const Cocycle t = psi.as_table();
  EXPECT_EQ(t.kind(), Cocycle::Kind::Table);
  EXPECT_EQ(commutator_form(t).form, commutator_form(psi).form);
  const auto elems = psi.group().elements();
  for (std::size_t i = 0; i < elems.size(); i += 3)
    for (std::size_t j = 0; j < elems.size(); j += 2)
      for (std::size_t k = 0; k < elems.size(); k += 5) {
        EXPECT_TRUE(cocycle_defect(psi, elems[i], elems[j], elems[k]).is_zero());
        EXPECT_EQ(t(elems[i], elems[j]), psi(elems[i], elems[j]));
      }
}

TEST(Cocycle, RejectsTableFailingTheIdentity) {
  const FinAbGroup g(3, {1});
  std::vector<QmodZ> values(9);
  values[1 * 3 + 1] = QmodZ(1, 3);
  try {
    Cocycle::table(g, values);
    FAIL();
  } catch (const InvariantViolation& e) {
    EXPECT_EQ(e.invariant(), "cocycle-identity");
  }
  EXPECT_THROW(Cocycle::table(g, std::vector<QmodZ>(8)), PreconditionError);
}

TEST(Splitting, SameCocycleGivesHomomorphism) {
  const Cocycle psi = standard_cocycle(FinAbGroup(3, {1}));
  const Splitting s = equivalence_splitting(psi, psi);
  EXPECT_TRUE(s.verified);
  expect_splits(psi, psi, s);
}

TEST(Splitting, Coboundary) {
  // psi(x, y) = f(x + y) - f(x) - f(y) for an arbitrary f with f(0) = 0.
  const FinAbGroup g(3, {1, 1});
  SplitMix64 rng(72);
  std::vector<QmodZ> f(9);
  for (std::size_t k = 1; k < 9; ++k) f[k] = QmodZ(rng.below(Int(27)), 27);
  const auto elems = g.elements();
  std::vector<QmodZ> values;
  for (const auto& x : elems)
    for (const auto& y : elems) {
      const auto ix = g.index_of(x).get_ui(), iy = g.index_of(y).get_ui();
      values.push_back(f[g.index_of(element_add(g, x, y)).get_ui()] - f[ix] - f[iy]);
    }
  const Cocycle psi = Cocycle::table(g, values);
  const Cocycle zero = Cocycle::bilinear(g, IntMatrix(2, 2));
  for (SplitMethod m : {SplitMethod::Integration, SplitMethod::Search}) {
    const Splitting s = equivalence_splitting(psi, zero, m);
    EXPECT_TRUE(s.verified);
    EXPECT_EQ(s.pairs_checked, 81u);
    expect_splits(psi, zero, s);
  }
}

TEST(Splitting, DistinctBilinearCocycles) {
  SplitMix64 rng(73);
  for (int t = 0; t < 30; ++t) {
    const FinAbGroup g(t % 2 ? 3 : 2, oracle::random_lambda(rng, 2, t % 2 ? 1 : 2));
    if (g.order() > 27) continue;
    const std::size_t n = g.rank();
    IntMatrix m(n, n), s(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.below(Int(16));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) s(i, j) = s(j, i) = rng.below(Int(16));
    const Cocycle psi = Cocycle::bilinear(g, m), psi2 = Cocycle::bilinear(g, m + s);
    for (SplitMethod method : {SplitMethod::Integration, SplitMethod::Search}) {
      const Splitting sp = equivalence_splitting(psi, psi2, method, 5);
      EXPECT_TRUE(sp.verified);
      expect_splits(psi, psi2, sp);
    }
  }
}

TEST(Splitting, RejectsDifferentCommutators) {
  const FinAbGroup g(3, {1, 1});
  const Cocycle psi = Cocycle::bilinear(g, IntMatrix{{0, 1}, {0, 0}});
  const Cocycle psi2 = Cocycle::bilinear(g, IntMatrix(2, 2));
  EXPECT_THROW(equivalence_splitting(psi, psi2), PreconditionError);
  const FinAbGroup big(3, {2, 2});
  EXPECT_THROW(equivalence_splitting(Cocycle::bilinear(big, IntMatrix(2, 2)), Cocycle::bilinear(big, IntMatrix(2, 2)),
                                     SplitMethod::Search),
               PreconditionError);
}

TEST(Splitting, LargeGroupIsSampled) {
  const FinAbGroup g(3, {2, 2, 1});
  const Cocycle psi = Cocycle::bilinear(g, IntMatrix{{1, 2, 0}, {0, 4, 1}, {0, 2, 2}});
  const Cocycle psi2 = Cocycle::bilinear(g, IntMatrix{{1, 3, 0}, {1, 4, 1}, {0, 2, 0}});
  const Splitting s = equivalence_splitting(psi, psi2, SplitMethod::Auto, 9);
  EXPECT_TRUE(s.verified);
  EXPECT_EQ(s.pairs_checked, 10000u);
  expect_splits(psi, psi2, s);
}

TEST(Weyl, ZThreeExamples) {
  const FinAbGroup a(3, {1});
  const WeylProduct ab = weyl_compose(a, {1}, {0}, {0}, {1});
  EXPECT_EQ(ab.phase, QmodZ(2, 3));
  EXPECT_TRUE(ab.structural);
  EXPECT_TRUE(ab.commutator);
  EXPECT_EQ(ab.commutator_phase, QmodZ(2, 3));
  const WeylProduct ba = weyl_compose(a, {0}, {1}, {1}, {0});
  EXPECT_EQ(ba.phase, QmodZ());
  EXPECT_EQ(ba.commutator_phase, QmodZ(1, 3));
}

TEST(Weyl, OperatorsMatchDenseDefinition) {
  for (const auto& a : {FinAbGroup(3, {1}), FinAbGroup(2, {1, 1}), FinAbGroup(2, {2}), FinAbGroup(2, {2, 1})}) {
    const auto elems = a.elements();
    for (const auto& x : elems)
      for (const auto& chi : elems) {
        const MonomialOperator u = weyl_operator(a, x, chi);
        ASSERT_LT(distance(dense(u), dense_weyl(a, x, chi)), 1e-12);
        EXPECT_EQ(u * u.inverse(), MonomialOperator::identity(elems.size()));
      }
  }
}

TEST(Weyl, ProductLawAgainstDenseMatrices) {
  for (const auto& a : {FinAbGroup(3, {1}), FinAbGroup(2, {1, 1}), FinAbGroup(2, {2})}) {
    const auto elems = a.elements();
    for (const auto& x : elems)
      for (const auto& chi : elems)
        for (const auto& y : elems)
          for (const auto& lam : elems) {
            const WeylProduct w = weyl_compose(a, x, chi, y, lam);
            ASSERT_TRUE(w.structural);
            ASSERT_TRUE(w.commutator);
            ASSERT_EQ(w.phase, -character(a, lam, x));
            ASSERT_EQ(w.commutator_phase, character(a, chi, y) - character(a, lam, x));
            const Dense lhs = multiply(dense_weyl(a, x, chi), dense_weyl(a, y, lam));
            ASSERT_LT(distance(lhs, dense_weyl(a, w.x, w.chi), e(w.phase)), 1e-9);
          }
  }
}

TEST(Weyl, BudgetIsEnforced) {
  const FinAbGroup a(5, {3});
  EXPECT_THROW(weyl_operator(a, {1}, {0}), BudgetExceeded);
  EXPECT_NO_THROW(weyl_operator(a, {1}, {0}, 125));
}
