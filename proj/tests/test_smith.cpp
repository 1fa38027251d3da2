#include <gtest/gtest.h>

#include "oracles.hpp"
#include "symplectica/error.hpp"
#include "symplectica/smith.hpp"

using namespace symplectica;

namespace {

bool divisibility_chain(const IntVector& d) {
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i] == 0) {
      if (d[i + 1] != 0) return false;
      continue;
    }
    if (d[i + 1] % d[i] != 0) return false;
  }
  return true;
}

void expect_valid(const IntMatrix& a, const SmithDecomposition& s) {
  EXPECT_EQ(s.U * a * s.V, s.D);
  EXPECT_EQ(abs(determinant(s.U)), 1);
  EXPECT_EQ(abs(determinant(s.V)), 1);
  EXPECT_EQ(s.U * s.U_inverse, IntMatrix::identity(a.rows()));
  for (std::size_t i = 0; i < s.D.rows(); ++i)
    for (std::size_t j = 0; j < s.D.cols(); ++j)
      if (i != j) EXPECT_EQ(s.D(i, j), 0);
  for (const auto& d : s.diagonal()) EXPECT_GE(d, 0);
  EXPECT_TRUE(divisibility_chain(s.diagonal()));
}

}  // namespace

TEST(Smith, DiagonalTwoThree) {
  const IntMatrix a{{2, 0}, {0, 3}};
  const auto s = smith(a);
  expect_valid(a, s);
  EXPECT_EQ(s.D, (IntMatrix{{1, 0}, {0, 6}}));
}

TEST(Smith, ShearedNine) {
  const IntMatrix a{{3, -1}, {0, 3}};
  const auto s = smith(a);
  expect_valid(a, s);
  EXPECT_EQ(s.D, (IntMatrix{{1, 0}, {0, 9}}));
  EXPECT_EQ(cokernel_structure(a), IntVector{9});
}

TEST(Smith, IdentityAndZero) {
  const auto s = smith(IntMatrix::identity(3));
  EXPECT_EQ(s.D, IntMatrix::identity(3));
  const IntMatrix z(2, 3);
  const auto sz = smith(z);
  expect_valid(z, sz);
  EXPECT_EQ(sz.rank, 0u);
  const IntMatrix empty(0, 0);
  EXPECT_EQ(smith(empty).rank, 0u);
}

TEST(Smith, CokernelRejectsInfinite) {
  EXPECT_THROW(cokernel_structure(IntMatrix{{1, 2}, {2, 4}}), PreconditionError);
  EXPECT_THROW(cokernel_structure(IntMatrix(2, 1)), PreconditionError);
}

TEST(Smith, MatchesDeterminantalDivisors) {
  SplitMix64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const std::size_t m = 1 + rng.below(4), n = 1 + rng.below(4);
    const IntMatrix a = oracle::random_matrix(rng, m, n, t % 2 ? 6 : 40);
    const auto s = smith(a);
    expect_valid(a, s);
    EXPECT_EQ(s.diagonal(), oracle::smith_diagonal(a)) << a;
  }
}

TEST(Smith, RandomLargeEntries) {
  SplitMix64 rng(12);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 1 + rng.below(8), n = 1 + rng.below(8);
    const IntMatrix a = oracle::random_matrix(rng, m, n, 1000000);
    expect_valid(a, smith(a));
  }
}

TEST(Smith, CokernelInvariantUnderUnimodular) {
  SplitMix64 rng(13);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 1 + rng.below(4);
    IntMatrix a = oracle::random_matrix(rng, n, n, 9);
    if (determinant(a) == 0) continue;
    const IntMatrix b = oracle::random_unimodular(rng, n) * a * oracle::random_unimodular(rng, n);
    EXPECT_EQ(cokernel_structure(a), cokernel_structure(b));
    EXPECT_EQ(cokernel_structure(a), oracle::cokernel_invariants(a));
  }
}

TEST(Congruence, ExampleHasSolution) {
  const IntMatrix a{{1, 1}, {0, 3}};
  const IntVector moduli{3, 9};
  const auto x = solve_congruence(a, {0, 3}, moduli);
  ASSERT_TRUE(x.has_value());
  const IntVector ax = a * *x;
  EXPECT_EQ(mod(ax[0], 3), 0);
  EXPECT_EQ(mod(ax[1] - 3, 9), 0);
}

TEST(Congruence, AgreesWithExhaustiveSearch) {
  SplitMix64 rng(14);
  for (int t = 0; t < 200; ++t) {
    const std::size_t rows = 1 + rng.below(2), cols = 1 + rng.below(2);
    const IntMatrix a = oracle::random_matrix(rng, rows, cols, 8);
    IntVector moduli(rows), b(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      moduli[i] = 2 + rng.below(8);
      b[i] = rng.below(moduli[i]);
    }
    bool exists = false;
    // Any solution can be taken mod lcm of the moduli, which is at most 72.
    for (long x0 = 0; x0 < 72 && !exists; ++x0)
      for (long x1 = 0; x1 < (cols > 1 ? 72 : 1) && !exists; ++x1) {
        IntVector x{x0};
        if (cols > 1) x.push_back(x1);
        const IntVector ax = a * x;
        bool ok = true;
        for (std::size_t i = 0; i < rows; ++i) ok = ok && mod(ax[i] - b[i], moduli[i]) == 0;
        exists = ok;
      }
    const auto sol = solve_congruence(a, b, moduli);
    EXPECT_EQ(sol.has_value(), exists);
    if (sol) {
      const IntVector ax = a * *sol;
      for (std::size_t i = 0; i < rows; ++i) EXPECT_EQ(mod(ax[i] - b[i], moduli[i]), 0);
    }
  }
}

TEST(Kernel, SpansIntegerKernel) {
  SplitMix64 rng(15);
  for (int t = 0; t < 100; ++t) {
    const std::size_t m = 1 + rng.below(3), n = 1 + rng.below(5);
    const IntMatrix a = oracle::random_matrix(rng, m, n, 5);
    const IntMatrix k = integer_kernel(a);
    EXPECT_TRUE((a * k).is_zero());
    EXPECT_EQ(k.cols(), n - smith(a).rank);
  }
}

TEST(RankModP, MatchesMinors) {
  SplitMix64 rng(16);
  for (long p : {2L, 3L, 5L})
    for (int t = 0; t < 60; ++t) {
      const IntMatrix a = oracle::random_matrix(rng, 1 + rng.below(4), 1 + rng.below(4), 10);
      // rank over F_p = largest k with some k x k minor not divisible by p.
      const IntVector d = oracle::determinantal_divisors(a);
      std::size_t expected = 0;
      for (std::size_t k = 0; k < d.size(); ++k) {
        bool unit_minor = false;
        std::vector<std::size_t> rs, cs;
        oracle::subsets(a.rows(), k + 1, 0, rs, [&](const std::vector<std::size_t>& rows) {
          oracle::subsets(a.cols(), k + 1, 0, cs, [&](const std::vector<std::size_t>& cols) {
            std::vector<std::vector<Int>> m(k + 1, std::vector<Int>(k + 1));
            for (std::size_t i = 0; i <= k; ++i)
              for (std::size_t j = 0; j <= k; ++j) m[i][j] = a(rows[i], cols[j]);
            if (mod(oracle::cofactor_det(m), p) != 0) unit_minor = true;
          });
        });
        if (unit_minor) expected = k + 1;
      }
      EXPECT_EQ(rank_mod_p(a, p), expected) << a;
    }
}
