#pragma once

#include <optional>
#include <vector>

#include "symplectica/matrix.hpp"

namespace symplectica {

/// U * A * V = D with U, V unimodular and D diagonal, non-negative, with
/// d_1 | d_2 | ... | d_r followed by zeros.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix D;
  IntMatrix V;
  /// Inverse of U, maintained alongside U during the reduction.
  IntMatrix U_inverse;
  std::size_t rank = 0;

  /// d_1, ..., d_min(m,n) in ascending divisibility order.
  IntVector diagonal() const;
  /// Nonzero invariants listed largest first (d_r, ..., d_1).
  IntVector descending() const;
};

/// Smith normal form. Pivot: nonzero entry of minimal absolute value,
/// ties broken by the lexicographically smallest (row, col).
SmithDecomposition smith(const IntMatrix& a);

/// Invariant factors (> 1, ascending) of Z^n / column space of `a`, where
/// n = a.rows(). Throws PreconditionError when the quotient is infinite.
IntVector cokernel_structure(const IntMatrix& a);

/// Some integer x with a*x == b componentwise modulo `moduli`, or nullopt
/// when no solution exists (the answer is definitive).
std::optional<IntVector> solve_congruence(const IntMatrix& a, const IntVector& b, const IntVector& moduli);

/// Columns spanning the integer kernel {x : a*x = 0}.
IntMatrix integer_kernel(const IntMatrix& a);

/// Rank of `a` reduced modulo the prime p.
std::size_t rank_mod_p(const IntMatrix& a, long p);

}  // namespace symplectica
