#include "symplectica/smith.hpp"

#include <algorithm>

#include "symplectica/error.hpp"

namespace symplectica {

namespace {

// Working state: D is reduced in place, every row operation is mirrored in
// U (and inversely in U_inverse), every column operation in V.
struct Reducer {
  IntMatrix D, U, Uinv, V;

  void row_add(std::size_t dst, std::size_t src, const Int& k) {
    D.add_row_multiple(dst, src, k);
    U.add_row_multiple(dst, src, k);
    Uinv.add_col_multiple(src, dst, -k);
  }
  void row_swap(std::size_t a, std::size_t b) {
    D.swap_rows(a, b);
    U.swap_rows(a, b);
    Uinv.swap_cols(a, b);
  }
  void row_negate(std::size_t i) {
    D.negate_row(i);
    U.negate_row(i);
    Uinv.negate_col(i);
  }
  void col_add(std::size_t dst, std::size_t src, const Int& k) {
    D.add_col_multiple(dst, src, k);
    V.add_col_multiple(dst, src, k);
  }
  void col_swap(std::size_t a, std::size_t b) {
    D.swap_cols(a, b);
    V.swap_cols(a, b);
  }

  // Minimal |entry| in the trailing block starting at (t, t).
  bool find_pivot(std::size_t t, std::size_t& pr, std::size_t& pc) const {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < D.rows(); ++i)
      for (std::size_t j = t; j < D.cols(); ++j) {
        const Int& x = D(i, j);
        if (x == 0) continue;
        Int ax = abs(x);
        if (!found || ax < best) {
          best = ax;
          pr = i;
          pc = j;
          found = true;
        }
      }
    return found;
  }
};

}  // namespace

IntVector SmithDecomposition::diagonal() const {
  IntVector d(std::min(D.rows(), D.cols()));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = D(i, i);
  return d;
}

IntVector SmithDecomposition::descending() const {
  IntVector d;
  for (std::size_t i = rank; i-- > 0;) d.push_back(D(i, i));
  return d;
}

SmithDecomposition smith(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  Reducer r{a, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n)};
  std::size_t t = 0;
  for (; t < std::min(m, n); ++t) {
    for (;;) {
      std::size_t pr = 0, pc = 0;
      if (!r.find_pivot(t, pr, pc)) goto done;
      r.row_swap(t, pr);
      r.col_swap(t, pc);
      const Int piv = r.D(t, t);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (r.D(i, t) == 0) continue;
        r.row_add(i, t, -floor_div(r.D(i, t), piv));
        if (r.D(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (r.D(t, j) == 0) continue;
        r.col_add(j, t, -floor_div(r.D(t, j), piv));
        if (r.D(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Row and column are clear; enforce divisibility of the remainder.
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(r.D(i, j).get_mpz_t(), piv.get_mpz_t())) {
            r.row_add(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (r.D(t, t) < 0) r.row_negate(t);
  }
done:
  SmithDecomposition out;
  out.rank = t;
  out.U = std::move(r.U);
  out.D = std::move(r.D);
  out.V = std::move(r.V);
  out.U_inverse = std::move(r.Uinv);
  return out;
}

IntVector cokernel_structure(const IntMatrix& a) {
  const SmithDecomposition s = smith(a);
  if (s.rank < a.rows())
    throw PreconditionError("cokernel_structure: column space has rank " + std::to_string(s.rank) + " < " +
                            std::to_string(a.rows()) + " (infinite cokernel)");
  IntVector out;
  for (const Int& d : s.diagonal())
    if (d != 1) out.push_back(d);
  return out;
}

std::optional<IntVector> solve_congruence(const IntMatrix& a, const IntVector& b, const IntVector& moduli) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m || moduli.size() != m) throw PreconditionError("solve_congruence: dimension mismatch");
  for (const Int& q : moduli)
    if (q <= 0) throw PreconditionError("solve_congruence: moduli must be positive");
  if (m == 0) return IntVector(n);

  // a*x + diag(moduli)*y = b over Z.
  const IntMatrix system = a.hcat(IntMatrix::diagonal(moduli));
  const SmithDecomposition s = smith(system);
  const IntVector c = s.U * b;
  IntVector z(system.cols());
  for (std::size_t k = 0; k < m; ++k) {
    if (k < s.rank) {
      const Int& d = s.D(k, k);
      if (!mpz_divisible_p(c[k].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      mpz_divexact(z[k].get_mpz_t(), c[k].get_mpz_t(), d.get_mpz_t());
    } else if (c[k] != 0) {
      return std::nullopt;
    }
  }
  const IntVector full = s.V * z;
  IntVector x(full.begin(), full.begin() + static_cast<std::ptrdiff_t>(n));
  const IntVector ax = a * x;
  for (std::size_t i = 0; i < m; ++i)
    if (mod(ax[i] - b[i], moduli[i]) != 0) throw Error("solve_congruence: internal verification failed");
  return x;
}

IntMatrix integer_kernel(const IntMatrix& a) {
  const SmithDecomposition s = smith(a);
  std::vector<std::size_t> cols;
  for (std::size_t j = s.rank; j < a.cols(); ++j) cols.push_back(j);
  std::vector<std::size_t> rows(a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return s.V.select(rows, cols);
}

std::size_t rank_mod_p(const IntMatrix& a, long p) {
  IntMatrix m = a;
  const Int P = p;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = mod(m(i, j), P);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t r = rank;
    while (r < m.rows() && m(r, c) == 0) ++r;
    if (r == m.rows()) continue;
    m.swap_rows(rank, r);
    const Int inv = inverse_mod(m(rank, c), P);
    for (std::size_t j = c; j < m.cols(); ++j) m(rank, j) = mod(m(rank, j) * inv, P);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || m(i, c) == 0) continue;
      const Int k = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = mod(m(i, j) - k * m(rank, j), P);
    }
    ++rank;
  }
  return rank;
}

}  // namespace symplectica
