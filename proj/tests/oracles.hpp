#pragma once

// Brute-force reference computations for the tests. Nothing here calls the
// library's Smith code, subgroup normal forms or congruence solver; the only
// shared pieces are the value types (Int, IntMatrix, FinAbGroup) and
// element arithmetic.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "symplectica/extensions.hpp"
#include "symplectica/groups.hpp"
#include "symplectica/random.hpp"

namespace oracle {

using namespace symplectica;

// Laplace expansion along the first row.
inline Int cofactor_det(const std::vector<std::vector<Int>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Int det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<Int>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Int> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    const Int term = m[0][c] * cofactor_det(minor);
    det += (c % 2 == 0) ? term : Int(-term);
  }
  return det;
}

inline void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
                    const std::function<void(const std::vector<std::size_t>&)>& f) {
  if (cur.size() == k) {
    f(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, f);
    cur.pop_back();
  }
}

/// d_k = gcd of all k x k minors, k = 1..min(rows, cols).
inline IntVector determinantal_divisors(const IntMatrix& a) {
  IntVector out;
  const std::size_t kmax = std::min(a.rows(), a.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    Int g = 0;
    std::vector<std::size_t> rs, cs;
    subsets(a.rows(), k, 0, rs, [&](const std::vector<std::size_t>& rows) {
      subsets(a.cols(), k, 0, cs, [&](const std::vector<std::size_t>& cols) {
        std::vector<std::vector<Int>> m(k, std::vector<Int>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = a(rows[i], cols[j]);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), Int(cofactor_det(m)).get_mpz_t());
      });
    });
    out.push_back(g);
  }
  return out;
}

/// Smith diagonal d_1 | d_2 | ... from determinantal divisors (zeros past the rank).
inline IntVector smith_diagonal(const IntMatrix& a) {
  const IntVector d = determinantal_divisors(a);
  IntVector out;
  Int prev = 1;
  for (const auto& dk : d) {
    if (dk == 0) {
      out.push_back(0);
      continue;
    }
    out.push_back(dk / prev);
    prev = dk;
  }
  return out;
}

/// Invariant factors > 1 (ascending) of Z^rows / columns, for full row rank.
inline IntVector cokernel_invariants(const IntMatrix& a) {
  IntVector out;
  for (const auto& d : smith_diagonal(a))
    if (d != 1) out.push_back(d);
  return out;
}

/// The set of element indices spanned by `gens` (closure under addition).
inline std::set<unsigned long> span(const FinAbGroup& g, const std::vector<GroupElement>& gens) {
  std::set<unsigned long> seen{g.index_of(g.zero()).get_ui()};
  std::vector<GroupElement> frontier{g.zero()};
  while (!frontier.empty()) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier)
      for (const auto& h : gens) {
        const GroupElement y = element_add(g, x, g.reduce(h));
        if (seen.insert(g.index_of(y).get_ui()).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return seen;
}

inline bool is_bijective(const HomMatrix& h) {
  if (h.source().order() != h.target().order()) return false;
  std::set<unsigned long> img;
  for (const auto& x : h.source().elements()) img.insert(h.target().index_of(h.apply(x)).get_ui());
  return Int(static_cast<unsigned long>(img.size())) == h.target().order();
}

/// B(x, .) nonzero for every x != 0, by enumeration.
template <class Form>
bool nondegenerate(const Form& f) {
  const auto elems = f.group().elements();
  for (const auto& x : elems) {
    if (x == f.group().zero()) continue;
    bool hit = false;
    for (const auto& y : elems)
      if (!f.evaluate(x, y).is_zero()) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

template <class Form>
bool isotropic(const Form& f, const std::set<unsigned long>& sub) {
  for (auto a : sub)
    for (auto b : sub)
      if (!f.evaluate(f.group().element_at(Int(a)), f.group().element_at(Int(b))).is_zero()) return false;
  return true;
}

/// Orthogonal complement by enumeration.
template <class Form>
std::set<unsigned long> perp(const Form& f, const std::set<unsigned long>& sub) {
  std::set<unsigned long> out;
  const auto elems = f.group().elements();
  for (std::size_t i = 0; i < elems.size(); ++i) {
    bool ok = true;
    for (auto a : sub)
      if (!f.evaluate(elems[i], f.group().element_at(Int(a))).is_zero()) {
        ok = false;
        break;
      }
    if (ok) out.insert(f.group().index_of(elems[i]).get_ui());
  }
  return out;
}

inline std::set<unsigned long> members(const Subgroup& s) {
  std::set<unsigned long> out;
  for (const auto& x : s.elements()) out.insert(s.ambient().index_of(x).get_ui());
  return out;
}

// ---------------------------------------------------------------------------
// Generators.

inline Int uniform(SplitMix64& rng, const Int& lo, const Int& hi) { return lo + rng.below(Int(hi - lo + 1)); }

inline IntMatrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols, const Int& bound) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform(rng, -bound, bound);
  return m;
}

/// Product of random elementary integer operations (determinant +-1).
inline IntMatrix random_unimodular(SplitMix64& rng, std::size_t n, int steps = 12) {
  IntMatrix u = IntMatrix::identity(n);
  if (n == 0) return u;
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = rng.below(n), j = rng.below(n);
    switch (rng.below(3)) {
      case 0:
        if (i != j) u.add_row_multiple(i, j, uniform(rng, -3, 3));
        break;
      case 1:
        u.swap_rows(i, j);
        break;
      default:
        u.negate_row(i);
    }
  }
  return u;
}

inline std::vector<int> random_lambda(SplitMix64& rng, std::size_t l, int max_exp) {
  std::vector<int> lam(l);
  for (auto& e : lam) e = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_exp)));
  std::sort(lam.rbegin(), lam.rend());
  return lam;
}

inline ExtensionMatrix random_extension(SplitMix64& rng, long p, const std::vector<int>& lam) {
  ExponentProfile prof(p, lam);
  IntMatrix a(lam.size(), lam.size());
  for (std::size_t i = 0; i < lam.size(); ++i)
    for (std::size_t j = 0; j < lam.size(); ++j) a(i, j) = rng.below(prof.pair_modulus(i, j));
  return ExtensionMatrix(prof, a);
}

inline ExtensionMatrix random_antidual(SplitMix64& rng, long p, const std::vector<int>& lam) {
  ExponentProfile prof(p, lam);
  IntMatrix a(lam.size(), lam.size());
  for (std::size_t i = 0; i < lam.size(); ++i)
    for (std::size_t j = i + 1; j < lam.size(); ++j) {
      a(i, j) = rng.below(prof.pair_modulus(i, j));
      a(j, i) = -a(i, j);
    }
  return ExtensionMatrix(prof, a);
}

/// Every canonical antidual matrix for a profile (odd p: zero diagonal).
inline std::vector<ExtensionMatrix> all_antidual(long p, const std::vector<int>& lam) {
  ExponentProfile prof(p, lam);
  const std::size_t l = lam.size();
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j) slots.emplace_back(i, j);
  std::vector<ExtensionMatrix> out;
  std::vector<Int> c(slots.size(), 0);
  for (;;) {
    IntMatrix a(l, l);
    for (std::size_t k = 0; k < slots.size(); ++k) {
      a(slots[k].first, slots[k].second) = c[k];
      a(slots[k].second, slots[k].first) = -c[k];
    }
    out.emplace_back(prof, a);
    std::size_t k = 0;
    while (k < slots.size()) {
      if (++c[k] < prof.pair_modulus(slots[k].first, slots[k].second)) break;
      c[k] = 0;
      ++k;
    }
    if (k == slots.size()) break;
  }
  return out;
}

/// Random alternating numerators on g (not necessarily nondegenerate).
inline IntMatrix random_alternating(SplitMix64& rng, const FinAbGroup& g) {
  const std::size_t n = g.rank();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = rng.below(ipow(g.p(), std::min(g.exponents()[i], g.exponents()[j])));
      m(j, i) = -m(i, j);
    }
  return m;
}

}  // namespace oracle
