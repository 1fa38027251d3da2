#include "symplectica/symplectic.hpp"

#include <algorithm>

#include "symplectica/error.hpp"
#include "symplectica/smith.hpp"
#include "symplectica/standardness.hpp"

namespace symplectica {

namespace {

IntVector unit_vector(std::size_t n, std::size_t k) {
  IntVector e(n);
  e[k] = 1;
  return e;
}

// Hermite normal form of the lattice spanned by `vecs` and the moduli of g.
IntMatrix build_hnf(const FinAbGroup& g, std::vector<IntVector> vecs) {
  const std::size_t n = g.rank();
  for (auto& v : vecs) v = g.reduce(v);
  IntMatrix b(n, n);
  for (std::size_t k = n; k-- > 0;) {
    vecs.push_back(IntVector(n));
    vecs.back()[k] = g.modulus(k);
    // Euclid on coordinate k across all vectors.
    for (;;) {
      std::size_t best = vecs.size();
      std::size_t nonzero = 0;
      for (std::size_t i = 0; i < vecs.size(); ++i) {
        if (vecs[i][k] == 0) continue;
        ++nonzero;
        if (best == vecs.size() || abs(vecs[i][k]) < abs(vecs[best][k])) best = i;
      }
      if (nonzero <= 1) {
        IntVector piv = vecs[best];
        vecs.erase(vecs.begin() + static_cast<std::ptrdiff_t>(best));
        if (piv[k] < 0)
          for (auto& x : piv) x = -x;
        for (std::size_t i = 0; i < n; ++i) b(i, k) = piv[i];
        break;
      }
      for (std::size_t i = 0; i < vecs.size(); ++i) {
        if (i == best || vecs[i][k] == 0) continue;
        const Int q = floor_div(vecs[i][k], vecs[best][k]);
        for (std::size_t c = 0; c <= k; ++c) vecs[i][c] -= q * vecs[best][c];
      }
    }
    for (auto& v : vecs)
      for (std::size_t c = 0; c < k; ++c) v[c] = mod(v[c], g.modulus(c));
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = k; i-- > 0;) {
      const Int q = floor_div(b(i, k), b(i, i));
      if (q != 0) b.add_col_multiple(k, i, -q);
    }
  return b;
}

// Exact solution of hnf * y = x (x must lie in the lattice).
IntVector triangular_solve(const IntMatrix& hnf, IntVector x) {
  const std::size_t n = hnf.rows();
  IntVector y(n);
  for (std::size_t k = n; k-- > 0;) {
    if (!mpz_divisible_p(x[k].get_mpz_t(), hnf(k, k).get_mpz_t()))
      throw Error("triangular_solve: vector is not in the lattice");
    mpz_divexact(y[k].get_mpz_t(), x[k].get_mpz_t(), hnf(k, k).get_mpz_t());
    for (std::size_t i = 0; i <= k; ++i) x[i] -= y[k] * hnf(i, k);
  }
  return y;
}

Int common_denominator(const FinAbGroup& g) { return ipow(g.p(), g.max_exponent()); }

// Q * value, as an integer in [0, Q).
Int scaled_value(const QmodZ& v, const Int& q) {
  Int out;
  mpz_divexact(out.get_mpz_t(), q.get_mpz_t(), v.denominator().get_mpz_t());
  return out * v.numerator();
}

}  // namespace

// ---------------------------------------------------------------------------

Subgroup::Subgroup(FinAbGroup ambient, const std::vector<GroupElement>& generators) : ambient_(std::move(ambient)) {
  for (const auto& x : generators)
    if (x.size() != ambient_.rank()) throw PreconditionError("Subgroup: generator has the wrong number of coordinates");
  hnf_ = build_hnf(ambient_, generators);
}

Subgroup Subgroup::whole(const FinAbGroup& g) {
  std::vector<GroupElement> gens;
  for (std::size_t k = 0; k < g.rank(); ++k) gens.push_back(unit_vector(g.rank(), k));
  return Subgroup(g, gens);
}

std::vector<GroupElement> Subgroup::generators() const {
  std::vector<GroupElement> out;
  for (std::size_t k = 0; k < ambient_.rank(); ++k)
    if (hnf_(k, k) != ambient_.modulus(k)) out.push_back(ambient_.reduce(hnf_.col(k)));
  return out;
}

bool Subgroup::projection_contains(const GroupElement& x, std::size_t k) const {
  IntVector y = x;
  for (std::size_t j = ambient_.rank(); j-- > k;) {
    if (!mpz_divisible_p(y[j].get_mpz_t(), hnf_(j, j).get_mpz_t())) return false;
    Int q;
    mpz_divexact(q.get_mpz_t(), y[j].get_mpz_t(), hnf_(j, j).get_mpz_t());
    for (std::size_t i = 0; i <= j; ++i) y[i] -= q * hnf_(i, j);
  }
  return true;
}

bool Subgroup::contains(const GroupElement& x) const {
  if (x.size() != ambient_.rank()) throw PreconditionError("Subgroup::contains: dimension mismatch");
  return projection_contains(x, 0);
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  if (ambient_ != other.ambient_) throw PreconditionError("Subgroup: different ambient groups");
  for (const auto& g : generators())
    if (!other.contains(g)) return false;
  return true;
}

Int Subgroup::order_below(std::size_t k) const {
  Int o = 1;
  for (std::size_t i = 0; i < k; ++i) o *= ambient_.modulus(i) / hnf_(i, i);
  return o;
}

Int Subgroup::order() const { return order_below(ambient_.rank()); }

Subgroup Subgroup::operator+(const Subgroup& other) const {
  if (ambient_ != other.ambient_) throw PreconditionError("Subgroup: different ambient groups");
  auto gens = generators();
  for (auto& g : other.generators()) gens.push_back(g);
  return Subgroup(ambient_, gens);
}

Subgroup Subgroup::intersect(const Subgroup& other) const {
  if (ambient_ != other.ambient_) throw PreconditionError("Subgroup: different ambient groups");
  const std::size_t n = ambient_.rank();
  const IntMatrix k = integer_kernel(hnf_.hcat(-other.hnf_));
  std::vector<GroupElement> gens;
  for (std::size_t c = 0; c < k.cols(); ++c) {
    IntVector u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = k(i, c);
    gens.push_back(ambient_.reduce(hnf_ * u));
  }
  return Subgroup(ambient_, gens);
}

SubgroupBasis Subgroup::basis() const {
  const std::size_t n = ambient_.rank();
  IntMatrix rel(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    IntVector t(n);
    t[k] = ambient_.modulus(k);
    const IntVector r = triangular_solve(hnf_, t);
    for (std::size_t i = 0; i < n; ++i) rel(i, k) = r[i];
  }
  Presentation pr = present(ambient_.p(), rel);
  std::vector<IntVector> cols;
  for (std::size_t j = 0; j < pr.group.rank(); ++j) cols.push_back(ambient_.reduce(hnf_ * pr.from_basis.col(j)));
  HomMatrix emb(pr.group, ambient_, IntMatrix::from_columns(n, cols));
  return SubgroupBasis{pr.group, emb, hnf_, pr.to_basis};
}

GroupElement SubgroupBasis::element(std::size_t j) const { return embedding.entries().col(j); }

GroupElement SubgroupBasis::coordinates(const GroupElement& x) const {
  return group.reduce(lattice_to_basis * triangular_solve(hnf, x));
}

std::optional<GroupElement> Subgroup::least_element_outside(const Subgroup& inner_in) const {
  if (ambient_ != inner_in.ambient_) throw PreconditionError("Subgroup: different ambient groups");
  const Subgroup inner = inner_in.intersect(*this);
  if (inner == *this) return std::nullopt;
  const std::size_t n = ambient_.rank();
  // The coset fixed on coordinates >= k holds an element outside `inner`
  // iff `inner` misses it entirely or is smaller on the free coordinates.
  auto open = [&](const GroupElement& x, std::size_t k) {
    return !inner.projection_contains(x, k) || order_below(k) > inner.order_below(k);
  };
  GroupElement acc = ambient_.zero();
  for (std::size_t k = n; k-- > 0;) {
    const Int& d = hnf_(k, k);
    const Int& pk = ambient_.modulus(k);
    const Int span = pk / d;
    const Int offset = mod(acc[k], d);
    bool chosen = false;
    for (Int s = 0; s < span; ++s) {
      const Int value = offset + s * d;
      Int t;
      mpz_divexact(t.get_mpz_t(), Int(value - acc[k]).get_mpz_t(), d.get_mpz_t());
      GroupElement cand = acc;
      for (std::size_t i = 0; i <= k; ++i) cand[i] += t * hnf_(i, k);
      cand = ambient_.reduce(cand);
      if (open(cand, k)) {
        acc = cand;
        chosen = true;
        break;
      }
    }
    if (!chosen) throw Error("least_element_outside: search failed");
  }
  return acc;
}

std::vector<GroupElement> Subgroup::elements() const {
  const Int total = order();
  require_enumerable(total, "subgroup");
  const std::size_t n = ambient_.rank();
  std::vector<GroupElement> out;
  std::vector<Int> c(n);
  for (;;) {
    IntVector x(n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i <= k; ++i) x[i] += c[k] * hnf_(i, k);
    out.push_back(ambient_.reduce(x));
    std::size_t k = 0;
    while (k < n) {
      ++c[k];
      if (c[k] < ambient_.modulus(k) / hnf_(k, k)) break;
      c[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  std::sort(out.begin(), out.end(), [&](const GroupElement& a, const GroupElement& b) {
    return ambient_.index_of(a) < ambient_.index_of(b);
  });
  return out;
}

Subgroup kernel_of_functionals(const FinAbGroup& g, const IntMatrix& w, const Int& q) {
  const std::size_t n = g.rank(), r = w.rows();
  if (w.cols() != n) throw PreconditionError("kernel_of_functionals: dimension mismatch");
  if (r == 0) return Subgroup::whole(g);
  IntVector qs(r, q);
  const IntMatrix k = integer_kernel(w.hcat(IntMatrix::diagonal(qs)));
  std::vector<GroupElement> gens;
  for (std::size_t c = 0; c < k.cols(); ++c) {
    IntVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = k(i, c);
    gens.push_back(g.reduce(x));
  }
  return Subgroup(g, gens);
}

// ---------------------------------------------------------------------------

AlternatingForm::AlternatingForm(FinAbGroup group, const IntMatrix& numerators)
    : group_(std::move(group)), numerators_(numerators) {
  const std::size_t n = group_.rank();
  if (numerators_.rows() != n || numerators_.cols() != n)
    throw PreconditionError("AlternatingForm: numerator matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) numerators_(i, j) = mod(numerators_(i, j), pair_modulus(i, j));
  for (std::size_t i = 0; i < n; ++i) {
    if (numerators_(i, i) != 0)
      throw InvariantViolation("alternating", "diagonal numerator " + std::to_string(i) + " is nonzero");
    for (std::size_t j = i + 1; j < n; ++j)
      if (numerators_(j, i) != mod(-numerators_(i, j), pair_modulus(i, j)))
        throw InvariantViolation("alternating",
                                 "n[" + std::to_string(j) + "][" + std::to_string(i) + "] != -n[" + std::to_string(i) +
                                     "][" + std::to_string(j) + "]");
  }
}

Int AlternatingForm::pair_modulus(std::size_t i, std::size_t j) const {
  return ipow(group_.p(), std::min(group_.exponents()[i], group_.exponents()[j]));
}

AlternatingForm AlternatingForm::from_values(const FinAbGroup& group, const std::vector<std::vector<QmodZ>>& values) {
  const std::size_t n = group.rank();
  IntMatrix num(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Int m = ipow(group.p(), std::min(group.exponents()[a], group.exponents()[b]));
      const Int top = values[a][b].numerator() * m;
      if (!mpz_divisible_p(top.get_mpz_t(), values[a][b].denominator().get_mpz_t()))
        throw InvariantViolation("well-definedness", "pairing value " + values[a][b].str() + " on generators " +
                                                         std::to_string(a) + "," + std::to_string(b) +
                                                         " exceeds their orders");
      mpz_divexact(num(a, b).get_mpz_t(), top.get_mpz_t(), values[a][b].denominator().get_mpz_t());
    }
  return AlternatingForm(group, num);
}

IntMatrix AlternatingForm::functional_rows(const std::vector<GroupElement>& elems) const {
  const std::size_t n = group_.rank();
  const Int q = common_denominator(group_);
  IntMatrix w(elems.size(), n);
  for (std::size_t r = 0; r < elems.size(); ++r) {
    if (elems[r].size() != n) throw PreconditionError("AlternatingForm: dimension mismatch");
    for (std::size_t i = 0; i < n; ++i) {
      if (elems[r][i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (numerators_(i, j) == 0) continue;
        w(r, j) += numerators_(i, j) * elems[r][i] * (q / pair_modulus(i, j));
      }
    }
  }
  return w;
}

QmodZ AlternatingForm::evaluate(const GroupElement& x, const GroupElement& y) const {
  if (x.size() != group_.rank() || y.size() != group_.rank())
    throw PreconditionError("evaluate: dimension mismatch");
  const IntMatrix w = functional_rows({x});
  Int s = 0;
  for (std::size_t j = 0; j < y.size(); ++j) s += w(0, j) * y[j];
  return QmodZ(s, common_denominator(group_));
}

HomMatrix AlternatingForm::as_hom() const {
  const std::size_t n = group_.rank();
  IntMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      s(j, i) = numerators_(i, j) * ipow(group_.p(), group_.exponents()[j] - std::min(group_.exponents()[i],
                                                                                     group_.exponents()[j]));
  return HomMatrix(group_, group_, s);
}

bool AlternatingForm::nondegenerate() const {
  const std::size_t n = group_.rank();
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (group_.exponents()[i] <= group_.exponents()[j]) m(i, j) = numerators_(i, j);
  return rank_mod_p(m, group_.p()) == n;
}

AlternatingForm AlternatingForm::pullback(const HomMatrix& h) const {
  if (h.target() != group_) throw PreconditionError("pullback: map does not land in the form's group");
  const std::size_t k = h.source().rank();
  std::vector<GroupElement> imgs;
  for (std::size_t a = 0; a < k; ++a) imgs.push_back(h.entries().col(a));
  const IntMatrix w = functional_rows(imgs);
  const Int q = common_denominator(group_);
  std::vector<std::vector<QmodZ>> vals(k, std::vector<QmodZ>(k));
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      Int s = 0;
      for (std::size_t j = 0; j < group_.rank(); ++j) s += w(a, j) * imgs[b][j];
      vals[a][b] = QmodZ(s, q);
    }
  return from_values(h.source(), vals);
}

SymplecticForm::SymplecticForm(FinAbGroup group, const IntMatrix& numerators)
    : SymplecticForm(AlternatingForm(std::move(group), numerators)) {}

SymplecticForm::SymplecticForm(const AlternatingForm& form) : AlternatingForm(form) {
  if (!nondegenerate()) throw InvariantViolation("nondegenerate", "an element of order p pairs trivially with everything");
}

QmodZ evaluate(const SymplecticForm& form, const GroupElement& x, const GroupElement& y) {
  return form.evaluate(x, y);
}

// ---------------------------------------------------------------------------

StandardPair standard_pair(const FinAbGroup& a, const std::optional<Subgroup>& b_in) {
  const std::size_t r = a.rank();
  const FinAbGroup l = a.product(a);
  IntMatrix num(2 * r, 2 * r);
  for (std::size_t i = 0; i < r; ++i) {
    num(r + i, i) = 1;
    num(i, r + i) = -1;
  }
  SymplecticPair pair{SymplecticForm(l, num), std::nullopt};

  const Subgroup b = b_in ? *b_in : Subgroup::whole(a);
  if (b.ambient() != a) throw PreconditionError("standard_pair: B is not a subgroup of A");
  const auto bgens = b.generators();
  const Int q = common_denominator(a);
  IntMatrix w(bgens.size(), r);
  for (std::size_t k = 0; k < bgens.size(); ++k)
    for (std::size_t i = 0; i < r; ++i) w(k, i) = bgens[k][i] * (q / a.modulus(i));
  const Subgroup bperp = kernel_of_functionals(a, w, q);

  std::vector<GroupElement> gens;
  for (const auto& g : bgens) {
    GroupElement x = l.zero();
    std::copy(g.begin(), g.end(), x.begin());
    gens.push_back(x);
  }
  for (const auto& g : bperp.generators()) {
    GroupElement x = l.zero();
    std::copy(g.begin(), g.end(), x.begin() + static_cast<std::ptrdiff_t>(r));
    gens.push_back(x);
  }
  Subgroup m0(l, gens);
  if (!is_maximal_isotropic(pair.form, m0)) throw InvariantViolation("maximal-isotropic", "B x B^perp");
  return StandardPair{pair, m0};
}

Subgroup orthogonal_complement(const AlternatingForm& form, const Subgroup& a) {
  if (a.ambient() != form.group()) throw PreconditionError("orthogonal_complement: subgroup of another group");
  return kernel_of_functionals(form.group(), form.functional_rows(a.generators()), common_denominator(form.group()));
}

bool is_isotropic(const AlternatingForm& form, const Subgroup& a) {
  return a.is_subgroup_of(orthogonal_complement(form, a));
}

bool is_maximal_isotropic(const SymplecticForm& form, const Subgroup& a) {
  return orthogonal_complement(form, a) == a;
}

Subgroup grow_maximal_isotropic(const SymplecticPair& pair, const Subgroup& seed) {
  if (!is_isotropic(pair.form, seed)) throw PreconditionError("grow_maximal_isotropic: seed is not isotropic");
  Subgroup g = seed;
  for (;;) {
    const Subgroup c = orthogonal_complement(pair.form, g);
    const auto x = c.least_element_outside(g);
    if (!x) return g;
    g = g + Subgroup(g.ambient(), {*x});
  }
}

SymplecticPair subquotient(const SymplecticPair& pair, const Subgroup& a) {
  const Subgroup c = orthogonal_complement(pair.form, a);
  if (!a.is_subgroup_of(c)) throw PreconditionError("subquotient: subgroup is not isotropic");
  const SubgroupBasis cb = c.basis();
  const FinAbGroup& k = cb.group;
  IntMatrix rel = IntMatrix::diagonal(k.moduli());
  std::vector<IntVector> acoords;
  for (const auto& g : a.generators()) acoords.push_back(cb.coordinates(g));
  if (!acoords.empty()) rel = rel.hcat(IntMatrix::from_columns(k.rank(), acoords));
  const Presentation pr = present(pair.group().p(), rel);

  std::vector<GroupElement> reps;
  for (std::size_t j = 0; j < pr.group.rank(); ++j) reps.push_back(cb.embedding.apply(k.reduce(pr.from_basis.col(j))));
  std::vector<std::vector<QmodZ>> vals(reps.size(), std::vector<QmodZ>(reps.size()));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j) vals[i][j] = pair.form.evaluate(reps[i], reps[j]);
  SymplecticForm f(AlternatingForm::from_values(pr.group, vals));
  return SymplecticPair{f, Provenance{pair.group(), reps, "subquotient"}};
}

namespace {

void require_complementary(const Subgroup& a, const Subgroup& b, const char* where) {
  if (a.ambient() != b.ambient()) throw PreconditionError(std::string(where) + ": different ambient groups");
  if (a.intersect(b).order() != 1 || a.order() * b.order() != a.ambient().order())
    throw PreconditionError(std::string(where) + ": subgroups are not complementary");
}

SymplecticPair restricted_pair(const SymplecticPair& pair, const SubgroupBasis& b, const char* how) {
  std::vector<GroupElement> imgs;
  for (std::size_t j = 0; j < b.group.rank(); ++j) imgs.push_back(b.element(j));
  return SymplecticPair{SymplecticForm(pair.form.pullback(b.embedding)), Provenance{pair.group(), imgs, how}};
}

// Solve sum_l c_l B(rows_i)(cols_l) == rhs_i (values mod 1) for c.
IntVector solve_pairing(const AlternatingForm& form, const std::vector<GroupElement>& rows,
                        const std::vector<GroupElement>& cols, const std::vector<QmodZ>& rhs, const char* where) {
  const Int q = common_denominator(form.group());
  IntMatrix a(rows.size(), cols.size());
  IntVector b(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t l = 0; l < cols.size(); ++l) a(i, l) = scaled_value(form.evaluate(rows[i], cols[l]), q);
    b[i] = scaled_value(rhs[i], q);
  }
  auto c = solve_congruence(a, b, IntVector(rows.size(), q));
  if (!c) throw InvariantViolation("perfect-pairing", std::string(where) + ": pairing equations have no solution");
  return *c;
}

GroupElement combine(const FinAbGroup& g, const std::vector<GroupElement>& elems, const IntVector& c) {
  IntVector x(g.rank());
  for (std::size_t l = 0; l < elems.size(); ++l)
    for (std::size_t i = 0; i < g.rank(); ++i) x[i] += c[l] * elems[l][i];
  return g.reduce(x);
}

std::vector<GroupElement> basis_elements(const SubgroupBasis& b) {
  std::vector<GroupElement> out;
  for (std::size_t j = 0; j < b.group.rank(); ++j) out.push_back(b.element(j));
  return out;
}

}  // namespace

PeelResult peel(const SymplecticPair& pair, const Subgroup& a, const Subgroup& b) {
  if (!is_isotropic(pair.form, a)) throw PreconditionError("peel: A is not isotropic");
  require_complementary(a, b, "peel");
  const Subgroup f = orthogonal_complement(pair.form, b);
  const Subgroup r = orthogonal_complement(pair.form, a).intersect(b);
  const SubgroupBasis sb = (a + f).basis();
  const SubgroupBasis rb = r.basis();
  PeelResult out{restricted_pair(pair, sb, "peel: A + B^perp"), restricted_pair(pair, rb, "peel: A^perp & B"), f, r,
                 HomMatrix()};
  std::vector<GroupElement> cols = basis_elements(sb);
  for (const auto& x : basis_elements(rb)) cols.push_back(x);
  out.recombination =
      HomMatrix(sb.group.product(rb.group), pair.group(), IntMatrix::from_columns(pair.group().rank(), cols));
  if (!out.recombination.inverse()) throw InvariantViolation("peel-decomposition", "recombination is not bijective");
  for (const auto& s : basis_elements(sb))
    for (const auto& t : basis_elements(rb))
      if (!pair.form.evaluate(s, t).is_zero())
        throw InvariantViolation("peel-decomposition", "the two factors are not orthogonal");
  return out;
}

Subgroup isotropic_complement(const SymplecticPair& pair, const Subgroup& l1, const Subgroup& l2) {
  if (!is_maximal_isotropic(pair.form, l1)) throw PreconditionError("isotropic_complement: L1 is not maximal isotropic");
  require_complementary(l1, l2, "isotropic_complement");
  const FinAbGroup& l = pair.group();
  const SubgroupBasis b1 = l1.basis();
  const SubgroupBasis b2 = l2.basis();
  const HomMatrix nabla22 = pair.form.pullback(b2.embedding).as_hom();

  HomMatrix phi;
  if (nabla22.entries().is_zero()) {
    phi = HomMatrix::zero(b2.group, b2.group);
  } else if (l.p() != 2) {
    phi = split_skew_hom(nabla22, SplitMode::OddOrder);
  } else if (l.max_exponent() == 1) {
    phi = split_skew_hom(nabla22, SplitMode::ExponentTwo);
  } else {
    throw PreconditionError("isotropic_complement: even order beyond exponent 2 is not handled by this route");
  }

  const auto a = basis_elements(b1);
  const auto y = basis_elements(b2);
  std::vector<GroupElement> gens;
  for (std::size_t j = 0; j < y.size(); ++j) {
    const GroupElement phij = phi.apply(unit_vector(b2.group.rank(), j));
    std::vector<QmodZ> rhs;
    for (std::size_t t = 0; t < y.size(); ++t)
      rhs.push_back(-dual_pairing(b2.group, phij, unit_vector(b2.group.rank(), t)));
    // sum_i c_i B(a_i)(y_t) = -phi(y_j)(y_t): rows are indexed by t.
    const Int q = common_denominator(l);
    IntMatrix m(y.size(), a.size());
    IntVector rv(y.size());
    for (std::size_t t = 0; t < y.size(); ++t) {
      for (std::size_t i = 0; i < a.size(); ++i) m(t, i) = scaled_value(pair.form.evaluate(a[i], y[t]), q);
      rv[t] = scaled_value(rhs[t], q);
    }
    auto c = solve_congruence(m, rv, IntVector(y.size(), q));
    if (!c) throw InvariantViolation("perfect-pairing", "isotropic_complement: no solution for X");
    gens.push_back(element_add(l, combine(l, a, *c), y[j]));
  }
  Subgroup out(l, gens);
  if (!is_isotropic(pair.form, out)) throw InvariantViolation("isotropic", "constructed complement is not isotropic");
  require_complementary(l1, out, "isotropic_complement (result)");
  return out;
}

Polarization polarize(const SymplecticPair& pair, const Subgroup& l1, const Subgroup& l2) {
  if (!is_isotropic(pair.form, l1) || !is_isotropic(pair.form, l2))
    throw PreconditionError("polarize: both subgroups must be isotropic");
  require_complementary(l1, l2, "polarize");
  const FinAbGroup& l = pair.group();
  const SubgroupBasis b1 = l1.basis();
  const SubgroupBasis b2 = l2.basis();
  const auto a = basis_elements(b1);
  const auto bs = basis_elements(b2);
  std::vector<GroupElement> cols = a;
  for (std::size_t j = 0; j < a.size(); ++j) {
    std::vector<QmodZ> rhs;
    for (std::size_t i = 0; i < a.size(); ++i)
      rhs.push_back(i == j ? -QmodZ(1, b1.group.modulus(i)) : QmodZ());
    cols.push_back(combine(l, bs, solve_pairing(pair.form, a, bs, rhs, "polarize")));
  }
  const FinAbGroup aa = b1.group.product(b1.group);
  return Polarization{b1.group, HomMatrix(aa, l, IntMatrix::from_columns(l.rank(), cols))};
}

const char* route_name(StandardizeRoute r) {
  switch (r) {
    case StandardizeRoute::Auto: return "auto";
    case StandardizeRoute::Peel: return "peel";
    case StandardizeRoute::Polarization: return "polarization";
  }
  return "?";
}

namespace {

std::vector<CertificateEntry> certificate_table(const SymplecticPair& pair, const FinAbGroup& a, const HomMatrix& iso) {
  const SymplecticForm std_form = standard_pair(a).pair.form;
  const std::size_t n = 2 * a.rank();
  std::vector<CertificateEntry> out;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      out.push_back(CertificateEntry{u, v, pair.form.evaluate(iso.entries().col(u), iso.entries().col(v)),
                                     std_form.evaluate(unit_vector(n, u), unit_vector(n, v))});
  return out;
}

Polarization standardize_by_polarization(const SymplecticPair& pair) {
  const FinAbGroup& l = pair.group();
  if (l.max_exponent() > 1) throw PreconditionError("standardize_pair: the polarization route needs exponent p");
  const Subgroup g = grow_maximal_isotropic(pair, Subgroup::trivial(l));
  std::vector<GroupElement> extra;
  Subgroup span = g;
  for (std::size_t k = 0; k < l.rank(); ++k) {
    const GroupElement e = unit_vector(l.rank(), k);
    if (span.contains(e)) continue;
    extra.push_back(e);
    span = span + Subgroup(l, {e});
  }
  const Subgroup l2 = isotropic_complement(pair, g, Subgroup(l, extra));
  return polarize(pair, g, l2);
}

Polarization standardize_by_peeling(const SymplecticPair& pair) {
  const FinAbGroup& l = pair.group();
  const long p = l.p();
  FinAbGroup w = l;
  SymplecticForm wf = pair.form;
  HomMatrix emb = HomMatrix::identity(l);
  std::vector<int> nus;
  std::vector<GroupElement> xs, ys;
  while (w.rank() > 0) {
    const auto& ex = w.exponents();
    const std::size_t k = static_cast<std::size_t>(std::max_element(ex.begin(), ex.end()) - ex.begin());
    const int m = ex[k];
    const GroupElement e = unit_vector(w.rank(), k);
    std::vector<GroupElement> rest;
    for (std::size_t j = 0; j < w.rank(); ++j)
      if (j != k) rest.push_back(unit_vector(w.rank(), j));
    const Subgroup a(w, {e});
    const Subgroup b(w, rest);
    const SubgroupBasis fb = orthogonal_complement(wf, b).basis();
    if (fb.group.rank() != 1 || fb.group.exponents()[0] != m)
      throw InvariantViolation("peel-decomposition", "B^perp is not cyclic of the order of the peeled summand");
    const GroupElement f0 = fb.element(0);
    const Int pm = ipow(p, m);
    const Int u = scaled_value(wf.evaluate(e, f0), pm);
    if (mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(p)))
      throw InvariantViolation("peel-decomposition", "peeled summand pairs degenerately with B^perp");
    const GroupElement f = element_scale(w, -inverse_mod(u, pm), f0);
    const SubgroupBasis rb = orthogonal_complement(wf, a).intersect(b).basis();

    nus.push_back(m);
    xs.push_back(emb.apply(e));
    ys.push_back(emb.apply(f));
    wf = SymplecticForm(wf.pullback(rb.embedding));
    emb = emb.compose(rb.embedding);
    w = rb.group;
  }
  const FinAbGroup a(p, nus);
  std::vector<GroupElement> cols = xs;
  cols.insert(cols.end(), ys.begin(), ys.end());
  return Polarization{a, HomMatrix(a.product(a), l, IntMatrix::from_columns(l.rank(), cols))};
}

}  // namespace

StandardizationResult standardize_pair(const SymplecticPair& pair, StandardizeRoute route) {
  const FinAbGroup& l = pair.group();
  if (route == StandardizeRoute::Auto)
    route = l.max_exponent() <= 1 ? StandardizeRoute::Polarization : StandardizeRoute::Peel;
  const Polarization pol =
      route == StandardizeRoute::Polarization ? standardize_by_polarization(pair) : standardize_by_peeling(pair);
  StandardizationResult out{pol.a, pol.iso, route, certificate_table(pair, pol.a, pol.iso), false};
  out.verified = verify_standardization(pair, out);
  if (!out.verified) throw InvariantViolation("standardization-certificate", "transported form differs from the standard form");
  return out;
}

bool verify_standardization(const SymplecticPair& pair, const StandardizationResult& result) {
  if (result.iso.target() != pair.group() || result.iso.source() != result.a.product(result.a)) return false;
  const auto table = certificate_table(pair, result.a, result.iso);
  if (table.size() != result.certificate.size()) return false;
  for (std::size_t k = 0; k < table.size(); ++k) {
    const auto& t = table[k];
    const auto& c = result.certificate[k];
    if (t.transported != t.standard || c.transported != t.transported || c.standard != t.standard || c.u != t.u ||
        c.v != t.v)
      return false;
  }
  return result.iso.inverse().has_value();
}

}  // namespace symplectica
