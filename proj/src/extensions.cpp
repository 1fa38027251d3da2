#include "symplectica/extensions.hpp"

#include <algorithm>

#include "symplectica/error.hpp"
#include "symplectica/smith.hpp"

namespace symplectica {

ExtensionMatrix::ExtensionMatrix(ExponentProfile profile, const IntMatrix& alpha)
    : profile_(std::move(profile)), alpha_(alpha) {
  const std::size_t l = profile_.length();
  if (alpha_.rows() != l || alpha_.cols() != l)
    throw PreconditionError("ExtensionMatrix: alpha must be " + std::to_string(l) + "x" + std::to_string(l));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) alpha_(i, j) = mod(alpha_(i, j), profile_.pair_modulus(i, j));
}

ExtensionMatrix canonicalize(const IntMatrix& alpha, const ExponentProfile& profile) {
  return ExtensionMatrix(profile, alpha);
}

IntMatrix extension_relations(const ExtensionMatrix& xi) {
  const std::size_t l = xi.size();
  IntMatrix r(2 * l, 2 * l);
  for (std::size_t i = 0; i < l; ++i) {
    const Int pl = ipow(xi.p(), xi.profile().lambda()[i]);
    r(i, i) = pl;
    r(l + i, l + i) = pl;
    for (std::size_t j = 0; j < l; ++j) r(i, l + j) = -xi(i, j);
  }
  return r;
}

FinAbGroup extension_group(const ExtensionMatrix& xi) { return present(xi.p(), extension_relations(xi)).group; }

int rank_check(const ExtensionMatrix& xi) {
  return static_cast<int>(2 * xi.size() - rank_mod_p(xi.alpha(), xi.p()));
}

ExtensionMatrix dual_extension(const ExtensionMatrix& xi) { return ExtensionMatrix(xi.profile(), xi.alpha().transpose()); }

bool is_antidual(const ExtensionMatrix& xi) {
  for (std::size_t i = 0; i < xi.size(); ++i)
    for (std::size_t j = i; j < xi.size(); ++j)
      if (mod(xi(i, j) + xi(j, i), xi.modulus(i, j)) != 0) return false;
  return true;
}

bool is_autodual(const ExtensionMatrix& xi) {
  for (std::size_t i = 0; i < xi.size(); ++i)
    for (std::size_t j = i + 1; j < xi.size(); ++j)
      if (xi(i, j) != xi(j, i)) return false;
  return true;
}

ExtensionMatrix transform_unchecked(const ExtensionMatrix& xi, const IntMatrix& sigma) {
  return ExtensionMatrix(xi.profile(), sigma * xi.alpha() * sigma.transpose());
}

ExtensionMatrix transform(const ExtensionMatrix& xi, const HomMatrix& sigma) {
  const FinAbGroup g = xi.profile().group();
  if (sigma.source() != g || sigma.target() != g) throw PreconditionError("transform: sigma acts on another group");
  if (!is_automorphism(sigma).automorphism) throw PreconditionError("transform: sigma is not an automorphism");
  return transform_unchecked(xi, sigma.entries());
}

namespace {

ExtensionBlock make_block(const ExtensionMatrix& xi, const std::vector<std::size_t>& rows,
                          const std::vector<std::size_t>& cols) {
  ExtensionBlock b{rows, cols, {}, {}, xi.alpha().select(rows, cols)};
  for (auto i : rows) b.row_lambda.push_back(xi.profile().lambda()[i]);
  for (auto j : cols) b.col_lambda.push_back(xi.profile().lambda()[j]);
  return b;
}

ExtensionMatrix square_block(const ExtensionMatrix& xi, const std::vector<std::size_t>& idx) {
  std::vector<int> lam;
  for (auto i : idx) lam.push_back(xi.profile().lambda()[i]);
  return ExtensionMatrix(ExponentProfile(xi.p(), lam), xi.alpha().select(idx, idx));
}

}  // namespace

BlockDecomposition block_decompose(const ExtensionMatrix& xi, std::vector<std::size_t> s, std::vector<std::size_t> t) {
  const std::size_t l = xi.size();
  std::sort(s.begin(), s.end());
  std::sort(t.begin(), t.end());
  std::vector<int> seen(l, 0);
  for (auto i : s) {
    if (i >= l) throw PreconditionError("block_decompose: index out of range");
    ++seen[i];
  }
  for (auto i : t) {
    if (i >= l) throw PreconditionError("block_decompose: index out of range");
    ++seen[i];
  }
  if (s.empty() || t.empty() || std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
    throw PreconditionError("block_decompose: S and T must partition the indices, both nonempty");
  return BlockDecomposition{s, t, square_block(xi, s), square_block(xi, t), make_block(xi, s, t), make_block(xi, t, s)};
}

ExtensionMatrix reassemble(const BlockDecomposition& b, const ExponentProfile& profile) {
  IntMatrix a(profile.length(), profile.length());
  for (std::size_t i = 0; i < b.s.size(); ++i)
    for (std::size_t j = 0; j < b.s.size(); ++j) a(b.s[i], b.s[j]) = b.ss(i, j);
  for (std::size_t i = 0; i < b.t.size(); ++i)
    for (std::size_t j = 0; j < b.t.size(); ++j) a(b.t[i], b.t[j]) = b.tt(i, j);
  for (std::size_t i = 0; i < b.s.size(); ++i)
    for (std::size_t j = 0; j < b.t.size(); ++j) {
      a(b.s[i], b.t[j]) = b.st.entries(i, j);
      a(b.t[j], b.s[i]) = b.ts.entries(j, i);
    }
  return ExtensionMatrix(profile, a);
}

AntidualPair symplectic_from_antidual(const ExtensionMatrix& xi) {
  const long p = xi.p();
  if (p == 2) throw PreconditionError("symplectic_from_antidual: p = 2 is not supported");
  if (!is_antidual(xi)) throw PreconditionError("symplectic_from_antidual: extension is not antidual");
  const std::size_t l = xi.size();
  const auto& lam = xi.profile().lambda();

  // Generator coordinates: g_1..g_l then h_1..h_l. Relation columns are
  // p^{lambda_k} g_k and p^{lambda_i} h_i - sum_k alpha_ik g_k.
  IntMatrix rel(2 * l, 2 * l);
  for (std::size_t i = 0; i < l; ++i) {
    const Int pl = ipow(p, lam[i]);
    rel(i, i) = pl;
    rel(l + i, l + i) = pl;
    for (std::size_t k = 0; k < l; ++k) rel(k, l + i) = -xi(i, k);
  }

  // The bicharacter on generators, as values mod 1.
  std::vector<std::vector<mpq_class>> b(2 * l, std::vector<mpq_class>(2 * l, mpq_class(0)));
  for (std::size_t i = 0; i < l; ++i) {
    const Int pi = ipow(p, lam[i]);
    b[i][l + i] = mpq_class(1, pi);
    b[l + i][i] = -b[i][l + i];
    for (std::size_t j = i + 1; j < l; ++j) {
      mpq_class v(Int(-xi(j, i)), Int(pi * ipow(p, lam[j])));
      v.canonicalize();
      b[l + i][l + j] = v;
      b[l + j][l + i] = -v;
    }
  }
  auto pairing = [&](const IntVector& x, const IntVector& y) {
    mpq_class s(0);
    for (std::size_t a = 0; a < 2 * l; ++a) {
      if (x[a] == 0) continue;
      for (std::size_t c = 0; c < 2 * l; ++c)
        if (y[c] != 0 && b[a][c] != 0) s += mpq_class(x[a] * y[c]) * b[a][c];
    }
    return QmodZ(s);
  };
  // Each relation must pair trivially with every generator.
  for (std::size_t r = 0; r < 2 * l; ++r)
    for (std::size_t c = 0; c < 2 * l; ++c) {
      IntVector e(2 * l);
      e[c] = 1;
      if (!pairing(rel.col(r), e).is_zero())
        throw InvariantViolation("well-definedness", "bicharacter does not vanish on relation " + std::to_string(r));
    }

  const Presentation pr = present(p, rel);
  const FinAbGroup& lg = pr.group;
  std::vector<std::vector<QmodZ>> vals(lg.rank(), std::vector<QmodZ>(lg.rank()));
  for (std::size_t a = 0; a < lg.rank(); ++a)
    for (std::size_t c = 0; c < lg.rank(); ++c) vals[a][c] = pairing(pr.from_basis.col(a), pr.from_basis.col(c));
  SymplecticForm form(AlternatingForm::from_values(lg, vals));

  const FinAbGroup c = xi.profile().group();
  std::vector<IntVector> gcols, lifts;
  for (std::size_t k = 0; k < l; ++k) {
    gcols.push_back(lg.reduce(pr.to_basis.col(k)));
    lifts.push_back(lg.reduce(pr.to_basis.col(l + k)));
  }
  HomMatrix emb(c, lg, IntMatrix::from_columns(lg.rank(), gcols));
  Subgroup g(lg, gcols);
  if (g.order() != c.order()) throw InvariantViolation("injective-kernel", "kernel generators do not span a copy of G");
  if (!is_maximal_isotropic(form, g)) throw InvariantViolation("maximal-isotropic", "image of G");
  return AntidualPair{SymplecticPair{form, std::nullopt}, g, emb, lifts};
}

ExtensionMatrix extension_from_triple(const SymplecticPair& pair, const Subgroup& g, const HomMatrix& embedding,
                                      const ExponentProfile& profile) {
  const FinAbGroup& l = pair.group();
  const FinAbGroup c = profile.group();
  if (embedding.source() != c || embedding.target() != l)
    throw PreconditionError("extension_from_triple: embedding must map the profile group into L");
  if (g.ambient() != l) throw PreconditionError("extension_from_triple: G is not a subgroup of L");
  if (!is_maximal_isotropic(pair.form, g)) throw PreconditionError("extension_from_triple: G is not maximal isotropic");
  std::vector<GroupElement> gk;
  for (std::size_t k = 0; k < c.rank(); ++k) gk.push_back(embedding.entries().col(k));
  if (Subgroup(l, gk) != g || g.order() != c.order())
    throw PreconditionError("extension_from_triple: embedding is not an isomorphism onto G");

  const std::size_t r = c.rank();
  const Int q = ipow(l.p(), l.max_exponent());
  // K(k, m) = q * B(g_k)(e_m)
  const IntMatrix w = pair.form.functional_rows(gk);
  IntMatrix out(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    IntVector rhs(r);
    rhs[i] = q / c.modulus(i);
    auto x = solve_congruence(w, rhs, IntVector(r, q));
    if (!x) throw InvariantViolation("perfect-pairing", "no lift of the dual generator " + std::to_string(i));
    const GroupElement h = l.reduce(*x);
    const GroupElement ph = element_scale(l, c.modulus(i), h);
    auto coeff = solve_congruence(embedding.entries(), ph, l.moduli());
    if (!coeff) throw InvariantViolation("maximal-isotropic", "p^lambda h_i is not in G");
    for (std::size_t k = 0; k < r; ++k) out(i, k) = (*coeff)[k];
  }
  return ExtensionMatrix(profile, out);
}

}  // namespace symplectica
