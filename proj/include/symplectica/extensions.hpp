#pragma once

#include <vector>

#include "symplectica/groups.hpp"
#include "symplectica/symplectic.hpp"

namespace symplectica {

/// Extension of sum (1/p^{lambda_i})Z/Z by sum Z/p^{lambda_i} encoded by an
/// l x l matrix alpha, entries reduced into [0, p^{min(lambda_i, lambda_j)}).
class ExtensionMatrix {
 public:
  ExtensionMatrix() = default;
  /// Reduces every entry into canonical range.
  ExtensionMatrix(ExponentProfile profile, const IntMatrix& alpha);

  const ExponentProfile& profile() const noexcept { return profile_; }
  const IntMatrix& alpha() const noexcept { return alpha_; }
  std::size_t size() const noexcept { return profile_.length(); }
  long p() const noexcept { return profile_.p(); }
  Int modulus(std::size_t i, std::size_t j) const { return profile_.pair_modulus(i, j); }
  const Int& operator()(std::size_t i, std::size_t j) const { return alpha_(i, j); }

  bool operator==(const ExtensionMatrix& o) const { return profile_ == o.profile_ && alpha_ == o.alpha_; }
  bool operator!=(const ExtensionMatrix& o) const { return !(*this == o); }

 private:
  ExponentProfile profile_;
  IntMatrix alpha_;
};

ExtensionMatrix canonicalize(const IntMatrix& alpha, const ExponentProfile& profile);

/// [[p^lambda, -alpha], [0, p^lambda]]
IntMatrix extension_relations(const ExtensionMatrix& xi);
/// Invariant factors of the middle group, exponents non-increasing.
FinAbGroup extension_group(const ExtensionMatrix& xi);
/// 2l - rank over F_p of alpha mod p.
int rank_check(const ExtensionMatrix& xi);

ExtensionMatrix dual_extension(const ExtensionMatrix& xi);
bool is_antidual(const ExtensionMatrix& xi);
bool is_autodual(const ExtensionMatrix& xi);

/// canonicalize(sigma alpha sigma^T); sigma must be an automorphism.
ExtensionMatrix transform(const ExtensionMatrix& xi, const HomMatrix& sigma);
/// Same product without the automorphism check, for callers that build
/// sigma from generator operations.
ExtensionMatrix transform_unchecked(const ExtensionMatrix& xi, const IntMatrix& sigma);

/// Rectangular block of alpha: rows from one index set, columns from another.
struct ExtensionBlock {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  std::vector<int> row_lambda;
  std::vector<int> col_lambda;
  IntMatrix entries;
};

struct BlockDecomposition {
  std::vector<std::size_t> s;
  std::vector<std::size_t> t;
  ExtensionMatrix ss;
  ExtensionMatrix tt;
  ExtensionBlock st;
  ExtensionBlock ts;
};

/// S and T (0-based) must partition {0..l-1}, both nonempty.
BlockDecomposition block_decompose(const ExtensionMatrix& xi, std::vector<std::size_t> s, std::vector<std::size_t> t);
ExtensionMatrix reassemble(const BlockDecomposition& blocks, const ExponentProfile& profile);

struct AntidualPair {
  SymplecticPair pair;
  /// Image of the kernel sum Z/p^{lambda_i}; maximal isotropic.
  Subgroup g;
  /// sum Z/p^{lambda_i} -> L onto g.
  HomMatrix embedding;
  /// Images of the lifts h_i with p^{lambda_i} h_i = sum_k alpha_ik g_k.
  std::vector<GroupElement> lifts;
};

/// Presents L by generators g_1..g_l, h_1..h_l with p^{lambda_i} g_i = 0 and
/// p^{lambda_i} h_i = sum_k alpha_ik g_k, and the form
///   B(g_i, g_j) = 0,  B(g_i, h_j) = delta_ij / p^{lambda_i},
///   B(h_i, h_j) = -alpha_ji / p^{lambda_i + lambda_j}  (i < j),
/// skew and zero on the diagonal. Odd p and antidual alpha only.
AntidualPair symplectic_from_antidual(const ExtensionMatrix& xi);

/// Reads alpha off a symplectic pair, a maximal isotropic G and an
/// isomorphism sum Z/p^{lambda_i} -> G (given as `embedding` into L).
ExtensionMatrix extension_from_triple(const SymplecticPair& pair, const Subgroup& g, const HomMatrix& embedding,
                                      const ExponentProfile& profile);

}  // namespace symplectica
