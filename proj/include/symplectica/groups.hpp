#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "symplectica/integer.hpp"
#include "symplectica/matrix.hpp"
#include "symplectica/random.hpp"

namespace symplectica {

/// Elements are coordinate vectors; coordinate i lives in Z/p^{mu_i}.
using GroupElement = IntVector;

/// The group Z/p^{mu_1} x ... x Z/p^{mu_n}. The exponents may come in any
/// order (products of standard pairs are not sorted), each at least 1.
class FinAbGroup {
 public:
  FinAbGroup() = default;
  FinAbGroup(long p, std::vector<int> exponents);

  long p() const noexcept { return p_; }
  const std::vector<int>& exponents() const noexcept { return exponents_; }
  std::size_t rank() const noexcept { return exponents_.size(); }
  const Int& modulus(std::size_t i) const { return moduli_[i]; }
  const IntVector& moduli() const noexcept { return moduli_; }
  int max_exponent() const;
  Int order() const;

  GroupElement zero() const { return GroupElement(rank()); }
  /// Coordinates already in canonical range.
  bool is_element(const GroupElement& x) const;
  /// Reduce arbitrary integer coordinates into canonical range.
  GroupElement reduce(const GroupElement& x) const;
  /// Throws PreconditionError unless `x` is a canonical element.
  void check_element(const GroupElement& x, const char* where) const;

  /// Position in the enumeration order: the first coordinate varies fastest.
  Int index_of(const GroupElement& x) const;
  GroupElement element_at(const Int& index) const;
  /// Every element in enumeration order. Refuses groups above
  /// enumeration_guard().
  std::vector<GroupElement> elements() const;

  /// Direct product, coordinates of *this first.
  FinAbGroup product(const FinAbGroup& other) const;

  bool operator==(const FinAbGroup& other) const { return p_ == other.p_ && exponents_ == other.exponents_; }
  bool operator!=(const FinAbGroup& other) const { return !(*this == other); }
  std::string str() const;

 private:
  long p_ = 2;
  std::vector<int> exponents_;
  IntVector moduli_;
};

/// Bound on exhaustive enumerations: the MAX_ORDER_GUARD environment
/// variable, defaulting to 3^10.
Int enumeration_guard();
/// Throws BudgetExceeded when `count` exceeds the guard.
void require_enumerable(const Int& count, const std::string& what);

/// A prime with a non-increasing list of positive exponents.
class ExponentProfile {
 public:
  ExponentProfile() = default;
  ExponentProfile(long p, std::vector<int> lambda);

  long p() const noexcept { return p_; }
  const std::vector<int>& lambda() const noexcept { return lambda_; }
  std::size_t length() const noexcept { return lambda_.size(); }
  bool homogeneous() const;
  /// p^{min(lambda_i, lambda_j)}
  Int pair_modulus(std::size_t i, std::size_t j) const;
  FinAbGroup group() const { return FinAbGroup(p_, lambda_); }

  bool operator==(const ExponentProfile& o) const { return p_ == o.p_ && lambda_ == o.lambda_; }

 private:
  long p_ = 2;
  std::vector<int> lambda_;
};

GroupElement element_add(const FinAbGroup& g, const GroupElement& x, const GroupElement& y);
GroupElement element_neg(const FinAbGroup& g, const GroupElement& x);
GroupElement element_scale(const FinAbGroup& g, const Int& k, const GroupElement& x);

/// chi_a(x) = sum a_i x_i / p^{mu_i} mod 1.
QmodZ dual_pairing(const FinAbGroup& g, const GroupElement& chi, const GroupElement& x);

/// Homomorphism source -> target. Entry (i, j) multiplies coordinate j of
/// the source into coordinate i of the target.
class HomMatrix {
 public:
  HomMatrix() = default;
  /// Validates well-definedness and reduces entries into [0, p^{mu_tgt_i}).
  HomMatrix(FinAbGroup source, FinAbGroup target, const IntMatrix& entries);

  static HomMatrix identity(const FinAbGroup& g);
  static HomMatrix zero(const FinAbGroup& source, const FinAbGroup& target);

  const FinAbGroup& source() const noexcept { return source_; }
  const FinAbGroup& target() const noexcept { return target_; }
  const IntMatrix& entries() const noexcept { return entries_; }
  const Int& operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  GroupElement apply(const GroupElement& x) const;
  /// (*this) o inner
  HomMatrix compose(const HomMatrix& inner) const;
  HomMatrix operator+(const HomMatrix& other) const;
  HomMatrix operator-() const;
  HomMatrix operator-(const HomMatrix& other) const { return *this + (-other); }
  /// Multiply every entry by k.
  HomMatrix scaled(const Int& k) const;

  /// Pontryagin adjoint target -> source under the canonical self-dualities.
  HomMatrix adjoint() const;

  /// Two-sided inverse if one exists (source and target may differ).
  std::optional<HomMatrix> inverse() const;

  bool operator==(const HomMatrix& o) const {
    return source_ == o.source_ && target_ == o.target_ && entries_ == o.entries_;
  }
  bool operator!=(const HomMatrix& o) const { return !(*this == o); }

 private:
  FinAbGroup source_, target_;
  IntMatrix entries_;
};

GroupElement apply_hom(const HomMatrix& h, const GroupElement& x);
HomMatrix adjoint_hom(const HomMatrix& h);

struct AutomorphismCheck {
  bool automorphism = false;
  std::optional<HomMatrix> inverse;
};
/// Requires source == target. Inverse found by solving h o g = id column by
/// column, then confirmed by g o h = id.
AutomorphismCheck is_automorphism(const HomMatrix& h);

/// Invariant-factor presentation of Z^n / (column space of a relation
/// matrix), for relations whose cokernel is a finite p-group.
struct Presentation {
  /// Exponents non-increasing; trivial factors dropped.
  FinAbGroup group;
  /// k x n: generator coordinates -> basis coordinates (reduce mod group).
  IntMatrix to_basis;
  /// n x k: column j is basis element j in generator coordinates.
  IntMatrix from_basis;
};
Presentation present(long p, const IntMatrix& relations);

/// Elementary automorphisms of a group: unit scaling of a coordinate, swap
/// of two coordinates of equal exponent, and the shear e_j -> e_j + a e_i.
struct GeneratorOp {
  enum class Kind { Scale, Swap, Shear };
  Kind kind = Kind::Scale;
  std::size_t i = 0;
  std::size_t j = 0;
  Int a = 1;

  /// Throws PreconditionError if the op is not admissible on `g`.
  HomMatrix as_hom(const FinAbGroup& g) const;
  std::string str() const;
};

const char* kind_name(GeneratorOp::Kind k);

/// Uniform choice among admissible kinds, then uniform parameters.
GeneratorOp random_generator_op(const FinAbGroup& g, SplitMix64& rng);

/// Composition of `steps` random generator ops (identity when steps = 0).
HomMatrix random_automorphism(const ExponentProfile& profile, std::uint64_t seed, int steps);
HomMatrix random_automorphism(const FinAbGroup& g, SplitMix64& rng, int steps);

}  // namespace symplectica
