#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symplectica/groups.hpp"

namespace symplectica {

struct SubgroupBasis;

/// Subgroup H of a finite group G, stored as the Hermite normal form of its
/// preimage lattice in Z^n (which contains the lattice of moduli). The basis
/// is upper triangular: column k is supported on coordinates <= k, has a
/// positive diagonal entry d_k dividing the k-th modulus, and entries above
/// the diagonal lie in [0, d_i). Equal subgroups have equal forms.
class Subgroup {
 public:
  Subgroup() = default;
  Subgroup(FinAbGroup ambient, const std::vector<GroupElement>& generators);

  static Subgroup trivial(const FinAbGroup& g) { return Subgroup(g, {}); }
  static Subgroup whole(const FinAbGroup& g);

  const FinAbGroup& ambient() const noexcept { return ambient_; }
  const IntMatrix& hnf() const noexcept { return hnf_; }
  /// The nontrivial HNF columns, reduced into the ambient group.
  std::vector<GroupElement> generators() const;

  bool contains(const GroupElement& x) const;
  bool is_subgroup_of(const Subgroup& other) const;
  Int order() const;

  Subgroup operator+(const Subgroup& other) const;
  Subgroup intersect(const Subgroup& other) const;

  /// Invariant-factor basis.
  SubgroupBasis basis() const;

  /// First element of *this outside `inner` in the enumeration order of the
  /// ambient group (last coordinate most significant), nullopt when
  /// *this is contained in `inner`.
  std::optional<GroupElement> least_element_outside(const Subgroup& inner) const;

  /// All elements in enumeration order (guarded).
  std::vector<GroupElement> elements() const;

  bool operator==(const Subgroup& o) const { return ambient_ == o.ambient_ && hnf_ == o.hnf_; }
  bool operator!=(const Subgroup& o) const { return !(*this == o); }

 private:
  // Order of the part spanned by the HNF columns 0..k-1.
  Int order_below(std::size_t k) const;
  // Whether some element of *this agrees with x on coordinates >= k.
  bool projection_contains(const GroupElement& x, std::size_t k) const;

  FinAbGroup ambient_;
  IntMatrix hnf_;
};

struct SubgroupBasis {
  /// Abstract group with non-increasing exponents.
  FinAbGroup group;
  /// group -> ambient; column j is the j-th basis element.
  HomMatrix embedding;
  IntMatrix hnf;
  IntMatrix lattice_to_basis;

  GroupElement element(std::size_t j) const;
  /// Coordinates of a member of the subgroup in this basis.
  GroupElement coordinates(const GroupElement& x) const;
};

/// {x : W x == 0 mod q}, where the rows of W are functionals with values in
/// (1/q)Z/Z (each row must be a well-defined character of g).
Subgroup kernel_of_functionals(const FinAbGroup& g, const IntMatrix& w, const Int& q);

/// Alternating bicharacter on G = sum Z/p^{mu_i}:
///   B(x)(y) = sum_{i,j} n_ij x_i y_j / p^{min(mu_i, mu_j)}  mod 1
/// with n_ii = 0 and n_ji = -n_ij. Not necessarily nondegenerate.
class AlternatingForm {
 public:
  AlternatingForm() = default;
  /// Reduces the numerators and checks the alternating conditions.
  AlternatingForm(FinAbGroup group, const IntMatrix& numerators);

  /// Numerators n_ab = B(e_a)(e_b) p^{min}; checks integrality.
  static AlternatingForm from_values(const FinAbGroup& group, const std::vector<std::vector<QmodZ>>& values);

  const FinAbGroup& group() const noexcept { return group_; }
  const IntMatrix& numerators() const noexcept { return numerators_; }
  Int pair_modulus(std::size_t i, std::size_t j) const;

  QmodZ evaluate(const GroupElement& x, const GroupElement& y) const;
  /// Row i: the functional x -> B(e_i)(x) scaled by p^{max mu}.
  IntMatrix functional_rows(const std::vector<GroupElement>& elems) const;
  /// The map G -> G^ (canonically G) sending x to B(x).
  HomMatrix as_hom() const;
  /// Socle criterion: rank over F_p of the induced pairing on elements of
  /// order p equals the rank of G.
  bool nondegenerate() const;

  /// Restriction along h: K -> G.
  AlternatingForm pullback(const HomMatrix& h) const;

  bool operator==(const AlternatingForm& o) const { return group_ == o.group_ && numerators_ == o.numerators_; }

 protected:
  FinAbGroup group_;
  IntMatrix numerators_;
};

class SymplecticForm : public AlternatingForm {
 public:
  SymplecticForm() = default;
  SymplecticForm(FinAbGroup group, const IntMatrix& numerators);
  explicit SymplecticForm(const AlternatingForm& form);
};

/// Where a pair came from: the images of its basis vectors in a parent
/// group (coset representatives in the case of a subquotient).
struct Provenance {
  FinAbGroup parent;
  std::vector<GroupElement> images;
  std::string how;
};

struct SymplecticPair {
  SymplecticForm form;
  std::optional<Provenance> provenance;

  const FinAbGroup& group() const { return form.group(); }
};

QmodZ evaluate(const SymplecticForm& form, const GroupElement& x, const GroupElement& y);

struct StandardPair {
  SymplecticPair pair;
  /// B x B^perp inside A x A^.
  Subgroup m0;
};

/// The pair (A x A^, chi(y) - lambda(x)); coordinates of A first, then of
/// A^ identified with A. `b` defaults to all of A.
StandardPair standard_pair(const FinAbGroup& a, const std::optional<Subgroup>& b = std::nullopt);

Subgroup orthogonal_complement(const AlternatingForm& form, const Subgroup& a);
bool is_isotropic(const AlternatingForm& form, const Subgroup& a);
bool is_maximal_isotropic(const SymplecticForm& form, const Subgroup& a);

/// Grow an isotropic seed to a maximal isotropic subgroup, adjoining the
/// least element of (seed^perp \ seed) each step.
Subgroup grow_maximal_isotropic(const SymplecticPair& pair, const Subgroup& seed);

/// The induced pair on A^perp / A.
SymplecticPair subquotient(const SymplecticPair& pair, const Subgroup& a);

struct PeelResult {
  /// Restriction to A + F, F = B^perp.
  SymplecticPair outer;
  /// Restriction to R = A^perp intersect B.
  SymplecticPair residual;
  Subgroup f;
  Subgroup r;
  /// (basis of A + F) x (basis of R) -> L; bijective and orthogonal.
  HomMatrix recombination;
};

/// Split L = A x B with A isotropic into the orthogonal sum of A + B^perp
/// and A^perp intersect B.
PeelResult peel(const SymplecticPair& pair, const Subgroup& a, const Subgroup& b);

/// Given L = L1 x L2 with L1 maximal isotropic, an isotropic complement of
/// L1 of the form {X y + y : y in L2}.
Subgroup isotropic_complement(const SymplecticPair& pair, const Subgroup& l1, const Subgroup& l2);

struct Polarization {
  FinAbGroup a;
  /// A x A^ -> L transporting the standard form.
  HomMatrix iso;
};

/// For complementary isotropic L1, L2: the isomorphism A x A^ -> L with
/// A = L1 (in its invariant-factor basis).
Polarization polarize(const SymplecticPair& pair, const Subgroup& l1, const Subgroup& l2);

enum class StandardizeRoute { Auto, Peel, Polarization };
const char* route_name(StandardizeRoute r);

struct CertificateEntry {
  std::size_t u = 0;
  std::size_t v = 0;
  QmodZ transported;
  QmodZ standard;
};

struct StandardizationResult {
  FinAbGroup a;
  HomMatrix iso;
  StandardizeRoute route = StandardizeRoute::Auto;
  /// Values of the form on images of every generator pair of A x A^, next
  /// to the standard values.
  std::vector<CertificateEntry> certificate;
  bool verified = false;
};

/// Construct A and an isomorphism A x A^ -> L carrying the standard form to
/// the given one. Auto picks Polarization on groups of exponent p and Peel
/// otherwise. The result is always verified before it is returned.
StandardizationResult standardize_pair(const SymplecticPair& pair, StandardizeRoute route = StandardizeRoute::Auto);

/// Re-check a standardization against the pair (generator pairs and
/// bijectivity).
bool verify_standardization(const SymplecticPair& pair, const StandardizationResult& result);

}  // namespace symplectica
