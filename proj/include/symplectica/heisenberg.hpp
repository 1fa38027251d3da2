#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symplectica/groups.hpp"
#include "symplectica/symplectic.hpp"

namespace symplectica {

/// A 2-cocycle psi: L x L -> Q/Z, given either by a bilinear numerator
/// matrix (psi(x, y) = sum m_ij x_i y_j / p^{min(mu_i, mu_j)}) or by a dense
/// table indexed by (index_of(x), index_of(y)).
class Cocycle {
 public:
  enum class Kind { Bilinear, Table };

  Cocycle() = default;
  /// Entries reduced mod p^{min(mu_i, mu_j)}.
  static Cocycle bilinear(const FinAbGroup& g, const IntMatrix& numerators);
  /// values[index_of(x) * |L| + index_of(y)]; requires |L| within the
  /// enumeration guard.
  static Cocycle table(const FinAbGroup& g, std::vector<QmodZ> values);

  Kind kind() const noexcept { return kind_; }
  const FinAbGroup& group() const noexcept { return group_; }
  const IntMatrix& numerators() const noexcept { return numerators_; }
  const std::vector<QmodZ>& values() const noexcept { return values_; }

  QmodZ operator()(const GroupElement& x, const GroupElement& y) const;

  /// Dense table of any cocycle (guarded).
  Cocycle as_table() const;

  /// Pointwise difference, always as a table unless both are bilinear.
  Cocycle operator-(const Cocycle& other) const;
  bool operator==(const Cocycle& o) const;

 private:
  void check_identity() const;

  Kind kind_ = Kind::Bilinear;
  FinAbGroup group_;
  IntMatrix numerators_;
  std::vector<QmodZ> values_;
  Int order_;
};

/// psi(x,y) + psi(x+y,z) - psi(x,y+z) - psi(y,z) at one triple.
QmodZ cocycle_defect(const Cocycle& psi, const GroupElement& x, const GroupElement& y, const GroupElement& z);

struct CommutatorForm {
  AlternatingForm form;
  bool nondegenerate = false;
};

/// B(x, y) = psi(x, y) - psi(y, x).
CommutatorForm commutator_form(const Cocycle& psi);

/// psi((x, chi), (y, lam)) = -lam(x) on A x A^.
Cocycle standard_cocycle(const FinAbGroup& a);

enum class SplitMethod { Auto, Integration, Search };
const char* split_method_name(SplitMethod m);

struct Splitting {
  /// a(x) for every x of L, by index.
  std::vector<QmodZ> values;
  SplitMethod method = SplitMethod::Integration;
  bool verified = false;
  std::size_t pairs_checked = 0;

  QmodZ at(const FinAbGroup& g, const GroupElement& x) const { return values[g.index_of(x).get_ui()]; }
};

/// a: L -> Q/Z with a(x + y) - a(x) - a(y) = psi(x, y) - psi2(x, y), so that
/// (t, x) -> (t - a(x), x) is an isomorphism of the two central extensions.
/// Integration walks the coordinate axes; Search (order <= 27) tries every
/// value on each generator. Verified on all pairs at order <= 27, otherwise
/// on 10^4 pairs drawn from `seed`.
Splitting equivalence_splitting(const Cocycle& psi, const Cocycle& psi2, SplitMethod method = SplitMethod::Auto,
                                std::uint64_t seed = 0);

/// Operator on functions A -> C of the form (T f)(z) = e(phase[z]) f(source[z]).
class MonomialOperator {
 public:
  MonomialOperator() = default;
  MonomialOperator(std::vector<std::size_t> source, std::vector<QmodZ> phase);

  static MonomialOperator identity(std::size_t dimension);

  std::size_t dimension() const noexcept { return source_.size(); }
  const std::vector<std::size_t>& source() const noexcept { return source_; }
  const std::vector<QmodZ>& phase() const noexcept { return phase_; }

  /// (*this) (other f)
  MonomialOperator operator*(const MonomialOperator& other) const;
  MonomialOperator inverse() const;
  /// e(c) times the operator.
  MonomialOperator times_scalar(const QmodZ& c) const;

  bool operator==(const MonomialOperator& o) const { return source_ == o.source_ && phase_ == o.phase_; }
  bool operator!=(const MonomialOperator& o) const { return !(*this == o); }

 private:
  std::vector<std::size_t> source_;
  std::vector<QmodZ> phase_;
};

/// Default ceiling on |A| for explicit operators.
inline constexpr std::size_t kWeylDimensionBudget = 64;

/// U(x, chi) f(z) = e(chi(z)) f(z - x).
MonomialOperator weyl_operator(const FinAbGroup& a, const GroupElement& x, const GroupElement& chi,
                               std::size_t budget = kWeylDimensionBudget);

struct WeylProduct {
  /// -lam(x)
  QmodZ phase;
  GroupElement x;
  GroupElement chi;
  /// U(x, chi) U(y, lam) == e(phase) U(x + y, chi + lam) as operators.
  bool structural = false;
  /// chi(y) - lam(x)
  QmodZ commutator_phase;
  /// The group commutator equals e(commutator_phase) U(0, 0).
  bool commutator = false;
};

WeylProduct weyl_compose(const FinAbGroup& a, const GroupElement& x, const GroupElement& chi, const GroupElement& y,
                         const GroupElement& lam, std::size_t budget = kWeylDimensionBudget);

}  // namespace symplectica
