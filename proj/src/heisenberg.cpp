#include "symplectica/heisenberg.hpp"

#include <algorithm>

#include "symplectica/error.hpp"

namespace symplectica {

namespace {

constexpr unsigned long kExhaustiveOrder = 27;
constexpr int kSampledChecks = 10000;

GroupElement random_element(const FinAbGroup& g, SplitMix64& rng) {
  GroupElement x(g.rank());
  for (std::size_t i = 0; i < g.rank(); ++i) x[i] = rng.below(g.modulus(i));
  return x;
}

GroupElement unit(const FinAbGroup& g, std::size_t i) {
  GroupElement e = g.zero();
  e[i] = 1;
  return e;
}

}  // namespace

Cocycle Cocycle::bilinear(const FinAbGroup& g, const IntMatrix& numerators) {
  const std::size_t n = g.rank();
  if (numerators.rows() != n || numerators.cols() != n)
    throw PreconditionError("Cocycle: numerator matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  Cocycle c;
  c.kind_ = Kind::Bilinear;
  c.group_ = g;
  c.order_ = g.order();
  c.numerators_ = numerators;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c.numerators_(i, j) = mod(numerators(i, j), ipow(g.p(), std::min(g.exponents()[i], g.exponents()[j])));
  c.check_identity();
  return c;
}

Cocycle Cocycle::table(const FinAbGroup& g, std::vector<QmodZ> values) {
  const Int order = g.order();
  require_enumerable(order, "cocycle table");
  if (Int(values.size()) != order * order)
    throw PreconditionError("Cocycle: table needs |L|^2 = " + to_string(order * order) + " values");
  Cocycle c;
  c.kind_ = Kind::Table;
  c.group_ = g;
  c.order_ = order;
  c.values_ = std::move(values);
  c.check_identity();
  return c;
}

QmodZ Cocycle::operator()(const GroupElement& x, const GroupElement& y) const {
  group_.check_element(x, "Cocycle");
  group_.check_element(y, "Cocycle");
  if (kind_ == Kind::Table) {
    const unsigned long m = order_.get_ui();
    return values_[group_.index_of(x).get_ui() * m + group_.index_of(y).get_ui()];
  }
  const auto& mu = group_.exponents();
  const Int q = ipow(group_.p(), group_.max_exponent());
  Int s = 0;
  for (std::size_t i = 0; i < group_.rank(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < group_.rank(); ++j)
      if (y[j] != 0 && numerators_(i, j) != 0)
        s += numerators_(i, j) * x[i] * y[j] * ipow(group_.p(), group_.max_exponent() - std::min(mu[i], mu[j]));
  }
  return QmodZ(s, q);
}

QmodZ cocycle_defect(const Cocycle& psi, const GroupElement& x, const GroupElement& y, const GroupElement& z) {
  const FinAbGroup& g = psi.group();
  return psi(x, y) + psi(element_add(g, x, y), z) - psi(x, element_add(g, y, z)) - psi(y, z);
}

void Cocycle::check_identity() const {
  auto fail = [](const GroupElement& x, const GroupElement& y, const GroupElement& z) {
    auto s = [](const GroupElement& v) {
      std::string out = "(";
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + to_string(v[i]);
      return out + ")";
    };
    throw InvariantViolation("cocycle-identity", "fails at x=" + s(x) + " y=" + s(y) + " z=" + s(z));
  };
  if (order_ <= kExhaustiveOrder) {
    const auto elems = group_.elements();
    for (const auto& x : elems)
      for (const auto& y : elems)
        for (const auto& z : elems)
          if (!cocycle_defect(*this, x, y, z).is_zero()) fail(x, y, z);
    return;
  }
  SplitMix64 rng(0);
  for (int t = 0; t < kSampledChecks; ++t) {
    const auto x = random_element(group_, rng), y = random_element(group_, rng), z = random_element(group_, rng);
    if (!cocycle_defect(*this, x, y, z).is_zero()) fail(x, y, z);
  }
}

Cocycle Cocycle::as_table() const {
  if (kind_ == Kind::Table) return *this;
  const auto elems = group_.elements();
  std::vector<QmodZ> v;
  v.reserve(elems.size() * elems.size());
  for (const auto& x : elems)
    for (const auto& y : elems) v.push_back((*this)(x, y));
  Cocycle c;
  c.kind_ = Kind::Table;
  c.group_ = group_;
  c.order_ = order_;
  c.values_ = std::move(v);
  return c;
}

Cocycle Cocycle::operator-(const Cocycle& other) const {
  if (group_ != other.group_) throw PreconditionError("Cocycle: different groups");
  if (kind_ == Kind::Bilinear && other.kind_ == Kind::Bilinear)
    return bilinear(group_, numerators_ - other.numerators_);
  const Cocycle a = as_table(), b = other.as_table();
  std::vector<QmodZ> v(a.values_.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.values_[k] - b.values_[k];
  Cocycle c;
  c.kind_ = Kind::Table;
  c.group_ = group_;
  c.order_ = order_;
  c.values_ = std::move(v);
  return c;
}

bool Cocycle::operator==(const Cocycle& o) const {
  if (group_ != o.group_) return false;
  if (kind_ == Kind::Bilinear && o.kind_ == Kind::Bilinear) return numerators_ == o.numerators_;
  return as_table().values_ == o.as_table().values_;
}

// ---------------------------------------------------------------------------

CommutatorForm commutator_form(const Cocycle& psi) {
  const FinAbGroup& g = psi.group();
  const std::size_t n = g.rank();
  std::vector<std::vector<QmodZ>> vals(n, std::vector<QmodZ>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) vals[a][b] = psi(unit(g, a), unit(g, b)) - psi(unit(g, b), unit(g, a));
  AlternatingForm form = AlternatingForm::from_values(g, vals);
  if (psi.kind() == Cocycle::Kind::Table) {
    // Commutators of a central extension of an abelian group are bilinear;
    // the table must agree with the basis values everywhere.
    const auto elems = g.elements();
    for (const auto& x : elems)
      for (const auto& y : elems)
        if (psi(x, y) - psi(y, x) != form.evaluate(x, y))
          throw InvariantViolation("bilinearity", "commutator form is not determined by basis values");
  }
  const bool nd = form.nondegenerate();
  return CommutatorForm{std::move(form), nd};
}

Cocycle standard_cocycle(const FinAbGroup& a) {
  const std::size_t r = a.rank();
  const FinAbGroup l = a.product(a);
  IntMatrix m(2 * r, 2 * r);
  for (std::size_t i = 0; i < r; ++i) m(i, r + i) = -1;
  return Cocycle::bilinear(l, m);
}

// ---------------------------------------------------------------------------

const char* split_method_name(SplitMethod m) {
  switch (m) {
    case SplitMethod::Auto: return "auto";
    case SplitMethod::Integration: return "integration";
    case SplitMethod::Search: return "search";
  }
  return "?";
}

namespace {

using Delta = std::function<QmodZ(const GroupElement&, const GroupElement&)>;

// n t = r for the generator of a cyclic factor of order n.
QmodZ generator_value(const QmodZ& r, const Int& n, SplitMethod method) {
  if (method == SplitMethod::Search) {
    const Int den = n * r.denominator();
    for (Int c = 0; c < den; ++c) {
      QmodZ t(c, den);
      if (n * t == r) return t;
    }
    throw InvariantViolation("splitting", "no generator value found by search");
  }
  return r.divided_by(n);
}

std::vector<QmodZ> integrate(const FinAbGroup& g, const Delta& delta, SplitMethod method) {
  const std::size_t total = g.order().get_ui();
  std::vector<QmodZ> a(total);
  const GroupElement zero = g.zero();
  const QmodZ a0 = -delta(zero, zero);
  a[0] = a0;
  std::size_t prefix = 1;
  for (std::size_t j = 0; j < g.rank(); ++j) {
    const std::size_t n = g.modulus(j).get_ui();
    const GroupElement e = unit(g, j);
    QmodZ r = a0;
    GroupElement me = e;
    for (std::size_t m = 1; m < n; ++m) {
      r -= delta(me, e);
      me = element_add(g, me, e);
    }
    const QmodZ t = generator_value(r, Int(static_cast<unsigned long>(n)), method);
    std::vector<QmodZ> cyc(n);
    cyc[0] = a0;
    if (n > 1) cyc[1] = t;
    me = e;
    for (std::size_t m = 1; m + 1 < n; ++m) {
      cyc[m + 1] = cyc[m] + t + delta(me, e);
      me = element_add(g, me, e);
    }
    for (std::size_t k = 1; k < n; ++k) {
      GroupElement ke = g.zero();
      ke[j] = static_cast<unsigned long>(k);
      for (std::size_t low = 0; low < prefix; ++low) {
        const GroupElement x = g.element_at(Int(static_cast<unsigned long>(low)));
        a[low + k * prefix] = a[low] + cyc[k] + delta(x, ke);
      }
    }
    prefix *= n;
  }
  return a;
}

}  // namespace

Splitting equivalence_splitting(const Cocycle& psi, const Cocycle& psi2, SplitMethod method, std::uint64_t seed) {
  const FinAbGroup& g = psi.group();
  if (psi2.group() != g) throw PreconditionError("equivalence_splitting: cocycles live on different groups");
  if (!(commutator_form(psi).form == commutator_form(psi2).form))
    throw PreconditionError("equivalence_splitting: commutator forms differ");
  const Int order = g.order();
  require_enumerable(order, "equivalence_splitting");
  if (method == SplitMethod::Search && order > kExhaustiveOrder)
    throw PreconditionError("equivalence_splitting: search is limited to order <= 27");

  const Delta delta = [&](const GroupElement& x, const GroupElement& y) { return psi(x, y) - psi2(x, y); };

  auto verify = [&](const std::vector<QmodZ>& a, std::size_t& checked) {
    const QmodZ central(1, order);
    auto check = [&](const GroupElement& x, const GroupElement& y) {
      const GroupElement s = element_add(g, x, y);
      const QmodZ ax = a[g.index_of(x).get_ui()], ay = a[g.index_of(y).get_ui()], as = a[g.index_of(s).get_ui()];
      ++checked;
      if (as - ax - ay != delta(x, y)) return false;
      // phi((t, x) (u, y)) against phi(t, x) phi(u, y), group laws twisted by psi and psi2.
      const QmodZ t = central, u = central + central;
      const QmodZ lhs = t + u + psi(x, y) - as;
      const QmodZ rhs = (t - ax) + (u - ay) + psi2(x, y);
      return lhs == rhs;
    };
    if (order <= kExhaustiveOrder) {
      const auto elems = g.elements();
      for (const auto& x : elems)
        for (const auto& y : elems)
          if (!check(x, y)) return false;
      return true;
    }
    SplitMix64 rng(seed);
    for (int k = 0; k < kSampledChecks; ++k)
      if (!check(random_element(g, rng), random_element(g, rng))) return false;
    return true;
  };

  std::vector<SplitMethod> attempts;
  if (method == SplitMethod::Auto) {
    attempts.push_back(SplitMethod::Integration);
    if (order <= kExhaustiveOrder) attempts.push_back(SplitMethod::Search);
  } else {
    attempts.push_back(method);
  }
  for (SplitMethod m : attempts) {
    Splitting out;
    out.method = m;
    out.values = integrate(g, delta, m);
    out.verified = verify(out.values, out.pairs_checked);
    if (out.verified) return out;
  }
  throw InvariantViolation("splitting", "no splitting function passed verification");
}

// ---------------------------------------------------------------------------

MonomialOperator::MonomialOperator(std::vector<std::size_t> source, std::vector<QmodZ> phase)
    : source_(std::move(source)), phase_(std::move(phase)) {
  if (source_.size() != phase_.size()) throw PreconditionError("MonomialOperator: size mismatch");
  std::vector<bool> hit(source_.size(), false);
  for (auto s : source_) {
    if (s >= source_.size() || hit[s]) throw InvariantViolation("monomial", "source map is not a permutation");
    hit[s] = true;
  }
}

MonomialOperator MonomialOperator::identity(std::size_t dimension) {
  std::vector<std::size_t> src(dimension);
  for (std::size_t z = 0; z < dimension; ++z) src[z] = z;
  return MonomialOperator(std::move(src), std::vector<QmodZ>(dimension));
}

MonomialOperator MonomialOperator::operator*(const MonomialOperator& other) const {
  if (dimension() != other.dimension()) throw PreconditionError("MonomialOperator: dimension mismatch");
  std::vector<std::size_t> src(dimension());
  std::vector<QmodZ> ph(dimension());
  for (std::size_t z = 0; z < dimension(); ++z) {
    src[z] = other.source_[source_[z]];
    ph[z] = phase_[z] + other.phase_[source_[z]];
  }
  return MonomialOperator(std::move(src), std::move(ph));
}

MonomialOperator MonomialOperator::inverse() const {
  std::vector<std::size_t> src(dimension());
  std::vector<QmodZ> ph(dimension());
  for (std::size_t z = 0; z < dimension(); ++z) {
    src[source_[z]] = z;
    ph[source_[z]] = -phase_[z];
  }
  return MonomialOperator(std::move(src), std::move(ph));
}

MonomialOperator MonomialOperator::times_scalar(const QmodZ& c) const {
  std::vector<QmodZ> ph = phase_;
  for (auto& v : ph) v += c;
  return MonomialOperator(source_, std::move(ph));
}

MonomialOperator weyl_operator(const FinAbGroup& a, const GroupElement& x, const GroupElement& chi,
                               std::size_t budget) {
  const Int order = a.order();
  if (order > budget)
    throw BudgetExceeded("weyl_operator: |A| = " + to_string(order) + " exceeds the operator budget " +
                         std::to_string(budget));
  a.check_element(x, "weyl_operator");
  a.check_element(chi, "weyl_operator");
  const auto elems = a.elements();
  std::vector<std::size_t> src(elems.size());
  std::vector<QmodZ> ph(elems.size());
  const GroupElement minus_x = element_neg(a, x);
  for (std::size_t z = 0; z < elems.size(); ++z) {
    src[z] = a.index_of(element_add(a, elems[z], minus_x)).get_ui();
    ph[z] = dual_pairing(a, chi, elems[z]);
  }
  return MonomialOperator(std::move(src), std::move(ph));
}

WeylProduct weyl_compose(const FinAbGroup& a, const GroupElement& x, const GroupElement& chi, const GroupElement& y,
                         const GroupElement& lam, std::size_t budget) {
  const MonomialOperator u1 = weyl_operator(a, x, chi, budget);
  const MonomialOperator u2 = weyl_operator(a, y, lam, budget);
  WeylProduct out;
  out.phase = -dual_pairing(a, lam, x);
  out.x = element_add(a, x, y);
  out.chi = element_add(a, chi, lam);
  out.structural = u1 * u2 == weyl_operator(a, out.x, out.chi, budget).times_scalar(out.phase);
  out.commutator_phase = dual_pairing(a, chi, y) - dual_pairing(a, lam, x);
  out.commutator = u1 * u2 * u1.inverse() * u2.inverse() ==
                   MonomialOperator::identity(u1.dimension()).times_scalar(out.commutator_phase);
  return out;
}

}  // namespace symplectica
