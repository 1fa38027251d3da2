#include "symplectica/groups.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "symplectica/error.hpp"
#include "symplectica/smith.hpp"

namespace symplectica {

FinAbGroup::FinAbGroup(long p, std::vector<int> exponents) : p_(p), exponents_(std::move(exponents)) {
  if (!is_prime(p)) throw InvariantViolation("prime", std::to_string(p) + " is not prime");
  moduli_.reserve(exponents_.size());
  for (int e : exponents_) {
    if (e < 1) throw InvariantViolation("positive-exponents", "exponent " + std::to_string(e) + " < 1");
    moduli_.push_back(ipow(p, e));
  }
}

int FinAbGroup::max_exponent() const {
  int m = 0;
  for (int e : exponents_) m = std::max(m, e);
  return m;
}

Int FinAbGroup::order() const {
  int total = 0;
  for (int e : exponents_) total += e;
  return ipow(p_, total);
}

bool FinAbGroup::is_element(const GroupElement& x) const {
  if (x.size() != rank()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < 0 || x[i] >= moduli_[i]) return false;
  return true;
}

GroupElement FinAbGroup::reduce(const GroupElement& x) const {
  if (x.size() != rank()) throw PreconditionError("FinAbGroup::reduce: dimension mismatch");
  GroupElement r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = mod(x[i], moduli_[i]);
  return r;
}

void FinAbGroup::check_element(const GroupElement& x, const char* where) const {
  if (x.size() != rank())
    throw PreconditionError(std::string(where) + ": element has " + std::to_string(x.size()) +
                            " coordinates, group rank is " + std::to_string(rank()));
  if (!is_element(x)) throw PreconditionError(std::string(where) + ": coordinates out of canonical range");
}

Int FinAbGroup::index_of(const GroupElement& x) const {
  check_element(x, "index_of");
  Int idx = 0;
  for (std::size_t i = rank(); i-- > 0;) idx = idx * moduli_[i] + x[i];
  return idx;
}

GroupElement FinAbGroup::element_at(const Int& index) const {
  if (index < 0 || index >= order()) throw PreconditionError("element_at: index out of range");
  GroupElement x(rank());
  Int rest = index;
  for (std::size_t i = 0; i < rank(); ++i) {
    x[i] = mod(rest, moduli_[i]);
    rest = floor_div(rest, moduli_[i]);
  }
  return x;
}

std::vector<GroupElement> FinAbGroup::elements() const {
  const Int n = order();
  require_enumerable(n, "group " + str());
  std::vector<GroupElement> out;
  out.reserve(n.get_ui());
  GroupElement x = zero();
  for (;;) {
    out.push_back(x);
    std::size_t i = 0;
    while (i < rank()) {
      ++x[i];
      if (x[i] < moduli_[i]) break;
      x[i] = 0;
      ++i;
    }
    if (i == rank()) break;
  }
  return out;
}

FinAbGroup FinAbGroup::product(const FinAbGroup& other) const {
  if (rank() != 0 && other.rank() != 0 && p_ != other.p_)
    throw PreconditionError("FinAbGroup::product: different primes");
  std::vector<int> e = exponents_;
  e.insert(e.end(), other.exponents_.begin(), other.exponents_.end());
  return FinAbGroup(rank() != 0 ? p_ : other.p_, std::move(e));
}

std::string FinAbGroup::str() const {
  if (exponents_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < rank(); ++i) os << (i ? " x " : "") << "Z/" << moduli_[i];
  return os.str();
}

Int enumeration_guard() {
  if (const char* s = std::getenv("MAX_ORDER_GUARD")) {
    Int v;
    if (v.set_str(s, 10) == 0 && v > 0) return v;
    throw PreconditionError(std::string("MAX_ORDER_GUARD is not a positive integer: ") + s);
  }
  return ipow(3, 10);
}

void require_enumerable(const Int& count, const std::string& what) {
  const Int guard = enumeration_guard();
  if (count > guard)
    throw BudgetExceeded(what + " has " + to_string(count) + " elements, above MAX_ORDER_GUARD=" + to_string(guard));
}

ExponentProfile::ExponentProfile(long p, std::vector<int> lambda) : p_(p), lambda_(std::move(lambda)) {
  if (!is_prime(p)) throw InvariantViolation("prime", std::to_string(p) + " is not prime");
  for (std::size_t i = 0; i < lambda_.size(); ++i) {
    if (lambda_[i] < 1) throw InvariantViolation("positive-exponents", "lambda entry below 1");
    if (i > 0 && lambda_[i] > lambda_[i - 1]) throw InvariantViolation("non-increasing", "lambda must be non-increasing");
  }
}

bool ExponentProfile::homogeneous() const {
  return std::all_of(lambda_.begin(), lambda_.end(), [&](int e) { return e == lambda_.front(); });
}

Int ExponentProfile::pair_modulus(std::size_t i, std::size_t j) const {
  return ipow(p_, std::min(lambda_[i], lambda_[j]));
}

GroupElement element_add(const FinAbGroup& g, const GroupElement& x, const GroupElement& y) {
  g.check_element(x, "element_add");
  g.check_element(y, "element_add");
  GroupElement r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    r[i] = x[i] + y[i];
    if (r[i] >= g.modulus(i)) r[i] -= g.modulus(i);
  }
  return r;
}

GroupElement element_neg(const FinAbGroup& g, const GroupElement& x) {
  g.check_element(x, "element_neg");
  GroupElement r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i] == 0 ? Int(0) : Int(g.modulus(i) - x[i]);
  return r;
}

GroupElement element_scale(const FinAbGroup& g, const Int& k, const GroupElement& x) {
  g.check_element(x, "element_scale");
  GroupElement r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = mod(k * x[i], g.modulus(i));
  return r;
}

QmodZ dual_pairing(const FinAbGroup& g, const GroupElement& chi, const GroupElement& x) {
  if (chi.size() != g.rank() || x.size() != g.rank()) throw PreconditionError("dual_pairing: dimension mismatch");
  const Int big = ipow(g.p(), g.max_exponent());
  Int num = 0;
  for (std::size_t i = 0; i < g.rank(); ++i) num += chi[i] * x[i] * (big / g.modulus(i));
  return QmodZ(num, big);
}

// ---------------------------------------------------------------------------

namespace {

// p^{max(0, a - b)}
Int lift_factor(long p, int a, int b) { return ipow(p, std::max(0, a - b)); }

}  // namespace

HomMatrix::HomMatrix(FinAbGroup source, FinAbGroup target, const IntMatrix& entries)
    : source_(std::move(source)), target_(std::move(target)), entries_(entries) {
  if (entries_.rows() != target_.rank() || entries_.cols() != source_.rank())
    throw PreconditionError("HomMatrix: entries are " + std::to_string(entries_.rows()) + "x" +
                            std::to_string(entries_.cols()) + ", expected " + std::to_string(target_.rank()) + "x" +
                            std::to_string(source_.rank()));
  if (source_.rank() != 0 && target_.rank() != 0 && source_.p() != target_.p())
    throw PreconditionError("HomMatrix: source and target primes differ");
  for (std::size_t i = 0; i < target_.rank(); ++i)
    for (std::size_t j = 0; j < source_.rank(); ++j) {
      Int& s = entries_(i, j);
      const Int f = lift_factor(target_.p(), target_.exponents()[i], source_.exponents()[j]);
      if (!mpz_divisible_p(s.get_mpz_t(), f.get_mpz_t()))
        throw InvariantViolation("well-definedness", "entry (" + std::to_string(i) + "," + std::to_string(j) + ")=" +
                                                         to_string(s) + " is not divisible by " + to_string(f));
      s = mod(s, target_.modulus(i));
    }
}

HomMatrix HomMatrix::identity(const FinAbGroup& g) { return HomMatrix(g, g, IntMatrix::identity(g.rank())); }

HomMatrix HomMatrix::zero(const FinAbGroup& source, const FinAbGroup& target) {
  return HomMatrix(source, target, IntMatrix(target.rank(), source.rank()));
}

GroupElement HomMatrix::apply(const GroupElement& x) const {
  source_.check_element(x, "apply_hom");
  return target_.reduce(entries_ * x);
}

HomMatrix HomMatrix::compose(const HomMatrix& inner) const {
  if (inner.target_ != source_) throw PreconditionError("HomMatrix::compose: intermediate groups differ");
  return HomMatrix(inner.source_, target_, entries_ * inner.entries_);
}

HomMatrix HomMatrix::operator+(const HomMatrix& other) const {
  if (source_ != other.source_ || target_ != other.target_) throw PreconditionError("HomMatrix: sum of unlike maps");
  return HomMatrix(source_, target_, entries_ + other.entries_);
}

HomMatrix HomMatrix::operator-() const { return HomMatrix(source_, target_, -entries_); }

HomMatrix HomMatrix::scaled(const Int& k) const {
  IntMatrix e = entries_;
  for (std::size_t i = 0; i < e.rows(); ++i)
    for (std::size_t j = 0; j < e.cols(); ++j) e(i, j) *= k;
  return HomMatrix(source_, target_, e);
}

HomMatrix HomMatrix::adjoint() const {
  const long p = source_.rank() ? source_.p() : target_.p();
  IntMatrix t(source_.rank(), target_.rank());
  for (std::size_t i = 0; i < target_.rank(); ++i)
    for (std::size_t j = 0; j < source_.rank(); ++j) {
      const int d = source_.exponents()[j] - target_.exponents()[i];
      if (d >= 0) {
        t(j, i) = entries_(i, j) * ipow(p, d);
      } else {
        Int q;
        mpz_divexact(q.get_mpz_t(), entries_(i, j).get_mpz_t(), ipow(p, -d).get_mpz_t());
        t(j, i) = q;
      }
    }
  return HomMatrix(target_, source_, t);
}

std::optional<HomMatrix> HomMatrix::inverse() const {
  if (source_.order() != target_.order()) return std::nullopt;
  const FinAbGroup& S = source_;
  const FinAbGroup& T = target_;
  const long p = S.rank() ? S.p() : T.p();
  IntMatrix g(S.rank(), T.rank());
  for (std::size_t k = 0; k < T.rank(); ++k) {
    // unknown g_jk = p^{max(0, muS_j - muT_k)} y_j
    IntMatrix a(T.rank(), S.rank());
    for (std::size_t i = 0; i < T.rank(); ++i)
      for (std::size_t j = 0; j < S.rank(); ++j)
        a(i, j) = entries_(i, j) * lift_factor(p, S.exponents()[j], T.exponents()[k]);
    IntVector b(T.rank());
    b[k] = 1;
    auto y = solve_congruence(a, b, T.moduli());
    if (!y) return std::nullopt;
    for (std::size_t j = 0; j < S.rank(); ++j) g(j, k) = (*y)[j] * lift_factor(p, S.exponents()[j], T.exponents()[k]);
  }
  HomMatrix inv(T, S, g);
  if (compose(inv) != identity(T) || inv.compose(*this) != identity(S)) return std::nullopt;
  return inv;
}

GroupElement apply_hom(const HomMatrix& h, const GroupElement& x) { return h.apply(x); }
HomMatrix adjoint_hom(const HomMatrix& h) { return h.adjoint(); }

AutomorphismCheck is_automorphism(const HomMatrix& h) {
  if (h.source() != h.target()) throw PreconditionError("is_automorphism: source and target differ");
  AutomorphismCheck r;
  r.inverse = h.inverse();
  r.automorphism = r.inverse.has_value();
  return r;
}

Presentation present(long p, const IntMatrix& relations) {
  const std::size_t n = relations.rows();
  const SmithDecomposition s = smith(relations);
  if (s.rank < n) throw InvariantViolation("finite-cokernel", "relation matrix has rank below its row count");
  std::vector<std::size_t> keep;
  std::vector<int> exps;
  for (std::size_t i = n; i-- > 0;) {
    const Int& d = s.D(i, i);
    if (d == 1) continue;
    const int e = valuation(d, p, static_cast<int>(mpz_sizeinbase(d.get_mpz_t(), 2)) + 1);
    if (ipow(p, e) != d)
      throw InvariantViolation("p-group", "invariant factor " + to_string(d) + " is not a power of " + std::to_string(p));
    keep.push_back(i);
    exps.push_back(e);
  }
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  Presentation out{FinAbGroup(p, exps), s.U.select(keep, all), s.U_inverse.select(all, keep)};
  for (std::size_t r = 0; r < keep.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) out.to_basis(r, c) = mod(out.to_basis(r, c), out.group.modulus(r));
  return out;
}

// ---------------------------------------------------------------------------

const char* kind_name(GeneratorOp::Kind k) {
  switch (k) {
    case GeneratorOp::Kind::Scale: return "beta";
    case GeneratorOp::Kind::Swap: return "pi";
    case GeneratorOp::Kind::Shear: return "theta";
  }
  return "?";
}

HomMatrix GeneratorOp::as_hom(const FinAbGroup& g) const {
  const std::size_t n = g.rank();
  if (i >= n || (kind != Kind::Scale && j >= n)) throw PreconditionError("GeneratorOp: index out of range");
  IntMatrix m = IntMatrix::identity(n);
  switch (kind) {
    case Kind::Scale:
      if (mpz_divisible_ui_p(a.get_mpz_t(), static_cast<unsigned long>(g.p())))
        throw PreconditionError("GeneratorOp: scale factor is not a unit");
      m(i, i) = a;
      break;
    case Kind::Swap:
      if (g.exponents()[i] != g.exponents()[j]) throw PreconditionError("GeneratorOp: swap of unequal exponents");
      m.swap_rows(i, j);
      break;
    case Kind::Shear:
      if (i == j) throw PreconditionError("GeneratorOp: shear needs distinct indices");
      m(i, j) = a;  // the HomMatrix constructor enforces p^{max(0, mu_i - mu_j)} | a
      break;
  }
  return HomMatrix(g, g, m);
}

std::string GeneratorOp::str() const {
  std::ostringstream os;
  os << kind_name(kind) << '(' << i;
  if (kind != Kind::Scale) os << ',' << j;
  if (kind != Kind::Swap) os << ";a=" << a;
  os << ')';
  return os.str();
}

GeneratorOp random_generator_op(const FinAbGroup& g, SplitMix64& rng) {
  const std::size_t n = g.rank();
  if (n == 0) throw PreconditionError("random_generator_op: trivial group");
  std::vector<std::pair<std::size_t, std::size_t>> swaps;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (g.exponents()[i] == g.exponents()[j]) swaps.emplace_back(i, j);
  std::vector<GeneratorOp::Kind> kinds{GeneratorOp::Kind::Scale};
  if (!swaps.empty()) kinds.push_back(GeneratorOp::Kind::Swap);
  if (n >= 2) kinds.push_back(GeneratorOp::Kind::Shear);

  GeneratorOp op;
  op.kind = kinds[rng.below(kinds.size())];
  const Int p = g.p();
  switch (op.kind) {
    case GeneratorOp::Kind::Scale: {
      op.i = rng.below(n);
      op.j = op.i;
      const Int units_mod_p = p - 1;
      op.a = 1 + rng.below(units_mod_p) + p * rng.below(Int(g.modulus(op.i) / p));
      break;
    }
    case GeneratorOp::Kind::Swap: {
      const auto& s = swaps[rng.below(swaps.size())];
      op.i = s.first;
      op.j = s.second;
      op.a = 0;
      break;
    }
    case GeneratorOp::Kind::Shear: {
      op.i = rng.below(n);
      op.j = rng.below(n - 1);
      if (op.j >= op.i) ++op.j;
      const int ei = g.exponents()[op.i], ej = g.exponents()[op.j];
      op.a = lift_factor(g.p(), ei, ej) * rng.below(ipow(g.p(), std::min(ei, ej)));
      break;
    }
  }
  return op;
}

HomMatrix random_automorphism(const FinAbGroup& g, SplitMix64& rng, int steps) {
  if (steps < 0) throw PreconditionError("random_automorphism: negative step count");
  HomMatrix sigma = HomMatrix::identity(g);
  if (g.rank() == 0) return sigma;
  for (int s = 0; s < steps; ++s) sigma = random_generator_op(g, rng).as_hom(g).compose(sigma);
  return sigma;
}

HomMatrix random_automorphism(const ExponentProfile& profile, std::uint64_t seed, int steps) {
  SplitMix64 rng(seed);
  return random_automorphism(profile.group(), rng, steps);
}

}  // namespace symplectica
