#include "symplectica/integer.hpp"

#include "symplectica/error.hpp"

namespace symplectica {

Int ipow(long p, int e) {
  if (e < 0) throw PreconditionError("ipow: negative exponent");
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
  return r;
}

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

int valuation(const Int& a, long p, int cap) {
  if (a == 0) return cap;
  Int x = a;
  int v = 0;
  const unsigned long up = static_cast<unsigned long>(p);
  while (v < cap && mpz_divisible_ui_p(x.get_mpz_t(), up)) {
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), up);
    ++v;
  }
  return v;
}

bool is_prime(long p) {
  if (p < 2) return false;
  if (p % 2 == 0) return p == 2;
  for (long d = 3; d <= p / d; d += 2)
    if (p % d == 0) return false;
  return true;
}

Int inverse_mod(const Int& a, const Int& m) {
  Int r;
  if (m == 1) return 0;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw PreconditionError("inverse_mod: " + to_string(a) + " is not invertible modulo " + to_string(m));
  return r;
}

std::string to_string(const Int& a) { return a.get_str(10); }

QmodZ::QmodZ(const Int& numerator, const Int& denominator) : value_(numerator, denominator) {
  if (denominator == 0) throw PreconditionError("QmodZ: zero denominator");
  value_.canonicalize();
  normalize();
}

QmodZ::QmodZ(const mpq_class& value) : value_(value) {
  value_.canonicalize();
  normalize();
}

void QmodZ::normalize() {
  // value - floor(value), kept reduced
  Int fl = floor_div(value_.get_num(), value_.get_den());
  value_ -= fl;
  value_.canonicalize();
}

QmodZ QmodZ::operator+(const QmodZ& other) const { return QmodZ(value_ + other.value_); }
QmodZ QmodZ::operator-(const QmodZ& other) const { return QmodZ(value_ - other.value_); }
QmodZ QmodZ::operator-() const { return QmodZ(mpq_class(-value_)); }

QmodZ& QmodZ::operator+=(const QmodZ& other) {
  value_ += other.value_;
  normalize();
  return *this;
}

QmodZ& QmodZ::operator-=(const QmodZ& other) {
  value_ -= other.value_;
  normalize();
  return *this;
}

QmodZ operator*(const Int& k, const QmodZ& x) { return QmodZ(mpq_class(mpq_class(k) * x.value_)); }

QmodZ QmodZ::divided_by(const Int& n) const {
  if (n <= 0) throw PreconditionError("QmodZ::divided_by: non-positive divisor");
  return QmodZ(mpq_class(value_ / mpq_class(n)));
}

std::string QmodZ::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const QmodZ& x) { return os << x.str(); }

}  // namespace symplectica
