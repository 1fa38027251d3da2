#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace symplectica {

/// Arbitrary precision integer used for every matrix entry and coordinate.
using Int = mpz_class;
using IntVector = std::vector<Int>;

/// p^e for e >= 0.
Int ipow(long p, int e);

/// Representative of a modulo m in [0, m). Requires m > 0.
Int mod(const Int& a, const Int& m);

/// Floor quotient.
Int floor_div(const Int& a, const Int& b);

/// Exponent of p in a. Returns `cap` for a == 0 (or when the exponent is
/// at least `cap`), so zero entries of Z/p^cap have valuation cap.
int valuation(const Int& a, long p, int cap);

/// Deterministic primality test (trial division; p fits in a long).
bool is_prime(long p);

/// Inverse of a modulo m. Throws PreconditionError when gcd(a, m) != 1.
Int inverse_mod(const Int& a, const Int& m);

/// Decimal rendering.
std::string to_string(const Int& a);

/// An element of Q/Z, stored as a reduced fraction in [0, 1).
class QmodZ {
 public:
  QmodZ() = default;
  QmodZ(const Int& numerator, const Int& denominator);
  explicit QmodZ(const mpq_class& value);

  const mpq_class& value() const noexcept { return value_; }
  Int numerator() const { return value_.get_num(); }
  Int denominator() const { return value_.get_den(); }
  bool is_zero() const { return value_ == 0; }

  QmodZ operator+(const QmodZ& other) const;
  QmodZ operator-(const QmodZ& other) const;
  QmodZ operator-() const;
  QmodZ& operator+=(const QmodZ& other);
  QmodZ& operator-=(const QmodZ& other);
  friend QmodZ operator*(const Int& k, const QmodZ& x);

  /// Some y with n*y = *this (n > 0); picks the representative value/n.
  QmodZ divided_by(const Int& n) const;

  bool operator==(const QmodZ& other) const { return value_ == other.value_; }
  bool operator!=(const QmodZ& other) const { return !(*this == other); }

  std::string str() const;

 private:
  void normalize();
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const QmodZ& x);

}  // namespace symplectica
