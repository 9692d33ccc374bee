#pragma once

// Exact integer and rational arithmetic. Nothing in the bound derivation
// path ever touches floating point; to_double() exists for display only.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace waldcert {

using BigInt = mpz_class;

inline BigInt big(std::int64_t v) { return BigInt(static_cast<long>(v)); }

/// Reduced fraction with positive denominator. Zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& value) : q_(value) {}
  Rational(const BigInt& num, const BigInt& den);

  /// Accepts "p/q", "p" or a finite decimal "12.345" (exact, no rounding).
  static Rational parse(std::string_view text);

  BigInt num() const { return q_.get_num(); }
  BigInt den() const { return q_.get_den(); }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  BigInt floor() const;
  BigInt ceil() const;
  Rational reciprocal() const;

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;
  /// Always "p/q", as used by the fact file.
  std::string fraction() const;
  /// Decimal expansion truncated toward -infinity to `digits` places.
  std::string decimal(int digits) const;
  double to_double() const { return q_.get_d(); }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpq_class& raw() const { return q_; }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// C(n, k) by the multiplicative formula; 0 when k < 0 or k > n.
BigInt binom(long n, long k);

BigInt ipow(const BigInt& base, unsigned long exponent);

/// Largest k with k^n <= s. Requires s >= 1 and n >= 1.
BigInt nth_root_floor(const BigInt& s, unsigned long n);

/// Smallest integer x >= 0 with x*x >= v (v >= 0).
BigInt isqrt_ceil(const BigInt& v);

/// Ceiling of a / b for b > 0.
BigInt ceil_div(const BigInt& a, const BigInt& b);

/// Narrowing with a range check; throws std::overflow_error.
std::int64_t to_int64(const BigInt& v);

}  // namespace waldcert
