#include "waldcert/exactmath.hpp"

#include <limits>
#include <ostream>
#include <stdexcept>

namespace waldcert {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

BigInt parse_int(std::string_view s) {
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view frac = text.substr(dot + 1);
    if (!all_digits(frac)) throw std::invalid_argument("bad decimal '" + std::string(text) + "'");
    std::string_view whole = text.substr(0, dot);
    const bool negative = !whole.empty() && whole.front() == '-';
    if (negative) whole.remove_prefix(1);
    const BigInt scale = ipow(BigInt(10), frac.size());
    BigInt num = (whole.empty() ? BigInt(0) : parse_int(whole)) * scale + BigInt(std::string(frac));
    if (negative) num = -num;
    return Rational(num, scale);
  }
  return Rational(parse_int(text));
}

BigInt Rational::floor() const {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

BigInt Rational::ceil() const {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

Rational Rational::reciprocal() const {
  if (sign() == 0) throw std::domain_error("reciprocal of zero");
  return Rational(den(), num());
}

std::string Rational::str() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

std::string Rational::fraction() const { return num().get_str() + "/" + den().get_str(); }

std::string Rational::decimal(int digits) const {
  const BigInt scale = ipow(BigInt(10), static_cast<unsigned long>(digits));
  BigInt scaled;
  const BigInt n = num() * scale;
  mpz_fdiv_q(scaled.get_mpz_t(), n.get_mpz_t(), q_.get_den_mpz_t());
  const bool negative = scaled < 0;
  BigInt mag = negative ? BigInt(-scaled) : scaled;
  std::string s = mag.get_str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  return negative ? "-" + s : s;
}

Rational Rational::operator-() const {
  Rational r;
  r.q_ = -q_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  q_ += rhs.q_;
  return *this;
}
Rational& Rational::operator-=(const Rational& rhs) {
  q_ -= rhs.q_;
  return *this;
}
Rational& Rational::operator*=(const Rational& rhs) {
  q_ *= rhs.q_;
  return *this;
}
Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.sign() == 0) throw std::domain_error("division by zero");
  q_ /= rhs.q_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

BigInt binom(long n, long k) {
  if (n < 0) throw std::domain_error("binom: negative n");
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt c = 1;
  // c = C(n-k+i, i) after step i; each division is exact.
  for (long i = 1; i <= k; ++i) {
    c *= n - k + i;
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return c;
}

BigInt ipow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

BigInt nth_root_floor(const BigInt& s, unsigned long n) {
  if (s < 1 || n < 1) throw std::domain_error("nth_root_floor: requires s >= 1, n >= 1");
  // Invariant: lo^n <= s < hi^n.
  BigInt lo = 1;
  BigInt hi = 2;
  while (ipow(hi, n) <= s) hi *= 2;
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (ipow(mid, n) <= s)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

BigInt isqrt_ceil(const BigInt& v) {
  if (v < 0) throw std::domain_error("isqrt_ceil of negative");
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  if (r * r < v) r += 1;
  return r;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) {
  if (b <= 0) throw std::domain_error("ceil_div: non-positive divisor");
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::int64_t to_int64(const BigInt& v) {
  if (!v.fits_slong_p()) throw std::overflow_error("integer out of 64-bit range: " + v.get_str());
  return v.get_si();
}

}  // namespace waldcert
