#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace udwit {

// Exact arbitrary-precision rational number.
//
// Invariants (enforced on every construction path):
//   * always in lowest terms,
//   * denominator strictly positive,
//   * never a division by zero (throws std::domain_error instead).
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long value) : q_(static_cast<signed long>(value)) {}  // NOLINT: implicit by design
  Rational(long num, long den);
  Rational(const mpz_class& num, const mpz_class& den);

  // Parses "p", "-p", "p/q", "-p/q" (base 10). Normalizes to canonical form.
  static Rational from_string(std::string_view text);

  // Exact value of the IEEE double (every finite double is a dyadic rational).
  // Throws std::domain_error for NaN or infinity.
  static Rational from_double(double value);

  Rational operator-() const;
  Rational abs() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);  // throws std::domain_error on /0

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  bool operator==(const Rational& o) const { return mpq_equal(q_.get_mpq_t(), o.q_.get_mpq_t()) != 0; }
  std::strong_ordering operator<=>(const Rational& o) const {
    const int c = mpq_cmp(q_.get_mpq_t(), o.q_.get_mpq_t());
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  // Integer power; negative exponents invert (zero base with negative exponent throws).
  Rational pow(long exponent) const;

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }
  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  // "p/q" in lowest terms; just "p" when the denominator is 1.
  std::string to_string() const;

  // Nearest double (GMP rounding). Large values may overflow to +/-inf.
  double to_double() const { return q_.get_d(); }

  // log2 of a positive rational, accurate to ~1 ulp of double, without
  // overflowing for values far outside double range.
  double log2_approx() const;

  const mpq_class& raw() const { return q_; }

 private:
  explicit Rational(mpq_class q) : q_(std::move(q)) {}
  mpq_class q_;
};

// Dense square matrix of rationals (row-major), order >= 1.
class RationalMatrix {
 public:
  explicit RationalMatrix(int order);
  int order() const { return order_; }
  Rational& at(int row, int col);
  const Rational& at(int row, int col) const;

 private:
  int order_;
  std::vector<Rational> entries_;
};

// Exact determinant via fraction-free (Bareiss) elimination over integers:
// each row is scaled by the LCM of its denominators, elimination runs in
// mpz arithmetic with exact divisions, and the accumulated row scale is
// divided back out at the end. Partial pivoting with sign tracking.
Rational rat_det(const RationalMatrix& matrix);

// Compares sqrt(a_sq) with sqrt(b_sq) exactly (both arguments must be >= 0;
// throws std::domain_error otherwise).
std::strong_ordering rat_cmp_sqrt(const Rational& a_sq, const Rational& b_sq);

}  // namespace udwit
