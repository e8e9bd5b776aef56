#include "udwit/rational.hpp"

#include <cctype>
#include <cmath>
#include <utility>

namespace udwit {

namespace {

mpq_class make_canonical(const mpz_class& num, const mpz_class& den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  mpq_class q;
  mpq_set_num(q.get_mpq_t(), num.get_mpz_t());
  mpq_set_den(q.get_mpq_t(), den.get_mpz_t());
  q.canonicalize();
  return q;
}

}  // namespace

Rational::Rational(long num, long den) : q_(make_canonical(mpz_class(num), mpz_class(den))) {}

Rational::Rational(const mpz_class& num, const mpz_class& den) : q_(make_canonical(num, den)) {}

Rational Rational::from_string(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("Rational::from_string: empty input");
  const std::string s(text);
  // Reject anything but an optional sign, digits, and at most one '/'.
  bool seen_slash = false;
  for (size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '-' && (i == 0 || s[i - 1] == '/')) continue;
    if (c == '/') {
      if (seen_slash) throw std::invalid_argument("Rational::from_string: bad input '" + s + "'");
      seen_slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw std::invalid_argument("Rational::from_string: bad input '" + s + "'");
  }
  const size_t slash = s.find('/');
  mpz_class num, den;
  try {
    num = mpz_class(slash == std::string::npos ? s : s.substr(0, slash));
    den = slash == std::string::npos ? mpz_class(1) : mpz_class(s.substr(slash + 1));
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("Rational::from_string: bad input '" + s + "'");
  }
  return Rational(num, den);
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("Rational::from_double: non-finite value");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), value);  // exact: doubles are dyadic rationals
  return Rational(std::move(q));
}

Rational Rational::operator-() const {
  mpq_class r;
  mpq_neg(r.get_mpq_t(), q_.get_mpq_t());
  return Rational(std::move(r));
}

Rational Rational::abs() const {
  mpq_class r;
  mpq_abs(r.get_mpq_t(), q_.get_mpq_t());
  return Rational(std::move(r));
}

Rational& Rational::operator+=(const Rational& o) {
  q_ += o.q_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  q_ -= o.q_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  q_ *= o.q_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::pow(long exponent) const {
  if (exponent == 0) return Rational(1);
  if (is_zero()) {
    if (exponent < 0) throw std::domain_error("Rational::pow: zero base, negative exponent");
    return Rational(0);
  }
  const unsigned long e =
      exponent > 0 ? static_cast<unsigned long>(exponent) : static_cast<unsigned long>(-exponent);
  mpz_class num_pow, den_pow;
  mpz_pow_ui(num_pow.get_mpz_t(), numerator().get_mpz_t(), e);
  mpz_pow_ui(den_pow.get_mpz_t(), denominator().get_mpz_t(), e);
  return exponent > 0 ? Rational(num_pow, den_pow) : Rational(den_pow, num_pow);
}

std::string Rational::to_string() const {
  return is_integer() ? numerator().get_str() : numerator().get_str() + "/" + denominator().get_str();
}

double Rational::log2_approx() const {
  if (sign() <= 0) throw std::domain_error("Rational::log2_approx: non-positive value");
  long num_exp = 0, den_exp = 0;
  const double num_m = mpz_get_d_2exp(&num_exp, numerator().get_mpz_t());
  const double den_m = mpz_get_d_2exp(&den_exp, denominator().get_mpz_t());
  return (std::log2(num_m) + static_cast<double>(num_exp)) -
         (std::log2(den_m) + static_cast<double>(den_exp));
}

RationalMatrix::RationalMatrix(int order) : order_(order) {
  if (order < 1) throw std::invalid_argument("RationalMatrix: order must be >= 1");
  entries_.assign(static_cast<size_t>(order) * static_cast<size_t>(order), Rational(0));
}

Rational& RationalMatrix::at(int row, int col) {
  if (row < 0 || row >= order_ || col < 0 || col >= order_)
    throw std::out_of_range("RationalMatrix::at: index out of range");
  return entries_[static_cast<size_t>(row) * order_ + col];
}

const Rational& RationalMatrix::at(int row, int col) const {
  return const_cast<RationalMatrix*>(this)->at(row, col);
}

Rational rat_det(const RationalMatrix& matrix) {
  const int n = matrix.order();

  // Scale each row to integers; remember the combined scale.
  std::vector<mpz_class> a(static_cast<size_t>(n) * n);
  mpz_class den_scale = 1;
  for (int i = 0; i < n; ++i) {
    mpz_class row_lcm = 1;
    for (int j = 0; j < n; ++j) row_lcm = lcm(row_lcm, matrix.at(i, j).denominator());
    for (int j = 0; j < n; ++j) {
      const Rational& e = matrix.at(i, j);
      mpz_class factor;
      mpz_divexact(factor.get_mpz_t(), row_lcm.get_mpz_t(), e.denominator().get_mpz_t());
      a[static_cast<size_t>(i) * n + j] = e.numerator() * factor;
    }
    den_scale *= row_lcm;
  }

  auto at = [&a, n](int i, int j) -> mpz_class& { return a[static_cast<size_t>(i) * n + j]; };

  int sign = 1;
  mpz_class prev = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      int pivot_row = -1;
      for (int i = k + 1; i < n; ++i) {
        if (at(i, k) != 0) {
          pivot_row = i;
          break;
        }
      }
      if (pivot_row < 0) return Rational(0);  // zero column: singular
      for (int j = k; j < n; ++j) std::swap(at(k, j), at(pivot_row, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        mpz_class t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }

  mpz_class det_int = at(n - 1, n - 1);
  if (sign < 0) det_int = -det_int;
  return Rational(det_int, den_scale);
}

std::strong_ordering rat_cmp_sqrt(const Rational& a_sq, const Rational& b_sq) {
  if (a_sq.sign() < 0 || b_sq.sign() < 0)
    throw std::domain_error("rat_cmp_sqrt: negative square");
  return a_sq <=> b_sq;  // sqrt is monotone on [0, inf)
}

}  // namespace udwit
