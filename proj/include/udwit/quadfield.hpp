#pragma once

#include <string>
#include <vector>

#include "udwit/rational.hpp"

namespace udwit {

bool is_squarefree(long p);

// An element a + b*sqrt(p) of the real quadratic field Q(sqrt(p)).  The
// radicand p is a squarefree integer >= 2 (checked), so the representation
// is unique and the represented real is rational exactly when b = 0.
// Arithmetic is exact; numbers combine only over the same field.
class QuadExtNumber {
 public:
  QuadExtNumber(Rational a, Rational b, long p);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  long p() const { return p_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }
  double to_double() const;
  std::string to_string() const;

  // Multiplicative inverse; throws std::domain_error on zero.
  QuadExtNumber inverse() const;

  friend QuadExtNumber operator+(const QuadExtNumber& u, const QuadExtNumber& v);
  friend QuadExtNumber operator-(const QuadExtNumber& u, const QuadExtNumber& v);
  friend QuadExtNumber operator-(const QuadExtNumber& u);
  friend QuadExtNumber operator*(const QuadExtNumber& u, const QuadExtNumber& v);
  friend QuadExtNumber operator/(const QuadExtNumber& u, const QuadExtNumber& v);
  friend bool operator==(const QuadExtNumber& u, const QuadExtNumber& v);
  friend bool operator!=(const QuadExtNumber& u, const QuadExtNumber& v);

 private:
  Rational a_, b_;
  long p_;
};

// The nontrivial field automorphism of Q(sqrt(p)): a + b*sqrt(p) -> a - b*sqrt(p).
// Fixes exactly the rational elements.
QuadExtNumber conj(const QuadExtNumber& q);

// A point of R^n with all coordinates in one quadratic field.
struct QuadPoint {
  std::vector<QuadExtNumber> coords;
};

// Throws std::invalid_argument when empty or mixing fields.
QuadPoint make_quad_point(std::vector<QuadExtNumber> coords);

// The exact squared-distance form sum (x_i - y_i)^2, a value of Q(sqrt(p)).
// Throws std::invalid_argument on dimension or field mismatch.
QuadExtNumber phi_quad(const QuadPoint& x, const QuadPoint& y);

// The conjugation automorphism applied coordinatewise: the map that
// preserves every rational squared distance yet moves irrational ones.
QuadPoint endo_map(const QuadPoint& x);

struct CounterexampleReport {
  QuadExtNumber phi_before;  // phi(x, y)
  QuadExtNumber phi_after;   // phi(endo_map(x), endo_map(y))
  bool is_rational = false;  // phi_before has zero sqrt(p)-part
  bool preserved = false;    // phi_after == phi_before
};

// Evaluates the squared distance of the pair before and after the
// coordinatewise conjugation.  The dichotomy preserved <=> is_rational is
// re-asserted on every call (std::logic_error if it ever failed).
CounterexampleReport counterexample_report(const QuadPoint& x, const QuadPoint& y);

// True iff every pair of the given points whose squared distance is
// rational keeps that value exactly under the coordinatewise conjugation.
// Pairs with irrational squared distance are outside the claim and are
// skipped.  Throws std::invalid_argument if the points mix dimensions or
// fields.
bool rational_distance_sweep(const std::vector<QuadPoint>& points);

}  // namespace udwit
