#include "udwit/quadfield.hpp"

#include <cmath>
#include <stdexcept>

namespace udwit {

namespace {

void require_same_field(const QuadExtNumber& u, const QuadExtNumber& v) {
  if (u.p() != v.p())
    throw std::invalid_argument("QuadExtNumber: cannot combine Q(sqrt(" +
                                std::to_string(u.p()) + ")) with Q(sqrt(" +
                                std::to_string(v.p()) + "))");
}

}  // namespace

bool is_squarefree(long p) {
  if (p < 1) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % (d * d) == 0) return false;
  return true;
}

QuadExtNumber::QuadExtNumber(Rational a, Rational b, long p)
    : a_(std::move(a)), b_(std::move(b)), p_(p) {
  if (p < 2 || !is_squarefree(p))
    throw std::invalid_argument("QuadExtNumber: radicand must be a squarefree integer >= 2, got " +
                                std::to_string(p));
}

double QuadExtNumber::to_double() const {
  return a_.to_double() + b_.to_double() * std::sqrt(static_cast<double>(p_));
}

std::string QuadExtNumber::to_string() const {
  if (b_.is_zero()) return a_.to_string();
  const Rational abs_b = b_.sign() < 0 ? Rational(0) - b_ : b_;
  std::string radical =
      (abs_b == Rational(1) ? "" : abs_b.to_string() + "*") + "sqrt(" + std::to_string(p_) + ")";
  if (a_.is_zero()) return (b_.sign() < 0 ? "-" : "") + radical;
  return a_.to_string() + (b_.sign() < 0 ? " - " : " + ") + radical;
}

QuadExtNumber QuadExtNumber::inverse() const {
  // The norm a^2 - p b^2 vanishes only at zero: sqrt(p) is irrational, so
  // a^2 = p b^2 forces a = b = 0.
  const Rational norm = a_ * a_ - Rational(p_) * b_ * b_;
  if (norm.is_zero()) throw std::domain_error("QuadExtNumber: division by zero");
  return QuadExtNumber(a_ / norm, (Rational(0) - b_) / norm, p_);
}

QuadExtNumber operator+(const QuadExtNumber& u, const QuadExtNumber& v) {
  require_same_field(u, v);
  return QuadExtNumber(u.a_ + v.a_, u.b_ + v.b_, u.p_);
}

QuadExtNumber operator-(const QuadExtNumber& u, const QuadExtNumber& v) {
  require_same_field(u, v);
  return QuadExtNumber(u.a_ - v.a_, u.b_ - v.b_, u.p_);
}

QuadExtNumber operator-(const QuadExtNumber& u) {
  return QuadExtNumber(Rational(0) - u.a_, Rational(0) - u.b_, u.p_);
}

QuadExtNumber operator*(const QuadExtNumber& u, const QuadExtNumber& v) {
  require_same_field(u, v);
  return QuadExtNumber(u.a_ * v.a_ + Rational(u.p_) * u.b_ * v.b_,
                       u.a_ * v.b_ + u.b_ * v.a_, u.p_);
}

QuadExtNumber operator/(const QuadExtNumber& u, const QuadExtNumber& v) {
  require_same_field(u, v);
  return u * v.inverse();
}

bool operator==(const QuadExtNumber& u, const QuadExtNumber& v) {
  return u.p_ == v.p_ && u.a_ == v.a_ && u.b_ == v.b_;
}

bool operator!=(const QuadExtNumber& u, const QuadExtNumber& v) { return !(u == v); }

QuadExtNumber conj(const QuadExtNumber& q) {
  return QuadExtNumber(q.a(), Rational(0) - q.b(), q.p());
}

QuadPoint make_quad_point(std::vector<QuadExtNumber> coords) {
  if (coords.empty()) throw std::invalid_argument("QuadPoint: needs at least one coordinate");
  for (const QuadExtNumber& c : coords) require_same_field(coords.front(), c);
  return QuadPoint{std::move(coords)};
}

QuadExtNumber phi_quad(const QuadPoint& x, const QuadPoint& y) {
  if (x.coords.empty() || y.coords.empty())
    throw std::invalid_argument("phi_quad: empty point");
  if (x.coords.size() != y.coords.size())
    throw std::invalid_argument("phi_quad: dimension mismatch");
  require_same_field(x.coords.front(), y.coords.front());
  QuadExtNumber sum(Rational(0), Rational(0), x.coords.front().p());
  for (size_t i = 0; i < x.coords.size(); ++i) {
    const QuadExtNumber d = x.coords[i] - y.coords[i];
    sum = sum + d * d;
  }
  return sum;
}

QuadPoint endo_map(const QuadPoint& x) {
  std::vector<QuadExtNumber> mapped;
  mapped.reserve(x.coords.size());
  for (const QuadExtNumber& c : x.coords) mapped.push_back(conj(c));
  return QuadPoint{std::move(mapped)};
}

CounterexampleReport counterexample_report(const QuadPoint& x, const QuadPoint& y) {
  const QuadExtNumber before = phi_quad(x, y);
  const QuadExtNumber after = phi_quad(endo_map(x), endo_map(y));
  CounterexampleReport report{before, after, before.is_rational(), after == before};
  // The mechanism itself: conjugation fixes exactly the rational values, so
  // the squared distance survives the map exactly when it is rational.
  if (report.preserved != report.is_rational)
    throw std::logic_error("counterexample_report: dichotomy violated (internal error)");
  if (after != conj(before))
    throw std::logic_error("counterexample_report: equivariance violated (internal error)");
  return report;
}

bool rational_distance_sweep(const std::vector<QuadPoint>& points) {
  for (size_t i = 0; i < points.size(); ++i)
    for (size_t j = i + 1; j < points.size(); ++j) {
      const QuadExtNumber before = phi_quad(points[i], points[j]);
      if (!before.is_rational()) continue;
      if (phi_quad(endo_map(points[i]), endo_map(points[j])) != before) return false;
    }
  return true;
}

}  // namespace udwit
