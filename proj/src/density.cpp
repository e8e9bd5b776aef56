#include "udwit/density.hpp"

#include <cmath>
#include <stdexcept>

namespace udwit {

namespace {

void check_family_args(int n, long k, long l) {
  if (n < 2) throw std::invalid_argument("family_value_sq: n must be >= 2");
  if (k < 0 || l < 0) throw std::invalid_argument("family_value_sq: exponents must be >= 0");
}

}  // namespace

Rational family_value_sq(int n, long k, long l) {
  check_family_args(n, k, l);
  if (n == 2) return Rational(11, 25).pow(k) * Rational(3).pow(l);
  return Rational(2 * n + 2, n).pow(k) * Rational(4, static_cast<long>(n) * n).pow(l);
}

ApproxResult approx_distance(int n, double target, double tol, long k_max) {
  if (n < 2) throw std::invalid_argument("approx_distance: n must be >= 2");
  if (!std::isfinite(target) || target <= 0.0)
    throw std::invalid_argument("approx_distance: target must be positive and finite");
  if (!std::isfinite(tol) || tol <= 0.0 || tol >= 1.0)
    throw std::invalid_argument("approx_distance: tol must be in (0, 1)");
  if (k_max < 0) throw std::invalid_argument("approx_distance: k_max must be >= 0");

  // Exact acceptance window on squares.
  const Rational target_exact = Rational::from_double(target);
  const Rational tol_exact = Rational::from_double(tol);
  const Rational lo = (Rational(1) - tol_exact) * target_exact;
  const Rational hi = (Rational(1) + tol_exact) * target_exact;
  const Rational lo_sq = lo * lo;
  const Rational hi_sq = hi * hi;

  // Extended-precision log-space scan: log2(family) = k*a + l*b.
  const long double a = (n == 2)
                            ? std::log2(11.0L) - std::log2(25.0L)
                            : std::log2(static_cast<long double>(2 * n + 2)) -
                                  std::log2(static_cast<long double>(n));
  const long double b = (n == 2)
                            ? std::log2(3.0L)
                            : 2.0L - 2.0L * std::log2(static_cast<long double>(n));
  const long double log_lo = static_cast<long double>(lo_sq.log2_approx());
  const long double log_hi = static_cast<long double>(hi_sq.log2_approx());

  ApproxResult best;
  for (long k = 0; k <= k_max; ++k) {
    if (best.found && k > best.k + best.l) break;  // cost >= k once l >= 0
    const long double x1 = (log_lo - static_cast<long double>(k) * a) / b;
    const long double x2 = (log_hi - static_cast<long double>(k) * a) / b;
    const long double l_min_real = x1 < x2 ? x1 : x2;
    const long double l_max_real = x1 < x2 ? x2 : x1;
    long l_start = static_cast<long>(std::ceil(l_min_real)) - 1;
    if (l_start < 0) l_start = 0;
    const long l_stop = static_cast<long>(std::floor(l_max_real)) + 1;
    for (long l = l_start; l <= l_stop; ++l) {
      const Rational value = family_value_sq(n, k, l);
      if (lo_sq <= value && value <= hi_sq) {
        // The smallest in-window l gives this k's cheapest member.
        if (!best.found || k + l < best.k + best.l) {
          best.found = true;
          best.k = k;
          best.l = l;
          best.achieved_sq = value;
        }
        break;
      }
    }
  }

  if (best.found) {
    best.achieved = std::sqrt(best.achieved_sq.to_double());
    best.rel_error = std::fabs(best.achieved - target) / target;
  }
  return best;
}

bool kronecker_slope_check(int n, long bound) {
  if (n < 2) throw std::invalid_argument("kronecker_slope_check: n must be >= 2");
  if (bound < 1) throw std::invalid_argument("kronecker_slope_check: bound must be >= 1");
  for (long a = 0; a <= bound; ++a) {
    for (long b = 0; b <= bound; ++b) {
      if (a == 0 && b == 0) continue;
      if (n == 2) {
        // 3^a * 11^b == 25^b ?
        mpz_class left, mid, right;
        mpz_ui_pow_ui(left.get_mpz_t(), 3, static_cast<unsigned long>(a));
        mpz_ui_pow_ui(mid.get_mpz_t(), 11, static_cast<unsigned long>(b));
        mpz_ui_pow_ui(right.get_mpz_t(), 25, static_cast<unsigned long>(b));
        if (left * mid == right) return false;
      } else {
        // (2n+2)^b * 2^(2a) == n^(2a+b) ?
        mpz_class left, mid, right;
        mpz_ui_pow_ui(left.get_mpz_t(), static_cast<unsigned long>(2 * n + 2),
                      static_cast<unsigned long>(b));
        mpz_ui_pow_ui(mid.get_mpz_t(), 2, static_cast<unsigned long>(2 * a));
        mpz_ui_pow_ui(right.get_mpz_t(), static_cast<unsigned long>(n),
                      static_cast<unsigned long>(2 * a + b));
        if (left * mid == right) return false;
      }
    }
  }
  return true;
}

std::vector<ApproachStep> approach_sequence(int n, double target, int count) {
  if (count < 1) throw std::invalid_argument("approach_sequence: count must be >= 1");
  std::vector<ApproachStep> steps;
  double tol = 0.5;
  for (int i = 0; i < count; ++i) {
    const ApproxResult r = approx_distance(n, target, tol, 1L << 17);
    if (!r.found) break;
    steps.push_back({r.k, r.l, r.achieved, std::fabs(r.achieved - target)});
    if (r.rel_error == 0.0) break;  // exact hit
    tol = r.rel_error * 0.5;
    if (tol <= 0.0) break;
  }
  return steps;
}

}  // namespace udwit
