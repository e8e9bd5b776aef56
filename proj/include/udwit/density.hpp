#pragma once

#include <vector>

#include "udwit/rational.hpp"

namespace udwit {

// The exact certified-family value:
//   n == 2:  (11/25)^k * 3^l
//   n >= 3:  ((2n+2)/n)^k * (4/n^2)^l
// These are the squared distances whose membership derive_membership(n, k, l)
// certifies.
Rational family_value_sq(int n, long k, long l);

struct ApproxResult {
  bool found = false;
  long k = 0, l = 0;
  Rational achieved_sq{0};  // exact family value
  double achieved = 0.0;    // sqrt(achieved_sq), rounded
  double rel_error = 0.0;   // |achieved - target| / target
};

// Finds the cheapest family member within relative tolerance `tol` of
// `target`: minimizes k + l (ties broken toward smaller k) over k <= k_max.
// The scan proposes candidates from extended-precision logarithms; every
// candidate is accepted or rejected by the exact rational test
//   (1-tol)^2 * target^2 <= family <= (1+tol)^2 * target^2
// with target and tol taken exactly at their IEEE double values.
// Requires n >= 2, target > 0, 0 < tol < 1.
ApproxResult approx_distance(int n, double target, double tol, long k_max = 4096);

// Confirms exhaustively, in exact integer arithmetic, that no nontrivial
// exponent pair (a, b) with 0 <= a, b <= bound collapses the family:
//   n == 2:  3^a * 11^b == 25^b  has no solution but a = b = 0,
//   n >= 3:  (2n+2)^b * 2^(2a) == n^(2a+b)  has no solution but a = b = 0.
// (The two scaling factors of the family point in opposite directions, so
// these are the only candidate collision patterns; their impossibility makes
// the family values pairwise distinct.)  Returns true when no collision
// exists up to the bound.
bool kronecker_slope_check(int n, long bound);

struct ApproachStep {
  long k = 0, l = 0;
  double value = 0.0;
  double abs_error = 0.0;
};

// A sequence of at most `count` family members approaching `target` with
// strictly decreasing error (each step at most half the previous relative
// error).  Stops early if the target is hit exactly.
std::vector<ApproachStep> approach_sequence(int n, double target, int count);

}  // namespace udwit
