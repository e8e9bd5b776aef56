#pragma once

// Independent reference implementations used only by tests. Deliberately
// naive: correctness over speed, and structurally unrelated to the library
// code they cross-check.

#include <random>
#include <vector>

#include "udwit/rational.hpp"

namespace udwit::oracle {

// Determinant by cofactor expansion along the first row. O(n!) — fine for
// the small orders the tests use.
inline Rational cofactor_det(const RationalMatrix& m) {
  const int n = m.order();
  if (n == 1) return m.at(0, 0);
  Rational total(0);
  for (int col = 0; col < n; ++col) {
    if (m.at(0, col).is_zero()) continue;
    RationalMatrix minor(n - 1);
    for (int i = 1; i < n; ++i) {
      int mc = 0;
      for (int j = 0; j < n; ++j) {
        if (j == col) continue;
        minor.at(i - 1, mc++) = m.at(i, j);
      }
    }
    const Rational term = m.at(0, col) * cofactor_det(minor);
    total += (col % 2 == 0) ? term : -term;
  }
  return total;
}

// Deterministic pseudo-random small rationals for property tests.
class RationalSource {
 public:
  explicit RationalSource(unsigned seed) : rng_(seed) {}

  Rational next() {
    std::uniform_int_distribution<long> num(-30, 30);
    std::uniform_int_distribution<long> den(1, 12);
    return Rational(num(rng_), den(rng_));
  }

  RationalMatrix next_matrix(int order) {
    RationalMatrix m(order);
    for (int i = 0; i < order; ++i)
      for (int j = 0; j < order; ++j) m.at(i, j) = next();
    return m;
  }

 private:
  std::mt19937 rng_;
};

}  // namespace udwit::oracle
