#pragma once

#include <vector>

#include "udwit/rational.hpp"

namespace udwit {

// Abstract squared-distance data for m labeled points: a symmetric m x m
// rational matrix with zero diagonal.  Entries are *squared* distances; they
// are not required to be realizable in any particular dimension.
class SquaredDistanceSpec {
 public:
  // Throws std::invalid_argument unless phi is m x m, symmetric, with zero
  // diagonal.
  static SquaredDistanceSpec create(int point_count, std::vector<Rational> phi_row_major);

  // Convenience: all off-diagonal entries from a callable phi(i, j), i < j.
  template <typename PairFn>
  static SquaredDistanceSpec from_pairs(int point_count, PairFn&& phi) {
    std::vector<Rational> entries(static_cast<size_t>(point_count) * point_count, Rational(0));
    for (int i = 0; i < point_count; ++i)
      for (int j = i + 1; j < point_count; ++j) {
        const Rational v = phi(i, j);
        entries[static_cast<size_t>(i) * point_count + j] = v;
        entries[static_cast<size_t>(j) * point_count + i] = v;
      }
    return create(point_count, std::move(entries));
  }

  int point_count() const { return point_count_; }
  const Rational& at(int i, int j) const;

 private:
  SquaredDistanceSpec(int point_count, std::vector<Rational> entries)
      : point_count_(point_count), entries_(std::move(entries)) {}
  int point_count_;
  std::vector<Rational> entries_;  // row-major, symmetric, zero diagonal
};

// The bordered determinant of the spec: the (m+1) x (m+1) determinant whose
// first row and column are (0, 1, 1, ..., 1) and whose remaining block is the
// squared-distance matrix.  Exact.
Rational cm_determinant(const SquaredDistanceSpec& spec);

// For m <= dim + 1 points, the bordered determinant vanishes exactly when
// every realization of the distances in R^dim places the points affinely
// dependently.  Throws std::invalid_argument when m > dim + 1 (where the
// determinant always vanishes for realizable specs and the criterion says
// nothing).
bool affinely_dependent(const SquaredDistanceSpec& spec, int dim);

// The (n+2)-point two-apex configuration over a regular simplex:
// apexes x, y and simplex points p_1..p_n with
//   phi(x, p_i) = phi(y, p_i) = e_sq,  phi(p_i, p_j) = d_sq,  phi(x, y) = t.
// Point order: x, p_1, ..., p_n, y.
SquaredDistanceSpec bipyramid_spec(int n, const Rational& d_sq, const Rational& e_sq,
                                   const Rational& t);

// The planar kite: apexes x, y and cross points p_1, p_2 with
//   phi(x, p_1) = phi(y, p_1) = 11 * d_sq,
//   phi(x, p_2) = phi(y, p_2) = 3 * d_sq,
//   phi(p_1, p_2) = 25 * d_sq,  phi(x, y) = t.
// Point order: x, p_1, p_2, y.
SquaredDistanceSpec kite_spec(const Rational& d_sq, const Rational& t);

// Verifies, by exact evaluation, that the bordered determinant of
// bipyramid_spec(n, d_sq, e_sq, t) equals its closed form
//   (-1)^(n-1) * d_sq^(n-1) * t * (n*t + (2n-2)*d_sq - 4n*e_sq).
// Requires n >= 2.
bool bipyramid_identity_check(int n, const Rational& d_sq, const Rational& e_sq,
                              const Rational& t);

// The closed form itself (exposed so callers can inspect roots).
Rational bipyramid_closed_form(int n, const Rational& d_sq, const Rational& e_sq,
                               const Rational& t);

// Verifies, by exact evaluation, that the bordered determinant of
// kite_spec(d_sq, t) equals its closed form  2 * d_sq * t * (11*d_sq - 25*t).
bool kite_identity_check(const Rational& d_sq, const Rational& t);

Rational kite_closed_form(const Rational& d_sq, const Rational& t);

// Whether an apex at squared distance e_sq from every vertex of a regular
// n-simplex with squared side d_sq spans R^n together with the simplex.
// Exactly the inequality 2*n*e_sq != (n-1)*d_sq; cross-checked internally
// against the bordered determinant of the (n+1)-point configuration.
// Requires n >= 2, d_sq > 0, e_sq > 0.
bool apex_simplex_independent(int n, const Rational& d_sq, const Rational& e_sq);

// Whether the kite's anchor triangle (squared sides 11*d_sq, 3*d_sq, 25*d_sq)
// is non-degenerate, i.e. spans the plane.  Requires d_sq > 0.
bool kite_triangle_independent(const Rational& d_sq);

}  // namespace udwit
