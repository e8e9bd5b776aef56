#include "udwit/cayley_menger.hpp"

#include <stdexcept>
#include <utility>

namespace udwit {

SquaredDistanceSpec SquaredDistanceSpec::create(int point_count,
                                                std::vector<Rational> phi_row_major) {
  if (point_count < 1) throw std::invalid_argument("SquaredDistanceSpec: need at least 1 point");
  const size_t m = static_cast<size_t>(point_count);
  if (phi_row_major.size() != m * m)
    throw std::invalid_argument("SquaredDistanceSpec: entry count must be point_count^2");
  for (size_t i = 0; i < m; ++i) {
    if (!phi_row_major[i * m + i].is_zero())
      throw std::invalid_argument("SquaredDistanceSpec: diagonal must be zero");
    for (size_t j = i + 1; j < m; ++j)
      if (phi_row_major[i * m + j] != phi_row_major[j * m + i])
        throw std::invalid_argument("SquaredDistanceSpec: matrix must be symmetric");
  }
  return SquaredDistanceSpec(point_count, std::move(phi_row_major));
}

const Rational& SquaredDistanceSpec::at(int i, int j) const {
  if (i < 0 || i >= point_count_ || j < 0 || j >= point_count_)
    throw std::out_of_range("SquaredDistanceSpec::at: index out of range");
  return entries_[static_cast<size_t>(i) * point_count_ + j];
}

Rational cm_determinant(const SquaredDistanceSpec& spec) {
  const int m = spec.point_count();
  RationalMatrix bordered(m + 1);
  for (int i = 1; i <= m; ++i) {
    bordered.at(0, i) = Rational(1);
    bordered.at(i, 0) = Rational(1);
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) bordered.at(i + 1, j + 1) = spec.at(i, j);
  return rat_det(bordered);
}

bool affinely_dependent(const SquaredDistanceSpec& spec, int dim) {
  if (dim < 1) throw std::invalid_argument("affinely_dependent: dim must be >= 1");
  if (spec.point_count() > dim + 1)
    throw std::invalid_argument(
        "affinely_dependent: criterion requires at most dim + 1 points");
  return cm_determinant(spec).is_zero();
}

SquaredDistanceSpec bipyramid_spec(int n, const Rational& d_sq, const Rational& e_sq,
                                   const Rational& t) {
  if (n < 2) throw std::invalid_argument("bipyramid_spec: n must be >= 2");
  // Point order: x = 0, p_i = i (1..n), y = n + 1.
  const int m = n + 2;
  return SquaredDistanceSpec::from_pairs(m, [&](int i, int j) -> Rational {
    const bool i_apex = (i == 0 || i == m - 1);
    const bool j_apex = (j == 0 || j == m - 1);
    if (i_apex && j_apex) return t;
    if (i_apex || j_apex) return e_sq;
    return d_sq;
  });
}

SquaredDistanceSpec kite_spec(const Rational& d_sq, const Rational& t) {
  // Point order: x = 0, p_1 = 1, p_2 = 2, y = 3.
  const Rational far = Rational(11) * d_sq;
  const Rational near = Rational(3) * d_sq;
  const Rational cross = Rational(25) * d_sq;
  return SquaredDistanceSpec::from_pairs(4, [&](int i, int j) -> Rational {
    const bool i_apex = (i == 0 || i == 3);
    const bool j_apex = (j == 0 || j == 3);
    if (i_apex && j_apex) return t;
    if (i_apex) return j == 1 ? far : near;
    if (j_apex) return i == 1 ? far : near;
    return cross;
  });
}

Rational bipyramid_closed_form(int n, const Rational& d_sq, const Rational& e_sq,
                               const Rational& t) {
  if (n < 2) throw std::invalid_argument("bipyramid_closed_form: n must be >= 2");
  const Rational sign = (n % 2 == 0) ? Rational(-1) : Rational(1);  // (-1)^(n-1)
  return sign * d_sq.pow(n - 1) * t *
         (Rational(n) * t + Rational(2 * n - 2) * d_sq - Rational(4 * n) * e_sq);
}

bool bipyramid_identity_check(int n, const Rational& d_sq, const Rational& e_sq,
                              const Rational& t) {
  return cm_determinant(bipyramid_spec(n, d_sq, e_sq, t)) ==
         bipyramid_closed_form(n, d_sq, e_sq, t);
}

Rational kite_closed_form(const Rational& d_sq, const Rational& t) {
  return Rational(2) * d_sq * t * (Rational(11) * d_sq - Rational(25) * t);
}

bool kite_identity_check(const Rational& d_sq, const Rational& t) {
  return cm_determinant(kite_spec(d_sq, t)) == kite_closed_form(d_sq, t);
}

bool apex_simplex_independent(int n, const Rational& d_sq, const Rational& e_sq) {
  if (n < 2) throw std::invalid_argument("apex_simplex_independent: n must be >= 2");
  if (d_sq.sign() <= 0 || e_sq.sign() <= 0)
    throw std::invalid_argument("apex_simplex_independent: squared lengths must be positive");
  const bool independent = Rational(2 * n) * e_sq != Rational(n - 1) * d_sq;

  // Cross-check against the bordered determinant of the apex + simplex
  // configuration (n + 1 points in R^n, so the dependence criterion applies).
  const SquaredDistanceSpec apex = SquaredDistanceSpec::from_pairs(
      n + 1, [&](int i, int j) -> Rational {
        (void)j;
        return i == 0 ? e_sq : d_sq;  // i < j, so i == 0 means the apex is involved
      });
  if (affinely_dependent(apex, n) == independent)
    throw std::logic_error("apex_simplex_independent: inequality and determinant disagree");
  return independent;
}

bool kite_triangle_independent(const Rational& d_sq) {
  if (d_sq.sign() <= 0)
    throw std::invalid_argument("kite_triangle_independent: d_sq must be positive");
  const std::vector<Rational> sides = {Rational(11) * d_sq, Rational(3) * d_sq,
                                       Rational(25) * d_sq};
  const SquaredDistanceSpec tri = SquaredDistanceSpec::from_pairs(
      3, [&](int i, int j) -> Rational {
        if (i == 0 && j == 1) return sides[0];
        if (i == 0 && j == 2) return sides[1];
        return sides[2];
      });
  return !affinely_dependent(tri, 2);
}

}  // namespace udwit
