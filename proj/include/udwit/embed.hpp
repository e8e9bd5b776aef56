#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "udwit/rational.hpp"
#include "udwit/witness.hpp"

namespace udwit {

// Geometric preconditions violated (degenerate input).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// The constraints admit no solution (infeasible distances).
struct NoSolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Canonical coordinates for the two-apex configuration in R^n: both apexes
// on the first axis, the regular simplex (side sqrt(d_sq)) centered at the
// origin in the orthogonal hyperplane, every simplex vertex at distance
// sqrt(e_sq) from each apex, and the mirrored apex y_mirror = 2x - y.
// Deterministic (no randomness).  Throws PreconditionError unless
// 2n*e_sq > (n-1)*d_sq.
struct TwoApexCoords {
  std::vector<std::vector<double>> simplex;  // p_1..p_n
  std::vector<double> x, y, y_mirror;
};
TwoApexCoords simplex_apex_coords(int n, const Rational& d_sq, const Rational& e_sq);

struct CoincidenceWarning {
  uint32_t a = 0, b = 0;
  double distance = 0.0;
};

struct Embedding {
  int dim = 2;
  std::vector<double> coords;  // vertex-major: coords[v*dim + c]
  double max_edge_residual = 0.0;  // max over unit edges of | |pq|^2 - 1 |
  double target_residual = 0.0;    // | |xy|^2 - target_sq | on the distinguished pair
  std::vector<CoincidenceWarning> coincidences;  // pairs closer than 1e-9

  const double* point(uint32_t v) const { return coords.data() + static_cast<size_t>(v) * dim; }
};

// Realizes the witness graph in R^dim with every unit edge at length 1
// (up to floating-point rounding), by recursively placing each construction
// layer of the attached derivation.  Randomized orientation choices are
// drawn from a generator seeded per construction layer from `seed`, so
// identical (graph, seed) inputs produce bit-identical coordinates.
// Requires graph.derivation (throws std::invalid_argument otherwise).
Embedding embed(const WitnessGraph& graph, uint64_t seed);

// Recovers the point of R^dim at the given exact squared distances from
// dim+1 affinely independent anchor points.  Throws PreconditionError when
// the anchors are affinely dependent (decided exactly on the anchors' dyadic
// rational coordinates), NoSolutionError when no point satisfies the
// distances (checked at relative tolerance 1e-6).
std::vector<double> trilaterate(int dim, const std::vector<std::vector<double>>& anchors,
                                const std::vector<Rational>& sq_dists);

// SVG rendering of a planar embedding (dim must be 2).
std::string render_svg(const WitnessGraph& graph, const Embedding& embedding);

// The planar contraction figure at exact scale: apexes x, y, mirrored apex
// yt, and the four anchor vertices, with its 11 segments plus the
// distinguished pair.
struct SkeletonSegment {
  int a = 0, b = 0;
  std::string role;  // "far", "near", "cross", "tie"
};
struct PlanarSkeleton {
  std::vector<std::string> labels;
  std::vector<std::array<double, 2>> points;
  std::vector<SkeletonSegment> segments;
  std::pair<int, int> distinguished{0, 1};
};
PlanarSkeleton kite_skeleton(const Rational& d_sq);
std::string render_svg(const PlanarSkeleton& skeleton);

}  // namespace udwit
