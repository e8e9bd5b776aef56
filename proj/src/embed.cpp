#include "udwit/embed.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "udwit/cayley_menger.hpp"
#include "udwit/derivation.hpp"

namespace udwit {

namespace {

// Numeric tolerances of this module (everything decidable exactly is decided
// exactly; these only guard floating-point steps).
constexpr double kCoincidenceTol = 1e-9;  // flag vertex pairs closer than this
constexpr double kPivotTol = 1e-12;       // relative pivot guard in linear solves
constexpr double kFeasibilityTol = 1e-6;  // relative residual accepted by trilaterate

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Per-layer generator: the layer's path in the construction tree plus the
// global seed fully determine the stream, so embeddings are reproducible.
std::mt19937_64 layer_rng(uint64_t seed, std::string_view path) {
  return std::mt19937_64(seed ^ (fnv1a64(path) * 0x9E3779B97F4A7C15ULL));
}

// Hand-rolled uniform and normal draws: the standard distributions are
// implementation-defined, and identical (graph, seed) inputs must give
// bit-identical coordinates.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian(std::mt19937_64& rng) {
  double u;
  do {
    u = uniform01(rng);
  } while (u <= 0.0);
  const double v = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u)) * std::cos(6.28318530717958647692528676655900577 * v);
}

// Random unit vector orthogonal to all of `ortho` (unit, mutually orthogonal).
Vec random_unit_orthogonal(std::mt19937_64& rng, const std::vector<Vec>& ortho, int dim) {
  while (true) {
    Vec g(dim);
    for (double& c : g) c = gaussian(rng);
    for (const Vec& b : ortho) {
      const double d = dot(g, b);
      for (int c = 0; c < dim; ++c) g[c] -= d * b[c];
    }
    const double len = norm(g);
    if (len > 1e-6) {
      for (double& c : g) c /= len;
      return g;
    }
  }
}

// Column i of the Helmert basis of the sum-zero hyperplane of R^n: the n
// columns form a regular (n-1)-simplex with side sqrt(2) centered at the
// origin of R^{n-1}.  Row j (1-based) is (1,..,1,-j,0,..,0)/sqrt(j(j+1))
// with j leading ones.
std::vector<Vec> helmert_columns(int n) {
  std::vector<Vec> cols(n, Vec(n - 1, 0.0));
  for (int j = 1; j <= n - 1; ++j) {
    const double s = 1.0 / std::sqrt(static_cast<double>(j) * (j + 1));
    for (int i = 0; i < j; ++i) cols[i][j - 1] = s;
    cols[j][j - 1] = -static_cast<double>(j) * s;
  }
  return cols;
}

class Placer {
 public:
  Placer(const WitnessGraph& graph, uint64_t seed)
      : graph_(graph), seed_(seed), dim_(graph.dim) {
    emb_.dim = dim_;
    emb_.coords.assign(graph.vertex_ids.size() * static_cast<size_t>(dim_), 0.0);
    for (size_t i = 0; i < graph.vertex_ids.size(); ++i)
      index_.emplace(graph.vertex_ids[i], static_cast<uint32_t>(i));
  }

  Embedding run() {
    const CorePtr core = elaborate(graph_.derivation);
    const auto [x, y] = graph_.distinguished;
    // x at the origin, y on the first axis at the target distance.
    Vec y0(dim_, 0.0);
    y0[0] = std::sqrt(graph_.target_sq.to_double());
    set_point(y, y0);
    place(core, "", x, y);
    compute_residuals();
    sweep_coincidences();
    return std::move(emb_);
  }

 private:
  static std::string join(const std::string& path, const std::string& segment) {
    return path.empty() ? segment : path + "/" + segment;
  }

  uint32_t index_of(const std::string& id) const {
    const auto it = index_.find(id);
    if (it == index_.end())
      throw std::logic_error("embed: graph does not match its derivation (no vertex '" + id +
                             "')");
    return it->second;
  }

  Vec point(uint32_t v) const {
    const double* p = emb_.point(v);
    return Vec(p, p + dim_);
  }

  void set_point(uint32_t v, const Vec& value) {
    std::copy(value.begin(), value.end(),
              emb_.coords.begin() + static_cast<size_t>(v) * dim_);
  }

  // Realize the layer for `node` across the already-placed host pair (u, v).
  void place(const CorePtr& node, const std::string& path, uint32_t u, uint32_t v) {
    switch (node->kind) {
      case CoreNode::Kind::Unit:
        return;
      case CoreNode::Kind::Bipyramid:
        place_two_apex(node, path, u, v);
        return;
      case CoreNode::Kind::Kite:
        place_kite(node, path, u, v);
        return;
    }
    throw std::logic_error("embed: unknown core node kind");
  }

  // Unit direction from X toward Y; the actual float separation in `len`.
  static Vec axis_of(const Vec& X, const Vec& Y, double& len) {
    Vec a(X.size());
    for (size_t c = 0; c < a.size(); ++c) a[c] = Y[c] - X[c];
    len = norm(a);
    if (len <= 0.0) throw PreconditionError("embed: coincident host pair");
    for (double& c : a) c /= len;
    return a;
  }

  void place_two_apex(const CorePtr& node, const std::string& path, uint32_t u, uint32_t v) {
    const int n = node->n;
    if (n != dim_) throw std::logic_error("embed: layer dimension differs from graph dimension");
    auto rng = layer_rng(seed_, path);
    const Vec X = point(u), Y = point(v);
    double rf = 0.0;
    const Vec axis = axis_of(X, Y, rf);

    // Regular simplex with side sqrt(d_sq) centered on the midpoint of the
    // apex axis, spanning a random orthonormal basis of the axis' orthogonal
    // complement.  Exactly e_sq = r_sq/4 + circumradius^2, so each simplex
    // vertex sits at distance sqrt(e_sq) from both apexes.
    std::vector<Vec> frame = {axis};
    std::vector<Vec> basis;
    for (int j = 0; j < n - 1; ++j) {
      basis.push_back(random_unit_orthogonal(rng, frame, n));
      frame.push_back(basis.back());
    }
    const double scale = std::sqrt(node->d_sq.to_double() / 2.0);
    const auto cols = helmert_columns(n);
    std::vector<uint32_t> p(n), q(n);
    for (int i = 0; i < n; ++i) {
      p[i] = index_of(join(path, "p" + std::to_string(i + 1)));
      q[i] = index_of(join(path, "q" + std::to_string(i + 1)));
    }
    for (int i = 0; i < n; ++i) {
      Vec pt(n);
      for (int c = 0; c < n; ++c) {
        pt[c] = 0.5 * (X[c] + Y[c]);
        for (int j = 0; j < n - 1; ++j) pt[c] += scale * cols[i][j] * basis[j][c];
      }
      set_point(p[i], pt);
    }

    // Mirrored apex: y rotated about x, in a random plane through the axis,
    // by the angle the tie distance dictates.
    const double cos_t =
        (Rational(1) - node->eps_sq / (Rational(2) * node->target_sq)).to_double();
    const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
    const Vec swing = random_unit_orthogonal(rng, {axis}, n);
    Vec Yt(n);
    for (int c = 0; c < n; ++c) Yt[c] = X[c] + rf * (cos_t * axis[c] + sin_t * swing[c]);
    const uint32_t yt = index_of(join(path, "yt"));
    set_point(yt, Yt);

    // Second simplex, centered on the rotated axis with its own random basis.
    double rt = 0.0;
    const Vec axis_t = axis_of(X, Yt, rt);
    frame = {axis_t};
    std::vector<Vec> basis_t;
    for (int j = 0; j < n - 1; ++j) {
      basis_t.push_back(random_unit_orthogonal(rng, frame, n));
      frame.push_back(basis_t.back());
    }
    for (int i = 0; i < n; ++i) {
      Vec pt(n);
      for (int c = 0; c < n; ++c) {
        pt[c] = 0.5 * (X[c] + Yt[c]);
        for (int j = 0; j < n - 1; ++j) pt[c] += scale * cols[i][j] * basis_t[j][c];
      }
      set_point(q[i], pt);
    }

    place(node->sub_eps, join(path, "tie"), v, yt);
    for (int i = 0; i < n; ++i) {
      const std::string is = std::to_string(i + 1);
      place(node->sub_e, join(path, "xp" + is), u, p[i]);
      place(node->sub_e, join(path, "yp" + is), v, p[i]);
      place(node->sub_e, join(path, "xq" + is), u, q[i]);
      place(node->sub_e, join(path, "tq" + is), yt, q[i]);
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const std::string ij = std::to_string(i + 1) + "-" + std::to_string(j + 1);
        place(node->sub_d, join(path, "pp" + ij), p[i], p[j]);
        place(node->sub_d, join(path, "qq" + ij), q[i], q[j]);
      }
  }

  void place_kite(const CorePtr& node, const std::string& path, uint32_t u, uint32_t v) {
    if (dim_ != 2) throw std::logic_error("embed: layer dimension differs from graph dimension");
    auto rng = layer_rng(seed_, path);
    const Vec X = point(u), Y = point(v);
    double sf = 0.0;
    const Vec axis = axis_of(X, Y, sf);

    // Anchor pair on the perpendicular bisector of the apex pair, on opposite
    // sides: heights h1, h2 with h1^2 = 11 d^2 - s^2/4, h2^2 = 3 d^2 - s^2/4,
    // so the anchors are sqrt(11) d / sqrt(3) d from both apexes and
    // h1 + h2 = 5 d apart.
    const double d2 = node->d_sq.to_double();
    const double h1 = std::sqrt(11.0 * d2 - 0.25 * sf * sf);
    const double h2 = std::sqrt(3.0 * d2 - 0.25 * sf * sf);
    const Vec w = random_unit_orthogonal(rng, {axis}, 2);
    const uint32_t p1 = index_of(join(path, "p1"));
    const uint32_t p2 = index_of(join(path, "p2"));
    const uint32_t q1 = index_of(join(path, "q1"));
    const uint32_t q2 = index_of(join(path, "q2"));
    set_point(p1, {0.5 * (X[0] + Y[0]) + h1 * w[0], 0.5 * (X[1] + Y[1]) + h1 * w[1]});
    set_point(p2, {0.5 * (X[0] + Y[0]) - h2 * w[0], 0.5 * (X[1] + Y[1]) - h2 * w[1]});

    // Mirrored apex: y rotated about x so that the tie |y yt| is the base d.
    const double cos_t =
        (Rational(1) - node->d_sq / (Rational(2) * node->target_sq)).to_double();
    const double sin_t = std::sqrt(std::max(0.0, 1.0 - cos_t * cos_t));
    const Vec swing = random_unit_orthogonal(rng, {axis}, 2);
    const Vec Yt = {X[0] + sf * (cos_t * axis[0] + sin_t * swing[0]),
                    X[1] + sf * (cos_t * axis[1] + sin_t * swing[1])};
    const uint32_t yt = index_of(join(path, "yt"));
    set_point(yt, Yt);

    double st = 0.0;
    const Vec axis_t = axis_of(X, Yt, st);
    const Vec wt = random_unit_orthogonal(rng, {axis_t}, 2);
    set_point(q1, {0.5 * (X[0] + Yt[0]) + h1 * wt[0], 0.5 * (X[1] + Yt[1]) + h1 * wt[1]});
    set_point(q2, {0.5 * (X[0] + Yt[0]) - h2 * wt[0], 0.5 * (X[1] + Yt[1]) - h2 * wt[1]});

    place(node->sub_base, join(path, "tie"), v, yt);
    place(node->sub_far, join(path, "xp1"), u, p1);
    place(node->sub_far, join(path, "yp1"), v, p1);
    place(node->sub_near, join(path, "xp2"), u, p2);
    place(node->sub_near, join(path, "yp2"), v, p2);
    place(node->sub_cross, join(path, "pp1-2"), p1, p2);
    place(node->sub_far, join(path, "xq1"), u, q1);
    place(node->sub_far, join(path, "tq1"), yt, q1);
    place(node->sub_near, join(path, "xq2"), u, q2);
    place(node->sub_near, join(path, "tq2"), yt, q2);
    place(node->sub_cross, join(path, "qq1-2"), q1, q2);
  }

  double squared_distance(uint32_t a, uint32_t b) const {
    const double* pa = emb_.point(a);
    const double* pb = emb_.point(b);
    double s = 0.0;
    for (int c = 0; c < dim_; ++c) {
      const double d = pa[c] - pb[c];
      s += d * d;
    }
    return s;
  }

  void compute_residuals() {
    double worst = 0.0;
    for (const auto& [a, b] : graph_.unit_edges)
      worst = std::max(worst, std::abs(squared_distance(a, b) - 1.0));
    emb_.max_edge_residual = worst;
    const auto& [x, y] = graph_.distinguished;
    emb_.target_residual = std::abs(squared_distance(x, y) - graph_.target_sq.to_double());
  }

  // Pairs closer than kCoincidenceTol, found by a sweep over the first
  // coordinate (a pair that close differs by at most that much in every
  // coordinate, so the sweep misses nothing).
  void sweep_coincidences() {
    const size_t nv = graph_.vertex_ids.size();
    std::vector<uint32_t> order(nv);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [this](uint32_t a, uint32_t b) {
      return emb_.point(a)[0] < emb_.point(b)[0];
    });
    for (size_t i = 0; i < nv; ++i) {
      for (size_t j = i + 1; j < nv; ++j) {
        if (emb_.point(order[j])[0] - emb_.point(order[i])[0] > kCoincidenceTol) break;
        const double d = std::sqrt(squared_distance(order[i], order[j]));
        if (d < kCoincidenceTol) {
          const auto [a, b] = std::minmax(order[i], order[j]);
          emb_.coincidences.push_back({a, b, d});
        }
      }
    }
  }

  const WitnessGraph& graph_;
  uint64_t seed_;
  int dim_;
  Embedding emb_;
  std::unordered_map<std::string, uint32_t> index_;
};

std::string format_double(double v) {
  std::ostringstream out;
  out << std::setprecision(8) << v;
  return out.str();
}

// Shared world-to-SVG mapping (flips the vertical axis).
struct Frame {
  double min_x = 0, min_y = 0, scale = 1, height = 0;
  double margin = 0;

  Frame(double lo_x, double hi_x, double lo_y, double hi_y, double width_px) {
    const double span_x = std::max(hi_x - lo_x, 1e-12);
    const double span_y = std::max(hi_y - lo_y, 1e-12);
    margin = 0.06 * std::max(span_x, span_y);
    min_x = lo_x - margin;
    min_y = lo_y - margin;
    scale = width_px / (span_x + 2 * margin);
    height = (span_y + 2 * margin) * scale;
  }
  double x(double wx) const { return (wx - min_x) * scale; }
  double y(double wy) const { return height - (wy - min_y) * scale; }
};

}  // namespace

TwoApexCoords simplex_apex_coords(int n, const Rational& d_sq, const Rational& e_sq) {
  if (n < 2) throw std::invalid_argument("simplex_apex_coords: n must be at least 2");
  if (!(d_sq > Rational(0)) || !(e_sq > Rational(0)))
    throw PreconditionError("simplex_apex_coords: squared distances must be positive");
  const Rational r_sq = Rational(4) * e_sq - Rational(2 * (n - 1), n) * d_sq;
  if (!(r_sq > Rational(0)))
    throw PreconditionError("simplex_apex_coords: apex does not span (2n*e_sq <= (n-1)*d_sq)");

  const double h = std::sqrt(r_sq.to_double()) / 2.0;
  const double scale = std::sqrt(d_sq.to_double() / 2.0);
  TwoApexCoords out;
  out.x.assign(n, 0.0);
  out.x[0] = h;
  out.y.assign(n, 0.0);
  out.y[0] = -h;
  out.y_mirror.assign(n, 0.0);
  out.y_mirror[0] = 3.0 * h;
  const auto cols = helmert_columns(n);
  out.simplex.assign(n, Vec(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n - 1; ++j) out.simplex[i][j + 1] = scale * cols[i][j];
  return out;
}

Embedding embed(const WitnessGraph& graph, uint64_t seed) {
  if (!graph.derivation)
    throw std::invalid_argument("embed: the witness graph carries no derivation");
  if (graph.dim < 2) throw std::invalid_argument("embed: dimension must be at least 2");
  return Placer(graph, seed).run();
}

std::vector<double> trilaterate(int dim, const std::vector<std::vector<double>>& anchors,
                                const std::vector<Rational>& sq_dists) {
  if (dim < 1) throw std::invalid_argument("trilaterate: dimension must be at least 1");
  const size_t m = static_cast<size_t>(dim) + 1;
  if (anchors.size() != m || sq_dists.size() != m)
    throw std::invalid_argument("trilaterate: need dim+1 anchors and squared distances");
  for (const auto& a : anchors) {
    if (a.size() != static_cast<size_t>(dim))
      throw std::invalid_argument("trilaterate: anchor has wrong dimension");
    for (const double c : a)
      if (!std::isfinite(c)) throw std::invalid_argument("trilaterate: non-finite anchor");
  }

  // Affine independence of the anchors is decided exactly on their dyadic
  // rational coordinates.
  {
    std::vector<std::vector<Rational>> exact(m);
    for (size_t i = 0; i < m; ++i)
      for (const double c : anchors[i]) exact[i].push_back(Rational::from_double(c));
    const auto spec = SquaredDistanceSpec::from_pairs(static_cast<int>(m), [&](int i, int j) {
      Rational s(0);
      for (int c = 0; c < dim; ++c) {
        const Rational d = exact[i][c] - exact[j][c];
        s = s + d * d;
      }
      return s;
    });
    if (affinely_dependent(spec, dim))
      throw PreconditionError("trilaterate: anchors are affinely dependent");
  }

  // Subtracting the first sphere equation from the others leaves a linear
  // system: 2(a_i - a_0) . x = |a_i|^2 - |a_0|^2 - (s_i - s_0).
  std::vector<Vec> A(dim, Vec(dim + 1, 0.0));
  const double s0 = sq_dists[0].to_double();
  double norm0 = dot(anchors[0], anchors[0]);
  double max_abs = 0.0;
  for (int i = 0; i < dim; ++i) {
    for (int c = 0; c < dim; ++c) {
      A[i][c] = 2.0 * (anchors[i + 1][c] - anchors[0][c]);
      max_abs = std::max(max_abs, std::abs(A[i][c]));
    }
    A[i][dim] = dot(anchors[i + 1], anchors[i + 1]) - norm0 -
                (sq_dists[i + 1].to_double() - s0);
  }
  if (max_abs == 0.0) throw PreconditionError("trilaterate: anchors are affinely dependent");

  for (int k = 0; k < dim; ++k) {
    int pivot = k;
    for (int i = k + 1; i < dim; ++i)
      if (std::abs(A[i][k]) > std::abs(A[pivot][k])) pivot = i;
    std::swap(A[k], A[pivot]);
    if (std::abs(A[k][k]) <= kPivotTol * max_abs)
      throw PreconditionError("trilaterate: anchor system is numerically singular");
    for (int i = k + 1; i < dim; ++i) {
      const double f = A[i][k] / A[k][k];
      for (int c = k; c <= dim; ++c) A[i][c] -= f * A[k][c];
    }
  }
  Vec x(dim, 0.0);
  for (int k = dim - 1; k >= 0; --k) {
    double s = A[k][dim];
    for (int c = k + 1; c < dim; ++c) s -= A[k][c] * x[c];
    x[k] = s / A[k][k];
  }

  // The linear system only encodes differences of the sphere equations; the
  // spheres themselves must still be checked.
  double worst = 0.0;
  for (size_t i = 0; i < m; ++i) {
    double d = 0.0;
    for (int c = 0; c < dim; ++c) {
      const double t = x[c] - anchors[i][c];
      d += t * t;
    }
    const double si = sq_dists[i].to_double();
    worst = std::max(worst, std::abs(d - si) / std::max(1.0, std::abs(si)));
  }
  if (worst > kFeasibilityTol)
    throw NoSolutionError("trilaterate: no point matches the distances (residual " +
                          format_double(worst) + ")");
  return x;
}

std::string render_svg(const WitnessGraph& graph, const Embedding& embedding) {
  if (graph.dim != 2 || embedding.dim != 2)
    throw std::invalid_argument("render_svg: only planar embeddings can be rendered");
  const size_t nv = graph.vertex_ids.size();
  if (embedding.coords.size() != nv * 2)
    throw std::invalid_argument("render_svg: embedding does not match the graph");

  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (size_t v = 0; v < nv; ++v) {
    const double* p = embedding.point(static_cast<uint32_t>(v));
    lo_x = std::min(lo_x, p[0]);
    hi_x = std::max(hi_x, p[0]);
    lo_y = std::min(lo_y, p[1]);
    hi_y = std::max(hi_y, p[1]);
  }
  const Frame frame(lo_x, hi_x, lo_y, hi_y, 840.0);

  std::ostringstream out;
  out << std::setprecision(8);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 840 "
      << format_double(frame.height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  out << "<g stroke=\"#46508c\" stroke-width=\"0.8\" stroke-opacity=\"0.55\">\n";
  for (const auto& [a, b] : graph.unit_edges) {
    const double* pa = embedding.point(a);
    const double* pb = embedding.point(b);
    out << "<line x1=\"" << frame.x(pa[0]) << "\" y1=\"" << frame.y(pa[1]) << "\" x2=\""
        << frame.x(pb[0]) << "\" y2=\"" << frame.y(pb[1]) << "\"/>\n";
  }
  out << "</g>\n";

  const auto& [dx, dy] = graph.distinguished;
  const double* px = embedding.point(dx);
  const double* py = embedding.point(dy);
  out << "<line x1=\"" << frame.x(px[0]) << "\" y1=\"" << frame.y(px[1]) << "\" x2=\""
      << frame.x(py[0]) << "\" y2=\"" << frame.y(py[1])
      << "\" stroke=\"#d62728\" stroke-width=\"1.6\" stroke-dasharray=\"6 4\"/>\n";

  out << "<g fill=\"#24282f\">\n";
  for (size_t v = 0; v < nv; ++v) {
    if (v == dx || v == dy) continue;
    const double* p = embedding.point(static_cast<uint32_t>(v));
    out << "<circle cx=\"" << frame.x(p[0]) << "\" cy=\"" << frame.y(p[1])
        << "\" r=\"1.8\"/>\n";
  }
  out << "</g>\n";
  for (const uint32_t v : {dx, dy}) {
    const double* p = embedding.point(v);
    out << "<circle cx=\"" << frame.x(p[0]) << "\" cy=\"" << frame.y(p[1])
        << "\" r=\"4\" fill=\"#d62728\"/>\n";
    out << "<text x=\"" << frame.x(p[0]) + 7 << "\" y=\"" << frame.y(p[1]) - 7
        << "\" font-family=\"sans-serif\" font-size=\"15\" fill=\"#d62728\">"
        << (v == dx ? "x" : "y") << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

PlanarSkeleton kite_skeleton(const Rational& d_sq) {
  if (!(d_sq > Rational(0)))
    throw PreconditionError("kite_skeleton: squared base distance must be positive");
  const double d2 = d_sq.to_double();
  const double s = std::sqrt(11.0 / 25.0 * d2);  // apex separation
  const double h1 = std::sqrt(11.0 * d2 - 0.25 * s * s);
  const double h2 = std::sqrt(3.0 * d2 - 0.25 * s * s);
  // Rotating y about x by the tie angle (cos = 1 - d^2/(2 s^2) = -3/22).
  const double cos_t = -3.0 / 22.0;
  const double sin_t = std::sqrt(1.0 - cos_t * cos_t);

  PlanarSkeleton sk;
  sk.labels = {"x", "y", "yt", "p1", "p2", "q1", "q2"};
  const std::array<double, 2> X{0.0, 0.0};
  const std::array<double, 2> Y{s, 0.0};
  const std::array<double, 2> Yt{s * cos_t, s * sin_t};
  const std::array<double, 2> M{s / 2.0, 0.0};
  const std::array<double, 2> Mt{Yt[0] / 2.0, Yt[1] / 2.0};
  const std::array<double, 2> w{0.0, -1.0};  // anchors of the first kite hang below
  const std::array<double, 2> wt{-Yt[1] / s, Yt[0] / s};
  sk.points = {X,
               Y,
               Yt,
               {M[0] + h1 * w[0], M[1] + h1 * w[1]},
               {M[0] - h2 * w[0], M[1] - h2 * w[1]},
               {Mt[0] + h1 * wt[0], Mt[1] + h1 * wt[1]},
               {Mt[0] - h2 * wt[0], Mt[1] - h2 * wt[1]}};
  sk.segments = {{0, 3, "far"},  {1, 3, "far"},  {0, 5, "far"},   {2, 5, "far"},
                 {0, 4, "near"}, {1, 4, "near"}, {0, 6, "near"},  {2, 6, "near"},
                 {3, 4, "cross"}, {5, 6, "cross"}, {1, 2, "tie"}};
  sk.distinguished = {0, 1};
  return sk;
}

std::string render_svg(const PlanarSkeleton& skeleton) {
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (const auto& p : skeleton.points) {
    lo_x = std::min(lo_x, p[0]);
    hi_x = std::max(hi_x, p[0]);
    lo_y = std::min(lo_y, p[1]);
    hi_y = std::max(hi_y, p[1]);
  }
  const Frame frame(lo_x, hi_x, lo_y, hi_y, 640.0);

  const auto color = [](const std::string& role) {
    if (role == "far") return "#1f77b4";
    if (role == "near") return "#2ca02c";
    if (role == "cross") return "#9467bd";
    return "#ff7f0e";  // tie
  };

  std::ostringstream out;
  out << std::setprecision(8);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 "
      << format_double(frame.height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  for (const auto& seg : skeleton.segments) {
    const auto& a = skeleton.points[seg.a];
    const auto& b = skeleton.points[seg.b];
    out << "<line x1=\"" << frame.x(a[0]) << "\" y1=\"" << frame.y(a[1]) << "\" x2=\""
        << frame.x(b[0]) << "\" y2=\"" << frame.y(b[1]) << "\" stroke=\"" << color(seg.role)
        << "\" stroke-width=\"2\"><title>" << seg.role << "</title></line>\n";
  }
  const auto& da = skeleton.points[skeleton.distinguished.first];
  const auto& db = skeleton.points[skeleton.distinguished.second];
  out << "<line x1=\"" << frame.x(da[0]) << "\" y1=\"" << frame.y(da[1]) << "\" x2=\""
      << frame.x(db[0]) << "\" y2=\"" << frame.y(db[1])
      << "\" stroke=\"#d62728\" stroke-width=\"2\" stroke-dasharray=\"7 5\"/>\n";
  for (size_t i = 0; i < skeleton.points.size(); ++i) {
    const auto& p = skeleton.points[i];
    out << "<circle cx=\"" << frame.x(p[0]) << "\" cy=\"" << frame.y(p[1])
        << "\" r=\"4\" fill=\"#24282f\"/>\n";
    out << "<text x=\"" << frame.x(p[0]) + 8 << "\" y=\"" << frame.y(p[1]) - 8
        << "\" font-family=\"sans-serif\" font-size=\"15\">" << skeleton.labels[i]
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace udwit
