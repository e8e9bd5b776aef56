#include "udwit/witness.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace udwit {

namespace {

// The single ambient dimension used by every node of the elaborated
// derivation (planar steps count as 2).  Mixed dimensions are rejected: a
// witness forces its distance only against embeddings into the dimension
// its construction layers argue in.
int uniform_dimension(const CorePtr& root) {
  int dim = 0;  // 0 = no construction layer seen yet
  std::vector<const CoreNode*> stack = {root.get()};
  std::unordered_set<const CoreNode*> seen;
  while (!stack.empty()) {
    const CoreNode* cur = stack.back();
    stack.pop_back();
    if (!cur || !seen.insert(cur).second) continue;
    if (cur->kind != CoreNode::Kind::Unit) {
      const int node_dim = cur->kind == CoreNode::Kind::Kite ? 2 : cur->n;
      if (dim == 0) dim = node_dim;
      if (node_dim != dim)
        throw std::invalid_argument("build_witness: derivation mixes ambient dimensions");
    }
    for (const CorePtr* s : {&cur->sub_d, &cur->sub_e, &cur->sub_eps, &cur->sub_base,
                             &cur->sub_near, &cur->sub_far, &cur->sub_cross})
      if (*s) stack.push_back(s->get());
  }
  return dim == 0 ? 2 : dim;
}

class Builder {
 public:
  WitnessConstruction run(const DerivPtr& derivation) {
    const CorePtr core = elaborate(derivation);
    out_.graph.dim = uniform_dimension(core);
    out_.graph.target_sq = derivation->target_sq;
    out_.graph.derivation = derivation;
    const uint32_t x = mint_vertex("x");
    const uint32_t y = mint_vertex("y");
    out_.graph.distinguished = {x, y};
    place(core, "", x, y);
    for (const auto& [key, phi] : pair_map_)
      out_.pairs.push_back({key.first, key.second, phi});
    return std::move(out_);
  }

 private:
  static std::string join(const std::string& path, const std::string& segment) {
    return path.empty() ? segment : path + "/" + segment;
  }

  uint32_t mint_vertex(const std::string& id) {
    const auto [it, inserted] = index_.emplace(id, out_.graph.vertex_ids.size());
    if (!inserted) throw std::logic_error("build_witness: duplicate vertex id " + id);
    out_.graph.vertex_ids.push_back(id);
    return static_cast<uint32_t>(it->second);
  }

  void add_edge(uint32_t a, uint32_t b) {
    if (a > b) std::swap(a, b);
    out_.graph.unit_edges.emplace_back(a, b);
  }

  void certify(uint32_t a, uint32_t b, const Rational& phi_sq) {
    if (a > b) std::swap(a, b);
    const auto [it, inserted] = pair_map_.emplace(std::make_pair(a, b), phi_sq);
    if (!inserted && it->second != phi_sq)
      throw std::logic_error("build_witness: conflicting certified distances on one pair");
  }

  // Splice the sub-construction realizing `node` across the host pair (u, v).
  void place(const CorePtr& node, const std::string& path, uint32_t u, uint32_t v) {
    switch (node->kind) {
      case CoreNode::Kind::Unit:
        certify(u, v, Rational(1));
        add_edge(u, v);
        return;
      case CoreNode::Kind::Bipyramid:
        place_two_apex(node, path, u, v);
        return;
      case CoreNode::Kind::Kite:
        place_kite(node, path, u, v);
        return;
    }
    throw std::logic_error("build_witness: unknown core node kind");
  }

  void place_two_apex(const CorePtr& node, const std::string& path, uint32_t u, uint32_t v) {
    const int n = node->n;
    certify(u, v, node->target_sq);

    const uint32_t yt = mint_vertex(join(path, "yt"));
    std::vector<uint32_t> p(n), q(n);
    for (int i = 0; i < n; ++i) p[i] = mint_vertex(join(path, "p" + std::to_string(i + 1)));
    for (int i = 0; i < n; ++i) q[i] = mint_vertex(join(path, "q" + std::to_string(i + 1)));

    certify(u, yt, node->target_sq);
    certify(v, yt, node->eps_sq);
    for (int i = 0; i < n; ++i) {
      certify(u, p[i], node->e_sq);
      certify(v, p[i], node->e_sq);
      certify(u, q[i], node->e_sq);
      certify(yt, q[i], node->e_sq);
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        certify(p[i], p[j], node->d_sq);
        certify(q[i], q[j], node->d_sq);
      }

    const SquaredDistanceSpec layer =
        bipyramid_spec(n, node->d_sq, node->e_sq, node->target_sq);
    std::vector<uint32_t> tuple = {u};
    tuple.insert(tuple.end(), p.begin(), p.end());
    tuple.push_back(v);
    out_.tuples.push_back({tuple, layer});
    std::vector<uint32_t> mirrored = {u};
    mirrored.insert(mirrored.end(), q.begin(), q.end());
    mirrored.push_back(yt);
    out_.tuples.push_back({mirrored, layer});

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
    certify(u, v, node->target_sq);

    const uint32_t yt = mint_vertex(join(path, "yt"));
    const uint32_t p1 = mint_vertex(join(path, "p1"));
    const uint32_t p2 = mint_vertex(join(path, "p2"));
    const uint32_t q1 = mint_vertex(join(path, "q1"));
    const uint32_t q2 = mint_vertex(join(path, "q2"));

    const Rational far = Rational(11) * node->d_sq;
    const Rational near = Rational(3) * node->d_sq;
    const Rational cross = Rational(25) * node->d_sq;
    certify(u, yt, node->target_sq);
    certify(v, yt, node->d_sq);
    certify(u, p1, far);
    certify(v, p1, far);
    certify(u, p2, near);
    certify(v, p2, near);
    certify(p1, p2, cross);
    certify(u, q1, far);
    certify(yt, q1, far);
    certify(u, q2, near);
    certify(yt, q2, near);
    certify(q1, q2, cross);

    const SquaredDistanceSpec layer = kite_spec(node->d_sq, node->target_sq);
    out_.tuples.push_back({{u, p1, p2, v}, layer});
    out_.tuples.push_back({{u, q1, q2, yt}, layer});

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

  WitnessConstruction out_;
  std::unordered_map<std::string, size_t> index_;
  std::map<std::pair<uint32_t, uint32_t>, Rational> pair_map_;
};

}  // namespace

uint32_t WitnessGraph::index_of(std::string_view id) const {
  for (size_t i = 0; i < vertex_ids.size(); ++i)
    if (vertex_ids[i] == id) return static_cast<uint32_t>(i);
  throw std::out_of_range("WitnessGraph::index_of: no vertex '" + std::string(id) + "'");
}

WitnessConstruction build_witness_full(const DerivPtr& derivation) {
  if (!derivation) throw std::invalid_argument("build_witness: null derivation");
  return Builder{}.run(derivation);
}

WitnessGraph build_witness(const DerivPtr& derivation) {
  return build_witness_full(derivation).graph;
}

WitnessStats witness_stats(const WitnessGraph& graph) {
  WitnessStats stats;
  stats.vertex_count = graph.vertex_ids.size();
  stats.edge_count = graph.unit_edges.size();
  stats.depth = graph.derivation ? derivation_depth(elaborate(graph.derivation)) : -1;
  return stats;
}

std::vector<std::string> validate_witness(const WitnessGraph& graph) {
  std::vector<std::string> problems;
  const size_t n = graph.vertex_ids.size();
  if (n < 2) problems.push_back("graph has fewer than two vertices");

  std::unordered_set<std::string> ids;
  for (const std::string& id : graph.vertex_ids) {
    if (id.empty()) problems.push_back("empty vertex id");
    if (!ids.insert(id).second) problems.push_back("duplicate vertex id '" + id + "'");
  }

  std::set<std::pair<uint32_t, uint32_t>> edges;
  std::vector<uint32_t> component(n, 0);
  for (const auto& [a, b] : graph.unit_edges) {
    if (a >= n || b >= n) {
      problems.push_back("edge endpoint out of range");
      continue;
    }
    if (a == b) problems.push_back("self-loop on '" + graph.vertex_ids[a] + "'");
    if (a > b) problems.push_back("edge endpoints not normalized (first < second)");
    const auto key = std::minmax(a, b);
    if (!edges.insert({key.first, key.second}).second)
      problems.push_back("duplicate edge " + graph.vertex_ids[a] + " -- " +
                         graph.vertex_ids[b]);
  }

  const auto& [dx, dy] = graph.distinguished;
  if (dx >= n || dy >= n)
    problems.push_back("distinguished pair out of range");
  else if (dx == dy)
    problems.push_back("distinguished pair is a single vertex");

  if (graph.target_sq == Rational(1) &&
      !(n == 2 && graph.unit_edges.size() == 1))
    problems.push_back("unit target must be witnessed by exactly one edge on two vertices");

  // Connectivity (union-find).
  if (n >= 1) {
    std::vector<uint32_t> parent(n);
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<uint32_t>(i);
    const auto find = [&parent](uint32_t a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (const auto& [a, b] : graph.unit_edges)
      if (a < n && b < n) parent[find(a)] = find(b);
    for (size_t i = 1; i < n; ++i)
      if (find(static_cast<uint32_t>(i)) != find(0)) {
        problems.push_back("graph is not connected");
        break;
      }
  }
  return problems;
}

std::string witness_to_dot(const WitnessGraph& graph) {
  std::ostringstream out;
  out << "graph witness {\n";
  out << "  // forces squared distance " << graph.target_sq.to_string()
      << " between the distinguished pair in R^" << graph.dim << "\n";
  out << "  node [shape=point, width=0.06];\n";
  for (size_t i = 0; i < graph.vertex_ids.size(); ++i) {
    out << "  v" << i << " [tooltip=\"" << graph.vertex_ids[i] << "\"";
    if (i == graph.distinguished.first || i == graph.distinguished.second)
      out << ", color=red, width=0.12";
    out << "];\n";
  }
  for (const auto& [a, b] : graph.unit_edges) out << "  v" << a << " -- v" << b << ";\n";
  out << "  v" << graph.distinguished.first << " -- v" << graph.distinguished.second
      << " [style=dashed, color=red, constraint=false];\n";
  out << "}\n";
  return out.str();
}

}  // namespace udwit
