#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "udwit/cayley_menger.hpp"
#include "udwit/derivation.hpp"
#include "udwit/rational.hpp"

namespace udwit {

// A finite unit-distance graph that forces its distinguished pair of
// vertices to lie at distance sqrt(target_sq) in every embedding of the
// graph into R^dim with all edges of length 1.
struct WitnessGraph {
  int dim = 2;
  Rational target_sq{1};
  std::vector<std::string> vertex_ids;                    // unique, creation order
  std::vector<std::pair<uint32_t, uint32_t>> unit_edges;  // index pairs, first < second
  std::pair<uint32_t, uint32_t> distinguished{0, 1};
  DerivPtr derivation;  // null when the graph was loaded without one

  uint32_t index_of(std::string_view id) const;  // throws std::out_of_range
};

// A pair of vertices whose squared distance is pinned exactly by the
// construction.
struct CertifiedPair {
  uint32_t a = 0, b = 0;  // a < b
  Rational phi_sq{0};
};

// A full point configuration placed by one construction layer, together
// with its exact squared-distance data.  Every tuple has dim + 2 points and
// a vanishing bordered determinant.
struct CertifiedTuple {
  std::vector<uint32_t> points;
  SquaredDistanceSpec spec;
};

struct WitnessConstruction {
  WitnessGraph graph;
  std::vector<CertifiedPair> pairs;
  std::vector<CertifiedTuple> tuples;
};

// Materializes the derivation: every construction layer mints fresh
// vertices, and every ingredient distance is realized by splicing a fresh
// copy of the ingredient's own witness across the corresponding vertex
// pair.  Throws std::invalid_argument if the derivation mixes ambient
// dimensions.
WitnessConstruction build_witness_full(const DerivPtr& derivation);
WitnessGraph build_witness(const DerivPtr& derivation);

struct WitnessStats {
  size_t vertex_count = 0;
  size_t edge_count = 0;
  long depth = -1;  // longest construction chain; -1 when no derivation is attached
};
WitnessStats witness_stats(const WitnessGraph& graph);

// Structural sanity: unique nonempty ids, edges in range and deduplicated,
// no self-loops, distinguished pair valid, graph connected, and the unit
// target realized by exactly one edge on two vertices.  Returns
// human-readable problems (empty = sound).
std::vector<std::string> validate_witness(const WitnessGraph& graph);

// Graphviz rendering (undirected; distinguished pair highlighted).
std::string witness_to_dot(const WitnessGraph& graph);

}  // namespace udwit
