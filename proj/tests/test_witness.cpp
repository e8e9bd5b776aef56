#include "udwit/witness.hpp"

#include <set>
#include <stdexcept>

#include "doctest.h"
#include "udwit/json_io.hpp"

using udwit::build_witness;
using udwit::build_witness_full;
using udwit::Derivation;
using udwit::derive_membership;
using udwit::DerivPtr;
using udwit::Rational;
using udwit::validate_witness;
using udwit::witness_from_json;
using udwit::witness_stats;
using udwit::witness_to_dot;
using udwit::witness_to_json;
using udwit::WitnessConstruction;
using udwit::WitnessGraph;

TEST_CASE("unit witness is a single edge") {
  const WitnessGraph g = build_witness(Derivation::unit());
  CHECK(g.vertex_ids == std::vector<std::string>{"x", "y"});
  CHECK(g.unit_edges.size() == 1);
  CHECK(g.distinguished == std::pair<uint32_t, uint32_t>{0, 1});
  CHECK(g.target_sq == Rational(1));
  CHECK(g.dim == 2);
  CHECK(validate_witness(g).empty());
  CHECK(witness_stats(g).depth == 0);
}

TEST_CASE("pure two-apex witnesses have the expected exact sizes") {
  // One layer over unit ingredients: 2n + 3 vertices, 4n + n(n-1) + 1 edges.
  const DerivPtr u = Derivation::unit();
  struct Expected {
    int n;
    size_t vertices, edges;
  };
  for (const Expected& e : {Expected{2, 7, 11}, Expected{3, 9, 19}, Expected{4, 11, 29}}) {
    CAPTURE(e.n);
    const WitnessGraph g = build_witness(Derivation::bipyramid(e.n, u, u, u));
    CHECK(g.vertex_ids.size() == e.vertices);
    CHECK(g.unit_edges.size() == e.edges);
    CHECK(g.dim == e.n);
    CHECK(validate_witness(g).empty());
    CHECK(witness_stats(g).depth == 1);
  }
}

TEST_CASE("vertex ids follow the construction paths") {
  const DerivPtr u = Derivation::unit();
  const WitnessGraph g = build_witness(Derivation::bipyramid(2, u, u, u));
  CHECK(g.index_of("x") == 0);
  CHECK(g.index_of("y") == 1);
  CHECK_NOTHROW(g.index_of("yt"));
  CHECK_NOTHROW(g.index_of("p1"));
  CHECK_NOTHROW(g.index_of("q2"));
  CHECK_THROWS_AS(g.index_of("nope"), std::out_of_range);

  // A nested ingredient mints ids under its slot path.
  const DerivPtr stretched = Derivation::bipyramid(2, u, Derivation::stretch(2, 1, u), u);
  const WitnessGraph h = build_witness(stretched);
  CHECK_NOTHROW(h.index_of("xp1/yt"));
  CHECK_NOTHROW(h.index_of("tq2/q1"));
}

TEST_CASE("edges are normalized and deduplicated") {
  const WitnessGraph g = build_witness(derive_membership(3, 1, 0));
  std::set<std::pair<uint32_t, uint32_t>> seen;
  for (const auto& [a, b] : g.unit_edges) {
    CHECK(a < b);
    CHECK(seen.insert({a, b}).second);
  }
  CHECK(validate_witness(g).empty());
}

TEST_CASE("planar contraction witness: frozen size") {
  // Hand-derived occurrence counts: the sqrt(3) layer contributes (5, 11)
  // per splice, the sqrt(11) layer (45, 91), the doubled stretch (60, 121),
  // the 5d layer (620, 1241); the kite itself adds 5 fresh vertices over
  // x, y and splices 1 + 4 + 4 + 2 sub-witnesses.
  const WitnessConstruction c = build_witness_full(derive_membership(2, 1, 0));
  CHECK(c.graph.vertex_ids.size() == 1447);
  CHECK(c.graph.unit_edges.size() == 2891);
  CHECK(c.graph.dim == 2);
  CHECK(c.graph.target_sq == Rational(11, 25));
  CHECK(validate_witness(c.graph).empty());
  CHECK(witness_stats(c.graph).depth == 4);
}

TEST_CASE("contraction witness in dimension 3: frozen size") {
  const WitnessConstruction c = build_witness_full(derive_membership(3, 0, 1));
  CHECK(c.graph.vertex_ids.size() == 51);
  CHECK(c.graph.unit_edges.size() == 127);
  CHECK(c.graph.dim == 3);
  CHECK(c.graph.target_sq == Rational(4, 9));
  CHECK(validate_witness(c.graph).empty());
  CHECK(witness_stats(c.graph).depth == 2);
}

TEST_CASE("certified pairs pin the distinguished distance and stay consistent") {
  const WitnessConstruction c = build_witness_full(derive_membership(3, 0, 1));
  bool found = false;
  for (const udwit::CertifiedPair& p : c.pairs) {
    const auto [a, b] = std::minmax(c.graph.distinguished.first, c.graph.distinguished.second);
    if (p.a == a && p.b == b) {
      CHECK(p.phi_sq == c.graph.target_sq);
      found = true;
    }
  }
  CHECK(found);

  // One layer over units in the plane pins exactly 13 pairs:
  // 3 apex pairs + 4n apex-simplex pairs + 2*C(n,2) simplex sides, n = 2.
  const DerivPtr u = Derivation::unit();
  const WitnessConstruction flat = build_witness_full(Derivation::bipyramid(2, u, u, u));
  CHECK(flat.pairs.size() == 13);
}

TEST_CASE("certified tuples are exactly flat configurations") {
  for (const DerivPtr& d : {derive_membership(2, 1, 0), derive_membership(3, 0, 1)}) {
    const WitnessConstruction c = build_witness_full(d);
    CHECK(!c.tuples.empty());
    for (const udwit::CertifiedTuple& t : c.tuples) {
      CHECK(t.points.size() == static_cast<size_t>(c.graph.dim) + 2);
      CHECK(t.points.size() == static_cast<size_t>(t.spec.point_count()));
      CHECK(udwit::cm_determinant(t.spec).is_zero());
    }
  }
  // Two tuples per construction layer: the apex pair and its mirror.
  const DerivPtr u = Derivation::unit();
  CHECK(build_witness_full(Derivation::bipyramid(3, u, u, u)).tuples.size() == 2);
}

TEST_CASE("mixed-dimension derivations are rejected") {
  const DerivPtr planar = derive_membership(2, 1, 0);  // argues in R^2
  const DerivPtr mixed = Derivation::bipyramid(3, planar, planar, planar);
  CHECK_THROWS_AS(build_witness(mixed), std::invalid_argument);
  CHECK_THROWS_AS(build_witness(nullptr), std::invalid_argument);
}

TEST_CASE("witness JSON round-trip") {
  const WitnessGraph g = build_witness(derive_membership(3, 1, 0));
  const nlohmann::ordered_json doc = witness_to_json(g);
  CHECK(doc["format"] == "udwit-witness");
  CHECK(doc["version"] == 1);
  CHECK(doc["dimension"] == 3);
  CHECK(doc["target_sq"] == "8/3");
  CHECK(doc["vertices"][0]["id"] == "x");
  CHECK(doc["vertices"][0]["role"] == "distinguished");
  CHECK(doc["derivation"]["kind"] == "stretch");

  const WitnessGraph h = witness_from_json(doc);
  CHECK(h.dim == g.dim);
  CHECK(h.target_sq == g.target_sq);
  CHECK(h.vertex_ids == g.vertex_ids);
  CHECK(h.unit_edges == g.unit_edges);
  CHECK(h.distinguished == g.distinguished);
  REQUIRE(h.derivation != nullptr);
  CHECK(h.derivation->target_sq == g.derivation->target_sq);
  CHECK(witness_stats(h).depth == 1);
  CHECK(validate_witness(h).empty());
  // Re-serialization is bit-identical.
  CHECK(witness_to_json(h) == doc);

  // Vertex roles cover every minted kind.
  std::vector<std::string> roles;
  for (const auto& v : doc["vertices"]) roles.push_back(v["role"].get<std::string>());
  CHECK(std::count(roles.begin(), roles.end(), "distinguished") == 2);
  CHECK(std::count(roles.begin(), roles.end(), "mirror-apex") == 1);
  CHECK(std::count(roles.begin(), roles.end(), "anchor") == 3);
  CHECK(std::count(roles.begin(), roles.end(), "mirror-anchor") == 3);
}

TEST_CASE("witness JSON without a derivation still loads") {
  nlohmann::ordered_json doc = witness_to_json(build_witness(derive_membership(2, 0, 1)));
  doc["derivation"] = nullptr;
  const WitnessGraph h = witness_from_json(doc);
  CHECK(h.derivation == nullptr);
  CHECK(witness_stats(h).depth == -1);
  CHECK(h.vertex_ids.size() == 7);
}

TEST_CASE("witness JSON carries a usable derivation for layered witnesses") {
  const WitnessGraph g = build_witness(derive_membership(2, 0, 2));
  const WitnessGraph h = witness_from_json(witness_to_json(g));
  REQUIRE(h.derivation != nullptr);
  CHECK(h.vertex_ids == g.vertex_ids);
  CHECK(build_witness(h.derivation).unit_edges == g.unit_edges);
}

TEST_CASE("witness JSON rejects malformed documents") {
  const nlohmann::ordered_json good = witness_to_json(build_witness(Derivation::unit()));

  nlohmann::ordered_json bad = good;
  bad["format"] = "something-else";
  CHECK_THROWS_AS(witness_from_json(bad), std::invalid_argument);

  bad = good;
  bad["version"] = 2;
  CHECK_THROWS_AS(witness_from_json(bad), std::invalid_argument);

  bad = good;
  bad.erase("target_sq");
  CHECK_THROWS_AS(witness_from_json(bad), std::invalid_argument);

  bad = good;
  bad["unit_edges"] = {{"x", "ghost"}};
  CHECK_THROWS_AS(witness_from_json(bad), std::invalid_argument);

  bad = good;
  bad["unit_edges"] = {{"x", "x"}};
  CHECK_THROWS_AS(witness_from_json(bad), std::invalid_argument);

  // Bare-string vertices (the pre-role form) are rejected.
  bad = good;
  bad["vertices"] = {"x", "y"};
  CHECK_THROWS_AS(witness_from_json(bad), std::invalid_argument);

  bad = good;
  bad["vertices"] = {{{"id", "x"}, {"role", "distinguished"}},
                     {{"id", "x"}, {"role", "distinguished"}}};
  CHECK_THROWS_AS(witness_from_json(bad), std::invalid_argument);

  // Disconnected graph: structurally rejected on load.
  bad = good;
  bad["vertices"] = {{{"id", "x"}, {"role", "distinguished"}},
                     {{"id", "y"}, {"role", "distinguished"}},
                     {{"id", "lonely"}, {"role", "anchor"}}};
  CHECK_THROWS_AS(witness_from_json(bad), std::invalid_argument);
}

TEST_CASE("witness JSON rejects inconsistent derivations") {
  const nlohmann::ordered_json good = witness_to_json(build_witness(derive_membership(2, 0, 1)));

  // A derivation that fails its own invariants (count no longer matches the
  // claimed target).
  nlohmann::ordered_json bad = good;
  bad["derivation"]["count"] = 2;
  CHECK_THROWS_AS(witness_from_json(bad), std::invalid_argument);

  // A sound derivation that does not regenerate the stored graph.
  bad = good;
  bad["derivation"] = witness_to_json(build_witness(derive_membership(2, 0, 2)))["derivation"];
  CHECK_THROWS_AS(witness_from_json(bad), std::invalid_argument);

  // Unknown node kinds and malformed fields are named.
  bad = good;
  bad["derivation"]["kind"] = "teleport";
  CHECK_THROWS_AS(witness_from_json(bad), std::invalid_argument);
  bad = good;
  bad["derivation"]["target_sq"] = 3;
  CHECK_THROWS_AS(witness_from_json(bad), std::invalid_argument);
}

TEST_CASE("validate_witness flags structural problems") {
  WitnessGraph g = build_witness(Derivation::unit());
  SUBCASE("clean") { CHECK(validate_witness(g).empty()); }
  SUBCASE("duplicate edge") {
    g.unit_edges.push_back(g.unit_edges.front());
    CHECK(!validate_witness(g).empty());
  }
  SUBCASE("unit target with extra vertices") {
    g.vertex_ids.push_back("extra");
    CHECK(!validate_witness(g).empty());  // unit shape + connectivity
  }
  SUBCASE("self loop") {
    g.unit_edges.push_back({0, 0});
    CHECK(!validate_witness(g).empty());
  }
  SUBCASE("distinguished collapsed") {
    g.distinguished = {1, 1};
    CHECK(!validate_witness(g).empty());
  }
}

TEST_CASE("dot rendering") {
  const WitnessGraph g = build_witness(Derivation::unit());
  const std::string dot = witness_to_dot(g);
  CHECK(dot.find("graph witness {") != std::string::npos);
  CHECK(dot.find("v0 -- v1;") != std::string::npos);
  CHECK(dot.find("color=red") != std::string::npos);
  // Unit edges render solid; the distinguished pair renders dashed.
  CHECK(dot.find("style=dashed") != std::string::npos);
  CHECK(dot.find("v0 -- v1 [style=dashed") != std::string::npos);
}
