#include "udwit/json_io.hpp"

#include <stdexcept>
#include <unordered_map>

namespace udwit {

namespace {

[[noreturn]] void fail(const std::string& why) {
  throw std::invalid_argument("witness_from_json: " + why);
}

std::string role_of(const std::string& id) {
  if (id == "x" || id == "y") return "distinguished";
  const size_t slash = id.rfind('/');
  const std::string leaf = slash == std::string::npos ? id : id.substr(slash + 1);
  if (leaf.rfind("yt", 0) == 0) return "mirror-apex";
  if (!leaf.empty() && leaf[0] == 'q') return "mirror-anchor";
  return "anchor";
}

const char* kind_name(DerivKind kind) {
  switch (kind) {
    case DerivKind::Unit: return "unit";
    case DerivKind::Bipyramid: return "bipyramid";
    case DerivKind::Stretch: return "stretch";
    case DerivKind::Rhombus: return "rhombus";
    case DerivKind::Kite: return "kite";
    case DerivKind::Shrink: return "shrink";
  }
  throw std::logic_error("derivation_to_json: unknown node kind");
}

DerivKind kind_from_name(const std::string& name) {
  if (name == "unit") return DerivKind::Unit;
  if (name == "bipyramid") return DerivKind::Bipyramid;
  if (name == "stretch") return DerivKind::Stretch;
  if (name == "rhombus") return DerivKind::Rhombus;
  if (name == "kite") return DerivKind::Kite;
  if (name == "shrink") return DerivKind::Shrink;
  fail("unknown derivation kind '" + name + "'");
}

Rational rational_field(const nlohmann::json& node, const char* field,
                        const Rational& fallback) {
  if (!node.contains(field)) return fallback;
  if (!node[field].is_string())
    fail(std::string("derivation field '") + field + "' must be a rational string");
  try {
    return Rational::from_string(node[field].get<std::string>());
  } catch (const std::invalid_argument&) {
    fail(std::string("derivation field '") + field + "' is not a valid rational");
  }
}

long integer_field(const nlohmann::json& node, const char* field, long fallback) {
  if (!node.contains(field)) return fallback;
  if (!node[field].is_number_integer())
    fail(std::string("derivation field '") + field + "' must be an integer");
  return node[field].get<long>();
}

DerivPtr derivation_node_from_json(const nlohmann::json& node, int depth) {
  if (depth > 4000) fail("derivation nesting too deep");
  if (!node.is_object()) fail("derivation nodes must be objects");
  if (!node.contains("kind") || !node["kind"].is_string())
    fail("derivation node missing string 'kind'");

  Derivation raw;
  raw.kind = kind_from_name(node["kind"].get<std::string>());
  raw.n = static_cast<int>(integer_field(node, "n", 0));
  raw.count = integer_field(node, "count", 0);
  raw.d_sq = rational_field(node, "d_sq", Rational(0));
  raw.e_sq = rational_field(node, "e_sq", Rational(0));
  raw.eps_sq = rational_field(node, "eps_sq", Rational(0));
  raw.target_sq = rational_field(node, "target_sq", Rational(1));
  if (node.contains("subs")) {
    if (!node["subs"].is_array()) fail("derivation field 'subs' must be an array");
    for (const auto& sub : node["subs"])
      raw.subs.push_back(derivation_node_from_json(sub, depth + 1));
  }
  return Derivation::make_raw(std::move(raw));
}

}  // namespace

nlohmann::ordered_json derivation_to_json(const DerivPtr& derivation) {
  if (!derivation) return nullptr;
  nlohmann::ordered_json node;
  node["kind"] = kind_name(derivation->kind);
  if (derivation->kind == DerivKind::Unit) return node;
  if (derivation->n != 0) node["n"] = derivation->n;
  if (derivation->count != 0) node["count"] = derivation->count;
  if (!derivation->d_sq.is_zero()) node["d_sq"] = derivation->d_sq.to_string();
  if (!derivation->e_sq.is_zero()) node["e_sq"] = derivation->e_sq.to_string();
  if (!derivation->eps_sq.is_zero()) node["eps_sq"] = derivation->eps_sq.to_string();
  node["target_sq"] = derivation->target_sq.to_string();
  nlohmann::ordered_json subs = nlohmann::ordered_json::array();
  for (const DerivPtr& sub : derivation->subs) subs.push_back(derivation_to_json(sub));
  node["subs"] = std::move(subs);
  return node;
}

DerivPtr derivation_from_json(const nlohmann::json& node) {
  const DerivPtr root = derivation_node_from_json(node, 0);
  const auto results = validate_derivation(root);
  if (!all_checks_pass(results)) {
    for (const auto& r : results)
      if (!r.pass) fail("derivation fails validation (" + r.node + ": " + r.check + ")");
  }
  return root;
}

nlohmann::ordered_json witness_to_json(const WitnessGraph& graph) {
  nlohmann::ordered_json doc;
  doc["format"] = "udwit-witness";
  doc["version"] = 1;
  doc["dimension"] = graph.dim;
  doc["target_sq"] = graph.target_sq.to_string();
  doc["distinguished"] = {graph.vertex_ids.at(graph.distinguished.first),
                          graph.vertex_ids.at(graph.distinguished.second)};
  nlohmann::ordered_json vertices = nlohmann::ordered_json::array();
  for (const std::string& id : graph.vertex_ids)
    vertices.push_back({{"id", id}, {"role", role_of(id)}});
  doc["vertices"] = std::move(vertices);
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& [a, b] : graph.unit_edges)
    edges.push_back({graph.vertex_ids.at(a), graph.vertex_ids.at(b)});
  doc["unit_edges"] = std::move(edges);
  doc["derivation"] = derivation_to_json(graph.derivation);
  return doc;
}

WitnessGraph witness_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) fail("document must be an object");
  if (doc.value("format", "") != std::string("udwit-witness")) fail("unknown format");
  if (doc.value("version", 0) != 1) fail("unsupported version");
  if (!doc.contains("dimension") || !doc["dimension"].is_number_integer())
    fail("missing integer 'dimension'");
  if (!doc.contains("target_sq") || !doc["target_sq"].is_string())
    fail("missing string 'target_sq'");
  if (!doc.contains("vertices") || !doc["vertices"].is_array()) fail("missing 'vertices'");
  if (!doc.contains("unit_edges") || !doc["unit_edges"].is_array())
    fail("missing 'unit_edges'");
  if (!doc.contains("distinguished") || !doc["distinguished"].is_array() ||
      doc["distinguished"].size() != 2)
    fail("missing two-element 'distinguished'");

  WitnessGraph graph;
  graph.dim = doc["dimension"].get<int>();
  if (graph.dim < 2) fail("dimension must be >= 2");
  graph.target_sq = Rational::from_string(doc["target_sq"].get<std::string>());

  std::unordered_map<std::string, uint32_t> index;
  for (const auto& v : doc["vertices"]) {
    if (!v.is_object() || !v.contains("id") || !v["id"].is_string())
      fail("vertices must be objects with a string 'id'");
    if (v.contains("role") && !v["role"].is_string()) fail("vertex 'role' must be a string");
    const std::string id = v["id"].get<std::string>();
    if (!index.emplace(id, static_cast<uint32_t>(graph.vertex_ids.size())).second)
      fail("duplicate vertex id '" + id + "'");
    graph.vertex_ids.push_back(id);
  }

  const auto lookup = [&](const nlohmann::json& v) -> uint32_t {
    if (!v.is_string()) fail("edge endpoints must be vertex ids");
    const auto it = index.find(v.get<std::string>());
    if (it == index.end()) fail("unknown vertex id '" + v.get<std::string>() + "'");
    return it->second;
  };

  for (const auto& e : doc["unit_edges"]) {
    if (!e.is_array() || e.size() != 2) fail("edges must be two-element arrays");
    uint32_t a = lookup(e[0]);
    uint32_t b = lookup(e[1]);
    if (a == b) fail("self-loop edge");
    if (a > b) std::swap(a, b);
    graph.unit_edges.emplace_back(a, b);
  }

  graph.distinguished = {lookup(doc["distinguished"][0]), lookup(doc["distinguished"][1])};

  const std::vector<std::string> problems = validate_witness(graph);
  if (!problems.empty()) fail("unsound graph: " + problems.front());

  if (doc.contains("derivation") && !doc["derivation"].is_null()) {
    graph.derivation = derivation_from_json(doc["derivation"]);
    // The derivation must regenerate the loaded graph verbatim; anything
    // else means the file was edited inconsistently.
    const WitnessGraph rebuilt = build_witness(graph.derivation);
    if (rebuilt.dim != graph.dim || rebuilt.target_sq != graph.target_sq ||
        rebuilt.vertex_ids != graph.vertex_ids || rebuilt.unit_edges != graph.unit_edges ||
        rebuilt.distinguished != graph.distinguished)
      fail("derivation does not regenerate the stored graph");
  }
  return graph;
}

}  // namespace udwit
