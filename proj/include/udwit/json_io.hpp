#pragma once

#include "json.hpp"
#include "udwit/derivation.hpp"
#include "udwit/witness.hpp"

namespace udwit {

// Serialization schema ("udwit-witness", version 1):
// {
//   "format": "udwit-witness",
//   "version": 1,
//   "dimension": <int>,
//   "target_sq": "<p/q>",
//   "distinguished": ["<id>", "<id>"],
//   "vertices": [{"id": "<id>", "role": "<role>"}, ...],
//   "unit_edges": [["<id>", "<id>"], ...],
//   "derivation": <recursive node> | null
// }
// Roles are derived from the construction ids: the two root vertices are
// "distinguished", minted mirror apexes are "mirror-apex", and the anchor
// vertices of each layer are "anchor" / "mirror-anchor".
//
// Derivation nodes: {"kind": "unit"} or {"kind": <str>, "n": <int>,
// "count": <int>, "d_sq"/"e_sq"/"eps_sq"/"target_sq": "<p/q>",
// "subs": [...]} with zero fields omitted.
nlohmann::ordered_json witness_to_json(const WitnessGraph& graph);
nlohmann::ordered_json derivation_to_json(const DerivPtr& derivation);

// Throws std::invalid_argument on schema violations, naming the offending
// field.  Loaded graphs are re-validated structurally; a loaded derivation
// is re-validated (every construction invariant, exactly) and must
// regenerate the loaded graph verbatim.
WitnessGraph witness_from_json(const nlohmann::json& doc);
DerivPtr derivation_from_json(const nlohmann::json& node);

}  // namespace udwit
