#pragma once

#include <json.hpp>

#include "zol/core/growth.hpp"
#include "zol/core/structure.hpp"

namespace zol::io {

using Json = nlohmann::json;

// {"id": 0, "arity": 2, "generators": [[1,0]]}
Json kinds_to_json(const KindSequence& sig);
KindSequence kinds_from_json(const Json& j);

// {"n": 3, "kinds": [...], "relations": {"0": [[1,2],[2,1]]}}
Json structure_to_json(const Structure& m);
/// Tuples are stored exactly as listed (no orbit closure); run
/// validate_structure afterwards.
Structure structure_from_json(const Json& j);

// {"mode": "default"} | {"mode": "constant", "h": 0.3} |
// {"mode": "table", "steps": [[n, h], ...]}
Json growth_to_json(const GrowthFunctions& gf);
GrowthFunctions growth_from_json(const Json& j);

std::string hex64(std::uint64_t v);

}  // namespace zol::io
