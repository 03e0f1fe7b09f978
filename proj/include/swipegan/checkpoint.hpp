#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "swipegan/matrix.hpp"

namespace swipegan {

using ParamMap = std::vector<std::pair<std::string, Matrix*>>;

// {"version":1, "shapes":{name:[rows,cols]}, "values":{name:[...]}}
nlohmann::ordered_json checkpoint_to_json(const ParamMap& params);

// Loads into an already-shaped parameter map; every name must be present with
// matching shape.
void checkpoint_from_json(const nlohmann::json& j, const ParamMap& params);

}  // namespace swipegan
