#pragma once

#include <json.hpp>

#include "levylab/levy.hpp"

namespace levylab {

// {"a": ..., "sigma2": ..., "jumps": {"type": "exp", "p": ..., "q": ...}}
// "jumps" may be {"type": "none"} or absent; "mu" may be given instead of
// "a" to specify the process by its drift coefficient.
LevySpec spec_from_json(const nlohmann::json& j);
nlohmann::json spec_to_json(const LevySpec& spec);

} // namespace levylab
