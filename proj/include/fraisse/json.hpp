#pragma once

#include <json.hpp>

namespace fraisse {

// Insertion-ordered JSON keeps document round-trips and report hashing stable.
using json = nlohmann::ordered_json;

} // namespace fraisse
