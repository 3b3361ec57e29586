#pragma once

#include <string>

#include "stackgame/model.hpp"

namespace stackgame {

// Scenario document layout:
//   {
//     "resources": <positive integer>,
//     "targets": [
//       { "name": "...", "reward_defender": x, "cost_defender": x,
//         "reward_attacker": x, "cost_attacker": x },
//       ...
//     ]
//   }
// The schema is closed: unknown keys anywhere are an error, every key is
// required, and every error message names the offending field. The parsed
// scenario is validated before it is returned.

// Parses a scenario from JSON text. Throws GameError (InvalidArgument) on
// malformed JSON or schema violations, plus whatever validate_scenario
// raises on bad values.
Scenario parse_scenario(const std::string& json_text);

// Reads and parses a scenario file; IoFailure when the file can't be read.
Scenario load_scenario(const std::string& path);

}  // namespace stackgame
