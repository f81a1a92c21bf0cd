#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cusptorsion/torsion.hpp"

namespace cusptorsion::report {

/// %.17g, which round-trips every double. Non-finite values throw.
std::string format_double(double v);

/// Compact JSON with sorted keys and format_double for every float.
std::string dump(const nlohmann::json& value);

nlohmann::json to_json(const torsion::TorsionReport& r);

/// Flattens nested objects to dotted names; arrays get their index as a segment.
std::vector<std::pair<std::string, std::string>> flatten(const nlohmann::json& value);

/// "name,value" rows with a header line.
std::string to_csv(const nlohmann::json& value);

}  // namespace cusptorsion::report
