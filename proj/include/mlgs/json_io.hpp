#pragma once

#include <string>

#include <json.hpp>

#include "mlgs/exact_oracle.hpp"
#include "mlgs/samplers.hpp"

namespace mlgs {

// Stable JSON shapes consumed by the CLI and the python bindings' smoke
// tests. Counts and concentrations are arrays indexed 0..15 for types 1..16.
nlohmann::json to_json(const QueryStats& s);
nlohmann::json to_json(const ConcentrationEstimate& e);
nlohmann::json to_json(const GroundTruth& t);
nlohmann::json to_json(const BoundDiagnostics& d);

QueryStats query_stats_from_json(const nlohmann::json& j);
ConcentrationEstimate estimate_from_json(const nlohmann::json& j);
GroundTruth ground_truth_from_json(const nlohmann::json& j);

void write_json_file(const nlohmann::json& j, const std::string& path);
nlohmann::json read_json_file(const std::string& path);

} // namespace mlgs
