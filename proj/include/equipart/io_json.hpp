#pragma once

#include <string>

#include <json.hpp>

#include "equipart/frames.hpp"
#include "equipart/measures.hpp"
#include "equipart/solver.hpp"

namespace equipart {

// Row-major nested-array view of a frame matrix, for debugging dumps.
nlohmann::json matrix_to_json(const SquareMatrix& m);

// Measure files: {"format_version":1, "dim":n, "points":[[...],...],
// "weights":[...] (optional, default all 1), "bandwidth":e (optional, default 0)}.
// Violations are rejected with a diagnostic naming the offending field.
nlohmann::json measure_to_json(const MassDistribution& mu);
MassDistribution measure_from_json(const nlohmann::json& j);
MassDistribution load_measure(const std::string& path);
void save_measure(const MassDistribution& mu, const std::string& path);

nlohmann::json report_to_json(const SolveReport& rep);
SolveReport report_from_json(const nlohmann::json& j);
SolveReport load_report(const std::string& path);
void save_report(const SolveReport& rep, const std::string& path);

}  // namespace equipart
