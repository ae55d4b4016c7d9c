#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "gbfrs/evaluation.hpp"
#include "gbfrs/feature_selection.hpp"
#include "gbfrs/fuzzy_rough.hpp"
#include "gbfrs/granular_ball.hpp"

namespace gbfrs {

inline constexpr std::string_view kToolName = "gbfrs";
inline constexpr std::string_view kToolVersion = "0.1.0";

using nlohmann::json;

void to_json(json& j, const GranularBall& ball);
void to_json(json& j, const GranularBallSet& gbs);
void to_json(json& j, const DependencyResult& result);
void to_json(json& j, const SelectionTrace& trace);
void to_json(json& j, const ExperimentConfig& cfg);
void to_json(json& j, const CellStats& cell);
void to_json(json& j, const EvaluationReport& report);

/// Parses a ball set written by to_json and checks it against `ds`: member indices in range,
/// members forming a partition of the samples, center dimension matching.
GranularBallSet ball_set_from_json(const json& j, const Dataset& ds);

/// One row per cell, header first. Columns are stable; see README.
std::string report_csv(const EvaluationReport& report);

std::string sha256_hex(std::string_view bytes);
/// "sha256:<hex>" of the file contents.
std::string file_fingerprint(const std::string& path);

/// Reproducibility block embedded at the top of every output artifact.
json run_header(const json& effective_config, std::uint64_t master_seed, const std::string& dataset_fingerprint);

}  // namespace gbfrs
