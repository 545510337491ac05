#ifndef KWAY_TOOLS_REPORT_HPP
#define KWAY_TOOLS_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "kway/graph.hpp"
#include "kway/pipeline.hpp"

namespace kway::tools {

inline constexpr int kReportVersion = 1;

// JSON document for one pipeline run. Every expansion and Rayleigh value is
// recomputable from the listed sets/supports and the input graph. Only the
// "wall_time_seconds" field varies between identical runs.
nlohmann::json report_json(const WeightedGraph& g, const PipelineReport& rep,
                           const std::vector<std::string>* labels = nullptr);

// Per-trial metrics as CSV with a header row.
std::string trials_csv(const PipelineReport& rep);

}  // namespace kway::tools

#endif  // KWAY_TOOLS_REPORT_HPP
