#pragma once

#include "subrepair/pipeline.hpp"

#include "json.hpp"

#include <string>

namespace subrepair {

// One `u v` line per edge, u < v, ascending.
std::string graph_dump(const ConflictGraph& graph);

// Detection + decomposition statistics (tuple count, edges, candidate set
// sizes, component size summary).
nlohmann::json stats_json(const PipelineResult& result);

// Plan with per-component strategy trace and the bound report.
nlohmann::json plan_json(const PipelineResult& result);

// Confusion metrics; timing-free so repeated runs are byte-identical.
nlohmann::json metrics_json(const RepairMetrics& metrics);

// Aligned Prec. / Rec. / F1 / retention table.
std::string metrics_table(const RepairMetrics& metrics);

nlohmann::json timings_json(const PipelineResult& result);

// `row_id,rho,conflict_degree,penalty` per row; penalty is blank for rows
// outside the conflict graph.
std::string scores_csv(const PipelineResult& result);

// Per-component weight/dispersion summary.
nlohmann::json components_json(const PipelineResult& result);

} // namespace subrepair
