#pragma once

#include "subrepair/conflict.hpp"
#include "subrepair/dataset.hpp"
#include "subrepair/decompose.hpp"
#include "subrepair/evaluate.hpp"
#include "subrepair/repair.hpp"
#include "subrepair/rules.hpp"
#include "subrepair/scoring.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace subrepair {

struct RunConfig {
    std::string data_path;
    std::string rules_path;
    std::optional<std::string> labels_path;
    std::optional<std::string> labels_col;
    Algorithm algorithm = Algorithm::PPIS;
    int k = 3;
    double alpha = 0.5;
    double epsilon = 1e-6;
    std::int64_t time_limit_ms = 10000;
    std::string output_dir;
    std::uint64_t seed = 0;
    int threads = 1;
    std::vector<std::string> exclude_cols;
    std::string missing_token;

    void validate() const; // k >= 1, alpha in (0,1), epsilon > 0
};

// Everything one run produces; detection-only runs leave the repair parts
// empty.
struct PipelineResult {
    RunConfig config;
    Dataset dataset;
    std::optional<GroundTruth> truth;
    std::vector<CFDRule> rules;
    std::vector<RuleGroup> groups;
    DetectionResult detection;
    std::vector<Component> components;
    AttributeWeights weights;
    DensityTable density;
    RepairPlan plan;
    BoundReport bound;
    std::optional<RepairMetrics> metrics;
    std::map<std::string, double> timings_ms;
};

// detect -> decompose on data already in memory.
PipelineResult run_detection(Dataset dataset, std::vector<CFDRule> rules,
                             const RunConfig& config);

// Full detect -> decompose -> score -> repair -> evaluate pass.
PipelineResult run_repair_pipeline(Dataset dataset, std::vector<CFDRule> rules,
                                   std::optional<GroundTruth> truth, const RunConfig& config);

// File-loading front ends used by the CLI.
PipelineResult run_detection_from_files(const RunConfig& config);
PipelineResult run_repair_from_files(const RunConfig& config);

// Mean of per-component density weights; 1.0 when there is no component.
double aggregate_density_weight(const RepairPlan& plan);

} // namespace subrepair
