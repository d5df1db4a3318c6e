#include "subrepair/pipeline.hpp"

#include "subrepair/errors.hpp"

#include <chrono>

namespace subrepair {

namespace {

class PhaseTimer {
public:
    explicit PhaseTimer(std::map<std::string, double>& sink) : sink_(sink) {}

    template <typename Fn>
    auto time(const std::string& phase, Fn&& fn) {
        const auto start = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            record(phase, start);
        } else {
            auto result = fn();
            record(phase, start);
            return result;
        }
    }

private:
    void record(const std::string& phase, std::chrono::steady_clock::time_point start) {
        const auto elapsed = std::chrono::steady_clock::now() - start;
        sink_[phase] =
            std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(elapsed)
                .count();
    }

    std::map<std::string, double>& sink_;
};

} // namespace

void RunConfig::validate() const {
    if (k < 1) throw Error("k must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error("alpha must lie in (0, 1)");
    if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
}

PipelineResult run_detection(Dataset dataset, std::vector<CFDRule> rules,
                             const RunConfig& config) {
    config.validate();
    PipelineResult result;
    result.config = config;
    result.dataset = std::move(dataset);
    result.rules = std::move(rules);
    PhaseTimer timer(result.timings_ms);

    result.groups = group_rules(result.rules);
    result.detection = timer.time("detect", [&] {
        return detect_conflicts(result.dataset, result.groups, config.threads);
    });
    result.components =
        timer.time("decompose", [&] { return decompose(result.detection.graph); });
    return result;
}

PipelineResult run_repair_pipeline(Dataset dataset, std::vector<CFDRule> rules,
                                   std::optional<GroundTruth> truth, const RunConfig& config) {
    PipelineResult result = run_detection(std::move(dataset), std::move(rules), config);
    result.truth = std::move(truth);
    PhaseTimer timer(result.timings_ms);

    timer.time("score", [&] {
        result.weights = compute_attribute_weights(result.dataset, result.rules, config.alpha);
        if (result.dataset.row_count() >= 2) {
            result.density = compute_density(result.dataset, result.detection.graph,
                                             result.weights, config.k, config.threads);
        } else {
            result.density.rho.assign(result.dataset.row_count(), 0.0);
            result.density.k = config.k;
        }
    });

    RepairConfig repair_config;
    repair_config.algorithm = config.algorithm;
    repair_config.epsilon = config.epsilon;
    repair_config.time_limit_ms = config.time_limit_ms;
    repair_config.threads = config.threads;
    result.plan = timer.time("repair", [&] {
        return repair(result.dataset, result.detection.graph, result.components,
                      result.density, repair_config);
    });
    result.bound = approximation_bound(result.plan, result.density, result.detection.graph,
                                       aggregate_density_weight(result.plan), config.k,
                                       config.epsilon);

    if (result.truth) {
        result.metrics = evaluate(result.plan, *result.truth);
        for (const auto& [phase, ms] : result.timings_ms)
            result.metrics->runtime_ms[phase] = ms;
    }
    return result;
}

namespace {

struct LoadedInputs {
    Dataset dataset;
    std::optional<GroundTruth> truth;
    std::vector<CFDRule> rules;
};

LoadedInputs load_inputs(const RunConfig& config) {
    LoadedInputs inputs;
    LoadedTable table =
        load_table(config.data_path, config.missing_token, config.exclude_cols,
                   config.labels_col);
    inputs.dataset = std::move(table.dataset);
    inputs.truth = std::move(table.truth);
    if (config.labels_path)
        inputs.truth = load_ground_truth(*config.labels_path, inputs.dataset);
    inputs.rules = parse_rules(config.rules_path, inputs.dataset);
    return inputs;
}

} // namespace

PipelineResult run_detection_from_files(const RunConfig& config) {
    LoadedInputs inputs = load_inputs(config);
    return run_detection(std::move(inputs.dataset), std::move(inputs.rules), config);
}

PipelineResult run_repair_from_files(const RunConfig& config) {
    LoadedInputs inputs = load_inputs(config);
    return run_repair_pipeline(std::move(inputs.dataset), std::move(inputs.rules),
                               std::move(inputs.truth), config);
}

double aggregate_density_weight(const RepairPlan& plan) {
    if (plan.per_component.empty()) return 1.0;
    double sum = 0.0;
    for (const ComponentTrace& trace : plan.per_component) sum += trace.weights.w_density;
    return sum / static_cast<double>(plan.per_component.size());
}

} // namespace subrepair
