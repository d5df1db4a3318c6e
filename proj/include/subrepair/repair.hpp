#pragma once

#include "subrepair/conflict.hpp"
#include "subrepair/dataset.hpp"
#include "subrepair/decompose.hpp"
#include "subrepair/scoring.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace subrepair {

enum class Algorithm { PPIS, MICO };

enum class Strategy {
    CliqueRetain, // keep the densest member, remove the rest
    PPIS,         // greedy maximal independent set by ascending penalty
    MicoOptimal,  // exact cover proven optimal within the budget
    MicoFeasible, // budget expired with an incumbent
    MicoFallback  // no usable solve; PPIS result used
};

std::string strategy_name(Strategy s);

struct RepairConfig {
    Algorithm algorithm = Algorithm::PPIS;
    double epsilon = 1e-6;           // shared by penalty and cover costs
    std::int64_t time_limit_ms = 10000; // per-component MICO budget
    int threads = 1;
};

// Minimum-weight vertex cover instance for one component. Costs invert the
// penalty so high-penalty tuples are cheap to remove:
//   Cost(v) = P_max - penalty(v) + eps  (> 0, min cost = eps).
struct CoverModel {
    std::vector<int> vertices; // sorted row ids
    std::unordered_map<int, double> costs;
    std::vector<std::pair<int, int>> edges; // within component, u < v
    std::int64_t time_budget_ms = 0;
};

CoverModel build_cover_model(const Component& component,
                             const std::unordered_map<int, TupleScore>& scores,
                             const ConflictGraph& graph, double epsilon,
                             std::int64_t time_budget_ms);

// Sum of model costs over a removal set.
double cover_objective(const CoverModel& model, const std::vector<int>& removal);

// Clique rule: retain the single densest member (ties to the lowest row
// id), remove the others.
std::vector<int> repair_clique(const Component& component, const DensityTable& density);

// Greedy maximal independent set in ascending penalty order (ties to the
// lower row id); the removal set is the complement, a vertex cover.
std::vector<int> repair_ppis(const Component& component,
                             const std::unordered_map<int, TupleScore>& scores,
                             const ConflictGraph& graph);

// Exact branch-and-bound weighted cover solve under a wall-clock budget,
// seeded with the PPIS cover. Equal-cost optima resolve to the
// lexicographically smallest removal set. Every failure path degrades to
// the PPIS result (MicoFallback).
std::pair<std::vector<int>, Strategy> repair_mico(const Component& component,
                                                  const std::unordered_map<int, TupleScore>& scores,
                                                  const ConflictGraph& graph,
                                                  std::int64_t time_budget_ms,
                                                  double epsilon = 1e-6);

struct ComponentTrace {
    int component_id = 0;
    Strategy strategy = Strategy::PPIS;
    std::vector<int> local_removal;
    double objective_value = 0.0; // sum of cover costs over the removal
    ComponentWeights weights;
    int size = 0;
    bool is_clique = false;
};

struct RepairPlan {
    std::vector<int> removal_set;  // I_n, sorted
    std::vector<int> retained_set; // I_S = all rows minus removal, sorted
    std::vector<ComponentTrace> per_component;
};

// Full per-component repair: cliques always use the clique rule, other
// components the configured algorithm. Components may be solved on
// `config.threads` workers; the merged plan is identical either way.
// Throws InternalError if the removal fails to cover some conflict edge.
RepairPlan repair(const Dataset& dataset, const ConflictGraph& graph,
                  const std::vector<Component>& components, const DensityTable& density,
                  const RepairConfig& config);

// Diagnostic approximation-bound report; never alters the plan.
struct BoundReport {
    double eta = 0.0;
    double ratio_bound = 1.0;
    int k = 0;
    int r = 0; // non-conflicting row count
    int c = 0; // conflicting row count
    double rho_max = 0.0;
    double rho_min = 0.0;
    double rho_small = 0.0;
    double w1 = 1.0;
};

BoundReport approximation_bound(const RepairPlan& plan, const DensityTable& density,
                                const ConflictGraph& graph, double w1_aggregate, int k,
                                double epsilon);

} // namespace subrepair
