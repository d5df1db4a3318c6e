#pragma once

#include "subrepair/conflict.hpp"
#include "subrepair/dataset.hpp"
#include "subrepair/decompose.hpp"
#include "subrepair/rules.hpp"

#include <cstdint>
#include <unordered_map>
#include <vector>

namespace subrepair {

// Weight floor applied to the combined attribute weight.
inline constexpr double kWeightFloor = 0.1;
// Clamp range for the adaptive component weights before normalization.
inline constexpr double kComponentWeightMin = 0.1;
inline constexpr double kComponentWeightMax = 0.9;
// Neutral base for the coefficient-of-variation amplification.
inline constexpr double kComponentWeightBase = 0.5;

// Per-attribute weights blending rule frequency and value entropy:
//   w_i = alpha * f_i / max_j f_j  +  beta * H_i / sum_j H_j
// floored at kWeightFloor, with beta = 1 - alpha.
struct AttributeWeights {
    std::vector<double> cfd_part;
    std::vector<double> entropy_part;
    std::vector<double> combined;
    double alpha = 0.5;
    double beta = 0.5;
};

AttributeWeights compute_attribute_weights(const Dataset& dataset,
                                           const std::vector<CFDRule>& rules, double alpha);

// Shannon entropy of a column's raw string values (missing token counts as
// a value), natural log.
double attribute_entropy(const Dataset& dataset, int attr);

// Weighted similarity Sim(a, b) = sum_j w_j * s_j with
//   numeric:      s_j = 1 / (1 + |va - vb|)
//   categorical:  s_j = [cell_a == cell_b]
//   missing:      s_j = 1 when both cells missing, 0 when exactly one is.
double pair_similarity(int a, int b, const AttributeWeights& weights, const Dataset& dataset);

// Per-row density: sum of similarities to the K nearest pool rows.
// Neighbors come from the non-conflicting rows; when every row conflicts
// the whole dataset acts as the pool. A row never neighbors itself.
struct DensityTable {
    std::vector<double> rho;
    std::vector<std::vector<int>> neighbor_ids; // <= K per row
    int k = 0;
    std::vector<int> pool;
    bool pool_is_fallback = false; // true when no row was conflict-free
    int num_non_conflicting = 0;   // r = |I_R|
    int num_conflicting = 0;       // c = |I_C|
};

// `matrix_budget` caps the similarity-matrix cache at rows * pool entries;
// beyond it similarities are recomputed on demand with identical results.
DensityTable compute_density(const Dataset& dataset, const ConflictGraph& graph,
                             const AttributeWeights& weights, int k, int threads = 1,
                             std::uint64_t matrix_budget = 16u << 20);

// Adaptive density/conflict weights for one component, from the coefficient
// of variation of member densities and degrees. Cliques pin (1, 0).
struct ComponentWeights {
    double cv_density = 0.0;
    double cv_conflict = 0.0;
    double w_density = 0.5;
    double w_conflict = 0.5;
};

ComponentWeights component_weights(const Component& component, const DensityTable& density,
                                   const ConflictGraph& graph);

struct TupleScore {
    double rho = 0.0;
    int conflict_degree = 0;
    double penalty = 0.0; // w1 / (rho + eps) + w2 * conflict_degree
};

std::unordered_map<int, TupleScore> score_component(const Component& component,
                                                    const DensityTable& density,
                                                    const ConflictGraph& graph,
                                                    const ComponentWeights& weights,
                                                    double epsilon);

} // namespace subrepair
