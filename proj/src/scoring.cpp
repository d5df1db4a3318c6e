#include "subrepair/scoring.hpp"

#include "subrepair/errors.hpp"
#include "subrepair/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace subrepair {

double attribute_entropy(const Dataset& dataset, int attr) {
    const int n = dataset.row_count();
    if (n == 0) return 0.0;
    std::unordered_map<std::string, int> counts;
    for (int r = 0; r < n; ++r) ++counts[dataset.cell(r, attr)];
    double h = 0.0;
    for (const auto& [value, count] : counts) {
        const double p = static_cast<double>(count) / n;
        h -= p * std::log(p);
    }
    return h;
}

AttributeWeights compute_attribute_weights(const Dataset& dataset,
                                           const std::vector<CFDRule>& rules, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw Error("alpha must lie in (0, 1)");
    const int d = dataset.attribute_count();
    AttributeWeights w;
    w.alpha = alpha;
    w.beta = 1.0 - alpha;
    w.cfd_part.assign(d, 0.0);
    w.entropy_part.assign(d, 0.0);
    w.combined.assign(d, 0.0);

    const std::vector<int> freq = attribute_cfd_frequency(rules, d);
    const int max_f = freq.empty() ? 0 : *std::max_element(freq.begin(), freq.end());
    if (max_f > 0)
        for (int i = 0; i < d; ++i)
            w.cfd_part[i] = alpha * static_cast<double>(freq[i]) / max_f;

    std::vector<double> entropy(d, 0.0);
    double entropy_sum = 0.0;
    for (int i = 0; i < d; ++i) {
        entropy[i] = attribute_entropy(dataset, i);
        entropy_sum += entropy[i];
    }
    if (entropy_sum > 0.0)
        for (int i = 0; i < d; ++i)
            w.entropy_part[i] = w.beta * entropy[i] / entropy_sum;

    for (int i = 0; i < d; ++i)
        w.combined[i] = std::max(w.cfd_part[i] + w.entropy_part[i], kWeightFloor);
    return w;
}

double pair_similarity(int a, int b, const AttributeWeights& weights, const Dataset& dataset) {
    double sim = 0.0;
    for (int j = 0; j < dataset.attribute_count(); ++j) {
        const bool miss_a = dataset.is_missing(a, j);
        const bool miss_b = dataset.is_missing(b, j);
        double s;
        if (miss_a || miss_b) {
            s = (miss_a && miss_b) ? 1.0 : 0.0;
        } else if (dataset.attribute(j).kind == Kind::Numeric) {
            s = 1.0 / (1.0 + std::abs(dataset.numeric_value(a, j) - dataset.numeric_value(b, j)));
        } else {
            s = dataset.cell(a, j) == dataset.cell(b, j) ? 1.0 : 0.0;
        }
        sim += weights.combined[j] * s;
    }
    return sim;
}

DensityTable compute_density(const Dataset& dataset, const ConflictGraph& graph,
                             const AttributeWeights& weights, int k, int threads,
                             std::uint64_t matrix_budget) {
    if (k < 1) throw Error("neighbor count k must be >= 1");
    const int n = dataset.row_count();
    if (n < 2) throw EmptyPoolError("density needs at least 2 rows, got " + std::to_string(n));

    DensityTable table;
    table.k = k;
    table.num_conflicting = static_cast<int>(graph.vertex_count());
    table.num_non_conflicting = n - table.num_conflicting;

    table.pool = graph.non_conflicting(n);
    if (table.pool.empty()) {
        // Every row conflicts; fall back to the full dataset as the pool.
        table.pool.resize(n);
        for (int r = 0; r < n; ++r) table.pool[r] = r;
        table.pool_is_fallback = true;
    }

    const std::size_t pool_size = table.pool.size();
    table.rho.assign(n, 0.0);
    table.neighbor_ids.assign(n, {});

    // Optional cache of all row x pool similarities.
    std::vector<double> matrix;
    const bool use_matrix =
        static_cast<std::uint64_t>(n) * pool_size <= matrix_budget && pool_size > 0;
    if (use_matrix) {
        matrix.resize(static_cast<std::size_t>(n) * pool_size);
        parallel_chunks(n, threads, [&](int, int begin, int end) {
            for (int r = begin; r < end; ++r)
                for (std::size_t p = 0; p < pool_size; ++p)
                    matrix[static_cast<std::size_t>(r) * pool_size + p] =
                        pair_similarity(r, table.pool[p], weights, dataset);
        });
    }

    parallel_chunks(n, threads, [&](int, int begin, int end) {
        std::vector<std::pair<double, int>> sims; // (similarity, pool row id)
        for (int r = begin; r < end; ++r) {
            sims.clear();
            for (std::size_t p = 0; p < pool_size; ++p) {
                const int other = table.pool[p];
                if (other == r) continue;
                const double s = use_matrix
                    ? matrix[static_cast<std::size_t>(r) * pool_size + p]
                    : pair_similarity(r, other, weights, dataset);
                sims.emplace_back(s, other);
            }
            const std::size_t take = std::min<std::size_t>(k, sims.size());
            std::partial_sort(sims.begin(), sims.begin() + take, sims.end(),
                              [](const auto& a, const auto& b) {
                                  if (a.first != b.first) return a.first > b.first;
                                  return a.second < b.second; // tie: lower row id
                              });
            double rho = 0.0;
            auto& neighbors = table.neighbor_ids[r];
            neighbors.reserve(take);
            for (std::size_t i = 0; i < take; ++i) {
                rho += sims[i].first;
                neighbors.push_back(sims[i].second);
            }
            table.rho[r] = rho;
        }
    });
    return table;
}

namespace {

// Coefficient of variation with population standard deviation; 0 when the
// mean vanishes.
double coefficient_of_variation(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    if (mean == 0.0) return 0.0;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    return std::sqrt(var) / mean;
}

} // namespace

ComponentWeights component_weights(const Component& component, const DensityTable& density,
                                   const ConflictGraph& graph) {
    ComponentWeights w;
    if (component.is_clique) {
        // All degrees equal inside a clique; only density can discriminate.
        w.w_density = 1.0;
        w.w_conflict = 0.0;
        return w;
    }
    std::vector<double> densities, degrees;
    densities.reserve(component.members.size());
    degrees.reserve(component.members.size());
    for (int v : component.members) {
        densities.push_back(density.rho[v]);
        degrees.push_back(static_cast<double>(graph.degree(v)));
    }
    w.cv_density = coefficient_of_variation(densities);
    w.cv_conflict = coefficient_of_variation(degrees);

    const double raw_d = kComponentWeightBase * (1.0 + w.cv_density);
    const double raw_c = kComponentWeightBase * (1.0 + w.cv_conflict);
    const double clamped_d = std::clamp(raw_d, kComponentWeightMin, kComponentWeightMax);
    const double clamped_c = std::clamp(raw_c, kComponentWeightMin, kComponentWeightMax);
    w.w_density = clamped_d / (clamped_d + clamped_c);
    w.w_conflict = clamped_c / (clamped_d + clamped_c);
    return w;
}

std::unordered_map<int, TupleScore> score_component(const Component& component,
                                                    const DensityTable& density,
                                                    const ConflictGraph& graph,
                                                    const ComponentWeights& weights,
                                                    double epsilon) {
    if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
    std::unordered_map<int, TupleScore> scores;
    scores.reserve(component.members.size());
    for (int v : component.members) {
        TupleScore s;
        s.rho = density.rho[v];
        s.conflict_degree = graph.degree(v);
        s.penalty = weights.w_density / (s.rho + epsilon) +
                    weights.w_conflict * s.conflict_degree;
        scores[v] = s;
    }
    return scores;
}

} // namespace subrepair
