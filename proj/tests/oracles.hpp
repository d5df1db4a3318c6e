#pragma once

// Independent reference implementations used to freeze expected values.
// Deliberately unoptimized and structured differently from the library
// code paths they check.

#include "subrepair/conflict.hpp"
#include "subrepair/dataset.hpp"
#include "subrepair/rules.hpp"
#include "subrepair/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

// --- conflict detection: all pairs x all rules, no index, no grouping ---

inline bool rule_violated(int a, int b, const subrepair::CFDRule& rule,
                          const subrepair::Dataset& d) {
    for (int attr : rule.lhs) {
        if (d.is_missing(a, attr) || d.is_missing(b, attr)) return false;
        if (d.cell(a, attr) != d.cell(b, attr)) return false;
        const auto& pattern = rule.pattern.at(attr);
        if (!pattern.is_wildcard()) {
            if (d.cell(a, attr) != *pattern.constant) return false;
            if (d.cell(b, attr) != *pattern.constant) return false;
        }
    }
    for (int attr : rule.rhs) {
        const auto& pattern = rule.pattern.at(attr);
        if (pattern.is_wildcard()) {
            if (d.cell(a, attr) != d.cell(b, attr)) return true;
        } else {
            const bool a_ok = !d.is_missing(a, attr) && d.cell(a, attr) == *pattern.constant;
            const bool b_ok = !d.is_missing(b, attr) && d.cell(b, attr) == *pattern.constant;
            if (!a_ok || !b_ok) return true;
        }
    }
    return false;
}

inline std::vector<std::pair<int, int>> naive_detect(const subrepair::Dataset& d,
                                                     const std::vector<subrepair::CFDRule>& rules) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < d.row_count(); ++i) {
        for (int j = i + 1; j < d.row_count(); ++j) {
            for (const subrepair::CFDRule& rule : rules) {
                if (rule_violated(i, j, rule, d)) {
                    edges.emplace_back(i, j);
                    break;
                }
            }
        }
    }
    return edges;
}

// --- connected components: union-find ---

class UnionFind {
public:
    explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) { return parent_[x] == x ? x : parent_[x] = find(parent_[x]); }
    void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
    std::vector<int> parent_;
};

inline int component_count(const subrepair::ConflictGraph& graph, int n) {
    UnionFind uf(n);
    for (const auto& [u, v] : graph.edges()) uf.unite(u, v);
    std::set<int> roots;
    for (int v : graph.vertices()) roots.insert(uf.find(v));
    return static_cast<int>(roots.size());
}

// --- minimum-weight vertex cover: exhaustive over 2^k subsets ---

struct BruteCover {
    double cost = 0.0;
    std::vector<int> removal; // row ids, sorted
    bool unique = true;       // no other cover within 1e-9 of the optimum
};

inline BruteCover brute_force_min_cover(const std::vector<int>& vertices,
                                        const std::vector<double>& costs,
                                        const std::vector<std::pair<int, int>>& edges) {
    const int k = static_cast<int>(vertices.size());
    std::vector<std::pair<int, int>> local_edges;
    for (const auto& [u, v] : edges) {
        const int lu = static_cast<int>(std::find(vertices.begin(), vertices.end(), u) -
                                        vertices.begin());
        const int lv = static_cast<int>(std::find(vertices.begin(), vertices.end(), v) -
                                        vertices.begin());
        local_edges.emplace_back(lu, lv);
    }

    auto covers = [&](std::uint32_t mask) {
        for (const auto& [u, v] : local_edges)
            if (!((mask >> u) & 1) && !((mask >> v) & 1)) return false;
        return true;
    };
    auto mask_cost = [&](std::uint32_t mask) {
        double cost = 0.0;
        for (int b = 0; b < k; ++b)
            if ((mask >> b) & 1) cost += costs[b];
        return cost;
    };
    auto mask_set = [&](std::uint32_t mask) {
        std::vector<int> set;
        for (int b = 0; b < k; ++b)
            if ((mask >> b) & 1) set.push_back(vertices[b]);
        return set; // ascending: vertices sorted, bits scanned low to high
    };

    // Pass 1: optimum cost. Pass 2: all near-optimal covers; lexicographic
    // minimum among them, uniqueness flag.
    double min_cost = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask)
        if (covers(mask)) min_cost = std::min(min_cost, mask_cost(mask));

    BruteCover best;
    best.cost = min_cost;
    int near = 0;
    bool found = false;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        if (!covers(mask)) continue;
        if (mask_cost(mask) > min_cost + 1e-9) continue;
        ++near;
        std::vector<int> set = mask_set(mask);
        if (!found || set < best.removal) {
            best.removal = std::move(set);
            found = true;
        }
    }
    best.unique = near == 1;
    return best;
}

inline bool is_vertex_cover(const std::vector<int>& removal,
                            const std::vector<std::pair<int, int>>& edges) {
    std::set<int> in(removal.begin(), removal.end());
    for (const auto& [u, v] : edges)
        if (!in.count(u) && !in.count(v)) return false;
    return true;
}

// --- kNN density: full sort of every pool similarity per row ---

inline std::vector<double> knn_density(const subrepair::Dataset& d,
                                       const std::vector<int>& pool,
                                       const subrepair::AttributeWeights& weights, int k) {
    std::vector<double> rho(d.row_count(), 0.0);
    for (int r = 0; r < d.row_count(); ++r) {
        std::vector<std::pair<double, int>> sims;
        for (int p : pool) {
            if (p == r) continue;
            sims.emplace_back(subrepair::pair_similarity(r, p, weights, d), p);
        }
        std::sort(sims.begin(), sims.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        double sum = 0.0;
        for (int i = 0; i < std::min<int>(k, static_cast<int>(sims.size())); ++i)
            sum += sims[i].first;
        rho[r] = sum;
    }
    return rho;
}

// --- entropy in an arbitrary base (column of raw strings) ---

inline double entropy(const subrepair::Dataset& d, int attr, double base) {
    std::map<std::string, int> counts;
    for (int r = 0; r < d.row_count(); ++r) ++counts[d.cell(r, attr)];
    double h = 0.0;
    for (const auto& [value, count] : counts) {
        const double p = static_cast<double>(count) / d.row_count();
        h -= p * std::log(p) / std::log(base);
    }
    return h;
}

} // namespace oracle
