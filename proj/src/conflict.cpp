#include "subrepair/conflict.hpp"

#include "subrepair/errors.hpp"
#include "subrepair/parallel.hpp"

#include <algorithm>

namespace subrepair {

ConflictGraph ConflictGraph::from_edges(std::vector<std::pair<int, int>> edges) {
    ConflictGraph g;
    for (auto& [u, v] : edges) {
        if (u == v) throw InternalError("conflict graph edge is a self loop");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    g.edges_ = std::move(edges);

    for (const auto& [u, v] : g.edges_) {
        g.adjacency_[u].push_back(v);
        g.adjacency_[v].push_back(u);
    }
    g.vertices_.reserve(g.adjacency_.size());
    for (auto& [v, nbrs] : g.adjacency_) {
        std::sort(nbrs.begin(), nbrs.end());
        g.vertices_.push_back(v);
    }
    std::sort(g.vertices_.begin(), g.vertices_.end());
    return g;
}

int ConflictGraph::degree(int v) const {
    auto it = adjacency_.find(v);
    return it == adjacency_.end() ? 0 : static_cast<int>(it->second.size());
}

const std::vector<int>& ConflictGraph::neighbors(int v) const {
    static const std::vector<int> empty;
    auto it = adjacency_.find(v);
    return it == adjacency_.end() ? empty : it->second;
}

std::vector<int> ConflictGraph::non_conflicting(int row_count) const {
    std::vector<int> rows;
    rows.reserve(row_count - vertices_.size());
    auto it = vertices_.begin();
    for (int r = 0; r < row_count; ++r) {
        while (it != vertices_.end() && *it < r) ++it;
        if (it == vertices_.end() || *it != r) rows.push_back(r);
    }
    return rows;
}

InvertedIndex build_inverted_index(const Dataset& dataset) {
    InvertedIndex index;
    index.postings.resize(dataset.attribute_count());
    for (int c = 0; c < dataset.attribute_count(); ++c) {
        auto& map = index.postings[c];
        for (int r = 0; r < dataset.row_count(); ++r) {
            if (dataset.is_missing(r, c)) continue;
            map[dataset.cell(r, c)].push_back(r); // ascending by construction
        }
    }
    return index;
}

std::vector<int> candidates_for(int row, const Dataset& dataset, const InvertedIndex& index) {
    std::vector<int> candidates;
    for (int c = 0; c < dataset.attribute_count(); ++c) {
        if (dataset.is_missing(row, c)) continue;
        const std::vector<int>* posting = index.posting(c, dataset.cell(row, c));
        if (!posting) continue;
        auto it = std::upper_bound(posting->begin(), posting->end(), row);
        candidates.insert(candidates.end(), it, posting->end());
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    return candidates;
}

namespace {

// LHS values equal on every attribute of the group key; missing never equal.
bool lhs_pairwise_equal(int a, int b, const std::vector<int>& lhs_key, const Dataset& dataset) {
    for (int attr : lhs_key) {
        if (dataset.is_missing(a, attr) || dataset.is_missing(b, attr)) return false;
        if (dataset.cell(a, attr) != dataset.cell(b, attr)) return false;
    }
    return true;
}

bool violates_rule(int a, int b, const CFDRule& rule, const Dataset& dataset) {
    // Pairwise LHS equality already holds via the group check; only the
    // constant bindings remain (row a's value stands for both).
    for (int attr : rule.lhs) {
        const PatternCell& cell = rule.pattern.at(attr);
        if (!cell.is_wildcard() && *cell.constant != dataset.cell(a, attr)) return false;
    }
    for (int attr : rule.rhs) {
        const PatternCell& cell = rule.pattern.at(attr);
        if (cell.is_wildcard()) {
            if (dataset.cell(a, attr) != dataset.cell(b, attr)) return true;
        } else {
            if (dataset.is_missing(a, attr) || dataset.is_missing(b, attr)) return true;
            if (*cell.constant != dataset.cell(a, attr)) return true;
            if (*cell.constant != dataset.cell(b, attr)) return true;
        }
    }
    return false;
}

} // namespace

bool pair_violates(int a, int b, const std::vector<RuleGroup>& groups,
                   const Dataset& dataset, DetectionStats* stats) {
    for (const RuleGroup& group : groups) {
        if (stats) ++stats->groups_checked;
        if (!lhs_pairwise_equal(a, b, group.lhs_key, dataset)) continue;
        for (const CFDRule& rule : group.rules) {
            if (violates_rule(a, b, rule, dataset)) return true;
        }
    }
    return false;
}

DetectionResult detect_conflicts(const Dataset& dataset, const std::vector<RuleGroup>& groups,
                                 int threads) {
    const int n = dataset.row_count();
    DetectionResult result;
    result.stats.candidate_set_sizes.assign(n, 0);
    if (n == 0 || groups.empty()) {
        result.graph = ConflictGraph::from_edges({});
        return result;
    }

    const InvertedIndex index = build_inverted_index(dataset);

    const int chunks = chunk_count(n, threads);
    std::vector<std::vector<std::pair<int, int>>> edge_buffers(chunks);
    std::vector<DetectionStats> stat_buffers(chunks);

    parallel_chunks(n, threads, [&](int chunk, int begin, int end) {
        DetectionStats& stats = stat_buffers[chunk];
        auto& edges = edge_buffers[chunk];
        for (int i = begin; i < end; ++i) {
            const std::vector<int> candidates = candidates_for(i, dataset, index);
            result.stats.candidate_set_sizes[i] = static_cast<int>(candidates.size());
            stats.pairs_checked += candidates.size();
            for (int j : candidates) {
                if (pair_violates(i, j, groups, dataset, &stats)) edges.emplace_back(i, j);
            }
        }
    });

    std::vector<std::pair<int, int>> edges;
    for (auto& buffer : edge_buffers)
        edges.insert(edges.end(), buffer.begin(), buffer.end());
    for (const DetectionStats& stats : stat_buffers) {
        result.stats.groups_checked += stats.groups_checked;
        result.stats.pairs_checked += stats.pairs_checked;
    }
    result.graph = ConflictGraph::from_edges(std::move(edges));
    return result;
}

} // namespace subrepair
