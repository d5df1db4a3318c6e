#pragma once

#include "subrepair/dataset.hpp"
#include "subrepair/rules.hpp"

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

namespace subrepair {

// Per-attribute postings: value string -> ascending row ids. Missing cells
// are never indexed.
struct InvertedIndex {
    std::vector<std::unordered_map<std::string, std::vector<int>>> postings;

    const std::vector<int>* posting(int attr, const std::string& value) const {
        const auto& map = postings[attr];
        auto it = map.find(value);
        return it == map.end() ? nullptr : &it->second;
    }
};

// Undirected graph over conflicting row ids. Vertices are exactly the
// endpoints of edges; adjacency is symmetric with no self loops.
class ConflictGraph {
public:
    ConflictGraph() = default;

    // Normalizes pairs to u < v, sorts and deduplicates.
    static ConflictGraph from_edges(std::vector<std::pair<int, int>> edges);

    const std::vector<int>& vertices() const { return vertices_; }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    bool has_vertex(int v) const { return adjacency_.count(v) != 0; }
    int degree(int v) const;

    // Sorted neighbor list; empty for non-vertices.
    const std::vector<int>& neighbors(int v) const;

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    // Rows of the dataset that are not graph vertices (the non-conflicting
    // set).
    std::vector<int> non_conflicting(int row_count) const;

private:
    std::unordered_map<int, std::vector<int>> adjacency_;
    std::vector<std::pair<int, int>> edges_; // sorted, u < v
    std::vector<int> vertices_;              // sorted
};

// Work counters from one detection run.
struct DetectionStats {
    std::vector<int> candidate_set_sizes; // per row, C_i <= n-1
    std::uint64_t groups_checked = 0;     // group LHS evaluations
    std::uint64_t pairs_checked = 0;      // candidate pairs tested
};

InvertedIndex build_inverted_index(const Dataset& dataset);

// Rows k > row sharing at least one non-missing attribute value with row.
// Ascending, deduplicated.
std::vector<int> candidates_for(int row, const Dataset& dataset, const InvertedIndex& index);

// True iff the pair jointly violates some rule: both rows match the rule's
// LHS pattern with equal LHS values, and the pair fails the RHS pattern
// (unequal values under a wildcard, or either value off a constant).
// The LHS equality test runs once per group; evaluation stops at the first
// violating rule. Missing cells never satisfy LHS equality or constants.
bool pair_violates(int a, int b, const std::vector<RuleGroup>& groups,
                   const Dataset& dataset, DetectionStats* stats = nullptr);

struct DetectionResult {
    ConflictGraph graph;
    DetectionStats stats;
};

// Full conflict detection: inverted-index candidate generation with the
// k > i discipline, grouped rule checks, per-pair short circuit. The row
// loop may be sharded over `threads` workers; outputs are merged in row
// order so the result is independent of the thread count.
DetectionResult detect_conflicts(const Dataset& dataset, const std::vector<RuleGroup>& groups,
                                 int threads = 1);

} // namespace subrepair
