#pragma once

#include "subrepair/conflict.hpp"

#include <vector>

namespace subrepair {

// Maximal connected subgraph of the conflict graph. Members are sorted;
// every member has at least one edge, so |members| >= 2.
struct Component {
    std::vector<int> members;
    int edge_count = 0;
    bool is_clique = false;
};

// Splits the graph into connected components with an explicit-stack DFS
// (no recursion, safe for long chains). Components are sorted by smallest
// member. Verifies that no edge crosses two components and throws
// InternalError otherwise.
std::vector<Component> decompose(const ConflictGraph& graph);

// Degree-only clique test: every member's degree equals |members| - 1.
bool is_clique(const Component& component, const ConflictGraph& graph);

} // namespace subrepair
