#include "subrepair/decompose.hpp"

#include "subrepair/errors.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace subrepair {

bool is_clique(const Component& component, const ConflictGraph& graph) {
    const int want = static_cast<int>(component.members.size()) - 1;
    for (int v : component.members)
        if (graph.degree(v) != want) return false;
    return true;
}

std::vector<Component> decompose(const ConflictGraph& graph) {
    std::vector<Component> components;
    std::unordered_set<int> visited;
    visited.reserve(graph.vertex_count());

    for (int start : graph.vertices()) {
        if (visited.count(start)) continue;

        Component comp;
        std::vector<int> stack{start};
        visited.insert(start);
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            comp.members.push_back(v);
            for (int u : graph.neighbors(v)) {
                if (visited.insert(u).second) stack.push_back(u);
            }
        }
        std::sort(comp.members.begin(), comp.members.end());
        int degree_sum = 0;
        for (int v : comp.members) degree_sum += graph.degree(v);
        comp.edge_count = degree_sum / 2;
        comp.is_clique = is_clique(comp, graph);
        components.push_back(std::move(comp));
    }
    std::sort(components.begin(), components.end(),
              [](const Component& a, const Component& b) {
                  return a.members.front() < b.members.front();
              });

    // Subproblem independence: an edge crossing two components would break
    // every per-component solve downstream.
    std::unordered_map<int, int> component_of;
    for (std::size_t i = 0; i < components.size(); ++i)
        for (int v : components[i].members) component_of[v] = static_cast<int>(i);
    for (const auto& [u, v] : graph.edges()) {
        if (component_of.at(u) != component_of.at(v))
            throw InternalError("edge crosses connected components");
    }
    return components;
}

} // namespace subrepair
