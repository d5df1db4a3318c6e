#include "subrepair/repair.hpp"

#include "subrepair/errors.hpp"
#include "subrepair/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_set>

namespace subrepair {

namespace {
constexpr double kTieTolerance = 1e-12;
}

std::string strategy_name(Strategy s) {
    switch (s) {
    case Strategy::CliqueRetain: return "CliqueRetain";
    case Strategy::PPIS: return "PPIS";
    case Strategy::MicoOptimal: return "MICO-Optimal";
    case Strategy::MicoFeasible: return "MICO-Feasible";
    case Strategy::MicoFallback: return "MICO-Fallback";
    }
    return "?";
}

CoverModel build_cover_model(const Component& component,
                             const std::unordered_map<int, TupleScore>& scores,
                             const ConflictGraph& graph, double epsilon,
                             std::int64_t time_budget_ms) {
    CoverModel model;
    model.vertices = component.members;
    model.time_budget_ms = time_budget_ms;

    double p_max = -std::numeric_limits<double>::infinity();
    for (int v : component.members) p_max = std::max(p_max, scores.at(v).penalty);
    for (int v : component.members)
        model.costs[v] = p_max - scores.at(v).penalty + epsilon;

    for (int v : component.members)
        for (int u : graph.neighbors(v))
            if (u > v) model.edges.emplace_back(v, u);
    std::sort(model.edges.begin(), model.edges.end());
    return model;
}

double cover_objective(const CoverModel& model, const std::vector<int>& removal) {
    double total = 0.0;
    for (int v : removal) total += model.costs.at(v);
    return total;
}

std::vector<int> repair_clique(const Component& component, const DensityTable& density) {
    int best = component.members.front();
    for (int v : component.members)
        if (density.rho[v] > density.rho[best]) best = v; // strict: ties keep lowest id
    std::vector<int> removal;
    removal.reserve(component.members.size() - 1);
    for (int v : component.members)
        if (v != best) removal.push_back(v);
    return removal;
}

std::vector<int> repair_ppis(const Component& component,
                             const std::unordered_map<int, TupleScore>& scores,
                             const ConflictGraph& graph) {
    std::vector<int> order = component.members;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double pa = scores.at(a).penalty;
        const double pb = scores.at(b).penalty;
        if (pa != pb) return pa < pb;
        return a < b;
    });

    std::unordered_set<int> independent;
    std::vector<int> removal;
    for (int v : order) {
        bool blocked = false;
        for (int u : graph.neighbors(v)) {
            if (independent.count(u)) {
                blocked = true;
                break;
            }
        }
        if (blocked) {
            removal.push_back(v);
        } else {
            independent.insert(v);
        }
    }
    std::sort(removal.begin(), removal.end());
    return removal;
}

namespace {

// Branch-and-bound over the 0/1 cover formulation. Branches on the
// endpoint of an uncovered edge touching the most uncovered edges; a
// vertex set "out" forces all its neighbors in. Lower bound: greedy
// edge-disjoint matching, each matched edge charging its cheaper endpoint.
// Nodes with bound strictly above the incumbent are pruned, so equal-cost
// solutions stay reachable and the lexicographically smallest one wins.
class CoverSolver {
public:
    CoverSolver(const CoverModel& model, std::vector<int> seed_cover)
        : model_(model) {
        const auto& verts = model.vertices;
        local_of_.reserve(verts.size());
        for (std::size_t i = 0; i < verts.size(); ++i)
            local_of_[verts[i]] = static_cast<int>(i);
        costs_.resize(verts.size());
        for (std::size_t i = 0; i < verts.size(); ++i)
            costs_[i] = model.costs.at(verts[i]);
        adjacency_.resize(verts.size());
        for (const auto& [u, v] : model.edges) {
            edges_.emplace_back(local_of_.at(u), local_of_.at(v));
            adjacency_[edges_.back().first].push_back(edges_.back().second);
            adjacency_[edges_.back().second].push_back(edges_.back().first);
        }
        status_.assign(verts.size(), kUndecided);

        incumbent_.clear();
        for (int v : seed_cover) incumbent_.push_back(local_of_.at(v));
        std::sort(incumbent_.begin(), incumbent_.end());
        incumbent_cost_ = 0.0;
        for (int v : incumbent_) incumbent_cost_ += costs_[v];
    }

    // Runs until exhaustion or the deadline. Returns true when the search
    // space was fully explored (optimality proven).
    bool run(std::chrono::steady_clock::time_point deadline) {
        bool descend = true;
        while (true) {
            if ((++ticks_ & 0x3FF) == 0 &&
                std::chrono::steady_clock::now() >= deadline)
                return false;
            if (descend) {
                const int v = pick_branch_vertex();
                if (v < 0) {
                    offer_incumbent();
                    descend = false;
                    continue;
                }
                stack_.push_back(Node{v, 0, {}, 0.0});
                descend = advance(stack_.back());
                if (!descend) stack_.pop_back();
            } else {
                if (stack_.empty()) return true;
                Node& top = stack_.back();
                undo(top);
                if (advance(top)) {
                    descend = true;
                } else {
                    stack_.pop_back();
                }
            }
        }
    }

    std::vector<int> incumbent_row_ids() const {
        std::vector<int> rows;
        rows.reserve(incumbent_.size());
        for (int v : incumbent_) rows.push_back(model_.vertices[v]);
        std::sort(rows.begin(), rows.end());
        return rows;
    }

    double incumbent_cost() const { return incumbent_cost_; }

private:
    enum : std::int8_t { kUndecided = 0, kIn = 1, kOut = 2 };

    struct Node {
        int vertex;
        int next_phase; // 0: try In, 1: try Out, 2: exhausted
        std::vector<int> applied;
        double cost_added;
    };

    // Applies the next untried phase of `node`; returns true when a phase
    // was applied and survives the bound check. Leaves the node clean
    // otherwise.
    bool advance(Node& node) {
        while (node.next_phase < 2) {
            const int phase = node.next_phase++;
            if (apply(node, phase) &&
                current_cost_ + matching_bound() <= incumbent_cost_ + kTieTolerance)
                return true;
            undo(node);
        }
        return false;
    }

    bool apply(Node& node, int phase) {
        const int v = node.vertex;
        if (phase == 0) {
            set_in(node, v);
            return true;
        }
        status_[v] = kOut;
        node.applied.push_back(v);
        for (int u : adjacency_[v]) {
            if (status_[u] == kIn) continue;
            if (status_[u] == kOut) return false; // edge with both ends out
            set_in(node, u);
        }
        return true;
    }

    void set_in(Node& node, int v) {
        status_[v] = kIn;
        node.applied.push_back(v);
        node.cost_added += costs_[v];
        current_cost_ += costs_[v];
    }

    void undo(Node& node) {
        for (int v : node.applied) status_[v] = kUndecided;
        current_cost_ -= node.cost_added;
        node.applied.clear();
        node.cost_added = 0.0;
    }

    bool edge_uncovered(const std::pair<int, int>& e) const {
        return status_[e.first] != kIn && status_[e.second] != kIn;
    }

    // Vertex touching the most uncovered edges; -1 when everything is
    // covered. Ties break toward the smaller row id (= smaller local index).
    int pick_branch_vertex() {
        uncovered_count_.assign(costs_.size(), 0);
        bool any = false;
        for (const auto& e : edges_) {
            if (!edge_uncovered(e)) continue;
            ++uncovered_count_[e.first];
            ++uncovered_count_[e.second];
            any = true;
        }
        if (!any) return -1;
        int best = -1;
        for (std::size_t v = 0; v < uncovered_count_.size(); ++v) {
            if (uncovered_count_[v] == 0) continue;
            if (best < 0 || uncovered_count_[v] > uncovered_count_[best])
                best = static_cast<int>(v);
        }
        return best;
    }

    double matching_bound() {
        matched_.assign(costs_.size(), 0);
        double bound = 0.0;
        for (const auto& e : edges_) {
            if (!edge_uncovered(e)) continue;
            if (matched_[e.first] || matched_[e.second]) continue;
            matched_[e.first] = matched_[e.second] = 1;
            bound += std::min(costs_[e.first], costs_[e.second]);
        }
        return bound;
    }

    void offer_incumbent() {
        std::vector<int> cover;
        for (std::size_t v = 0; v < status_.size(); ++v)
            if (status_[v] == kIn) cover.push_back(static_cast<int>(v));
        const double cost = current_cost_;
        if (cost < incumbent_cost_ - kTieTolerance ||
            (std::abs(cost - incumbent_cost_) <= kTieTolerance && cover < incumbent_)) {
            incumbent_ = std::move(cover);
            incumbent_cost_ = cost;
        }
    }

    const CoverModel& model_;
    std::unordered_map<int, int> local_of_;
    std::vector<double> costs_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::int8_t> status_;
    std::vector<Node> stack_;
    std::vector<int> uncovered_count_;
    std::vector<std::int8_t> matched_;
    std::vector<int> incumbent_;
    double incumbent_cost_ = 0.0;
    double current_cost_ = 0.0;
    std::uint64_t ticks_ = 0;
};

} // namespace

std::pair<std::vector<int>, Strategy> repair_mico(const Component& component,
                                                  const std::unordered_map<int, TupleScore>& scores,
                                                  const ConflictGraph& graph,
                                                  std::int64_t time_budget_ms,
                                                  double epsilon) {
    const std::vector<int> greedy = repair_ppis(component, scores, graph);
    if (time_budget_ms <= 0) return {greedy, Strategy::MicoFallback};

    try {
        const CoverModel model =
            build_cover_model(component, scores, graph, epsilon, time_budget_ms);
        CoverSolver solver(model, greedy);
        const auto deadline =
            std::chrono::steady_clock::now() + std::chrono::milliseconds(time_budget_ms);
        const bool proven = solver.run(deadline);
        return {solver.incumbent_row_ids(),
                proven ? Strategy::MicoOptimal : Strategy::MicoFeasible};
    } catch (...) {
        return {greedy, Strategy::MicoFallback};
    }
}

RepairPlan repair(const Dataset& dataset, const ConflictGraph& graph,
                  const std::vector<Component>& components, const DensityTable& density,
                  const RepairConfig& config) {
    RepairPlan plan;
    plan.per_component.resize(components.size());

    const int count = static_cast<int>(components.size());
    parallel_chunks(count, config.threads, [&](int, int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const Component& comp = components[i];
            ComponentTrace& trace = plan.per_component[i];
            trace.component_id = i;
            trace.size = static_cast<int>(comp.members.size());
            trace.is_clique = comp.is_clique;
            trace.weights = component_weights(comp, density, graph);
            const auto scores =
                score_component(comp, density, graph, trace.weights, config.epsilon);

            if (comp.is_clique) {
                trace.strategy = Strategy::CliqueRetain;
                trace.local_removal = repair_clique(comp, density);
            } else if (config.algorithm == Algorithm::PPIS) {
                trace.strategy = Strategy::PPIS;
                trace.local_removal = repair_ppis(comp, scores, graph);
            } else {
                auto [removal, strategy] =
                    repair_mico(comp, scores, graph, config.time_limit_ms, config.epsilon);
                trace.strategy = strategy;
                trace.local_removal = std::move(removal);
            }
            const CoverModel model =
                build_cover_model(comp, scores, graph, config.epsilon, config.time_limit_ms);
            trace.objective_value = cover_objective(model, trace.local_removal);
        }
    });

    for (const ComponentTrace& trace : plan.per_component)
        plan.removal_set.insert(plan.removal_set.end(), trace.local_removal.begin(),
                                trace.local_removal.end());
    std::sort(plan.removal_set.begin(), plan.removal_set.end());

    std::unordered_set<int> removed(plan.removal_set.begin(), plan.removal_set.end());
    plan.retained_set.reserve(dataset.row_count() - plan.removal_set.size());
    for (int r = 0; r < dataset.row_count(); ++r)
        if (!removed.count(r)) plan.retained_set.push_back(r);

    for (const auto& [u, v] : graph.edges()) {
        if (!removed.count(u) && !removed.count(v))
            throw InternalError("removal set is not a vertex cover: edge " +
                                std::to_string(u) + "-" + std::to_string(v) + " uncovered");
    }
    return plan;
}

BoundReport approximation_bound(const RepairPlan& plan, const DensityTable& density,
                                const ConflictGraph& graph, double w1_aggregate, int k,
                                double epsilon) {
    BoundReport report;
    report.k = k;
    report.w1 = w1_aggregate;
    report.r = density.num_non_conflicting;
    report.c = density.num_conflicting;

    const std::size_t n = plan.removal_set.size() + plan.retained_set.size();
    if (n == 0 || density.rho.empty()) return report;

    report.rho_max = *std::max_element(density.rho.begin(), density.rho.end());
    report.rho_min = *std::min_element(density.rho.begin(), density.rho.end());
    report.rho_small = report.rho_min > 0.0 ? report.rho_min : epsilon;

    report.eta = w1_aggregate * k * (report.r + report.c) *
                 (report.rho_max - report.rho_min) / (report.rho_small * report.rho_small);

    const double w2 = 1.0 - w1_aggregate;
    double retained_penalty = 0.0;
    for (int v : plan.retained_set)
        retained_penalty +=
            w1_aggregate / (density.rho[v] + epsilon) + w2 * graph.degree(v);

    if (report.eta > 0.0 && retained_penalty > 0.0)
        report.ratio_bound = 1.0 + 2.0 * static_cast<double>(n) * report.eta / retained_penalty;
    return report;
}

} // namespace subrepair
