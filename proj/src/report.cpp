#include "subrepair/report.hpp"

#include <algorithm>
#include <sstream>

namespace subrepair {

using nlohmann::json;

std::string graph_dump(const ConflictGraph& graph) {
    std::ostringstream out;
    for (const auto& [u, v] : graph.edges()) out << u << ' ' << v << '\n';
    return out.str();
}

json stats_json(const PipelineResult& result) {
    json j;
    j["n"] = result.dataset.row_count();
    j["attributes"] = result.dataset.attribute_count();
    j["rules"] = result.rules.size();
    j["rule_groups"] = result.groups.size();
    j["conflicting_tuples"] = result.detection.graph.vertex_count();
    j["non_conflicting_tuples"] =
        result.dataset.row_count() - static_cast<int>(result.detection.graph.vertex_count());
    j["edges"] = result.detection.graph.edge_count();
    j["pairs_checked"] = result.detection.stats.pairs_checked;
    j["groups_checked"] = result.detection.stats.groups_checked;
    j["candidate_set_sizes"] = result.detection.stats.candidate_set_sizes;

    j["component_count"] = result.components.size();
    if (!result.components.empty()) {
        std::size_t max_size = 0, min_size = result.components.front().members.size();
        std::size_t cliques = 0;
        for (const Component& comp : result.components) {
            max_size = std::max(max_size, comp.members.size());
            min_size = std::min(min_size, comp.members.size());
            if (comp.is_clique) ++cliques;
        }
        j["max_component"] = max_size;
        j["min_component"] = min_size;
        j["clique_components"] = cliques;
    }
    return j;
}

json plan_json(const PipelineResult& result) {
    json j;
    j["algorithm"] = result.plan.per_component.empty() ? "none" : "per_component";
    j["removed_count"] = result.plan.removal_set.size();
    j["retained_count"] = result.plan.retained_set.size();
    j["removal_set"] = result.plan.removal_set;

    json comps = json::array();
    for (const ComponentTrace& trace : result.plan.per_component) {
        json c;
        c["id"] = trace.component_id;
        c["size"] = trace.size;
        c["is_clique"] = trace.is_clique;
        c["strategy"] = strategy_name(trace.strategy);
        c["local_removal"] = trace.local_removal;
        c["objective"] = trace.objective_value;
        c["w_density"] = trace.weights.w_density;
        c["w_conflict"] = trace.weights.w_conflict;
        comps.push_back(std::move(c));
    }
    j["components"] = std::move(comps);

    json bound;
    bound["eta"] = result.bound.eta;
    bound["ratio_bound"] = result.bound.ratio_bound;
    bound["certified"] = false; // proxy denominator, diagnostic only
    bound["k"] = result.bound.k;
    bound["r"] = result.bound.r;
    bound["c"] = result.bound.c;
    bound["rho_max"] = result.bound.rho_max;
    bound["rho_min"] = result.bound.rho_min;
    bound["rho_small"] = result.bound.rho_small;
    bound["w1"] = result.bound.w1;
    j["bound_report"] = std::move(bound);
    return j;
}

json metrics_json(const RepairMetrics& metrics) {
    json j;
    j["tp"] = metrics.tp;
    j["fp"] = metrics.fp;
    j["fn"] = metrics.fn;
    j["precision"] = metrics.precision;
    j["recall"] = metrics.recall;
    j["f1"] = metrics.f1;
    j["clean_retention"] = metrics.clean_retention;
    j["removed_count"] = metrics.removed_count;
    return j;
}

json timings_json(const PipelineResult& result) {
    json j;
    for (const auto& [phase, ms] : result.timings_ms) j[phase] = ms;
    return j;
}

std::string scores_csv(const PipelineResult& result) {
    std::vector<std::string> penalty_by_row(result.dataset.row_count());
    for (const ComponentTrace& trace : result.plan.per_component) {
        const Component& comp = result.components[trace.component_id];
        const auto scores = score_component(comp, result.density, result.detection.graph,
                                            trace.weights, result.config.epsilon);
        for (int v : comp.members) {
            std::ostringstream s;
            s << scores.at(v).penalty;
            penalty_by_row[v] = s.str();
        }
    }
    std::ostringstream out;
    out << "row_id,rho,conflict_degree,penalty\n";
    for (int r = 0; r < result.dataset.row_count(); ++r) {
        out << r << ',';
        if (r < static_cast<int>(result.density.rho.size())) out << result.density.rho[r];
        out << ',' << result.detection.graph.degree(r) << ',' << penalty_by_row[r] << '\n';
    }
    return out.str();
}

json components_json(const PipelineResult& result) {
    json arr = json::array();
    for (const ComponentTrace& trace : result.plan.per_component) {
        const Component& comp = result.components[trace.component_id];
        json c;
        c["id"] = trace.component_id;
        c["size"] = trace.size;
        c["is_clique"] = trace.is_clique;
        c["strategy"] = strategy_name(trace.strategy);
        c["cv_density"] = trace.weights.cv_density;
        c["cv_conflict"] = trace.weights.cv_conflict;
        c["w_density"] = trace.weights.w_density;
        c["w_conflict"] = trace.weights.w_conflict;

        double max_deg = 0, min_deg = 0, sum_deg = 0;
        double max_rho = 0, min_rho = 0, sum_rho = 0;
        bool first = true;
        for (int v : comp.members) {
            const double deg = result.detection.graph.degree(v);
            const double rho = result.density.rho[v];
            if (first) {
                max_deg = min_deg = deg;
                max_rho = min_rho = rho;
                first = false;
            }
            max_deg = std::max(max_deg, deg);
            min_deg = std::min(min_deg, deg);
            sum_deg += deg;
            max_rho = std::max(max_rho, rho);
            min_rho = std::min(min_rho, rho);
            sum_rho += rho;
        }
        const double size = static_cast<double>(comp.members.size());
        c["max_degree"] = max_deg;
        c["min_degree"] = min_deg;
        c["avg_degree"] = sum_deg / size;
        c["max_density"] = max_rho;
        c["min_density"] = min_rho;
        c["avg_density"] = sum_rho / size;
        arr.push_back(std::move(c));
    }
    return arr;
}

} // namespace subrepair
