#pragma once

#include "subrepair/conflict.hpp"
#include "subrepair/dataset.hpp"
#include "subrepair/rules.hpp"
#include "subrepair/scoring.hpp"

#include <random>
#include <string>
#include <vector>

namespace testing {

// Table-1 style employee data: the four constraint attributes only (the id
// and labeling columns stay out of typing/similarity).
inline subrepair::Dataset employee_dataset() {
    return subrepair::Dataset::from_rows(
        {"Work experience", "Salary", "Position", "Allowance"},
        {
            {"1", "6500", "manage", "1000"},     // t0
            {"1", "6500", "manage", "1000"},     // t1
            {"1", "6600", "manage", "1000"},     // t2
            {"1", "6600", "operate", "600"},     // t3
            {"3", "7500", "technology", "800"},  // t4
            {"3", "7500", "technology", "800"},  // t5
            {"3", "8000", "operate", "800"},     // t6
            {"3", "8000", "operate", "800"},     // t7
            {"3", "8000", "operate", "700"},     // t8
            {"3", "8000", "operate", "1000"},    // t9
        });
}

// FD1: Work experience -> Salary, FD2: Position -> Allowance.
inline std::vector<subrepair::CFDRule> employee_fds(const subrepair::Dataset& d) {
    return subrepair::parse_rules_text(
        "Work experience -> Salary\nPosition -> Allowance\n", d);
}

// The three constant-bound rules used in the grouped-check walkthrough.
inline std::vector<subrepair::CFDRule> employee_cfds(const subrepair::Dataset& d) {
    return subrepair::parse_rules_text(
        "Work experience,Position -> Allowance | 1,manage => 1000\n"
        "Work experience,Position -> Allowance | 3,technology => 800\n"
        "Work experience,Position,Salary -> Allowance | 3,operate,8000 => 800\n",
        d);
}

inline subrepair::GroundTruth employee_truth() {
    subrepair::GroundTruth t;
    using subrepair::Label;
    const Label labels[] = {Label::Clean, Label::Clean, Label::Dirty, Label::Dirty,
                            Label::Clean, Label::Clean, Label::Dirty, Label::Dirty,
                            Label::Dirty, Label::Dirty};
    for (int i = 0; i < 10; ++i) t.labels[i] = labels[i];
    return t;
}

// 10-node graph with a 4-clique {0,3,4,8} and a non-clique component
// {1,2,5,6,7,9}: 2-1, 6-1, 5-9, 6-9, 6-7.
inline subrepair::ConflictGraph fig5_graph() {
    return subrepair::ConflictGraph::from_edges({
        {0, 3}, {0, 4}, {0, 8}, {3, 4}, {3, 8}, {4, 8}, // clique
        {1, 2}, {1, 6}, {5, 9}, {6, 9}, {6, 7},         // non-clique
    });
}

// Densities that reproduce the walkthrough's penalty order
// t1 < t9 < t2 < t5 < t6 < t7 inside the non-clique component and make t0
// the densest clique member.
inline std::vector<double> fig5_densities() {
    return {6.0, 5.0, 0.8, 1.0, 1.2, 0.7, 0.5, 0.2, 0.9, 4.0};
}

inline subrepair::DensityTable fig5_density_table() {
    subrepair::DensityTable t;
    t.rho = fig5_densities();
    t.k = 3;
    t.num_conflicting = 10;
    t.num_non_conflicting = 0;
    t.pool_is_fallback = true;
    return t;
}

// Single-column dataset whose only job is to supply n rows.
inline subrepair::Dataset dummy_dataset(int n) {
    std::vector<subrepair::csv::Row> rows;
    rows.reserve(n);
    for (int i = 0; i < n; ++i) rows.push_back({"r" + std::to_string(i)});
    return subrepair::Dataset::from_rows({"c0"}, std::move(rows));
}

// Random tabular instance for detection equivalence runs: small value
// domains force plenty of shared values and conflicts.
struct RandomInstance {
    subrepair::Dataset dataset;
    std::vector<subrepair::CFDRule> rules;
};

inline RandomInstance random_instance(std::mt19937_64& rng, int max_rows = 300,
                                      int max_attrs = 10, int max_rules = 8) {
    const int n = 10 + static_cast<int>(rng() % (max_rows - 9));
    const int attrs = 2 + static_cast<int>(rng() % (max_attrs - 1));

    std::vector<std::string> header;
    std::vector<int> domain(attrs);
    for (int c = 0; c < attrs; ++c) {
        header.push_back("a" + std::to_string(c));
        domain[c] = 2 + static_cast<int>(rng() % 7);
    }

    std::vector<subrepair::csv::Row> rows(n);
    for (int r = 0; r < n; ++r) {
        subrepair::csv::Row row(attrs);
        for (int c = 0; c < attrs; ++c) {
            if (rng() % 20 == 0) {
                row[c] = ""; // missing
            } else {
                row[c] = "v" + std::to_string(rng() % domain[c]);
            }
        }
        rows[r] = std::move(row);
    }
    RandomInstance inst;
    inst.dataset = subrepair::Dataset::from_rows(header, std::move(rows), "");

    const int rule_count = 1 + static_cast<int>(rng() % max_rules);
    std::string text;
    for (int i = 0; i < rule_count; ++i) {
        const int max_lhs = std::min(2, attrs - 1);
        const int lhs_size = 1 + static_cast<int>(rng() % max_lhs);
        std::vector<int> picks;
        while (static_cast<int>(picks.size()) < lhs_size + 1) {
            const int a = static_cast<int>(rng() % attrs);
            bool dup = false;
            for (int p : picks) dup = dup || p == a;
            if (!dup) picks.push_back(a);
        }
        std::string lhs, lhs_consts;
        for (int j = 0; j < lhs_size; ++j) {
            if (j) {
                lhs += ",";
                lhs_consts += ",";
            }
            lhs += header[picks[j]];
            lhs_consts += (rng() % 2) ? "_" : ("v" + std::to_string(rng() % domain[picks[j]]));
        }
        const int rhs_attr = picks.back();
        text += lhs + " -> " + header[rhs_attr];
        if (rng() % 2) {
            const std::string rhs_const =
                (rng() % 2) ? "_" : ("v" + std::to_string(rng() % domain[rhs_attr]));
            text += " | " + lhs_consts + " => " + rhs_const;
        }
        text += "\n";
    }
    inst.rules = subrepair::parse_rules_text(text, inst.dataset);
    return inst;
}

// Random connected component embedded in a conflict graph: a spanning tree
// plus extra edges over `size` vertices labeled base..base+size-1.
inline std::vector<std::pair<int, int>> random_connected_edges(std::mt19937_64& rng, int size,
                                                               int base = 0) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < size; ++v)
        edges.emplace_back(base + static_cast<int>(rng() % v), base + v);
    const int extra = static_cast<int>(rng() % (size * 2));
    for (int i = 0; i < extra; ++i) {
        const int u = static_cast<int>(rng() % size);
        const int v = static_cast<int>(rng() % size);
        if (u != v) edges.emplace_back(base + std::min(u, v), base + std::max(u, v));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return edges;
}

} // namespace testing
