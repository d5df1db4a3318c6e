#include "subrepair/evaluate.hpp"

#include "subrepair/conflict.hpp"
#include "subrepair/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <unordered_set>

namespace subrepair {

RepairMetrics evaluate(const RepairPlan& plan, const GroundTruth& truth) {
    const int n = static_cast<int>(plan.removal_set.size() + plan.retained_set.size());
    if (!truth.covers_all(n))
        throw MissingTruthError("ground truth does not label every row (need " +
                                std::to_string(n) + " labels, have " +
                                std::to_string(truth.labels.size()) + ")");

    RepairMetrics m;
    m.removed_count = static_cast<int>(plan.removal_set.size());

    int clean_total = 0;
    int clean_retained = 0;
    for (int v : plan.removal_set) {
        if (truth.labels.at(v) == Label::Dirty) ++m.tp;
        else ++m.fp;
    }
    for (int v : plan.retained_set) {
        if (truth.labels.at(v) == Label::Dirty) ++m.fn;
    }
    for (const auto& [row, label] : truth.labels) {
        if (label != Label::Clean) continue;
        ++clean_total;
    }
    clean_retained = clean_total - m.fp;

    m.precision = (m.tp + m.fp) > 0 ? static_cast<double>(m.tp) / (m.tp + m.fp) : 0.0;
    m.recall = (m.tp + m.fn) > 0 ? static_cast<double>(m.tp) / (m.tp + m.fn) : 0.0;
    m.f1 = (m.precision + m.recall) > 0.0
               ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
               : 0.0;
    m.clean_retention =
        clean_total > 0 ? static_cast<double>(clean_retained) / clean_total : 0.0;
    return m;
}

namespace {

// Bounded draw that only depends on the engine's well-defined output
// sequence, keeping runs reproducible across standard libraries.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
    return rng() % bound;
}

} // namespace

std::pair<Dataset, GroundTruth> inject_errors(const Dataset& clean,
                                              const std::vector<CFDRule>& rules, double rate,
                                              std::uint64_t seed) {
    const auto groups = group_rules(rules);
    if (detect_conflicts(clean, groups).graph.edge_count() > 0)
        throw CleanPreconditionError("input dataset already violates the rule set");

    const int n = clean.row_count();
    const int dirty_count = static_cast<int>(std::ceil(rate * n));

    std::mt19937_64 rng(seed);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[draw(rng, static_cast<std::uint64_t>(i) + 1)]);
    order.resize(std::max(0, std::min(dirty_count, n)));

    // Domains per column, sorted for deterministic indexing.
    std::vector<std::vector<std::string>> domains(clean.attribute_count());
    for (int c = 0; c < clean.attribute_count(); ++c) {
        std::set<std::string> values;
        for (int r = 0; r < n; ++r) values.insert(clean.cell(r, c));
        domains[c].assign(values.begin(), values.end());
    }

    std::vector<csv::Row> cells = clean.rows();
    GroundTruth truth;
    for (int r = 0; r < n; ++r) truth.labels[r] = Label::Clean;

    for (int row : order) {
        bool perturbed = false;
        if (!rules.empty()) {
            // Randomly chosen rule + RHS attribute first, then a
            // deterministic sweep when that column's domain is degenerate.
            const std::size_t rule_start = draw(rng, rules.size());
            const std::size_t attr_pick = rng();
            const std::size_t value_pick = rng();
            for (std::size_t ri = 0; ri < rules.size() && !perturbed; ++ri) {
                const CFDRule& rule = rules[(rule_start + ri) % rules.size()];
                for (std::size_t ai = 0; ai < rule.rhs.size() && !perturbed; ++ai) {
                    const int attr =
                        rule.rhs[(attr_pick + ai) % rule.rhs.size()];
                    const auto& domain = domains[attr];
                    if (domain.size() < 2) continue;
                    std::string replacement =
                        domain[(value_pick + ai) % domain.size()];
                    if (replacement == cells[row][attr])
                        replacement = domain[(value_pick + ai + 1) % domain.size()];
                    if (replacement == cells[row][attr]) continue;
                    cells[row][attr] = replacement;
                    perturbed = true;
                }
            }
        }
        if (!perturbed && !rules.empty()) {
            // Degenerate domains everywhere: force a fresh out-of-domain value.
            const int attr = rules.front().rhs.front();
            cells[row][attr] = cells[row][attr] + "_x";
            perturbed = true;
        }
        if (perturbed) truth.labels[row] = Label::Dirty;
    }

    std::vector<std::string> header;
    for (const AttributeMeta& meta : clean.attributes()) header.push_back(meta.name);
    return {Dataset::from_rows(std::move(header), std::move(cells), clean.missing_token()),
            std::move(truth)};
}

SyntheticData make_synthetic_clean(int rows, int cols, int domain, std::uint64_t seed) {
    if (cols < 2) throw Error("synthetic data needs at least 2 columns");
    if (domain < 2) throw Error("synthetic data needs a domain of at least 2 values");

    std::mt19937_64 rng(seed);
    std::vector<std::string> header;
    for (int c = 0; c < cols; ++c) header.push_back("c" + std::to_string(c));

    // Determined columns map the key value through a fixed permutation-ish
    // function so the FD holds by construction.
    auto determined = [&](int key, int col) {
        return "v" + std::to_string((static_cast<std::uint64_t>(key) * 2654435761u + col) % domain) +
               "_" + std::to_string(col);
    };

    std::vector<csv::Row> cells(rows);
    for (int r = 0; r < rows; ++r) {
        csv::Row row(cols);
        const int key0 = static_cast<int>(draw(rng, domain));
        row[0] = "v" + std::to_string(key0) + "_0";
        row[1] = determined(key0, 1);
        if (cols >= 4) {
            const int key2 = static_cast<int>(draw(rng, domain));
            row[2] = "v" + std::to_string(key2) + "_2";
            row[3] = determined(key2, 3);
        }
        for (int c = (cols >= 4 ? 4 : 2); c < cols; ++c)
            row[c] = "v" + std::to_string(draw(rng, domain)) + "_" + std::to_string(c);
        cells[r] = std::move(row);
    }

    SyntheticData out;
    out.dataset = Dataset::from_rows(header, std::move(cells), "");
    out.rules_text = "c0 -> c1\n";
    if (cols >= 4) out.rules_text += "c2 -> c3\n";
    out.rules = parse_rules_text(out.rules_text, out.dataset);
    return out;
}

} // namespace subrepair
