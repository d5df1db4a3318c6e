#pragma once

#include "subrepair/dataset.hpp"
#include "subrepair/repair.hpp"
#include "subrepair/rules.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace subrepair {

// Confusion counts over removed tuples (dirty = positive class) plus the
// share of clean tuples the repair kept. Zero denominators yield 0.
struct RepairMetrics {
    int tp = 0; // dirty rows removed
    int fp = 0; // clean rows removed
    int fn = 0; // dirty rows kept
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double clean_retention = 0.0;
    int removed_count = 0;
    std::map<std::string, double> runtime_ms; // per pipeline phase, filled by the runner
};

// Throws MissingTruthError when some dataset row has no label.
RepairMetrics evaluate(const RepairPlan& plan, const GroundTruth& truth);

// Corrupts ceil(rate * n) distinct rows of a clean dataset by switching one
// RHS attribute of a random rule to a different value drawn from that
// column's existing domain. Corrupted rows are labeled Dirty, the rest
// Clean. Deterministic for a given seed. Throws CleanPreconditionError if
// the input already violates the rules.
std::pair<Dataset, GroundTruth> inject_errors(const Dataset& clean,
                                              const std::vector<CFDRule>& rules, double rate,
                                              std::uint64_t seed);

// Desk-scale synthetic benchmark input: `rows` x `cols` categorical table
// satisfying the returned FD set by construction. Column 0 determines
// column 1 (and column 2 determines column 3 when cols >= 4); remaining
// columns are uniform noise over `domain` values.
struct SyntheticData {
    Dataset dataset;
    std::vector<CFDRule> rules;
    std::string rules_text;
};
SyntheticData make_synthetic_clean(int rows, int cols, int domain, std::uint64_t seed);

} // namespace subrepair
