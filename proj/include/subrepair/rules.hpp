#pragma once

#include "subrepair/dataset.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace subrepair {

// Pattern cell of a rule tableau: a wildcard, or a constant compared by
// exact string equality (constants are trimmed when parsed).
struct PatternCell {
    std::optional<std::string> constant; // nullopt = wildcard

    bool is_wildcard() const { return !constant.has_value(); }
    bool matches(const std::string& cell) const {
        return is_wildcard() || *constant == cell;
    }
    friend bool operator==(const PatternCell&, const PatternCell&) = default;
};

// A conditional functional dependency X -> Y with one pattern row over
// X ∪ Y. A plain FD is the all-wildcard special case. Tableaus with
// several pattern rows are written as several rules sharing the same
// embedded FD.
struct CFDRule {
    std::vector<int> lhs; // attribute indices, file order
    std::vector<int> rhs;
    std::map<int, PatternCell> pattern; // defined for every index in lhs + rhs
    std::string text;                   // original line, for diagnostics

    bool is_plain_fd() const;
    friend bool operator==(const CFDRule&, const CFDRule&) = default;
};

// Rules sharing the same left-hand attribute set, so the pairwise LHS
// equality check runs once per group instead of once per rule.
struct RuleGroup {
    std::vector<int> lhs_key; // canonical: sorted ascending
    std::vector<CFDRule> rules;
};

// Parses a rule file. One rule per line:
//   LHS_attrs -> RHS_attrs [| lhs_consts => rhs_consts]
// Attribute lists are comma separated names from the dataset header;
// constant lists align positionally with the attribute lists and use `_`
// for wildcards. `#` starts a comment; blank lines are skipped.
std::vector<CFDRule> parse_rules(const std::string& path, const Dataset& dataset);

// Same grammar, from text already in memory (used by tests and tools).
std::vector<CFDRule> parse_rules_text(const std::string& text, const Dataset& dataset);

// Parses a single rule line.
CFDRule parse_rule_line(const std::string& line, const Dataset& dataset);

// Partitions rules by canonical LHS key; group order is sorted by key,
// within-group rule order follows the input.
std::vector<RuleGroup> group_rules(const std::vector<CFDRule>& rules);

// f_i: number of rule sides mentioning attribute i. An attribute on both
// sides of one rule counts twice.
std::vector<int> attribute_cfd_frequency(const std::vector<CFDRule>& rules, int attr_count);

} // namespace subrepair
