#include "subrepair/rules.hpp"

#include "subrepair/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace subrepair {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream in(s);
    while (std::getline(in, part, sep)) parts.push_back(part);
    if (!s.empty() && s.back() == sep) parts.push_back("");
    return parts;
}

std::vector<int> resolve_attrs(const std::string& list, const Dataset& dataset,
                               const std::string& line) {
    std::vector<int> out;
    for (const std::string& raw : split(list, ',')) {
        std::string name = trim(raw);
        if (name.empty())
            throw RuleSyntaxError("empty attribute name in rule: " + line);
        int idx = dataset.attribute_index(name);
        if (idx < 0) throw SchemaError("unknown attribute '" + name + "' in rule: " + line);
        out.push_back(idx);
    }
    return out;
}

} // namespace

bool CFDRule::is_plain_fd() const {
    for (const auto& [attr, cell] : pattern)
        if (!cell.is_wildcard()) return false;
    return true;
}

CFDRule parse_rule_line(const std::string& line, const Dataset& dataset) {
    CFDRule rule;
    rule.text = trim(line);

    std::string fd_part = rule.text;
    std::string const_part;
    if (auto bar = rule.text.find('|'); bar != std::string::npos) {
        fd_part = trim(rule.text.substr(0, bar));
        const_part = trim(rule.text.substr(bar + 1));
    }

    auto arrow = fd_part.find("->");
    if (arrow == std::string::npos)
        throw RuleSyntaxError("rule has no '->': " + line);
    std::string lhs_text = trim(fd_part.substr(0, arrow));
    std::string rhs_text = trim(fd_part.substr(arrow + 2));
    if (lhs_text.empty()) throw RuleSyntaxError("rule has empty LHS: " + line);
    if (rhs_text.empty()) throw RuleSyntaxError("rule has empty RHS: " + line);

    rule.lhs = resolve_attrs(lhs_text, dataset, line);
    rule.rhs = resolve_attrs(rhs_text, dataset, line);

    std::set<int> seen;
    for (int a : rule.lhs)
        if (!seen.insert(a).second)
            throw RuleSyntaxError("attribute repeated within rule: " + line);
    for (int a : rule.rhs)
        if (!seen.insert(a).second)
            throw RuleSyntaxError("attribute repeated within rule: " + line);

    for (int a : rule.lhs) rule.pattern[a] = PatternCell{};
    for (int a : rule.rhs) rule.pattern[a] = PatternCell{};

    if (!const_part.empty()) {
        auto darrow = const_part.find("=>");
        if (darrow == std::string::npos)
            throw RuleSyntaxError("constant section has no '=>': " + line);
        auto bind = [&](const std::string& text, const std::vector<int>& attrs) {
            std::vector<std::string> consts = split(text, ',');
            if (consts.size() != attrs.size())
                throw RuleSyntaxError("constant count does not match attribute count: " + line);
            for (std::size_t i = 0; i < attrs.size(); ++i) {
                std::string value = trim(consts[i]);
                if (value != "_") rule.pattern[attrs[i]] = PatternCell{value};
            }
        };
        bind(trim(const_part.substr(0, darrow)), rule.lhs);
        bind(trim(const_part.substr(darrow + 2)), rule.rhs);
    }
    return rule;
}

std::vector<CFDRule> parse_rules_text(const std::string& text, const Dataset& dataset) {
    std::vector<CFDRule> rules;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        if (trim(line).empty()) continue;
        rules.push_back(parse_rule_line(line, dataset));
    }
    return rules;
}

std::vector<CFDRule> parse_rules(const std::string& path, const Dataset& dataset) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open rule file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_rules_text(buffer.str(), dataset);
}

std::vector<RuleGroup> group_rules(const std::vector<CFDRule>& rules) {
    std::map<std::vector<int>, RuleGroup> by_key;
    for (const CFDRule& rule : rules) {
        std::vector<int> key = rule.lhs;
        std::sort(key.begin(), key.end());
        RuleGroup& group = by_key[key];
        group.lhs_key = key;
        group.rules.push_back(rule);
    }
    std::vector<RuleGroup> groups;
    groups.reserve(by_key.size());
    for (auto& [key, group] : by_key) groups.push_back(std::move(group));
    return groups;
}

std::vector<int> attribute_cfd_frequency(const std::vector<CFDRule>& rules, int attr_count) {
    std::vector<int> freq(attr_count, 0);
    for (const CFDRule& rule : rules) {
        for (int a : rule.lhs) ++freq.at(a);
        for (int a : rule.rhs) ++freq.at(a);
    }
    return freq;
}

} // namespace subrepair
