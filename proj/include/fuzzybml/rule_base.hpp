#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fuzzybml {

// Production rule: conjunction of facts in the premise, single fact as the
// conclusion. Premises may be empty (a default rule that always fires).
struct Rule {
    std::string id;
    std::vector<std::string> premises;  // kept sorted, no duplicates
    std::string conclusion;

    bool operator==(const Rule&) const = default;
};

struct RuleBase {
    std::vector<std::string> facts;  // distinct, ordered; fixes matrix row order
    std::vector<Rule> rules;

    // throws std::invalid_argument on duplicate facts, unknown labels,
    // or a rule concluding one of its own premises
    void check() const;

    bool operator==(const RuleBase&) const = default;
};

// Canonical "attribute=modality" fact label.
std::string fact_label(const std::string& attribute, const std::string& modality);

// JSON file format: {"facts":[...], "rules":[{"id","if":[...],"then"}]}
RuleBase load_rule_base(std::istream& in);
RuleBase load_rule_base_file(const std::string& path);
void save_rule_base(std::ostream& out, const RuleBase& rb);

// Human-readable listing, one rule per line:
//   R_1: Si (X_1=Longue) et (X_3=Faible) Alors Plan1
std::string format_rule(const Rule& r);
std::string format_rule_listing(const RuleBase& rb);
// Reconstructs a rule base from a listing; facts are collected in first-use
// order (premises before conclusions, per rule).
RuleBase parse_rule_listing(std::istream& in);

}  // namespace fuzzybml
