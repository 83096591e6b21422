#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fuzzybml/bitvec.hpp"
#include "fuzzybml/rule_base.hpp"

namespace fuzzybml {

// How a rule's premise row activates it during delta_fact.
//
// Conjunctive: a rule fires only when every premise fact is established.
// LiteralProduct: the literal Boolean matrix product ER + R_E^T.EF, which
// activates a rule as soon as ANY premise is established. Kept as a study
// switch; it mis-fires every multi-premise rule, so it is never the default.
enum class Activation { Conjunctive, LiteralProduct };

struct EngineOptions {
    Activation activation = Activation::Conjunctive;
    bool parallel = true;  // OpenMP sweeps once the layers are large enough
};

// Compiled CELFACT/CELRULE knowledge base: fact and rule cell layers plus
// the incidence matrices R_E (premises) and R_S (conclusions), bit-packed
// in both orientations. Immutable after compile; shareable across runs.
class CellularKnowledgeBase {
 public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    const std::vector<std::string>& fact_labels() const { return fact_labels_; }
    const std::vector<std::string>& rule_ids() const { return rule_ids_; }
    std::size_t fact_count() const { return fact_labels_.size(); }
    std::size_t rule_count() const { return rule_ids_.size(); }

    std::size_t fact_index(const std::string& label) const;  // npos when unknown
    std::size_t rule_index(const std::string& id) const;

    bool re(std::size_t fact, std::size_t rule) const { return premise_mask_[rule].test(fact); }
    bool rs(std::size_t fact, std::size_t rule) const { return conclusion_of_[rule] == fact; }

    // R_E / R_S rows keyed by fact index (columns = rules), as "0"/"1" text.
    std::string re_row(std::size_t fact) const;
    std::string rs_row(std::size_t fact) const;

    const BitVec& premise_mask(std::size_t rule) const { return premise_mask_[rule]; }
    const BitVec& premise_row(std::size_t fact) const { return premise_rows_[fact]; }
    const BitVec& concluder_row(std::size_t fact) const { return concluder_rows_[fact]; }
    const std::vector<std::size_t>& premises_of(std::size_t rule) const {
        return premise_list_[rule];
    }
    const std::vector<std::size_t>& concluders_of(std::size_t fact) const {
        return concluder_list_[fact];
    }
    std::size_t conclusion_of(std::size_t rule) const { return conclusion_of_[rule]; }
    bool is_leaf_fact(std::size_t fact) const { return concluder_list_[fact].empty(); }

    const EngineOptions& options() const { return options_; }

    friend CellularKnowledgeBase compile(const RuleBase&, const EngineOptions&);

 private:
    std::vector<std::string> fact_labels_;
    std::vector<std::string> rule_ids_;
    std::vector<BitVec> premise_mask_;    // per rule: facts in its premise (R_E column)
    std::vector<BitVec> premise_rows_;    // per fact: rules using it as premise (R_E row)
    std::vector<std::size_t> conclusion_of_;  // per rule: concluded fact (R_S column)
    std::vector<BitVec> concluder_rows_;  // per fact: rules concluding it (R_S row)
    // the same incidences as index lists, for sweeps that touch only set bits
    std::vector<std::vector<std::size_t>> premise_list_;
    std::vector<std::vector<std::size_t>> concluder_list_;
    EngineOptions options_;
};

// One automaton configuration G_i: every cell's E, I, S channels.
struct AutomatonConfig {
    BitVec fact_e, fact_s;
    std::vector<double> fact_i;
    BitVec rule_e, rule_s;
    std::vector<double> rule_i;

    bool operator==(const AutomatonConfig&) const = default;
};

CellularKnowledgeBase compile(const RuleBase& rb, const EngineOptions& options = {});

// Inverse of compile, up to premise ordering; used to cross-check the matrices.
RuleBase decompile(const CellularKnowledgeBase& kb);

// Initial configuration G_0: E=1 on the asserted facts, every I=1, S=0.
AutomatonConfig assert_facts(const CellularKnowledgeBase& kb,
                             const std::vector<std::string>& facts);

// Assessment/selection/filtering phase: SF := EF; newly activatable rules get
// ER=1 and IR = min of their premises' IF.
AutomatonConfig delta_fact(const CellularKnowledgeBase& kb, const AutomatonConfig& g);

// Execution phase: EF |= R_S.ER with IF(conclusion) accumulated as the max of
// the concluding rules' IR; SR := not ER.
AutomatonConfig delta_rule(const CellularKnowledgeBase& kb, const AutomatonConfig& g);

struct ChainResult {
    std::vector<std::string> established;  // facts with E=1 at the fixpoint, in fact order
    std::vector<AutomatonConfig> trace;    // G_0 .. G_q
};

// Iterates Delta = delta_rule o delta_fact until the established set stops
// growing. Monotone in EF, so at most |facts| productive steps.
ChainResult forward_chain(const CellularKnowledgeBase& kb,
                          const std::vector<std::string>& initial);
// Same fixpoint loop from a prepared configuration (graded entry point).
ChainResult run_chain(const CellularKnowledgeBase& kb, AutomatonConfig g0);

// Rear chaining over R_S/R_E with the roles swapped: every premise set of
// leaf facts (facts no rule concludes) sufficient to establish the goal.
// AND across a rule's premises, OR across alternative rules. Throws on
// cyclic rule dependencies, naming the cycle.
std::vector<std::vector<std::string>> backward_chain(const CellularKnowledgeBase& kb,
                                                     const std::string& goal);

// Trace dump: one line per cell, tab-separated (config, layer, label, E, I, S).
std::string format_config(const CellularKnowledgeBase& kb, const AutomatonConfig& g,
                          std::size_t step);

}  // namespace fuzzybml
