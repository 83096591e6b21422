#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fuzzybml/case_model.hpp"
#include "fuzzybml/discretization.hpp"
#include "fuzzybml/rule_base.hpp"

namespace fuzzybml {

enum class Measure { Shannon, Quadratic };

struct LearnerParams {
    Measure measure = Measure::Shannon;
    double lambda = 1.0;     // Laplace smoothing; merges only pay off when > 0
    std::size_t min_node = 2;  // mu: minimal admissible node size
    double min_gain = 1e-9;
    std::size_t max_depth = 16;
};

// Frequencies with smoothing: f_j = (n_j + lambda) / (n + m*lambda).
// Empty counts or n == 0 give zero uncertainty.
double uncertainty(const std::vector<std::size_t>& counts, Measure measure, double lambda);

// One node of the induction graph. Members index into the training base.
struct GraphNode {
    std::string id;  // "s0", "s1", ... in creation order
    std::size_t depth = 0;
    std::vector<std::size_t> members;
    std::vector<std::size_t> class_counts;  // by class index in the schema
};

struct GraphArc {
    std::string from, to;
    // Labeled arcs come from splits; merge arcs leave these empty.
    std::string attribute, modality;
};

struct InductionGraph {
    AttributeSchema schema;
    std::vector<DiscretizationSpec> specs;  // numeric attributes only
    std::vector<GraphNode> nodes;
    std::vector<std::vector<std::string>> partitions;  // node ids per step, S_0..S_T
    std::vector<GraphArc> arcs;
    std::map<std::string, std::string> leaf_class;  // terminal node -> majority label
    LearnerParams params;

    const GraphNode& node(const std::string& id) const;
    // Modality of a training case or query for one attribute (numeric values
    // go through the matching spec).
    std::string modality_of(const Case& c, const std::string& attribute) const;
};

// Size-weighted mean uncertainty of a partition.
double partition_uncertainty(const InductionGraph& g, const std::vector<std::string>& node_ids);

struct SplitChild {
    std::vector<std::string> modalities;  // >1 when sub-mu bins were fused in
    std::vector<std::size_t> members;
};

struct RefineStep {
    enum class Kind { Split, Merge } kind;
    double gain = 0;
    std::string node_a;          // split node, or first merged node
    std::string node_b;          // merge only
    std::string attribute;       // split only
    std::vector<SplitChild> children;  // split only; empty bins already dropped
};

// The best admissible split or merge of the current partition, if any
// improves the weighted uncertainty by more than min_gain.
std::optional<RefineStep> refine_partition(const InductionGraph& g, const CaseBase& base,
                                           const std::vector<std::string>& partition);

InductionGraph build_graph(const CaseBase& base, const std::vector<DiscretizationSpec>& specs,
                           const LearnerParams& params);

// Production rules read off the terminal nodes: one rule per distinct
// satisfiable premise set reaching a leaf.
RuleBase extract_rules(const InductionGraph& g);

// Supervised cuts for one numeric attribute: the candidate cut points are
// midpoints between consecutive distinct values with different class
// distributions; picks the k-cut combination minimizing the weighted
// uncertainty of the induced bins (exhaustive for small candidate sets,
// greedy forward selection otherwise).
DiscretizationSpec supervised_cuts(const CaseBase& base, const std::string& attribute,
                                   std::size_t bins, const std::vector<std::string>& labels,
                                   Measure measure, double lambda);

void save_model(std::ostream& out, const InductionGraph& g);
InductionGraph load_model(std::istream& in);
void save_model_file(const std::string& path, const InductionGraph& g);
InductionGraph load_model_file(const std::string& path);

}  // namespace fuzzybml
