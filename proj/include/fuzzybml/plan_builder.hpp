#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fuzzybml/case_model.hpp"

namespace fuzzybml {

struct Task {
    std::string id;
    double duration = 0;
    double probability = 1;  // chance of success, in [0,1]
    double cost = 0;
};

enum class Combine { And, Or };

// Project decomposition: tasks wired by dependency arcs, each node tagged
// with how its incoming branches combine (AND = all required, OR = pick one).
// Two sentinels frame the graph: "initial" feeds every task without
// dependencies, "final" collects the goal tasks.
struct AndOrGraph {
    static constexpr const char* initial = "@initial";
    static constexpr const char* final_node = "@final";

    std::vector<Task> tasks;  // declaration order
    std::map<std::string, std::vector<std::string>> preds;  // node -> dependencies
    std::map<std::string, Combine> combine;                 // node -> incoming mode

    const Task& task(const std::string& id) const;
    // throws std::invalid_argument on duplicate/dangling ids or cycles,
    // naming a witness
    void check() const;
};

struct Plan {
    std::string label;  // "Plan1".. assigned after enumeration
    std::vector<std::string> tasks;  // topological order, deterministic
};

// Project file:
// {"tasks":[{"id","duration","probability","cost","depends_on":[...],
//            "combine":"and"|"or"}], "goal_combine":"and"|"or"}
// Tasks nobody depends on feed the final sentinel.
AndOrGraph load_project(std::istream& in);
AndOrGraph load_project_file(const std::string& path);
void save_project(std::ostream& out, const AndOrGraph& g);

// Every minimal task set realizing the goal: AND nodes take the union over
// all branches, OR nodes contribute one alternative per branch. Plans are
// deduplicated and sorted; labels "Plan1".."PlanN" follow that order.
std::vector<Plan> enumerate_plans(const AndOrGraph& g);

// How plan-level descriptors aggregate task values.
struct Aggregation {
    std::function<double(const std::vector<double>&)> duration;     // default: sum
    std::function<double(const std::vector<double>&)> probability;  // default: product
    std::function<double(const std::vector<double>&)> cost;        // default: sum

    static Aggregation defaults();
};

// One case per plan. The schema must expose exactly three numeric attributes,
// filled in order with aggregated duration, probability, cost; the plan label
// becomes the case label (each must appear in schema.class_labels).
CaseBase synthesize_cases(const AndOrGraph& g, const std::vector<Plan>& plans,
                          const AttributeSchema& schema,
                          const Aggregation& agg = Aggregation::defaults());

}  // namespace fuzzybml
