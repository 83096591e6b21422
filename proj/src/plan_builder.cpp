#include "fuzzybml/plan_builder.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fuzzybml {

using ordered_json = nlohmann::ordered_json;

const Task& AndOrGraph::task(const std::string& id) const {
    for (const auto& t : tasks)
        if (t.id == id) return t;
    throw std::invalid_argument("unknown task '" + id + "'");
}

void AndOrGraph::check() const {
    std::set<std::string> ids;
    for (const auto& t : tasks) {
        if (t.id.empty()) throw std::invalid_argument("task with empty id");
        if (t.id == initial || t.id == final_node)
            throw std::invalid_argument("task id '" + t.id + "' is reserved");
        if (!ids.insert(t.id).second)
            throw std::invalid_argument("duplicate task '" + t.id + "'");
        if (!(t.duration >= 0)) throw std::invalid_argument("task '" + t.id + "': negative duration");
        if (!(t.probability >= 0 && t.probability <= 1))
            throw std::invalid_argument("task '" + t.id + "': probability outside [0,1]");
        if (!(t.cost >= 0)) throw std::invalid_argument("task '" + t.id + "': negative cost");
    }
    for (const auto& [node, deps] : preds) {
        if (node != final_node && !ids.count(node))
            throw std::invalid_argument("dependency list for unknown task '" + node + "'");
        std::set<std::string> seen;
        for (const auto& d : deps) {
            if (d != initial && !ids.count(d))
                throw std::invalid_argument("task '" + node + "' depends on unknown task '" + d + "'");
            if (!seen.insert(d).second)
                throw std::invalid_argument("task '" + node + "' depends on '" + d + "' twice");
            if (d == node) throw std::invalid_argument("task '" + node + "' depends on itself");
        }
    }
    // cycle check: depth-first over preds, naming the loop found
    std::map<std::string, int> state;  // 0 fresh, 1 on stack, 2 done
    std::vector<std::string> stack;
    std::function<void(const std::string&)> visit = [&](const std::string& node) {
        state[node] = 1;
        stack.push_back(node);
        auto it = preds.find(node);
        if (it != preds.end()) {
            for (const auto& d : it->second) {
                if (d == initial) continue;
                int s = state.count(d) ? state[d] : 0;
                if (s == 1) {
                    std::string msg = "dependency cycle: ";
                    auto from = std::find(stack.begin(), stack.end(), d);
                    for (auto p = from; p != stack.end(); ++p) msg += *p + " -> ";
                    throw std::invalid_argument(msg + d);
                }
                if (s == 0) visit(d);
            }
        }
        stack.pop_back();
        state[node] = 2;
    };
    for (const auto& t : tasks)
        if ((state.count(t.id) ? state[t.id] : 0) == 0) visit(t.id);
}

AndOrGraph load_project(std::istream& in) {
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("project: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("tasks") || !j["tasks"].is_array())
        throw std::invalid_argument("project: expected {\"tasks\": [...]}");
    auto parse_combine = [](const ordered_json& v, const std::string& where) {
        std::string s = v.get<std::string>();
        if (s == "and") return Combine::And;
        if (s == "or") return Combine::Or;
        throw std::invalid_argument("project: " + where + ": combine must be \"and\" or \"or\"");
    };
    AndOrGraph g;
    for (const auto& jt : j["tasks"]) {
        Task t;
        t.id = jt.value("id", "");
        if (t.id.empty()) throw std::invalid_argument("project: task without id");
        t.duration = jt.value("duration", 0.0);
        t.probability = jt.value("probability", 1.0);
        t.cost = jt.value("cost", 0.0);
        std::vector<std::string> deps;
        if (jt.contains("depends_on")) deps = jt["depends_on"].get<std::vector<std::string>>();
        if (deps.empty()) deps.push_back(AndOrGraph::initial);
        g.preds[t.id] = std::move(deps);
        g.combine[t.id] =
            jt.contains("combine") ? parse_combine(jt["combine"], "task '" + t.id + "'") : Combine::And;
        g.tasks.push_back(std::move(t));
    }
    // goal tasks: the ones nothing depends on
    std::set<std::string> depended;
    for (const auto& [node, deps] : g.preds)
        for (const auto& d : deps) depended.insert(d);
    std::vector<std::string> goals;
    for (const auto& t : g.tasks)
        if (!depended.count(t.id)) goals.push_back(t.id);
    if (goals.empty() && !g.tasks.empty())
        throw std::invalid_argument("project: no goal task (every task is depended on)");
    g.preds[AndOrGraph::final_node] = std::move(goals);
    g.combine[AndOrGraph::final_node] =
        j.contains("goal_combine") ? parse_combine(j["goal_combine"], "goal_combine") : Combine::And;
    g.check();
    return g;
}

AndOrGraph load_project_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open project '" + path + "'");
    return load_project(in);
}

void save_project(std::ostream& out, const AndOrGraph& g) {
    ordered_json jtasks = ordered_json::array();
    for (const auto& t : g.tasks) {
        ordered_json jt;
        jt["id"] = t.id;
        jt["duration"] = t.duration;
        jt["probability"] = t.probability;
        jt["cost"] = t.cost;
        auto it = g.preds.find(t.id);
        if (it != g.preds.end() &&
            !(it->second.size() == 1 && it->second[0] == AndOrGraph::initial))
            jt["depends_on"] = it->second;
        auto c = g.combine.find(t.id);
        if (c != g.combine.end() && c->second == Combine::Or) jt["combine"] = "or";
        jtasks.push_back(std::move(jt));
    }
    ordered_json j;
    j["tasks"] = std::move(jtasks);
    auto c = g.combine.find(AndOrGraph::final_node);
    if (c != g.combine.end() && c->second == Combine::Or) j["goal_combine"] = "or";
    out << j.dump(2) << '\n';
}

namespace {

using TaskSet = std::set<std::string>;
// An OR join shared by several AND branches must resolve to the same
// dependency everywhere in one plan, so every alternative carries the
// commitments (join -> picked dependency index) that produced it.
using Choices = std::map<std::string, std::size_t>;
using PlanAlt = std::pair<TaskSet, Choices>;

// Alternatives realizing one node: AND = every way of picking one alternative
// per branch, merged when their OR commitments agree; OR = any single
// branch's alternative, committed to that branch.
struct PlanWalk {
    const AndOrGraph& g;
    std::map<std::string, std::vector<PlanAlt>> memo;

    static bool compatible(const Choices& a, const Choices& b) {
        for (const auto& [join, pick] : a) {
            auto it = b.find(join);
            if (it != b.end() && it->second != pick) return false;
        }
        return true;
    }

    std::vector<PlanAlt> alternatives(const std::string& node) {
        auto it = memo.find(node);
        if (it != memo.end()) return it->second;
        std::vector<PlanAlt> out;
        if (node == AndOrGraph::initial) {
            out.push_back({});
            memo[node] = out;
            return out;
        }
        auto pit = g.preds.find(node);
        std::vector<std::string> deps = pit == g.preds.end() ? std::vector<std::string>{}
                                                             : pit->second;
        if (deps.empty()) deps.push_back(AndOrGraph::initial);
        Combine mode = Combine::And;
        auto cit = g.combine.find(node);
        if (cit != g.combine.end()) mode = cit->second;

        if (mode == Combine::Or && deps.size() > 1) {
            for (std::size_t i = 0; i < deps.size(); ++i)
                for (PlanAlt alt : alternatives(deps[i])) {
                    alt.second[node] = i;
                    out.push_back(std::move(alt));
                }
        } else {  // a single-dependency OR requires that dependency all the same
            out.push_back({});
            for (const auto& d : deps) {
                std::vector<PlanAlt> expanded;
                for (const auto& partial : out)
                    for (const auto& alt : alternatives(d)) {
                        if (!compatible(partial.second, alt.second)) continue;
                        PlanAlt merged = partial;
                        merged.first.insert(alt.first.begin(), alt.first.end());
                        merged.second.insert(alt.second.begin(), alt.second.end());
                        expanded.push_back(std::move(merged));
                    }
                out = std::move(expanded);
            }
        }
        if (node != AndOrGraph::final_node)
            for (auto& alt : out) alt.first.insert(node);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        memo[node] = out;
        return out;
    }
};

// Deterministic topological order of all tasks (Kahn, lexicographically
// smallest id first); fixes the task order inside every plan.
std::vector<std::string> topo_order(const AndOrGraph& g) {
    std::map<std::string, std::set<std::string>> waiting;  // task -> unmet deps
    for (const auto& t : g.tasks) {
        auto it = g.preds.find(t.id);
        std::set<std::string> deps;
        if (it != g.preds.end())
            for (const auto& d : it->second)
                if (d != AndOrGraph::initial) deps.insert(d);
        waiting[t.id] = std::move(deps);
    }
    std::vector<std::string> order;
    std::set<std::string> ready;
    for (const auto& [id, deps] : waiting)
        if (deps.empty()) ready.insert(id);
    while (!ready.empty()) {
        std::string id = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(id);
        for (auto& [other, deps] : waiting) {
            if (deps.erase(id) && deps.empty() &&
                std::find(order.begin(), order.end(), other) == order.end())
                ready.insert(other);
        }
    }
    return order;
}

}  // namespace

std::vector<Plan> enumerate_plans(const AndOrGraph& g) {
    g.check();
    PlanWalk walk{g, {}};
    std::vector<PlanAlt> alts = walk.alternatives(AndOrGraph::final_node);
    std::vector<std::string> order = topo_order(g);
    std::vector<Plan> plans;
    for (const auto& [s, choices] : alts) {
        Plan p;
        for (const auto& id : order)
            if (s.count(id)) p.tasks.push_back(id);
        plans.push_back(std::move(p));
    }
    std::sort(plans.begin(), plans.end(),
              [](const Plan& a, const Plan& b) { return a.tasks < b.tasks; });
    plans.erase(std::unique(plans.begin(), plans.end(),
                            [](const Plan& a, const Plan& b) { return a.tasks == b.tasks; }),
                plans.end());
    for (std::size_t i = 0; i < plans.size(); ++i)
        plans[i].label = "Plan" + std::to_string(i + 1);
    return plans;
}

Aggregation Aggregation::defaults() {
    Aggregation agg;
    agg.duration = [](const std::vector<double>& v) {
        double s = 0;
        for (double x : v) s += x;
        return s;
    };
    agg.probability = [](const std::vector<double>& v) {
        double p = 1;
        for (double x : v) p *= x;
        return p;
    };
    agg.cost = agg.duration;
    return agg;
}

CaseBase synthesize_cases(const AndOrGraph& g, const std::vector<Plan>& plans,
                          const AttributeSchema& schema, const Aggregation& agg) {
    schema.check();
    std::vector<const Attribute*> numeric;
    for (const auto& a : schema.attributes)
        if (a.kind == AttributeKind::Numeric) numeric.push_back(&a);
    if (numeric.size() != 3 || schema.attributes.size() != 3)
        throw std::invalid_argument(
            "plan synthesis needs a schema with exactly three numeric attributes "
            "(duration, probability, cost)");
    CaseBase base;
    base.schema = schema;
    for (std::size_t i = 0; i < plans.size(); ++i) {
        const Plan& p = plans[i];
        if (std::find(schema.class_labels.begin(), schema.class_labels.end(), p.label) ==
            schema.class_labels.end())
            throw std::invalid_argument("plan label '" + p.label + "' not in schema classes");
        std::vector<double> durations, probabilities, costs;
        for (const auto& id : p.tasks) {
            const Task& t = g.task(id);
            durations.push_back(t.duration);
            probabilities.push_back(t.probability);
            costs.push_back(t.cost);
        }
        Case c;
        c.id = "p" + std::to_string(i + 1);
        c.values[numeric[0]->name] = agg.duration(durations);
        c.values[numeric[1]->name] = agg.probability(probabilities);
        c.values[numeric[2]->name] = agg.cost(costs);
        c.label = p.label;
        base.cases.push_back(std::move(c));
    }
    return base;
}

}  // namespace fuzzybml
