#include "fuzzybml/induction_graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fuzzybml {

using ordered_json = nlohmann::ordered_json;

double uncertainty(const std::vector<std::size_t>& counts, Measure measure, double lambda) {
    if (counts.empty()) return 0.0;
    std::size_t n = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    if (n == 0) return 0.0;
    double m = static_cast<double>(counts.size());
    double denom = static_cast<double>(n) + m * lambda;
    double u = 0.0;
    for (std::size_t nj : counts) {
        double f = (static_cast<double>(nj) + lambda) / denom;
        if (measure == Measure::Shannon) {
            if (f > 0.0) u -= f * std::log2(f);
        } else {
            u += f * (1.0 - f);
        }
    }
    return u;
}

const GraphNode& InductionGraph::node(const std::string& id) const {
    for (const auto& n : nodes)
        if (n.id == id) return n;
    throw std::invalid_argument("unknown node '" + id + "'");
}

std::string InductionGraph::modality_of(const Case& c, const std::string& attribute) const {
    const Attribute* attr = schema.find(attribute);
    if (!attr) throw std::invalid_argument("unknown attribute '" + attribute + "'");
    if (attr->kind == AttributeKind::Categorical) return c.category(attribute);
    for (const auto& spec : specs)
        if (spec.attribute == attribute) return spec.label_of(c.number(attribute));
    throw std::invalid_argument("numeric attribute '" + attribute + "' has no discretization");
}

namespace {

std::vector<std::size_t> count_classes(const CaseBase& base, const std::vector<std::size_t>& members) {
    std::vector<std::size_t> counts(base.schema.class_labels.size(), 0);
    for (std::size_t i : members) {
        const auto& label = *base.cases[i].label;
        auto it = std::find(base.schema.class_labels.begin(), base.schema.class_labels.end(), label);
        counts[static_cast<std::size_t>(it - base.schema.class_labels.begin())]++;
    }
    return counts;
}

std::size_t creation_index(const InductionGraph& g, const std::string& id) {
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        if (g.nodes[i].id == id) return i;
    throw std::invalid_argument("unknown node '" + id + "'");
}

// Modalities of one attribute in bin/declaration order.
std::vector<std::string> modalities_of(const InductionGraph& g, const Attribute& attr) {
    if (attr.kind == AttributeKind::Categorical) return attr.modalities;
    for (const auto& spec : g.specs)
        if (spec.attribute == attr.name) return spec.labels;
    return {};
}

}  // namespace

double partition_uncertainty(const InductionGraph& g, const std::vector<std::string>& node_ids) {
    std::size_t total = 0;
    for (const auto& id : node_ids) total += g.node(id).members.size();
    if (total == 0) return 0.0;
    double u = 0.0;
    for (const auto& id : node_ids) {
        const GraphNode& n = g.node(id);
        u += static_cast<double>(n.members.size()) / static_cast<double>(total) *
             uncertainty(n.class_counts, g.params.measure, g.params.lambda);
    }
    return u;
}

namespace {

double node_share(const InductionGraph& g, const std::vector<std::size_t>& counts,
                  std::size_t members, std::size_t total) {
    return static_cast<double>(members) / static_cast<double>(total) *
           uncertainty(counts, g.params.measure, g.params.lambda);
}

// Split of one node along one attribute, pooled to respect mu. nullopt when
// inadmissible (fewer than two children survive).
std::optional<std::vector<SplitChild>> split_node(const InductionGraph& g, const CaseBase& base,
                                                  const GraphNode& node, const Attribute& attr) {
    std::vector<std::string> mods = modalities_of(g, attr);
    std::vector<SplitChild> bins;
    for (const auto& m : mods) bins.push_back({{m}, {}});
    for (std::size_t i : node.members) {
        std::string m = g.modality_of(base.cases[i], attr.name);
        auto it = std::find(mods.begin(), mods.end(), m);
        bins[static_cast<std::size_t>(it - mods.begin())].members.push_back(i);
    }
    std::erase_if(bins, [](const SplitChild& b) { return b.members.empty(); });
    if (bins.size() < 2) return std::nullopt;

    std::size_t mu = g.params.min_node;
    SplitChild pool;
    std::vector<SplitChild> kept;
    for (auto& b : bins) {
        if (b.members.size() >= mu) {
            kept.push_back(std::move(b));
        } else {
            pool.modalities.insert(pool.modalities.end(), b.modalities.begin(), b.modalities.end());
            pool.members.insert(pool.members.end(), b.members.begin(), b.members.end());
        }
    }
    if (!pool.members.empty()) {
        if (pool.members.size() >= mu) {
            kept.push_back(std::move(pool));
        } else if (kept.empty()) {
            return std::nullopt;
        } else {
            // fuse the undersized pool into the smallest admissible sibling
            std::size_t best = 0;
            for (std::size_t i = 1; i < kept.size(); ++i)
                if (kept[i].members.size() < kept[best].members.size()) best = i;
            kept[best].modalities.insert(kept[best].modalities.end(), pool.modalities.begin(),
                                         pool.modalities.end());
            kept[best].members.insert(kept[best].members.end(), pool.members.begin(),
                                      pool.members.end());
        }
    }
    if (kept.size() < 2) return std::nullopt;
    // children in bin order of their first modality
    auto rank = [&](const SplitChild& c) {
        return std::find(mods.begin(), mods.end(), c.modalities.front()) - mods.begin();
    };
    std::sort(kept.begin(), kept.end(),
              [&](const SplitChild& x, const SplitChild& y) { return rank(x) < rank(y); });
    for (auto& c : kept) {
        std::sort(c.modalities.begin(), c.modalities.end(), [&](const auto& x, const auto& y) {
            return std::find(mods.begin(), mods.end(), x) < std::find(mods.begin(), mods.end(), y);
        });
        std::sort(c.members.begin(), c.members.end());
    }
    return kept;
}

}  // namespace

std::optional<RefineStep> refine_partition(const InductionGraph& g, const CaseBase& base,
                                           const std::vector<std::string>& partition) {
    std::size_t total = 0;
    for (const auto& id : partition) total += g.node(id).members.size();
    if (total == 0) return std::nullopt;

    std::optional<RefineStep> best;
    auto better = [&](const RefineStep& cand) {
        if (!best) return true;
        if (cand.gain != best->gain) return cand.gain > best->gain;
        if (cand.kind != best->kind) return cand.kind == RefineStep::Kind::Split;
        if (cand.node_a != best->node_a)
            return creation_index(g, cand.node_a) < creation_index(g, best->node_a);
        if (cand.kind == RefineStep::Kind::Split) return cand.attribute < best->attribute;
        return creation_index(g, cand.node_b) < creation_index(g, best->node_b);
    };

    for (const auto& id : partition) {
        const GraphNode& node = g.node(id);
        double before = node_share(g, node.class_counts, node.members.size(), total);
        for (const auto& attr : g.schema.attributes) {
            auto children = split_node(g, base, node, attr);
            if (!children) continue;
            double after = 0.0;
            for (const auto& c : *children)
                after += node_share(g, count_classes(base, c.members), c.members.size(), total);
            RefineStep cand;
            cand.kind = RefineStep::Kind::Split;
            cand.gain = before - after;
            cand.node_a = id;
            cand.attribute = attr.name;
            cand.children = std::move(*children);
            if (cand.gain > g.params.min_gain && better(cand)) best = std::move(cand);
        }
    }

    for (std::size_t i = 0; i < partition.size(); ++i) {
        for (std::size_t j = i + 1; j < partition.size(); ++j) {
            const GraphNode& a = g.node(partition[i]);
            const GraphNode& b = g.node(partition[j]);
            std::vector<std::size_t> counts = a.class_counts;
            for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += b.class_counts[k];
            double before = node_share(g, a.class_counts, a.members.size(), total) +
                            node_share(g, b.class_counts, b.members.size(), total);
            double after = node_share(g, counts, a.members.size() + b.members.size(), total);
            RefineStep cand;
            cand.kind = RefineStep::Kind::Merge;
            cand.gain = before - after;
            cand.node_a = partition[i];
            cand.node_b = partition[j];
            if (cand.gain > g.params.min_gain && better(cand)) best = std::move(cand);
        }
    }
    return best;
}

namespace {

void check_training_inputs(const CaseBase& base, const std::vector<DiscretizationSpec>& specs) {
    base.schema.check();
    if (base.cases.empty()) throw std::invalid_argument("training base is empty");
    for (const auto& c : base.cases)
        if (!c.label) throw std::invalid_argument("case '" + c.id + "' has no plan label");
    std::set<std::string> covered;
    for (const auto& spec : specs) {
        spec.check();
        const Attribute* attr = base.schema.find(spec.attribute);
        if (!attr)
            throw std::invalid_argument("discretization targets unknown attribute '" +
                                        spec.attribute + "'");
        if (attr->kind != AttributeKind::Numeric)
            throw std::invalid_argument("attribute '" + spec.attribute +
                                        "' is categorical, not discretizable");
        if (!covered.insert(spec.attribute).second)
            throw std::invalid_argument("duplicate discretization for '" + spec.attribute + "'");
    }
    for (const auto& attr : base.schema.attributes)
        if (attr.kind == AttributeKind::Numeric && !covered.count(attr.name))
            throw std::invalid_argument("numeric attribute '" + attr.name +
                                        "' has no discretization");
}

}  // namespace

InductionGraph build_graph(const CaseBase& base, const std::vector<DiscretizationSpec>& specs,
                           const LearnerParams& params) {
    check_training_inputs(base, specs);
    InductionGraph g;
    g.schema = base.schema;
    g.specs = specs;
    g.params = params;

    GraphNode root;
    root.id = "s0";
    root.depth = 0;
    root.members.resize(base.size());
    std::iota(root.members.begin(), root.members.end(), std::size_t{0});
    root.class_counts = count_classes(base, root.members);
    g.nodes.push_back(std::move(root));
    g.partitions.push_back({"s0"});

    for (std::size_t step = 1; step <= params.max_depth; ++step) {
        const std::vector<std::string>& current = g.partitions.back();
        auto refine = refine_partition(g, base, current);
        if (!refine) break;

        std::vector<std::string> next;
        auto new_node = [&](std::vector<std::size_t> members) {
            GraphNode n;
            n.id = "s" + std::to_string(g.nodes.size());
            n.depth = step;
            n.members = std::move(members);
            n.class_counts = count_classes(base, n.members);
            g.nodes.push_back(n);
            return g.nodes.back().id;
        };

        if (refine->kind == RefineStep::Kind::Split) {
            for (const auto& id : current) {
                if (id != refine->node_a) {
                    next.push_back(id);
                    continue;
                }
                for (const auto& child : refine->children) {
                    std::string cid = new_node(child.members);
                    next.push_back(cid);
                    for (const auto& m : child.modalities)
                        g.arcs.push_back({id, cid, refine->attribute, m});
                }
            }
        } else {
            bool placed = false;
            std::string mid;
            for (const auto& id : current) {
                if (id != refine->node_a && id != refine->node_b) {
                    next.push_back(id);
                    continue;
                }
                if (!placed) {  // merged node sits where the first operand was
                    std::vector<std::size_t> members = g.node(refine->node_a).members;
                    const auto& bm = g.node(refine->node_b).members;
                    members.insert(members.end(), bm.begin(), bm.end());
                    std::sort(members.begin(), members.end());
                    mid = new_node(std::move(members));
                    next.push_back(mid);
                    placed = true;
                }
            }
            g.arcs.push_back({refine->node_a, mid, "", ""});
            g.arcs.push_back({refine->node_b, mid, "", ""});
        }
        g.partitions.push_back(std::move(next));
    }

    for (const auto& id : g.partitions.back()) {
        const GraphNode& n = g.node(id);
        std::size_t best = 0;
        for (std::size_t k = 1; k < n.class_counts.size(); ++k)
            if (n.class_counts[k] > n.class_counts[best] ||
                (n.class_counts[k] == n.class_counts[best] &&
                 g.schema.class_labels[k] < g.schema.class_labels[best]))
                best = k;
        g.leaf_class[id] = g.schema.class_labels[best];
    }
    return g;
}

namespace {

using PremiseSet = std::map<std::string, std::string>;  // attribute -> modality

// Premise families per node: every satisfiable conjunction of arc labels
// along some root path. Unsatisfiable combinations (two modalities of one
// attribute) are dropped.
struct FamilyWalk {
    const InductionGraph& g;
    std::map<std::string, std::vector<PremiseSet>> memo;

    const std::vector<PremiseSet>& families(const std::string& id) {
        auto it = memo.find(id);
        if (it != memo.end()) return it->second;
        std::vector<PremiseSet> out;
        bool has_parent = false;
        for (const auto& arc : g.arcs) {
            if (arc.to != id) continue;
            has_parent = true;
            for (const auto& base : families(arc.from)) {
                if (arc.attribute.empty()) {  // merge arc carries no condition
                    out.push_back(base);
                    continue;
                }
                auto found = base.find(arc.attribute);
                if (found != base.end() && found->second != arc.modality) continue;
                PremiseSet ext = base;
                ext[arc.attribute] = arc.modality;
                out.push_back(std::move(ext));
            }
        }
        if (!has_parent) out.push_back({});  // root
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return memo.emplace(id, std::move(out)).first->second;
    }
};

}  // namespace

RuleBase extract_rules(const InductionGraph& g) {
    FamilyWalk walk{g, {}};
    RuleBase rb;
    std::set<std::string> seen_facts;
    auto add_fact = [&](const std::string& label) {
        if (seen_facts.insert(label).second) rb.facts.push_back(label);
    };
    std::set<std::pair<std::vector<std::string>, std::string>> seen_rules;
    for (const auto& id : g.partitions.back()) {
        const std::string& conclusion = g.leaf_class.at(id);
        for (const auto& family : walk.families(id)) {
            std::vector<std::string> premises;
            for (const auto& [attr, mod] : family) premises.push_back(fact_label(attr, mod));
            std::sort(premises.begin(), premises.end());
            if (!seen_rules.insert({premises, conclusion}).second) continue;
            Rule r;
            r.id = "R_" + std::to_string(rb.rules.size() + 1);
            r.premises = premises;
            r.conclusion = conclusion;
            for (const auto& p : premises) add_fact(p);
            add_fact(conclusion);
            rb.rules.push_back(std::move(r));
        }
    }
    rb.check();
    return rb;
}

DiscretizationSpec supervised_cuts(const CaseBase& base, const std::string& attribute,
                                   std::size_t bins, const std::vector<std::string>& labels,
                                   Measure measure, double lambda) {
    if (bins < 2) throw std::invalid_argument("supervised cuts need at least 2 bins");
    if (labels.size() != bins)
        throw std::invalid_argument("need " + std::to_string(bins) + " bin labels, have " +
                                    std::to_string(labels.size()));
    const Attribute* attr = base.schema.find(attribute);
    if (!attr || attr->kind != AttributeKind::Numeric)
        throw std::invalid_argument("'" + attribute + "' is not a numeric attribute");
    std::vector<double> values;
    for (const auto& c : base.cases) {
        if (!c.label) throw std::invalid_argument("case '" + c.id + "' has no plan label");
        values.push_back(c.number(attribute));
    }
    std::vector<double> distinct = values;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::vector<double> candidates;
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i)
        candidates.push_back(distinct[i] + (distinct[i + 1] - distinct[i]) / 2);
    std::size_t k = bins - 1;
    if (candidates.size() < k)
        throw std::invalid_argument("attribute '" + attribute + "' has only " +
                                    std::to_string(distinct.size()) +
                                    " distinct values, too few for " + std::to_string(bins) +
                                    " bins");

    std::size_t nclasses = base.schema.class_labels.size();
    auto class_of = [&](const Case& c) {
        auto it = std::find(base.schema.class_labels.begin(), base.schema.class_labels.end(),
                            *c.label);
        return static_cast<std::size_t>(it - base.schema.class_labels.begin());
    };
    auto score = [&](const std::vector<double>& cuts) {
        std::vector<std::vector<std::size_t>> counts(cuts.size() + 1,
                                                     std::vector<std::size_t>(nclasses, 0));
        for (const auto& c : base.cases) {
            double x = c.number(attribute);
            std::size_t b = 0;
            while (b < cuts.size() && x >= cuts[b]) ++b;
            counts[b][class_of(c)]++;
        }
        double u = 0.0;
        for (const auto& bin : counts) {
            std::size_t n = std::accumulate(bin.begin(), bin.end(), std::size_t{0});
            u += static_cast<double>(n) / static_cast<double>(base.size()) *
                 uncertainty(bin, measure, lambda);
        }
        return u;
    };

    std::vector<double> best_cuts;
    double best_score = 0;
    bool have_best = false;
    // number of k-subsets of the candidates
    double combos = 1;
    for (std::size_t i = 0; i < k; ++i)
        combos *= static_cast<double>(candidates.size() - i) / static_cast<double>(i + 1);
    if (combos <= 20000) {
        std::vector<std::size_t> idx(k);
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        while (true) {
            std::vector<double> cuts;
            for (std::size_t i : idx) cuts.push_back(candidates[i]);
            double s = score(cuts);
            if (!have_best || s < best_score) {
                best_score = s;
                best_cuts = cuts;
                have_best = true;
            }
            // next combination in lexicographic order
            std::size_t i = k;
            while (i > 0 && idx[i - 1] == candidates.size() - (k - (i - 1))) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    } else {
        // greedy forward selection, one cut at a time
        std::vector<double> chosen;
        std::set<double> used;
        for (std::size_t round = 0; round < k; ++round) {
            double round_best = 0;
            double round_cut = 0;
            bool found = false;
            for (double c : candidates) {
                if (used.count(c)) continue;
                std::vector<double> trial = chosen;
                trial.insert(std::upper_bound(trial.begin(), trial.end(), c), c);
                double s = score(trial);
                if (!found || s < round_best) {
                    round_best = s;
                    round_cut = c;
                    found = true;
                }
            }
            chosen.insert(std::upper_bound(chosen.begin(), chosen.end(), round_cut), round_cut);
            used.insert(round_cut);
        }
        best_cuts = chosen;
    }

    DiscretizationSpec spec;
    spec.attribute = attribute;
    spec.cuts = best_cuts;
    spec.labels = labels;
    spec.check();
    return spec;
}

namespace {

ordered_json schema_to_json(const AttributeSchema& schema) {
    ordered_json jattrs = ordered_json::array();
    for (const auto& a : schema.attributes) {
        ordered_json ja;
        ja["name"] = a.name;
        ja["kind"] = a.kind == AttributeKind::Numeric ? "numeric" : "categorical";
        if (a.kind == AttributeKind::Categorical) ja["modalities"] = a.modalities;
        jattrs.push_back(std::move(ja));
    }
    ordered_json j;
    j["attributes"] = std::move(jattrs);
    j["class_labels"] = schema.class_labels;
    return j;
}

AttributeSchema schema_from_json(const ordered_json& j) {
    AttributeSchema schema;
    for (const auto& ja : j.at("attributes")) {
        Attribute a;
        a.name = ja.at("name").get<std::string>();
        std::string kind = ja.at("kind").get<std::string>();
        if (kind == "numeric")
            a.kind = AttributeKind::Numeric;
        else if (kind == "categorical")
            a.kind = AttributeKind::Categorical;
        else
            throw std::invalid_argument("model: unknown attribute kind '" + kind + "'");
        if (ja.contains("modalities"))
            a.modalities = ja.at("modalities").get<std::vector<std::string>>();
        schema.attributes.push_back(std::move(a));
    }
    schema.class_labels = j.at("class_labels").get<std::vector<std::string>>();
    schema.check();
    return schema;
}

}  // namespace

void save_model(std::ostream& out, const InductionGraph& g) {
    ordered_json j;
    j["format"] = "fuzzybml-model/1";
    j["schema"] = schema_to_json(g.schema);
    ordered_json jspecs = ordered_json::array();
    for (const auto& s : g.specs) {
        ordered_json js;
        js["attribute"] = s.attribute;
        js["cuts"] = s.cuts;
        js["labels"] = s.labels;
        jspecs.push_back(std::move(js));
    }
    j["discretizations"] = std::move(jspecs);
    ordered_json jp;
    jp["measure"] = g.params.measure == Measure::Shannon ? "shannon" : "quadratic";
    jp["lambda"] = g.params.lambda;
    jp["min_node"] = g.params.min_node;
    jp["min_gain"] = g.params.min_gain;
    jp["max_depth"] = g.params.max_depth;
    j["params"] = std::move(jp);
    ordered_json jnodes = ordered_json::array();
    for (const auto& n : g.nodes) {
        ordered_json jn;
        jn["id"] = n.id;
        jn["depth"] = n.depth;
        jn["members"] = n.members;
        jn["class_counts"] = n.class_counts;
        jnodes.push_back(std::move(jn));
    }
    j["nodes"] = std::move(jnodes);
    j["partitions"] = g.partitions;
    ordered_json jarcs = ordered_json::array();
    for (const auto& a : g.arcs) {
        ordered_json ja;
        ja["from"] = a.from;
        ja["to"] = a.to;
        if (!a.attribute.empty()) {
            ja["attribute"] = a.attribute;
            ja["modality"] = a.modality;
        }
        jarcs.push_back(std::move(ja));
    }
    j["arcs"] = std::move(jarcs);
    ordered_json jleaf = ordered_json::object();
    for (const auto& [id, cls] : g.leaf_class) jleaf[id] = cls;
    j["leaf_classes"] = std::move(jleaf);
    out << j.dump(2) << '\n';
}

InductionGraph load_model(std::istream& in) {
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("model: invalid JSON: ") + e.what());
    }
    if (j.value("format", "") != "fuzzybml-model/1")
        throw std::invalid_argument("model: missing or unsupported format tag");
    InductionGraph g;
    g.schema = schema_from_json(j.at("schema"));
    for (const auto& js : j.at("discretizations")) {
        DiscretizationSpec s;
        s.attribute = js.at("attribute").get<std::string>();
        s.cuts = js.at("cuts").get<std::vector<double>>();
        s.labels = js.at("labels").get<std::vector<std::string>>();
        s.check();
        g.specs.push_back(std::move(s));
    }
    const auto& jp = j.at("params");
    std::string measure = jp.at("measure").get<std::string>();
    if (measure == "shannon")
        g.params.measure = Measure::Shannon;
    else if (measure == "quadratic")
        g.params.measure = Measure::Quadratic;
    else
        throw std::invalid_argument("model: unknown measure '" + measure + "'");
    g.params.lambda = jp.at("lambda").get<double>();
    g.params.min_node = jp.at("min_node").get<std::size_t>();
    g.params.min_gain = jp.at("min_gain").get<double>();
    g.params.max_depth = jp.at("max_depth").get<std::size_t>();
    for (const auto& jn : j.at("nodes")) {
        GraphNode n;
        n.id = jn.at("id").get<std::string>();
        n.depth = jn.at("depth").get<std::size_t>();
        n.members = jn.at("members").get<std::vector<std::size_t>>();
        n.class_counts = jn.at("class_counts").get<std::vector<std::size_t>>();
        g.nodes.push_back(std::move(n));
    }
    g.partitions = j.at("partitions").get<std::vector<std::vector<std::string>>>();
    for (const auto& ja : j.at("arcs")) {
        GraphArc a;
        a.from = ja.at("from").get<std::string>();
        a.to = ja.at("to").get<std::string>();
        a.attribute = ja.value("attribute", "");
        a.modality = ja.value("modality", "");
        g.arcs.push_back(std::move(a));
    }
    for (const auto& [id, cls] : j.at("leaf_classes").items())
        g.leaf_class[id] = cls.get<std::string>();
    if (g.nodes.empty() || g.partitions.empty())
        throw std::invalid_argument("model: no nodes");
    for (const auto& p : g.partitions)
        for (const auto& id : p) g.node(id);  // throws on dangling ids
    for (const auto& [id, cls] : g.leaf_class) {
        g.node(id);
        if (std::find(g.schema.class_labels.begin(), g.schema.class_labels.end(), cls) ==
            g.schema.class_labels.end())
            throw std::invalid_argument("model: leaf class '" + cls + "' not in schema");
    }
    return g;
}

void save_model_file(const std::string& path, const InductionGraph& g) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write model '" + path + "'");
    save_model(out, g);
}

InductionGraph load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model '" + path + "'");
    return load_model(in);
}

}  // namespace fuzzybml
