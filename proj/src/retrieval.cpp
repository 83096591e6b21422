#include "fuzzybml/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fuzzybml {

std::string method_name(Method m) {
    switch (m) {
        case Method::FuzzyBml: return "fuzzy-bml";
        case Method::Tree: return "tree";
        case Method::Knn: return "knn";
    }
    return "?";
}

std::string protocol_name(Protocol p) {
    switch (p) {
        case Protocol::Resubstitution: return "resubstitution";
        case Protocol::Holdout: return "holdout";
        case Protocol::Loocv: return "loocv";
    }
    return "?";
}

namespace {

// Cuts for every numeric attribute: fuzzy crossovers beat explicit specs,
// explicit specs beat supervised selection.
std::vector<DiscretizationSpec> resolve_specs(const TrainingRecipe& recipe, const CaseBase& base) {
    std::vector<DiscretizationSpec> specs;
    std::set<std::string> covered;
    // the tree takes the crisp projection of the same partitions, keeping
    // method comparisons on identical bins
    for (const auto& v : recipe.variables) {
        const Attribute* attr = base.schema.find(v.name);
        if (!attr)
            throw std::invalid_argument("fuzzy variable '" + v.name + "' matches no attribute");
        if (attr->kind != AttributeKind::Numeric)
            throw std::invalid_argument("fuzzy variable '" + v.name +
                                        "' targets a categorical attribute");
        v.check();
        specs.push_back(crisp_spec(v));
        covered.insert(v.name);
    }
    for (const auto& s : recipe.specs) {
        if (covered.count(s.attribute)) continue;  // crossover cuts win
        s.check();
        specs.push_back(s);
        covered.insert(s.attribute);
    }
    for (const auto& attr : base.schema.attributes) {
        if (attr.kind != AttributeKind::Numeric || covered.count(attr.name)) continue;
        std::vector<std::string> labels;
        for (std::size_t i = 1; i <= recipe.supervised_bins; ++i)
            labels.push_back("bin" + std::to_string(i));
        specs.push_back(supervised_cuts(base, attr.name, recipe.supervised_bins, labels,
                                        recipe.params.measure, recipe.params.lambda));
    }
    return specs;
}

}  // namespace

std::vector<FuzzyAssignment> case_assignments(const Case& c, const AttributeSchema& schema,
                                              const std::vector<LinguisticVariable>& variables,
                                              const std::vector<DiscretizationSpec>& specs) {
    std::vector<FuzzyAssignment> out;
    for (const auto& attr : schema.attributes) {
        const LinguisticVariable* var = nullptr;
        for (const auto& v : variables)
            if (v.name == attr.name) var = &v;
        if (var) {
            out.push_back(fuzzify(*var, c.number(attr.name)));
            continue;
        }
        FuzzyAssignment asg;
        asg.variable = attr.name;
        if (attr.kind == AttributeKind::Categorical) {
            asg.degrees[c.category(attr.name)] = 1.0;
        } else {
            const DiscretizationSpec* spec = nullptr;
            for (const auto& s : specs)
                if (s.attribute == attr.name) spec = &s;
            if (!spec)
                throw std::invalid_argument("attribute '" + attr.name +
                                            "' has neither fuzzy terms nor cuts");
            asg.degrees[spec->label_of(c.number(attr.name))] = 1.0;
        }
        out.push_back(std::move(asg));
    }
    return out;
}

AutomatonConfig index_case(const CellularKnowledgeBase& kb,
                           const std::vector<FuzzyAssignment>& assignments, double cutoff) {
    std::vector<FuzzyAssignment> known;
    for (const auto& asg : assignments) {
        FuzzyAssignment kept;
        kept.variable = asg.variable;
        for (const auto& [term, degree] : asg.degrees)
            if (kb.fact_index(fact_label(asg.variable, term)) != CellularKnowledgeBase::npos)
                kept.degrees[term] = degree;
        if (!kept.degrees.empty()) known.push_back(std::move(kept));
    }
    return assert_fuzzy(kb, known, cutoff);
}

Classifier Classifier::train(const TrainingRecipe& recipe, const CaseBase& base) {
    base.schema.check();
    if (base.cases.empty()) throw std::invalid_argument("training base is empty");
    for (const auto& c : base.cases)
        if (!c.label) throw std::invalid_argument("case '" + c.id + "' has no plan label");

    Classifier clf;
    clf.recipe_ = recipe;
    clf.schema_ = base.schema;
    if (recipe.method == Method::Knn) {
        if (recipe.k == 0) throw std::invalid_argument("knn needs k >= 1");
        clf.train_base_ = base;
        for (const auto& attr : base.schema.attributes) {
            double lo = 0, hi = 0;
            if (attr.kind == AttributeKind::Numeric) {
                bool first = true;
                for (const auto& c : base.cases) {
                    double x = c.number(attr.name);
                    if (first || x < lo) lo = x;
                    if (first || x > hi) hi = x;
                    first = false;
                }
            }
            clf.ranges_.emplace_back(lo, hi);
        }
        return clf;
    }

    clf.recipe_.specs = resolve_specs(recipe, base);
    clf.graph_ = build_graph(base, clf.recipe_.specs, recipe.params);
    if (recipe.method == Method::FuzzyBml) {
        clf.rules_ = extract_rules(*clf.graph_);
        clf.kb_ = compile(*clf.rules_);
    }
    return clf;
}

const InductionGraph& Classifier::graph() const {
    if (!graph_) throw std::logic_error("classifier has no induction graph");
    return *graph_;
}

const RuleBase& Classifier::rules() const {
    if (!rules_) throw std::logic_error("classifier has no rule base");
    return *rules_;
}

const CellularKnowledgeBase& Classifier::kb() const {
    if (!kb_) throw std::logic_error("classifier has no compiled base");
    return *kb_;
}

Prediction Classifier::predict_fuzzy(const Case& c) const {
    auto assignments = case_assignments(c, schema_, recipe_.variables, recipe_.specs);
    AutomatonConfig g0 = index_case(*kb_, assignments, recipe_.cutoff);
    ChainResult chain = fuzzy_infer(*kb_, std::move(g0));
    std::vector<std::string> classes;
    for (const auto& cls : schema_.class_labels)
        if (kb_->fact_index(cls) != CellularKnowledgeBase::npos) classes.push_back(cls);
    Decision d = defuzzify(*kb_, chain.trace.back(), classes);
    Prediction p;
    p.label = d.label;
    p.degree = d.degree;
    if (!d.label) p.note = "no class fact established";
    return p;
}

Prediction Classifier::predict_tree(const Case& c) const {
    const InductionGraph& g = *graph_;
    std::string cur = g.partitions.front().front();
    for (;;) {
        auto leaf = g.leaf_class.find(cur);
        if (leaf != g.leaf_class.end()) return {leaf->second, 1.0, ""};
        std::vector<const GraphArc*> out;
        for (const auto& a : g.arcs)
            if (a.from == cur) out.push_back(&a);
        if (out.empty()) return {std::nullopt, 0.0, "node '" + cur + "' has no class"};
        if (out.front()->attribute.empty()) {  // merge arc, followed unconditionally
            cur = out.front()->to;
            continue;
        }
        std::string mod = g.modality_of(c, out.front()->attribute);
        const GraphArc* next = nullptr;
        for (const GraphArc* a : out)
            if (a->modality == mod) next = a;
        if (!next)
            return {std::nullopt, 0.0,
                    "no branch for " + out.front()->attribute + "=" + mod + " at '" + cur + "'"};
        cur = next->to;
    }
}

Prediction Classifier::predict_knn(const Case& c) const {
    const auto& attrs = schema_.attributes;
    auto distance = [&](const Case& other) {
        double sum = 0;
        for (std::size_t i = 0; i < attrs.size(); ++i) {
            if (attrs[i].kind == AttributeKind::Numeric) {
                auto [lo, hi] = ranges_[i];
                if (hi == lo) continue;  // constant in training, carries no signal
                double d = (c.number(attrs[i].name) - other.number(attrs[i].name)) / (hi - lo);
                sum += d * d;
            } else if (c.category(attrs[i].name) != other.category(attrs[i].name)) {
                sum += 1.0;
            }
        }
        return std::sqrt(sum);
    };
    std::vector<std::pair<double, std::size_t>> scored;
    for (std::size_t i = 0; i < train_base_.size(); ++i)
        scored.emplace_back(distance(train_base_.cases[i]), i);
    std::sort(scored.begin(), scored.end());  // distance, then case order
    std::size_t k = std::min(recipe_.k, scored.size());
    std::map<std::string, std::size_t> votes;
    for (std::size_t i = 0; i < k; ++i) votes[*train_base_.cases[scored[i].second].label]++;
    std::string best;
    std::size_t best_votes = 0;
    for (const auto& [label, v] : votes)
        if (v > best_votes) {  // map order makes ties lexicographic
            best = label;
            best_votes = v;
        }
    return {best, static_cast<double>(best_votes) / static_cast<double>(k), ""};
}

Prediction Classifier::predict(const Case& c) const {
    ValidationReport report = validate_case(c, schema_);
    // a missing label never blocks a query
    std::erase_if(report, [](const Violation& v) { return v.attribute == "plan"; });
    if (!report.empty())
        throw std::invalid_argument("case '" + c.id + "': " + report.front().attribute + ": " +
                                    report.front().message);
    switch (recipe_.method) {
        case Method::FuzzyBml: return predict_fuzzy(c);
        case Method::Tree: return predict_tree(c);
        case Method::Knn: return predict_knn(c);
    }
    throw std::logic_error("unreachable");
}

std::vector<Prediction> Classifier::predict(const CaseBase& queries) const {
    std::vector<Prediction> out(queries.size());
    std::string error;
    std::int64_t n = static_cast<std::int64_t>(queries.size());
#pragma omp parallel for schedule(static) if (n >= 64)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            out[static_cast<std::size_t>(i)] = predict(queries.cases[static_cast<std::size_t>(i)]);
        } catch (const std::exception& e) {
#pragma omp critical
            if (error.empty()) error = e.what();
        }
    }
    if (!error.empty()) throw std::invalid_argument(error);
    return out;
}

namespace {

EvalResult score(const Classifier& clf, const CaseBase& test, Protocol protocol) {
    EvalResult r;
    r.method = method_name(clf.method());
    r.protocol = protocol_name(protocol);
    r.n = test.size();
    std::vector<Prediction> preds = clf.predict(test);
    for (std::size_t i = 0; i < test.size(); ++i) {
        if (!test.cases[i].label)
            throw std::invalid_argument("case '" + test.cases[i].id + "' has no plan label");
        if (!preds[i].decided())
            r.no_decisions++;
        else if (*preds[i].label == *test.cases[i].label)
            r.correct++;
    }
    return r;
}

}  // namespace

EvalResult evaluate(const TrainingRecipe& recipe, const CaseBase& train, const CaseBase& test,
                    Protocol protocol) {
    if (protocol == Protocol::Resubstitution)
        return score(Classifier::train(recipe, train), train, protocol);
    if (protocol == Protocol::Holdout) {
        if (test.cases.empty()) throw std::invalid_argument("holdout needs a test base");
        return score(Classifier::train(recipe, train), test, protocol);
    }
    // LOOCV: one refit per case
    if (train.size() < 2) throw std::invalid_argument("loocv needs at least 2 cases");
    EvalResult r;
    r.method = method_name(recipe.method);
    r.protocol = protocol_name(protocol);
    r.n = train.size();
    std::int64_t n = static_cast<std::int64_t>(train.size());
    std::vector<int> outcome(train.size(), 0);  // 1 correct, 2 no-decision, 3 wrong
    std::string error;
#pragma omp parallel for schedule(dynamic) if (n >= 8)
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            CaseBase fold;
            fold.schema = train.schema;
            for (std::int64_t j = 0; j < n; ++j)
                if (j != i) fold.cases.push_back(train.cases[static_cast<std::size_t>(j)]);
            Classifier clf = Classifier::train(recipe, fold);
            const Case& held = train.cases[static_cast<std::size_t>(i)];
            Prediction p = clf.predict(held);
            if (!p.decided())
                outcome[static_cast<std::size_t>(i)] = 2;
            else
                outcome[static_cast<std::size_t>(i)] = *p.label == *held.label ? 1 : 3;
        } catch (const std::exception& e) {
#pragma omp critical
            if (error.empty()) error = e.what();
        }
    }
    if (!error.empty()) throw std::invalid_argument(error);
    for (int o : outcome) {
        if (o == 1) r.correct++;
        if (o == 2) r.no_decisions++;
    }
    return r;
}

std::vector<EvalResult> compare(const std::vector<TrainingRecipe>& recipes, const CaseBase& train,
                                const CaseBase& test, Protocol protocol) {
    std::vector<EvalResult> out;
    for (const auto& r : recipes) out.push_back(evaluate(r, train, test, protocol));
    return out;
}

std::string format_report(const std::vector<EvalResult>& results) {
    std::string out = "method,protocol,accuracy,n,no_decisions\n";
    for (const auto& r : results) {
        out += r.method + "," + r.protocol + "," + format_number(r.accuracy()) + "," +
               std::to_string(r.n) + "," + std::to_string(r.no_decisions) + "\n";
    }
    return out;
}

}  // namespace fuzzybml
