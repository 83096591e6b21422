// Command-line front end: plan enumeration, training, rule inspection,
// inference, and evaluation over case bases.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fuzzybml/boolean_engine.hpp"
#include "fuzzybml/case_model.hpp"
#include "fuzzybml/fuzzy_engine.hpp"
#include "fuzzybml/induction_graph.hpp"
#include "fuzzybml/plan_builder.hpp"
#include "fuzzybml/retrieval.hpp"
#include "fuzzybml/rule_base.hpp"

using namespace fuzzybml;

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        // trim spaces around each entry
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) continue;
        out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

void write_or_print(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write '" + path + "'");
    out << content;
}

std::vector<DiscretizationSpec> load_cuts_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open cuts file '" + path + "'");
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("cuts file: invalid JSON: ") + e.what());
    }
    if (!j.is_array()) throw std::invalid_argument("cuts file: expected an array of specs");
    std::vector<DiscretizationSpec> specs;
    for (const auto& js : j) {
        DiscretizationSpec s;
        s.attribute = js.at("attribute").get<std::string>();
        s.cuts = js.at("cuts").get<std::vector<double>>();
        s.labels = js.at("labels").get<std::vector<std::string>>();
        s.check();
        specs.push_back(std::move(s));
    }
    return specs;
}

Measure parse_measure(const std::string& s) {
    if (s == "shannon") return Measure::Shannon;
    if (s == "quadratic") return Measure::Quadratic;
    throw std::invalid_argument("unknown measure '" + s + "' (shannon|quadratic)");
}

Method parse_method(const std::string& s) {
    if (s == "fuzzy-bml") return Method::FuzzyBml;
    if (s == "tree") return Method::Tree;
    if (s == "knn") return Method::Knn;
    throw std::invalid_argument("unknown method '" + s + "' (fuzzy-bml|tree|knn)");
}

Protocol parse_protocol(const std::string& s) {
    if (s == "resubstitution") return Protocol::Resubstitution;
    if (s == "holdout") return Protocol::Holdout;
    if (s == "loocv") return Protocol::Loocv;
    throw std::invalid_argument("unknown protocol '" + s + "' (resubstitution|holdout|loocv)");
}

// Recipe-building flags shared by evaluate and compare.
struct RecipeFlags {
    std::string measure = "shannon";
    double lambda = 1.0;
    std::size_t min_node = 2;
    double min_gain = 1e-9;
    std::size_t max_depth = 16;
    std::string fuzzy_path, cuts_path;
    double cutoff = 0.0;
    std::size_t k = 3;
    std::size_t bins = 3;

    void attach(CLI::App* cmd) {
        cmd->add_option("--measure", measure, "uncertainty measure: shannon|quadratic");
        cmd->add_option("--lambda", lambda, "Laplace smoothing weight");
        cmd->add_option("--min-node", min_node, "minimal admissible node size (mu)");
        cmd->add_option("--min-gain", min_gain, "minimal uncertainty gain per step");
        cmd->add_option("--max-depth", max_depth, "maximal number of refinement steps");
        cmd->add_option("--fuzzy", fuzzy_path, "linguistic variables (JSON)");
        cmd->add_option("--cuts", cuts_path, "explicit discretizations (JSON)");
        cmd->add_option("--cutoff", cutoff, "fuzzy assertion threshold");
        cmd->add_option("-k,--neighbours", k, "neighbours for knn");
        cmd->add_option("--bins", bins, "bins for supervised cuts on uncovered attributes");
    }

    TrainingRecipe recipe(Method method) const {
        TrainingRecipe r;
        r.method = method;
        r.params.measure = parse_measure(measure);
        r.params.lambda = lambda;
        r.params.min_node = min_node;
        r.params.min_gain = min_gain;
        r.params.max_depth = max_depth;
        if (!fuzzy_path.empty()) r.variables = load_fuzzy_config_file(fuzzy_path);
        if (!cuts_path.empty()) r.specs = load_cuts_file(cuts_path);
        r.cutoff = cutoff;
        r.k = k;
        r.supervised_bins = bins;
        return r;
    }
};

std::string matrices_text(const CellularKnowledgeBase& kb) {
    std::string out;
    std::size_t width = 0;
    for (const auto& f : kb.fact_labels()) width = std::max(width, f.size());
    auto pad = [&](const std::string& s) { return s + std::string(width - s.size(), ' '); };
    std::string header = pad("") + "  ";
    for (const auto& r : kb.rule_ids()) header += r + " ";
    out += "R_E (premises)\n" + header + "\n";
    for (std::size_t f = 0; f < kb.fact_count(); ++f) {
        out += pad(kb.fact_labels()[f]) + "  ";
        std::string bits = kb.re_row(f);
        for (std::size_t r = 0; r < kb.rule_count(); ++r)
            out += std::string(1, bits[r]) + std::string(kb.rule_ids()[r].size(), ' ');
        out += "\n";
    }
    out += "\nR_S (conclusions)\n" + header + "\n";
    for (std::size_t f = 0; f < kb.fact_count(); ++f) {
        out += pad(kb.fact_labels()[f]) + "  ";
        std::string bits = kb.rs_row(f);
        for (std::size_t r = 0; r < kb.rule_count(); ++r)
            out += std::string(1, bits[r]) + std::string(kb.rule_ids()[r].size(), ' ');
        out += "\n";
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fuzzy case-based plan retrieval"};
    app.require_subcommand(1);

    // ---- build-cases -------------------------------------------------
    auto* bc = app.add_subcommand("build-cases", "enumerate plans of a project and write cases");
    struct {
        std::string project, schema, out, save_schema;
    } bco;
    bc->add_option("--project", bco.project, "project decomposition (JSON)")->required();
    bc->add_option("--schema", bco.schema, "case schema (JSON); generated when omitted");
    bc->add_option("-o,--out", bco.out, "cases CSV (stdout when omitted)");
    bc->add_option("--save-schema", bco.save_schema, "write the schema used (JSON)");
    bc->callback([&] {
        AndOrGraph g = load_project_file(bco.project);
        std::vector<Plan> plans = enumerate_plans(g);
        AttributeSchema schema;
        if (!bco.schema.empty()) {
            schema = load_schema_file(bco.schema);
        } else {
            schema.attributes = {{"X_1", AttributeKind::Numeric, {}},
                                 {"X_2", AttributeKind::Numeric, {}},
                                 {"X_3", AttributeKind::Numeric, {}}};
            for (const auto& p : plans) schema.class_labels.push_back(p.label);
            if (schema.class_labels.size() < 2) schema.class_labels.push_back("PlanNone");
        }
        CaseBase base = synthesize_cases(g, plans, schema);
        for (const auto& p : plans) {
            std::cerr << p.label << ":";
            for (const auto& t : p.tasks) std::cerr << " " << t;
            std::cerr << "\n";
        }
        std::ostringstream csv;
        save_case_base(csv, base);
        write_or_print(bco.out, csv.str());
        if (!bco.save_schema.empty()) {
            std::ofstream out(bco.save_schema);
            if (!out) throw std::invalid_argument("cannot write '" + bco.save_schema + "'");
            save_schema(out, schema);
        }
    });

    // ---- train --------------------------------------------------------
    auto* tr = app.add_subcommand("train", "grow an induction graph from labeled cases");
    struct {
        std::string cases, schema, out;
        RecipeFlags flags;
    } tro;
    tr->add_option("--cases", tro.cases, "training cases (CSV)")->required();
    tr->add_option("--schema", tro.schema, "case schema (JSON)")->required();
    tr->add_option("-o,--out", tro.out, "model file (JSON)")->required();
    tro.flags.attach(tr);
    tr->callback([&] {
        AttributeSchema schema = load_schema_file(tro.schema);
        CaseBase base = load_case_base_file(tro.cases, schema);
        TrainingRecipe recipe = tro.flags.recipe(Method::FuzzyBml);
        Classifier clf = Classifier::train(recipe, base);
        save_model_file(tro.out, clf.graph());
        const InductionGraph& g = clf.graph();
        std::cout << "cases: " << base.size() << "\n";
        std::cout << "partitions: " << g.partitions.size() << "\n";
        std::cout << "nodes: " << g.nodes.size() << "\n";
        std::cout << "terminals: " << g.partitions.back().size() << "\n";
        std::cout << "rules: " << clf.rules().rules.size() << "\n";
    });

    // ---- rules ----------------------------------------------------------
    auto* ru = app.add_subcommand("rules", "production rules and incidence matrices of a model");
    struct {
        std::string model, out;
        bool matrices = false;
    } ruo;
    ru->add_option("--model", ruo.model, "model file (JSON)")->required();
    ru->add_option("-o,--out", ruo.out, "write the rule base (JSON)");
    ru->add_flag("--matrices", ruo.matrices, "also print R_E and R_S");
    ru->callback([&] {
        InductionGraph g = load_model_file(ruo.model);
        RuleBase rb = extract_rules(g);
        std::cout << format_rule_listing(rb);
        if (ruo.matrices) std::cout << "\n" << matrices_text(compile(rb));
        if (!ruo.out.empty()) {
            std::ofstream out(ruo.out);
            if (!out) throw std::invalid_argument("cannot write '" + ruo.out + "'");
            save_rule_base(out, rb);
        }
    });

    // ---- infer ----------------------------------------------------------
    auto* in = app.add_subcommand("infer", "run the cellular inference engine");
    struct {
        std::string model, rules, fuzzy, facts, values, cases, goal, classes, out;
        double cutoff = 0.0;
        bool trace = false;
        bool backward = false;
    } ino;
    in->add_option("--model", ino.model, "trained model (JSON)");
    in->add_option("--rules", ino.rules, "rule base (JSON), alternative to --model");
    in->add_option("--fuzzy", ino.fuzzy, "linguistic variables (JSON)");
    in->add_option("--facts", ino.facts, "comma list of facts to assert crisply");
    in->add_option("--values", ino.values, "comma list of attr=number to fuzzify");
    in->add_option("--cases", ino.cases, "batch of query cases (CSV, model mode)");
    in->add_option("--goal", ino.goal, "goal fact for backward chaining");
    in->add_option("--classes", ino.classes, "comma list of decision facts (rules mode)");
    in->add_option("--cutoff", ino.cutoff, "fuzzy assertion threshold");
    in->add_flag("--trace", ino.trace, "dump every configuration G_0..G_q");
    in->add_flag("--backward", ino.backward, "rear chaining toward --goal");
    in->add_option("-o,--out", ino.out, "output file (stdout when omitted)");
    in->callback([&] {
        if (ino.model.empty() == ino.rules.empty())
            throw std::invalid_argument("pass exactly one of --model or --rules");
        std::vector<LinguisticVariable> vars;
        if (!ino.fuzzy.empty()) vars = load_fuzzy_config_file(ino.fuzzy);

        std::optional<InductionGraph> graph;
        RuleBase rb;
        std::vector<std::string> classes;
        if (!ino.model.empty()) {
            graph = load_model_file(ino.model);
            rb = extract_rules(*graph);
            classes = graph->schema.class_labels;
        } else {
            rb = load_rule_base_file(ino.rules);
        }
        CellularKnowledgeBase kb = compile(rb);
        if (!ino.classes.empty()) {
            classes = split_list(ino.classes);
        } else if (ino.model.empty()) {
            // default decision facts: conclusions that feed no further rule
            for (std::size_t f = 0; f < kb.fact_count(); ++f)
                if (!kb.is_leaf_fact(f) && kb.premise_row(f).count() == 0)
                    classes.push_back(kb.fact_labels()[f]);
        }

        std::string out;
        if (ino.backward) {
            if (ino.goal.empty()) throw std::invalid_argument("--backward needs --goal");
            for (const auto& set : backward_chain(kb, ino.goal)) {
                out += "{";
                for (std::size_t i = 0; i < set.size(); ++i)
                    out += (i ? ", " : "") + set[i];
                out += "}\n";
            }
            write_or_print(ino.out, out);
            return;
        }

        if (!ino.cases.empty()) {
            if (!graph) throw std::invalid_argument("--cases needs --model");
            std::vector<DiscretizationSpec> specs = graph->specs;
            CaseBase queries = load_case_base_file(ino.cases, graph->schema, LoadMode::Query);
            out = "id,plan,degree,note\n";
            for (const auto& c : queries.cases) {
                auto assignments = case_assignments(c, graph->schema, vars, specs);
                AutomatonConfig g0 = index_case(kb, assignments, ino.cutoff);
                ChainResult chain = fuzzy_infer(kb, std::move(g0));
                std::vector<std::string> known;
                for (const auto& cls : classes)
                    if (kb.fact_index(cls) != CellularKnowledgeBase::npos) known.push_back(cls);
                Decision d = defuzzify(kb, chain.trace.back(), known);
                out += c.id + "," + (d.label ? *d.label : "") + "," +
                       format_number(d.degree) + "," + (d.label ? "" : "no-decision") + "\n";
            }
            write_or_print(ino.out, out);
            return;
        }

        // single query from --facts / --values
        AutomatonConfig g0 = assert_facts(kb, {});
        for (const auto& f : split_list(ino.facts)) {
            std::size_t idx = kb.fact_index(f);
            if (idx == CellularKnowledgeBase::npos)
                throw std::invalid_argument("unknown fact '" + f + "'");
            g0.fact_e.set(idx);
        }
        std::vector<FuzzyAssignment> assignments;
        for (const auto& pair : split_list(ino.values)) {
            auto eq = pair.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("--values entries look like attr=number, got '" +
                                            pair + "'");
            std::string name = pair.substr(0, eq);
            double x = std::stod(pair.substr(eq + 1));
            const LinguisticVariable* var = nullptr;
            for (const auto& v : vars)
                if (v.name == name) var = &v;
            if (!var)
                throw std::invalid_argument("no fuzzy variable for '" + name +
                                            "'; crisp facts go through --facts");
            assignments.push_back(fuzzify(*var, x, [](const std::string& msg) {
                std::cerr << "warning: " << msg << "\n";
            }));
        }
        if (!assignments.empty()) {
            AutomatonConfig fz = index_case(kb, assignments, ino.cutoff);
            for (std::size_t f = 0; f < kb.fact_count(); ++f)
                if (fz.fact_e.test(f) && !g0.fact_e.test(f)) {
                    g0.fact_e.set(f);
                    g0.fact_i[f] = fz.fact_i[f];
                }
        }
        ChainResult chain = run_chain(kb, std::move(g0));
        if (ino.trace)
            for (std::size_t i = 0; i < chain.trace.size(); ++i)
                out += format_config(kb, chain.trace[i], i);
        out += "established:";
        for (const auto& f : chain.established) out += " " + f;
        out += "\n";
        std::vector<std::string> known;
        for (const auto& cls : classes)
            if (kb.fact_index(cls) != CellularKnowledgeBase::npos) known.push_back(cls);
        if (!known.empty()) {
            Decision d = defuzzify(kb, chain.trace.back(), known);
            if (d.label)
                out += "decision: " + *d.label + " (degree " + format_number(d.degree) + ")\n";
            else
                out += "decision: none\n";
        }
        write_or_print(ino.out, out);
    });

    // ---- evaluate ------------------------------------------------------
    auto* ev = app.add_subcommand("evaluate", "score one method under a protocol");
    struct {
        std::string cases, schema, test, protocol = "loocv", method = "fuzzy-bml", out;
        double train_fraction = 0.7;
        std::uint64_t seed = 1;
        RecipeFlags flags;
    } evo;
    ev->add_option("--cases", evo.cases, "labeled cases (CSV)")->required();
    ev->add_option("--schema", evo.schema, "case schema (JSON)")->required();
    ev->add_option("--test", evo.test, "held-out cases (CSV, holdout only)");
    ev->add_option("--protocol", evo.protocol, "resubstitution|holdout|loocv");
    ev->add_option("--method", evo.method, "fuzzy-bml|tree|knn");
    ev->add_option("--train-fraction", evo.train_fraction, "holdout split when --test is absent");
    ev->add_option("--seed", evo.seed, "split seed");
    ev->add_option("-o,--out", evo.out, "report CSV (stdout when omitted)");
    evo.flags.attach(ev);
    ev->callback([&] {
        AttributeSchema schema = load_schema_file(evo.schema);
        CaseBase base = load_case_base_file(evo.cases, schema);
        Protocol protocol = parse_protocol(evo.protocol);
        CaseBase train = base, test;
        if (protocol == Protocol::Holdout) {
            if (!evo.test.empty())
                test = load_case_base_file(evo.test, schema);
            else
                std::tie(train, test) = split_dataset(base, evo.train_fraction, evo.seed);
        }
        EvalResult r = evaluate(evo.flags.recipe(parse_method(evo.method)), train, test, protocol);
        write_or_print(evo.out, format_report({r}));
    });

    // ---- compare ---------------------------------------------------------
    auto* cp = app.add_subcommand("compare", "score several methods side by side");
    struct {
        std::string cases, schema, test, protocol = "loocv", methods = "fuzzy-bml,tree,knn", out;
        double train_fraction = 0.7;
        std::uint64_t seed = 1;
        RecipeFlags flags;
    } cpo;
    cp->add_option("--cases", cpo.cases, "labeled cases (CSV)")->required();
    cp->add_option("--schema", cpo.schema, "case schema (JSON)")->required();
    cp->add_option("--test", cpo.test, "held-out cases (CSV, holdout only)");
    cp->add_option("--protocol", cpo.protocol, "resubstitution|holdout|loocv");
    cp->add_option("--methods", cpo.methods, "comma list of fuzzy-bml|tree|knn");
    cp->add_option("--train-fraction", cpo.train_fraction, "holdout split when --test is absent");
    cp->add_option("--seed", cpo.seed, "split seed");
    cp->add_option("-o,--out", cpo.out, "report CSV (stdout when omitted)");
    cpo.flags.attach(cp);
    cp->callback([&] {
        AttributeSchema schema = load_schema_file(cpo.schema);
        CaseBase base = load_case_base_file(cpo.cases, schema);
        Protocol protocol = parse_protocol(cpo.protocol);
        CaseBase train = base, test;
        if (protocol == Protocol::Holdout) {
            if (!cpo.test.empty())
                test = load_case_base_file(cpo.test, schema);
            else
                std::tie(train, test) = split_dataset(base, cpo.train_fraction, cpo.seed);
        }
        std::vector<TrainingRecipe> recipes;
        for (const auto& m : split_list(cpo.methods))
            recipes.push_back(cpo.flags.recipe(parse_method(m)));
        write_or_print(cpo.out, format_report(compare(recipes, train, test, protocol)));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
