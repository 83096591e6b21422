#include "fuzzybml/fuzzy_engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fuzzybml/case_model.hpp"
#include "fuzzybml/rule_base.hpp"

namespace fuzzybml {

using ordered_json = nlohmann::ordered_json;

void DiscretizationSpec::check() const {
    if (attribute.empty()) throw std::invalid_argument("discretization: empty attribute name");
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        if (!(cuts[i] < cuts[i + 1]))
            throw std::invalid_argument("discretization '" + attribute +
                                        "': cuts must be strictly increasing");
    for (double c : cuts)
        if (!std::isfinite(c))
            throw std::invalid_argument("discretization '" + attribute + "': non-finite cut");
    if (labels.size() != cuts.size() + 1)
        throw std::invalid_argument("discretization '" + attribute + "': need " +
                                    std::to_string(cuts.size() + 1) + " labels, have " +
                                    std::to_string(labels.size()));
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (l.empty()) throw std::invalid_argument("discretization '" + attribute + "': empty label");
        if (!seen.insert(l).second)
            throw std::invalid_argument("discretization '" + attribute + "': duplicate label '" + l + "'");
    }
}

std::size_t DiscretizationSpec::bin(double x) const {
    std::size_t i = 0;
    while (i < cuts.size() && x >= cuts[i]) ++i;
    return i;
}

double membership(const Trapezoid& mf, double x) {
    if (!(mf.a <= mf.b && mf.b <= mf.c && mf.c <= mf.d))
        throw std::invalid_argument("trapezoid: breakpoints must satisfy a <= b <= c <= d");
    if (x < mf.a || x > mf.d) return 0.0;
    if (x >= mf.b && x <= mf.c) return 1.0;
    if (x < mf.b) {
        // a <= x < b with a < b (a == b lands in the core branch above)
        return (x - mf.a) / (mf.b - mf.a);
    }
    // c < x <= d, c < d
    return (mf.d - x) / (mf.d - mf.c);
}

namespace {

std::string code_bits(int code) {
    std::string s(3, '0');
    for (int i = 0; i < 3; ++i)
        if (code & (1 << (2 - i))) s[i] = '1';
    return s;
}

int parse_code_bits(const std::string& s) {
    if (s.size() != 3 || s.find_first_not_of("01") != std::string::npos)
        throw std::invalid_argument("term code must be 3 bits, got '" + s + "'");
    int code = 0;
    for (char ch : s) code = code * 2 + (ch - '0');
    return code;
}

}  // namespace

void LinguisticVariable::check() const {
    if (name.empty()) throw std::invalid_argument("linguistic variable: empty name");
    if (!(universe_lo < universe_hi))
        throw std::invalid_argument("variable '" + name + "': empty universe");
    if (terms.empty()) throw std::invalid_argument("variable '" + name + "': no terms");
    if (terms.size() > 7)
        throw std::invalid_argument("variable '" + name + "': more than 7 terms (code space is 3 bits)");
    std::set<std::string> labels;
    std::set<int> codes;
    for (const auto& t : terms) {
        if (t.label.empty()) throw std::invalid_argument("variable '" + name + "': empty term label");
        if (!labels.insert(t.label).second)
            throw std::invalid_argument("variable '" + name + "': duplicate term '" + t.label + "'");
        if (t.code < 0 || t.code > 6)
            throw std::invalid_argument("variable '" + name + "': term '" + t.label +
                                        "' code out of range (111 is reserved)");
        if (!codes.insert(t.code).second)
            throw std::invalid_argument("variable '" + name + "': duplicate code " + code_bits(t.code));
        if (!(t.mf.a <= t.mf.b && t.mf.b <= t.mf.c && t.mf.c <= t.mf.d))
            throw std::invalid_argument("variable '" + name + "': term '" + t.label +
                                        "' has disordered trapezoid breakpoints");
    }
    // Coverage: the total membership is piecewise linear, so it is positive
    // everywhere on [lo,hi] iff it is positive at every breakpoint that lies
    // in the universe, at the universe edges, and at midpoints between
    // consecutive probe points (a sum can only reach zero at or between
    // breakpoints; the midpoint probe catches a zero plateau between two
    // positive endpoints -- impossible for one trapezoid but cheap to rule
    // out in general).
    std::vector<double> probes{universe_lo, universe_hi};
    for (const auto& t : terms)
        for (double x : {t.mf.a, t.mf.b, t.mf.c, t.mf.d})
            if (x > universe_lo && x < universe_hi) probes.push_back(x);
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    std::vector<double> mids;
    for (std::size_t i = 0; i + 1 < probes.size(); ++i)
        mids.push_back(probes[i] + (probes[i + 1] - probes[i]) / 2);
    probes.insert(probes.end(), mids.begin(), mids.end());
    for (double x : probes) {
        double total = 0;
        for (const auto& t : terms) total += membership(t.mf, x);
        if (!(total > 0.0))
            throw std::invalid_argument("variable '" + name + "': coverage gap at " +
                                        format_number(x));
    }
}

FuzzyAssignment fuzzify(const LinguisticVariable& v, double x,
                        const std::function<void(const std::string&)>& on_clamp) {
    double clamped = std::clamp(x, v.universe_lo, v.universe_hi);
    if (clamped != x && on_clamp)
        on_clamp("value " + format_number(x) + " outside universe [" + format_number(v.universe_lo) +
                 ", " + format_number(v.universe_hi) + "] of '" + v.name + "', clamped to " +
                 format_number(clamped));
    FuzzyAssignment out;
    out.variable = v.name;
    for (const auto& t : v.terms) out.degrees[t.label] = membership(t.mf, clamped);
    return out;
}

std::vector<double> crossover_cuts(const LinguisticVariable& v) {
    std::vector<double> cuts;
    for (std::size_t i = 0; i + 1 < v.terms.size(); ++i) {
        const Trapezoid& lo = v.terms[i].mf;
        const Trapezoid& hi = v.terms[i + 1].mf;
        // Falling ramp of lo meets rising ramp of hi where
        // (lo.d - x)/(lo.d - lo.c) = (x - hi.a)/(hi.b - hi.a).
        double fd = lo.d - lo.c;
        double rd = hi.b - hi.a;
        double x;
        if (fd == 0 && rd == 0) {
            if (lo.d != hi.a)
                throw std::invalid_argument("variable '" + v.name + "': terms '" + v.terms[i].label +
                                            "' and '" + v.terms[i + 1].label +
                                            "' switch as steps at different points");
            x = lo.d;
        } else if (fd == 0) {
            x = lo.d;  // lo drops to 0 instantly; the boundary is the step
        } else if (rd == 0) {
            x = hi.a;
        } else {
            x = (lo.d * rd + hi.a * fd) / (fd + rd);
        }
        if (!cuts.empty() && !(x > cuts.back()))
            throw std::invalid_argument("variable '" + v.name +
                                        "': crossovers are not increasing; terms overlap too much");
        cuts.push_back(x);
    }
    return cuts;
}

DiscretizationSpec crisp_spec(const LinguisticVariable& v) {
    DiscretizationSpec spec;
    spec.attribute = v.name;
    spec.cuts = crossover_cuts(v);
    for (const auto& t : v.terms) spec.labels.push_back(t.label);
    spec.check();
    return spec;
}

AutomatonConfig assert_fuzzy(const CellularKnowledgeBase& kb,
                             const std::vector<FuzzyAssignment>& assignments, double cutoff) {
    AutomatonConfig g = assert_facts(kb, {});
    for (const auto& asg : assignments) {
        for (const auto& [term, degree] : asg.degrees) {
            std::string label = fact_label(asg.variable, term);
            std::size_t f = kb.fact_index(label);
            if (f == CellularKnowledgeBase::npos)
                throw std::invalid_argument("unknown fact '" + label + "'");
            if (!(degree >= 0.0 && degree <= 1.0) || !std::isfinite(degree))
                throw std::invalid_argument("fact '" + label + "': degree " + format_number(degree) +
                                            " outside [0,1]");
            if (degree > 0.0 && degree >= cutoff) {
                g.fact_e.set(f);
                g.fact_i[f] = degree;
            }
        }
    }
    return g;
}

ChainResult fuzzy_infer(const CellularKnowledgeBase& kb, AutomatonConfig g0) {
    return run_chain(kb, std::move(g0));
}

Decision defuzzify(const CellularKnowledgeBase& kb, const AutomatonConfig& g,
                   const std::vector<std::string>& classes) {
    Decision best;
    for (const auto& cls : classes) {
        std::size_t f = kb.fact_index(cls);
        if (f == CellularKnowledgeBase::npos)
            throw std::invalid_argument("unknown class fact '" + cls + "'");
        if (!g.fact_e.test(f)) continue;
        double deg = g.fact_i[f];
        if (!best.label || deg > best.degree || (deg == best.degree && cls < *best.label)) {
            best.label = cls;
            best.degree = deg;
        }
    }
    return best;
}

std::vector<LinguisticVariable> load_fuzzy_config(std::istream& in) {
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("fuzzy config: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("variables") || !j["variables"].is_array())
        throw std::invalid_argument("fuzzy config: expected {\"variables\": [...]}");
    std::vector<LinguisticVariable> out;
    std::set<std::string> names;
    for (const auto& jv : j["variables"]) {
        LinguisticVariable v;
        v.name = jv.value("name", "");
        if (!jv.contains("universe") || !jv["universe"].is_array() || jv["universe"].size() != 2)
            throw std::invalid_argument("fuzzy config: variable '" + v.name +
                                        "' needs \"universe\": [lo, hi]");
        v.universe_lo = jv["universe"][0].get<double>();
        v.universe_hi = jv["universe"][1].get<double>();
        if (!jv.contains("terms") || !jv["terms"].is_array())
            throw std::invalid_argument("fuzzy config: variable '" + v.name + "' needs \"terms\"");
        for (const auto& jt : jv["terms"]) {
            FuzzyTerm t;
            t.label = jt.value("label", "");
            if (!jt.contains("trapezoid") || !jt["trapezoid"].is_array() || jt["trapezoid"].size() != 4)
                throw std::invalid_argument("fuzzy config: term '" + t.label +
                                            "' needs \"trapezoid\": [a,b,c,d]");
            t.mf.a = jt["trapezoid"][0].get<double>();
            t.mf.b = jt["trapezoid"][1].get<double>();
            t.mf.c = jt["trapezoid"][2].get<double>();
            t.mf.d = jt["trapezoid"][3].get<double>();
            if (jt.contains("code"))
                t.code = parse_code_bits(jt["code"].get<std::string>());
            else
                t.code = static_cast<int>(v.terms.size());
            v.terms.push_back(std::move(t));
        }
        v.check();
        if (!names.insert(v.name).second)
            throw std::invalid_argument("fuzzy config: duplicate variable '" + v.name + "'");
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<LinguisticVariable> load_fuzzy_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open fuzzy config '" + path + "'");
    return load_fuzzy_config(in);
}

void save_fuzzy_config(std::ostream& out, const std::vector<LinguisticVariable>& vars) {
    ordered_json jvars = ordered_json::array();
    for (const auto& v : vars) {
        ordered_json jv;
        jv["name"] = v.name;
        jv["universe"] = {v.universe_lo, v.universe_hi};
        ordered_json jterms = ordered_json::array();
        for (const auto& t : v.terms) {
            ordered_json jt;
            jt["label"] = t.label;
            jt["trapezoid"] = {t.mf.a, t.mf.b, t.mf.c, t.mf.d};
            jt["code"] = code_bits(t.code);
            jterms.push_back(std::move(jt));
        }
        jv["terms"] = std::move(jterms);
        jvars.push_back(std::move(jv));
    }
    ordered_json j;
    j["variables"] = std::move(jvars);
    out << j.dump(2) << '\n';
}

LinguisticVariable default_cost_variable(const std::string& name) {
    LinguisticVariable v;
    v.name = name;
    v.universe_lo = 0;
    v.universe_hi = 100;
    v.terms = {
        {"Faible", {0, 0, 30, 50}, 0},
        {"Raisonnable", {30, 50, 60, 70}, 1},
        {"Elevé", {60, 70, 100, 100}, 2},
    };
    v.check();
    return v;
}

}  // namespace fuzzybml
