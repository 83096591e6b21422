#include "fuzzybml/rule_base.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fuzzybml {

using nlohmann::ordered_json;

void RuleBase::check() const {
    std::set<std::string> known;
    for (const auto& f : facts) {
        if (f.empty()) throw std::invalid_argument("rule base: empty fact label");
        if (!known.insert(f).second)
            throw std::invalid_argument("rule base: duplicate fact '" + f + "'");
    }
    std::set<std::string> rule_ids;
    for (const auto& r : rules) {
        if (!rule_ids.insert(r.id).second)
            throw std::invalid_argument("rule base: duplicate rule id '" + r.id + "'");
        for (const auto& p : r.premises) {
            if (!known.count(p))
                throw std::invalid_argument("rule " + r.id + ": unknown premise fact '" + p + "'");
            if (p == r.conclusion)
                throw std::invalid_argument("rule " + r.id + ": conclusion among premises");
        }
        if (!known.count(r.conclusion))
            throw std::invalid_argument("rule " + r.id + ": unknown conclusion fact '" +
                                        r.conclusion + "'");
        if (!std::is_sorted(r.premises.begin(), r.premises.end()))
            throw std::invalid_argument("rule " + r.id + ": premises not sorted");
        if (std::adjacent_find(r.premises.begin(), r.premises.end()) != r.premises.end())
            throw std::invalid_argument("rule " + r.id + ": duplicate premise");
    }
}

std::string fact_label(const std::string& attribute, const std::string& modality) {
    return attribute + "=" + modality;
}

RuleBase load_rule_base(std::istream& in) {
    ordered_json j = ordered_json::parse(in);
    RuleBase rb;
    rb.facts = j.at("facts").get<std::vector<std::string>>();
    for (const auto& jr : j.at("rules")) {
        Rule r;
        r.id = jr.at("id").get<std::string>();
        r.premises = jr.at("if").get<std::vector<std::string>>();
        std::sort(r.premises.begin(), r.premises.end());
        r.conclusion = jr.at("then").get<std::string>();
        rb.rules.push_back(std::move(r));
    }
    rb.check();
    return rb;
}

RuleBase load_rule_base_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open rule file: " + path);
    try {
        return load_rule_base(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void save_rule_base(std::ostream& out, const RuleBase& rb) {
    ordered_json j;
    j["facts"] = rb.facts;
    j["rules"] = ordered_json::array();
    for (const auto& r : rb.rules) {
        ordered_json jr;
        jr["id"] = r.id;
        jr["if"] = r.premises;
        jr["then"] = r.conclusion;
        j["rules"].push_back(jr);
    }
    out << j.dump(2) << '\n';
}

std::string format_rule(const Rule& r) {
    std::string s = r.id + ": Si ";
    if (r.premises.empty()) {
        s += "(vrai)";
    } else {
        for (std::size_t i = 0; i < r.premises.size(); ++i) {
            if (i) s += " et ";
            s += "(" + r.premises[i] + ")";
        }
    }
    s += " Alors " + r.conclusion;
    return s;
}

std::string format_rule_listing(const RuleBase& rb) {
    std::string s;
    for (const auto& r : rb.rules) s += format_rule(r) + "\n";
    return s;
}

namespace {

void add_fact(std::vector<std::string>& facts, std::set<std::string>& seen,
              const std::string& f) {
    if (seen.insert(f).second) facts.push_back(f);
}

}  // namespace

RuleBase parse_rule_listing(std::istream& in) {
    RuleBase rb;
    std::set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        auto err = [&](const std::string& what) -> std::runtime_error {
            return std::runtime_error("rule listing line " + std::to_string(lineno) + ": " + what);
        };
        auto colon = line.find(':');
        if (colon == std::string::npos) throw err("missing ': Si'");
        Rule r;
        r.id = line.substr(0, colon);
        auto si = line.find("Si ", colon);
        auto alors = line.rfind(" Alors ");
        if (si == std::string::npos || alors == std::string::npos || alors < si)
            throw err("expected 'Si ... Alors ...'");
        std::string body = line.substr(si + 3, alors - (si + 3));
        r.conclusion = line.substr(alors + 7);
        if (body != "(vrai)") {
            std::size_t pos = 0;
            while (pos < body.size()) {
                auto open = body.find('(', pos);
                if (open == std::string::npos) break;
                auto close = body.find(')', open);
                if (close == std::string::npos) throw err("unbalanced parenthesis");
                r.premises.push_back(body.substr(open + 1, close - open - 1));
                pos = close + 1;
            }
            if (r.premises.empty()) throw err("no premise facts");
        }
        std::sort(r.premises.begin(), r.premises.end());
        for (const auto& p : r.premises) add_fact(rb.facts, seen, p);
        add_fact(rb.facts, seen, r.conclusion);
        rb.rules.push_back(std::move(r));
    }
    rb.check();
    return rb;
}

}  // namespace fuzzybml
