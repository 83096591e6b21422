#include "fuzzybml/case_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fuzzybml {

using nlohmann::ordered_json;

const Attribute* AttributeSchema::find(const std::string& name) const {
    for (const auto& a : attributes)
        if (a.name == name) return &a;
    return nullptr;
}

void AttributeSchema::check() const {
    std::set<std::string> seen;
    for (const auto& a : attributes) {
        if (a.name.empty()) throw std::invalid_argument("schema: empty attribute name");
        if (!seen.insert(a.name).second)
            throw std::invalid_argument("schema: duplicate attribute '" + a.name + "'");
        if (a.kind == AttributeKind::Categorical && a.modalities.size() < 2)
            throw std::invalid_argument("schema: categorical attribute '" + a.name +
                                        "' needs at least 2 modalities");
        if (a.kind == AttributeKind::Numeric && !a.modalities.empty())
            throw std::invalid_argument("schema: numeric attribute '" + a.name +
                                        "' must not declare modalities");
    }
    if (class_labels.size() < 2)
        throw std::invalid_argument("schema: need at least 2 class labels");
    std::set<std::string> cls(class_labels.begin(), class_labels.end());
    if (cls.size() != class_labels.size())
        throw std::invalid_argument("schema: duplicate class label");
}

double Case::number(const std::string& attr) const {
    return std::get<double>(values.at(attr));
}

const std::string& Case::category(const std::string& attr) const {
    return std::get<std::string>(values.at(attr));
}

std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

// One CSV record; fields may be double-quoted ("" escapes a quote).
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') { cur += '"'; ++i; }
                else quoted = false;
            } else cur += ch;
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

// Decimal parse accepting ',' as an alternative decimal mark (the corpus
// data uses both conventions).
bool parse_number(std::string s, double& out) {
    if (auto p = s.find(','); p != std::string::npos) s[p] = '.';
    const char* b = s.data();
    const char* e = b + s.size();
    auto res = std::from_chars(b, e, out);
    return res.ec == std::errc{} && res.ptr == e && std::isfinite(out);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += "\"\"";
        else q += ch;
    }
    q += '"';
    return q;
}

[[noreturn]] void fail(std::size_t row, const std::string& col, const std::string& what) {
    throw std::runtime_error("row " + std::to_string(row) + ", column '" + col + "': " + what);
}

}  // namespace

CaseBase load_case_base(std::istream& in, const AttributeSchema& schema, LoadMode mode) {
    schema.check();
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty input: missing header row");
    auto header = split_csv_line(line);

    std::size_t col = 0;
    bool has_id = !header.empty() && header[0] == "id";
    if (has_id) col = 1;
    for (const auto& a : schema.attributes) {
        if (col >= header.size() || header[col] != a.name)
            throw std::runtime_error("header column " + std::to_string(col + 1) +
                                     ": expected attribute '" + a.name + "'");
        ++col;
    }
    bool has_plan = col < header.size() && header[col] == "plan";
    if (has_plan) ++col;
    if (col != header.size())
        throw std::runtime_error("header: unexpected trailing column '" + header[col] + "'");
    if (mode == LoadMode::Labeled && !has_plan)
        throw std::runtime_error("header: missing 'plan' column (labeled mode)");

    const std::set<std::string> classes(schema.class_labels.begin(), schema.class_labels.end());

    CaseBase base;
    base.schema = schema;
    std::set<std::string> ids;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty() || line == "\r") continue;
        auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw std::runtime_error("row " + std::to_string(row) + ": expected " +
                                     std::to_string(header.size()) + " fields, got " +
                                     std::to_string(fields.size()));
        Case c;
        std::size_t f = 0;
        c.id = has_id ? fields[f++] : "r" + std::to_string(row - 1);
        if (c.id.empty()) fail(row, "id", "empty id");
        if (!ids.insert(c.id).second) fail(row, "id", "duplicate id '" + c.id + "'");
        for (const auto& a : schema.attributes) {
            const std::string& raw = fields[f++];
            if (a.kind == AttributeKind::Numeric) {
                double v;
                if (!parse_number(raw, v)) fail(row, a.name, "unparsable number '" + raw + "'");
                c.values[a.name] = v;
            } else {
                if (std::find(a.modalities.begin(), a.modalities.end(), raw) == a.modalities.end())
                    fail(row, a.name, "unknown modality '" + raw + "'");
                c.values[a.name] = raw;
            }
        }
        if (has_plan) {
            const std::string& lbl = fields[f++];
            if (lbl.empty()) {
                if (mode == LoadMode::Labeled) fail(row, "plan", "missing label");
            } else {
                if (!classes.count(lbl)) fail(row, "plan", "unknown plan label '" + lbl + "'");
                c.label = lbl;
            }
        }
        base.cases.push_back(std::move(c));
    }
    return base;
}

CaseBase load_case_base_file(const std::string& path, const AttributeSchema& schema,
                             LoadMode mode) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open case file: " + path);
    try {
        return load_case_base(in, schema, mode);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void save_case_base(std::ostream& out, const CaseBase& base) {
    bool any_label = std::any_of(base.cases.begin(), base.cases.end(),
                                 [](const Case& c) { return c.label.has_value(); });
    out << "id";
    for (const auto& a : base.schema.attributes) out << ',' << csv_field(a.name);
    if (any_label) out << ",plan";
    out << '\n';
    for (const auto& c : base.cases) {
        out << csv_field(c.id);
        for (const auto& a : base.schema.attributes) {
            out << ',';
            auto it = c.values.find(a.name);
            if (it == c.values.end()) continue;
            if (a.kind == AttributeKind::Numeric) out << format_number(std::get<double>(it->second));
            else out << csv_field(std::get<std::string>(it->second));
        }
        if (any_label) out << ',' << (c.label ? csv_field(*c.label) : "");
        out << '\n';
    }
}

ValidationReport validate_case(const Case& c, const AttributeSchema& schema) {
    ValidationReport report;
    for (const auto& a : schema.attributes) {
        auto it = c.values.find(a.name);
        if (it == c.values.end()) {
            report.push_back({a.name, "missing value"});
            continue;
        }
        if (a.kind == AttributeKind::Numeric) {
            const double* v = std::get_if<double>(&it->second);
            if (!v) report.push_back({a.name, "expected a number"});
            else if (!std::isfinite(*v)) report.push_back({a.name, "non-finite number"});
        } else {
            const std::string* s = std::get_if<std::string>(&it->second);
            if (!s) report.push_back({a.name, "expected a modality label"});
            else if (std::find(a.modalities.begin(), a.modalities.end(), *s) == a.modalities.end())
                report.push_back({a.name, "value '" + *s + "' not among declared modalities"});
        }
    }
    for (const auto& [name, v] : c.values) {
        (void)v;
        if (!schema.find(name)) report.push_back({name, "not a schema attribute"});
    }
    if (c.label &&
        std::find(schema.class_labels.begin(), schema.class_labels.end(), *c.label) ==
            schema.class_labels.end())
        report.push_back({"plan", "label '" + *c.label + "' not among class labels"});
    return report;
}

std::pair<CaseBase, CaseBase> split_dataset(const CaseBase& base, double train_fraction,
                                            std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("train_fraction must be in (0,1)");
    for (const auto& c : base.cases)
        if (!c.label) throw std::invalid_argument("unlabeled case '" + c.id + "' in split input");

    std::vector<std::size_t> idx(base.cases.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(idx.begin(), idx.end(), rng);

    auto n_train = static_cast<std::size_t>(std::llround(train_fraction * double(idx.size())));
    CaseBase train{base.schema, {}};
    CaseBase test{base.schema, {}};
    for (std::size_t i = 0; i < idx.size(); ++i)
        (i < n_train ? train : test).cases.push_back(base.cases[idx[i]]);
    return {std::move(train), std::move(test)};
}

AttributeSchema load_schema(std::istream& in) {
    ordered_json j = ordered_json::parse(in);
    AttributeSchema schema;
    for (const auto& ja : j.at("attributes")) {
        Attribute a;
        a.name = ja.at("name").get<std::string>();
        std::string kind = ja.value("kind", "numeric");
        if (kind == "numeric") a.kind = AttributeKind::Numeric;
        else if (kind == "categorical") a.kind = AttributeKind::Categorical;
        else throw std::runtime_error("schema: unknown attribute kind '" + kind + "'");
        if (ja.contains("modalities"))
            a.modalities = ja.at("modalities").get<std::vector<std::string>>();
        schema.attributes.push_back(std::move(a));
    }
    schema.class_labels = j.at("class_labels").get<std::vector<std::string>>();
    schema.check();
    return schema;
}

AttributeSchema load_schema_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open schema file: " + path);
    try {
        return load_schema(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void save_schema(std::ostream& out, const AttributeSchema& schema) {
    ordered_json j;
    j["attributes"] = ordered_json::array();
    for (const auto& a : schema.attributes) {
        ordered_json ja;
        ja["name"] = a.name;
        ja["kind"] = a.kind == AttributeKind::Numeric ? "numeric" : "categorical";
        if (!a.modalities.empty()) ja["modalities"] = a.modalities;
        j["attributes"].push_back(ja);
    }
    j["class_labels"] = schema.class_labels;
    out << j.dump(2) << '\n';
}

}  // namespace fuzzybml
