#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fuzzybml {

enum class AttributeKind { Numeric, Categorical };

struct Attribute {
    std::string name;
    AttributeKind kind = AttributeKind::Numeric;
    std::vector<std::string> modalities;  // categorical only; at least 2

    bool operator==(const Attribute&) const = default;
};

// Dataset schema: the exogenous attributes X_1..X_p and the set of plan
// labels the endogenous variable Y may take.
struct AttributeSchema {
    std::vector<Attribute> attributes;
    std::vector<std::string> class_labels;

    const Attribute* find(const std::string& name) const;
    // throws std::invalid_argument on a malformed schema
    void check() const;

    bool operator==(const AttributeSchema&) const = default;
};

using Value = std::variant<double, std::string>;

struct Case {
    std::string id;
    std::map<std::string, Value> values;
    std::optional<std::string> label;

    double number(const std::string& attr) const;
    const std::string& category(const std::string& attr) const;

    bool operator==(const Case&) const = default;
};

struct Violation {
    std::string attribute;
    std::string message;
};
using ValidationReport = std::vector<Violation>;

struct CaseBase {
    AttributeSchema schema;
    std::vector<Case> cases;

    std::size_t size() const { return cases.size(); }
    bool operator==(const CaseBase&) const = default;
};

enum class LoadMode {
    Labeled,  // every row must carry a plan label
    Query     // labels optional (unlabeled problems awaiting retrieval)
};

// CSV ingestion. Header row: [id,]<attr1>,...,<attrp>[,plan]; fields may be
// double-quoted, and numeric fields accept both '.' and ',' as the decimal
// mark. Throws std::runtime_error naming row and column on malformed input.
CaseBase load_case_base(std::istream& in, const AttributeSchema& schema,
                        LoadMode mode = LoadMode::Labeled);
CaseBase load_case_base_file(const std::string& path, const AttributeSchema& schema,
                             LoadMode mode = LoadMode::Labeled);
void save_case_base(std::ostream& out, const CaseBase& base);

ValidationReport validate_case(const Case& c, const AttributeSchema& schema);

// Deterministic shuffle split into (train, test); |train| = round(f * n).
// All cases must be labeled.
std::pair<CaseBase, CaseBase> split_dataset(const CaseBase& base, double train_fraction,
                                            std::uint64_t seed);

// Schema file IO (JSON: {"attributes":[...], "class_labels":[...]}).
AttributeSchema load_schema(std::istream& in);
AttributeSchema load_schema_file(const std::string& path);
void save_schema(std::ostream& out, const AttributeSchema& schema);

// Shortest round-trip decimal rendering, shared by the CSV and JSON writers.
std::string format_number(double v);

}  // namespace fuzzybml
