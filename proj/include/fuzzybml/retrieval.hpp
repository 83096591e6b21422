#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fuzzybml/boolean_engine.hpp"
#include "fuzzybml/case_model.hpp"
#include "fuzzybml/fuzzy_engine.hpp"
#include "fuzzybml/induction_graph.hpp"

namespace fuzzybml {

enum class Method { FuzzyBml, Tree, Knn };

std::string method_name(Method m);

// Everything needed to (re)train a classifier; LOOCV refits one of these per
// round. Numeric attributes take their cuts from a fuzzy variable's term
// crossovers when one is declared, from an explicit spec otherwise, and from
// supervised selection when neither is given.
struct TrainingRecipe {
    Method method = Method::FuzzyBml;
    LearnerParams params;
    std::vector<DiscretizationSpec> specs;
    std::vector<LinguisticVariable> variables;  // fuzzy partitions (FuzzyBml only)
    double cutoff = 0.0;   // fuzzy assertion threshold
    std::size_t k = 3;     // Knn neighbours
    std::size_t supervised_bins = 3;  // fallback binning for uncovered numerics
};

struct Prediction {
    std::optional<std::string> label;  // nullopt = no-decision
    double degree = 1.0;
    std::string note;  // why there was no decision, when applicable

    bool decided() const { return label.has_value(); }
};

class Classifier {
 public:
    static Classifier train(const TrainingRecipe& recipe, const CaseBase& base);

    Prediction predict(const Case& c) const;
    std::vector<Prediction> predict(const CaseBase& queries) const;

    Method method() const { return recipe_.method; }
    const TrainingRecipe& recipe() const { return recipe_; }
    const InductionGraph& graph() const;       // FuzzyBml / Tree
    const RuleBase& rules() const;             // FuzzyBml
    const CellularKnowledgeBase& kb() const;   // FuzzyBml

 private:
    TrainingRecipe recipe_;  // with resolved specs
    AttributeSchema schema_;
    std::optional<InductionGraph> graph_;
    std::optional<RuleBase> rules_;
    std::optional<CellularKnowledgeBase> kb_;
    // Knn keeps the training fold plus per-attribute normalization ranges
    CaseBase train_base_;
    std::vector<std::pair<double, double>> ranges_;

    Prediction predict_fuzzy(const Case& c) const;
    Prediction predict_tree(const Case& c) const;
    Prediction predict_knn(const Case& c) const;
};

// Term degrees of every attribute of one case: fuzzy variables fuzzify their
// attribute, everything else lands crisply (degree 1) on its modality.
std::vector<FuzzyAssignment> case_assignments(const Case& c, const AttributeSchema& schema,
                                              const std::vector<LinguisticVariable>& variables,
                                              const std::vector<DiscretizationSpec>& specs);

// assert_fuzzy restricted to facts the compiled base knows; facts that appear
// in no rule are silently skipped instead of rejected.
AutomatonConfig index_case(const CellularKnowledgeBase& kb,
                           const std::vector<FuzzyAssignment>& assignments, double cutoff);

enum class Protocol { Resubstitution, Holdout, Loocv };

std::string protocol_name(Protocol p);

struct EvalResult {
    std::string method;
    std::string protocol;
    std::size_t n = 0;
    std::size_t correct = 0;
    std::size_t no_decisions = 0;  // counted as errors

    double accuracy() const { return n == 0 ? 0.0 : static_cast<double>(correct) / n; }
};

// Resubstitution scores the training base against itself; holdout scores
// `test`; LOOCV refits n times on base-minus-one (test ignored).
EvalResult evaluate(const TrainingRecipe& recipe, const CaseBase& train, const CaseBase& test,
                    Protocol protocol);

std::vector<EvalResult> compare(const std::vector<TrainingRecipe>& recipes, const CaseBase& train,
                                const CaseBase& test, Protocol protocol);

// CSV report: method,protocol,accuracy,n,no_decisions
std::string format_report(const std::vector<EvalResult>& results);

}  // namespace fuzzybml
