#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fuzzybml/boolean_engine.hpp"
#include "fuzzybml/discretization.hpp"

namespace fuzzybml {

// Trapezoidal membership: support [a,d], core [b,c]. Triangles are b=c,
// steps are degenerate ramps (a=b or c=d).
struct Trapezoid {
    double a = 0, b = 0, c = 0, d = 0;

    bool operator==(const Trapezoid&) const = default;
};

double membership(const Trapezoid& mf, double x);

struct FuzzyTerm {
    std::string label;
    Trapezoid mf;
    int code = 0;  // 3-bit partition code, 0b000..0b110

    bool operator==(const FuzzyTerm&) const = default;
};

struct LinguisticVariable {
    std::string name;
    double universe_lo = 0, universe_hi = 1;
    std::vector<FuzzyTerm> terms;  // ordered low to high over the universe

    // throws std::invalid_argument on duplicate labels/codes, codes outside
    // 000..110, or a coverage gap (some universe point with zero total
    // membership)
    void check() const;

    bool operator==(const LinguisticVariable&) const = default;
};

struct FuzzyAssignment {
    std::string variable;
    std::map<std::string, double> degrees;  // term label -> [0,1]
};

// Degrees of every term at x. Values outside the universe are clamped and
// reported through on_clamp when provided.
FuzzyAssignment fuzzify(const LinguisticVariable& v, double x,
                        const std::function<void(const std::string&)>& on_clamp = {});

// Crisp cut points induced by the variable: the crossover of each pair of
// consecutive terms (where the falling and rising ramps meet). Lets a
// discretization and a fuzzy partition share one source of truth.
std::vector<double> crossover_cuts(const LinguisticVariable& v);
DiscretizationSpec crisp_spec(const LinguisticVariable& v);

// G_0 with E=1 and I=degree on every (variable=term) fact whose degree is
// positive and >= cutoff. Unknown fact labels are rejected.
AutomatonConfig assert_fuzzy(const CellularKnowledgeBase& kb,
                             const std::vector<FuzzyAssignment>& assignments, double cutoff);

// Runs the Delta fixpoint with graded channels (min over premises, max over
// concluding rules).
ChainResult fuzzy_infer(const CellularKnowledgeBase& kb, AutomatonConfig g0);

struct Decision {
    std::optional<std::string> label;  // nullopt = no-decision
    double degree = 0.0;

    bool decided() const { return label.has_value(); }
};

// Argmax over established class facts; ties broken by lexicographically
// smaller label. No class established yields the no-decision value.
Decision defuzzify(const CellularKnowledgeBase& kb, const AutomatonConfig& g,
                   const std::vector<std::string>& classes);

// Fuzzy config file: {"variables":[{name, universe:[lo,hi],
//   terms:[{label, trapezoid:[a,b,c,d], code:"010"}]}]}
std::vector<LinguisticVariable> load_fuzzy_config(std::istream& in);
std::vector<LinguisticVariable> load_fuzzy_config_file(const std::string& path);
void save_fuzzy_config(std::ostream& out, const std::vector<LinguisticVariable>& vars);

// The cost partition shipped as the default: Faible/Raisonnable/Elevé with
// anchor memberships 0.75/0.25 at cost 35 and full Elevé from 70 up.
LinguisticVariable default_cost_variable(const std::string& name = "X_3");

}  // namespace fuzzybml
