#pragma once

#include <string>
#include <vector>

namespace fuzzybml {

// Binning of one numeric attribute. k cuts split the line into k+1
// left-closed intervals: bin i covers [cuts[i-1], cuts[i]), the last one
// extends to +inf. Labels name the bins low to high.
struct DiscretizationSpec {
    std::string attribute;
    std::vector<double> cuts;    // strictly increasing
    std::vector<std::string> labels;  // size cuts.size()+1

    void check() const;  // throws std::invalid_argument
    std::size_t bin(double x) const;
    const std::string& label_of(double x) const { return labels[bin(x)]; }
};

}  // namespace fuzzybml
