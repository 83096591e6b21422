#include "fuzzybml/reference.hpp"

#include <algorithm>
#include <vector>

namespace fuzzybml {
namespace reference {

std::set<std::string> forward_chain_naive(const RuleBase& rb,
                                          const std::set<std::string>& initial,
                                          bool any_premise_fires) {
    std::set<std::string> established = initial;
    std::vector<bool> fired(rb.rules.size(), false);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t j = 0; j < rb.rules.size(); ++j) {
            if (fired[j]) continue;
            const Rule& r = rb.rules[j];
            bool ok;
            if (any_premise_fires) {
                ok = std::any_of(r.premises.begin(), r.premises.end(),
                                 [&](const std::string& p) { return established.count(p); });
            } else {
                ok = std::all_of(r.premises.begin(), r.premises.end(),
                                 [&](const std::string& p) { return established.count(p); });
            }
            if (!ok) continue;
            fired[j] = true;
            if (established.insert(r.conclusion).second) changed = true;
        }
    }
    return established;
}

}  // namespace reference
}  // namespace fuzzybml
