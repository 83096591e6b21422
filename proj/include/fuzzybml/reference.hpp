#pragma once

#include <set>
#include <string>

#include "fuzzybml/rule_base.hpp"

namespace fuzzybml {
namespace reference {

// Plain set-based production-rule interpreter: repeatedly fires every rule
// whose premises are established until nothing changes. Serial, no packing,
// no cell layers. This is the reference the cellular engine is checked
// against (and the baseline the benchmark compares with).
std::set<std::string> forward_chain_naive(const RuleBase& rb,
                                          const std::set<std::string>& initial,
                                          bool any_premise_fires = false);

}  // namespace reference
}  // namespace fuzzybml
