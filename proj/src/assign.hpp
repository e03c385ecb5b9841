#pragma once

#include <map>
#include <string>
#include <vector>

#include "model.hpp"

namespace chainrta {

// Chain-aware callback priority assignment: chains sorted by ascending chain
// priority, callbacks numbered 1,2,3,... front-to-back within each chain.
// Every callback of a higher-priority chain outranks every callback of a
// lower-priority chain, and priorities strictly increase along each chain.
// Throws std::invalid_argument on duplicate chain priorities.
std::map<std::string, int> chain_aware_priorities(const std::vector<Chain>& chains);

// Rewrites the callback priorities of `system` in place with the chain-aware
// assignment. Priority-driven analysis and simulation expect this to have run.
void apply_chain_aware_priorities(SystemSpec& system);

}  // namespace chainrta
