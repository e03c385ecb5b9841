#include "assign.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace chainrta {

std::map<std::string, int> chain_aware_priorities(const std::vector<Chain>& chains) {
  std::set<int> seen;
  for (const auto& chain : chains)
    if (!seen.insert(chain.priority).second)
      throw std::invalid_argument(
          "chain_aware_priorities: duplicate chain priority " +
          std::to_string(chain.priority));

  std::vector<const Chain*> order;
  order.reserve(chains.size());
  for (const auto& chain : chains) order.push_back(&chain);
  std::sort(order.begin(), order.end(),
            [](const Chain* a, const Chain* b) { return a->priority < b->priority; });

  std::map<std::string, int> priorities;
  int next = 1;
  for (const Chain* chain : order)
    for (const auto& cb : chain->callbacks) priorities[cb.id] = next++;
  return priorities;
}

void apply_chain_aware_priorities(SystemSpec& system) {
  const auto priorities = chain_aware_priorities(system.chains);
  for (auto& chain : system.chains)
    for (auto& cb : chain.callbacks) cb.priority = priorities.at(cb.id);
}

}  // namespace chainrta
