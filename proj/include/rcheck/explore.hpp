#pragma once

#include "rcheck/semantics.hpp"

#include <unordered_map>

namespace rcheck {

/// Breadth-first reachable state set with BFS parents (for shortest traces).
struct StateGraph {
    std::vector<SystemState> states;
    std::vector<int> parent;  // -1 for initial states
    std::vector<int> depth;
    std::unordered_map<SystemState, int, ValueVectorHash> index;
    std::size_t transitions = 0;
    bool truncated = false;   // budget hit before the frontier emptied
};

/// Explores at most `budget` states. `maxDepth` < 0 means unbounded.
StateGraph explore(const CompiledSystem& sys, std::size_t budget, int maxDepth = -1);

/// Initial-to-`target` state path along BFS parents.
std::vector<int> path_to(const StateGraph& g, int target);

} // namespace rcheck
