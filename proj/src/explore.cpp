#include "rcheck/explore.hpp"

#include <algorithm>
#include <deque>

namespace rcheck {

StateGraph explore(const CompiledSystem& sys, std::size_t budget, int maxDepth) {
    StateGraph g;
    std::deque<int> queue;
    auto add = [&](const SystemState& s, int parent) {
        auto [it, fresh] = g.index.emplace(s, static_cast<int>(g.states.size()));
        if (!fresh) return;
        g.states.push_back(s);
        g.parent.push_back(parent);
        g.depth.push_back(parent < 0 ? 0 : g.depth[static_cast<std::size_t>(parent)] + 1);
        queue.push_back(it->second);
    };
    for (const auto& s : initial_states(sys)) {
        if (g.states.size() >= budget) {
            g.truncated = true;
            return g;
        }
        add(s, -1);
    }
    while (!queue.empty()) {
        int cur = queue.front();
        queue.pop_front();
        if (maxDepth >= 0 && g.depth[static_cast<std::size_t>(cur)] >= maxDepth) continue;
        SystemState s = g.states[static_cast<std::size_t>(cur)];
        for (const auto& t : enabled_transitions(sys, s)) {
            ++g.transitions;
            if (!g.index.count(t.successor) && g.states.size() >= budget) {
                g.truncated = true;
                return g;
            }
            add(t.successor, cur);
        }
    }
    return g;
}

std::vector<int> path_to(const StateGraph& g, int target) {
    std::vector<int> out;
    for (int s = target; s >= 0; s = g.parent[static_cast<std::size_t>(s)]) out.push_back(s);
    std::reverse(out.begin(), out.end());
    return out;
}

} // namespace rcheck
