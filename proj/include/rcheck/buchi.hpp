#pragma once

#include "rcheck/ltl.hpp"

#include <cstdint>

namespace rcheck {

struct BuchiEdge {
    int target = 0;
    std::uint64_t pos = 0;  // atoms that must hold
    std::uint64_t neg = 0;  // atoms that must not hold
    bool accepting = false;

    bool matches(std::uint64_t letter) const { return (letter & pos) == pos && (letter & neg) == 0; }
};

/// Büchi automaton with acceptance on edges: a run is accepting iff it
/// takes accepting edges infinitely often.
struct BuchiAutomaton {
    int numStates = 0;
    std::vector<int> initial;
    std::vector<std::vector<BuchiEdge>> edges;  // by source state
    std::vector<std::string> stateNames;        // obligations, for dumps
};

/// Tableau translation (negation normal form, expansion into covers,
/// transition-based generalized acceptance per until, then degeneralized).
BuchiAutomaton ltl_to_buchi(const LtlPtr& formula, const std::vector<LtlAtom>& atoms);

/// Whether `a` accepts the ultimately periodic word.
bool accepts(const BuchiAutomaton& a, const LassoWord& w);

std::string dump(const BuchiAutomaton& a, const std::vector<LtlAtom>& atoms);

} // namespace rcheck
