#pragma once

#include "rcheck/system.hpp"

namespace rcheck {

struct LintReport {
    std::vector<Diagnostic> diagnostics;  // warnings first, then notes
    std::size_t statesExplored = 0;
    bool truncated = false;

    std::size_t warningCount() const;
};

/// Static and reachability-based checks. Never changes the semantics.
///   missing-relabel          common variable defaulted to undef
///   not-input-enabled        a connected, pi-satisfying receiver blocks a broadcast
///   unreachable-state        control state not reachable in the structure automaton
///   empty-channel (note)     a send's channel evaluates to `empty` where its guard holds
///   unvisited-state (note)   control state never visited in the explored state space
LintReport lint(const CompiledSystem& sys, std::size_t budget = 200000);

} // namespace rcheck
