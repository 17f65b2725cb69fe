#pragma once

#include "rcheck/ast.hpp"

#include "json.hpp"

namespace rcheck {

struct AutomatonEdge {
    int source = 0;
    int command = -1;  // index into AgentDef::commands
    int target = 0;

    friend bool operator==(const AutomatonEdge&, const AutomatonEdge&) = default;
};

/// States are 0..numStates-1; state 0 is s_i.
struct StructureAutomaton {
    int numStates = 1;
    int initial = 0;
    int final = 0;
    std::vector<AutomatonEdge> edges;  // command (left-to-right) order
    std::vector<Diagnostic> notes;

    std::vector<int> reachable() const;     // sorted state ids reachable from initial
    std::vector<int> unreachable() const;
};

/// Builds the automaton of `process` by the five translation rules. With
/// `repeatTop` the process is read as `repeat: P`, i.e. s_f = s_i.
StructureAutomaton build_automaton(const ProcessPtr& process, bool repeatTop = true);

/// Agent automaton: `repeat: P`.
StructureAutomaton build_agent_automaton(const AgentDef& agent);

std::string export_dot(const StructureAutomaton& a, const AgentDef& agent, bool fullCommands = false);
nlohmann::json automaton_json(const StructureAutomaton& a, const AgentDef& agent);

} // namespace rcheck
