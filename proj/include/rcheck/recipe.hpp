#pragma once

#include "rcheck/automaton.hpp"

namespace rcheck {

struct Classification {
    CommandKind type = CommandKind::Send;
    std::vector<int> vars;  // updated locals, sorted
    ExprPtr guard;          // pi for sends, FALSE for receives
};

Classification classify(const Command& c);

/// Pre-condition, channel equation, data equations and primed update
/// equations, conjoined left to right. Excludes pi.
ExprPtr pred_of(const Command& c, const AgentDef& agent, const SystemModel& model);

/// v' == v for every local in `vars`.
ExprPtr keep_pred(const AgentDef& agent, const std::vector<int>& vars);

/// Reference to `st` (primed or not) of an agent with `numStates` control states.
ExprPtr st_var(const AgentDef& agent, int numStates, bool primed = false);

struct GuardedTransition {
    std::string label;
    int source = 0;
    int target = 0;
    int command = -1;
    CommandKind kind = CommandKind::Send;
    ExprPtr pred;
    std::vector<int> kept;
};

struct SymbolicAgent {
    int agent = -1;  // index into SystemModel::agents
    StructureAutomaton automaton;
    std::vector<VarDecl> vars;  // locals followed by st
    ExprPtr theta;
    std::vector<ExprPtr> relabel;  // by common-variable id
    ExprPtr receiveGuard;
    ExprPtr sendGuard;
    std::vector<GuardedTransition> sendRel;
    std::vector<GuardedTransition> recvRel;
};

SymbolicAgent compile_agent(const SystemModel& model, int agentIndex, const StructureAutomaton& automaton);

/// Flattens nested conjunctions.
std::vector<ExprPtr> conjuncts(const ExprPtr& e);

/// Text dump, one disjunct per line.
std::string dump(const SymbolicAgent& a, const SystemModel& model);

} // namespace rcheck
