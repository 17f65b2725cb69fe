#pragma once

#include "rcheck/system.hpp"

namespace rcheck {

struct Message {
    Value channel;
    std::vector<Value> data;  // by data-variable id
    int sender = -1;
    ExprPtr pi;               // residual sender predicate over common variables
};

enum class Outcome : std::uint8_t { Sender, Received, IdleNotConnected, IdleBroadcastExcluded };

struct ReceiverOutcome {
    Outcome kind = Outcome::IdleNotConnected;
    int edge = -1;  // Sender: index into sendRel; Received: index into recvRel

    friend bool operator==(const ReceiverOutcome&, const ReceiverOutcome&) = default;
    friend auto operator<=>(const ReceiverOutcome&, const ReceiverOutcome&) = default;
};

struct JointTransition {
    Message message;
    int sendEdge = -1;
    std::vector<ReceiverOutcome> outcomes;  // one per instance, the sender's is Outcome::Sender
    SystemState successor;
    std::vector<LabelRef> fired;            // sender's send label first, then receive labels by instance
};

/// All valuations satisfying every instance's initial condition, in
/// lexicographic order of (instance, domain order).
std::vector<SystemState> initial_states(const CompiledSystem& sys);

/// Joint transitions enabled at `s`, in canonical order (sender instance,
/// send edge, receiver choices).
std::vector<JointTransition> enabled_transitions(const CompiledSystem& sys, const SystemState& s);

/// A send whose own guard holds but which cannot fire because `receiver`
/// (connected, satisfying pi) has no matching receive, or, on a multicast
/// channel, does not satisfy pi.
struct BlockedSend {
    int sender = -1;
    int sendEdge = -1;
    int receiver = -1;
    Value channel;
    bool piFailed = false;
};

std::vector<BlockedSend> blocked_sends(const CompiledSystem& sys, const SystemState& s);

/// Independent enumeration of the same set by evaluating the transition
/// predicates over candidate successors. Small systems only.
std::vector<JointTransition> brute_force_oracle(const CompiledSystem& sys, const SystemState& s,
                                                int maxAgents = 3, int maxDomain = 6);

/// Order-insensitive comparison key.
struct TransitionKey {
    int sender;
    int sendEdge;
    Value channel;
    std::vector<Value> data;
    std::vector<ReceiverOutcome> outcomes;
    SystemState successor;

    friend bool operator==(const TransitionKey&, const TransitionKey&) = default;
    friend auto operator<=>(const TransitionKey&, const TransitionKey&) = default;
};

TransitionKey key_of(const JointTransition& t);

std::string describe(const CompiledSystem& sys, const JointTransition& t);

} // namespace rcheck
