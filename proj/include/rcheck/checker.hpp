#pragma once

#include "rcheck/buchi.hpp"
#include "rcheck/semantics.hpp"

#include "json.hpp"

#include <optional>

namespace rcheck {

/// A system state plus the receive labels fired by the incoming
/// transition (empty initially and after a stutter step).
struct AugState {
    SystemState base;
    std::vector<LabelRef> lastFired;  // sorted

    friend bool operator==(const AugState&, const AugState&) = default;
};

/// Successor of `s` along `t`, or the stutter successor when `t` is null.
AugState advance(const AugState& s, const JointTransition* t);

/// Atom valuation at a position: send labels read the outgoing transition,
/// receive labels read lastFired, state atoms read the base state. Every
/// send atom is false on a stutter step (`outgoing` null).
std::uint64_t atoms_at(const LtlFormula& f, const CompiledSystem& sys, const AugState& s,
                       const JointTransition* outgoing);

struct LassoStep {
    AugState state;
    std::optional<JointTransition> transition;  // nullopt: stutter at a deadlock
};

struct Lasso {
    std::vector<LassoStep> prefix;
    std::vector<LassoStep> loop;  // the step after the last loop step is loop.front()

    std::size_t size() const { return prefix.size() + loop.size(); }
};

enum class VerdictKind { Holds, Fails, HoldsUpToBound };

struct Verdict {
    VerdictKind kind = VerdictKind::Holds;
    std::optional<Lasso> lasso;  // Fails only
    std::size_t productStates = 0;
    std::size_t systemStates = 0;  // distinct augmented states touched
    int bound = -1;                // bounded runs only
    double seconds = 0;
};

struct CheckOptions {
    std::size_t budget = 5000000;  // product states
};

/// Nested depth-first search over the product of the augmented state graph
/// (deadlocks completed by stuttering) with the automaton of the negation.
Verdict model_check(const CompiledSystem& sys, const LtlFormula& f, const CheckOptions& opts = {});

/// Looks only for counterexample lassos with |prefix| + |loop| <= k.
Verdict bounded_check(const CompiledSystem& sys, const LtlFormula& f, int k, const CheckOptions& opts = {});

/// Replays a lasso through enabled_transitions and checks that its atom
/// word violates `f`. Returns an empty string when valid, else the reason.
std::string validate_lasso(const CompiledSystem& sys, const LtlFormula& f, const Lasso& lasso);

LassoWord lasso_word(const CompiledSystem& sys, const LtlFormula& f, const Lasso& lasso);

std::string format_lasso(const CompiledSystem& sys, const Lasso& lasso);
nlohmann::json lasso_json(const CompiledSystem& sys, const Lasso& lasso);
/// `{"inst-var": value}` for every state slot.
nlohmann::json state_json(const CompiledSystem& sys, const SystemState& s);
/// Sender, label, channel, data, per-instance outcome and fired labels.
nlohmann::json transition_json(const CompiledSystem& sys, const JointTransition& t);
const char* to_string(VerdictKind k);

} // namespace rcheck
