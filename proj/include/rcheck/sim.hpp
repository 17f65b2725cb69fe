#pragma once

#include "rcheck/checker.hpp"

#include <memory>
#include <random>

namespace rcheck {

/// A boolean expression over current `inst-var` values, `next(inst-var)`
/// values of a candidate step and label atoms. Send labels refer to the
/// candidate step, receive labels to the step that led to the current state.
struct Constraint {
    std::string text;
    ExprPtr expr;
};

Constraint parse_constraint(std::string_view text, const CompiledSystem& sys);

bool constraint_holds(const Constraint& c, const CompiledSystem& sys, const AugState& from, const JointTransition& t);

struct TraceStep {
    int choice = -1;         // index into the enabled list at that point; -1: stutter
    std::string constraint;  // empty for random or replayed steps
    std::optional<JointTransition> transition;
    AugState target;
};

struct StepResult {
    std::optional<JointTransition> transition;  // nullopt: stutter at a deadlock
    int choice = -1;
    bool deadlock = false;
};

/// One simulation run. Not thread-safe; callers serialize access.
class Session {
public:
    Session(std::shared_ptr<const CompiledSystem> sys, std::uint64_t seed, std::string modelText = {});

    const CompiledSystem& system() const { return *sys_; }
    const std::shared_ptr<const CompiledSystem>& shared_system() const { return sys_; }
    const std::string& model_text() const { return modelText_; }
    std::uint64_t seed() const { return seed_; }
    const AugState& current() const { return current_; }
    const std::vector<TraceStep>& trace() const { return trace_; }
    const std::vector<JointTransition>& enabled() const { return enabled_; }
    bool deadlocked() const { return enabled_.empty(); }

    /// Uniform seeded choice, or a stutter step at a deadlock.
    StepResult step_random();
    /// First enabled step, in canonical order, satisfying the constraint.
    /// Throws InfeasibleConstraint (listing the nearest misses) or Deadlock.
    StepResult step_constrained(const std::string& constraint);
    /// Takes enabled()[index]; -1 stutters, and only at a deadlock.
    StepResult step_choice(int index);

    nlohmann::json inspect() const;
    nlohmann::json export_trace() const;

    /// Rebuilds a session from an exported trace; the model text inside the
    /// trace is compiled afresh.
    static Session replay(const nlohmann::json& trace);

private:
    StepResult take(int index, std::string constraint);

    std::shared_ptr<const CompiledSystem> sys_;
    std::uint64_t seed_;
    std::string modelText_;
    std::mt19937_64 rng_;
    int initialIndex_ = 0;
    AugState current_;
    std::vector<JointTransition> enabled_;
    std::vector<TraceStep> trace_;
};

} // namespace rcheck
