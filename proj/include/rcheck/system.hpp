#pragma once

#include "rcheck/recipe.hpp"

#include <memory>
#include <span>
#include <string_view>

namespace rcheck {

struct LabelRef {
    int instance = -1;
    int command = -1;

    friend bool operator==(const LabelRef&, const LabelRef&) = default;
    friend auto operator<=>(const LabelRef&, const LabelRef&) = default;
};

struct InstanceLayout {
    int agent = -1;   // agent type index
    int offset = 0;   // first slot in SystemState
    int size = 0;     // locals + st
};

/// Parsed, typed and compiled system: one symbolic agent per type and the
/// flattened state layout (per instance: locals then st).
struct CompiledSystem {
    SystemModel model;
    std::vector<Diagnostic> warnings;
    std::vector<SymbolicAgent> agents;
    std::vector<InstanceLayout> layout;
    std::vector<VarDecl> globals;         // `inst-var` names, flat order
    std::vector<ExprPtr> instanceInit;    // theta_T && extraInit && st == s_i, local scope
    int stateSize = 0;

    const SymbolicAgent& agentOf(int instance) const {
        return agents[static_cast<std::size_t>(layout[static_cast<std::size_t>(instance)].agent)];
    }
    const AgentDef& defOf(int instance) const {
        return model.agents[static_cast<std::size_t>(layout[static_cast<std::size_t>(instance)].agent)];
    }
    int numInstances() const { return static_cast<int>(layout.size()); }

    std::span<const Value> slice(const SystemState& s, int instance) const {
        const auto& l = layout[static_cast<std::size_t>(instance)];
        return std::span<const Value>(s).subspan(static_cast<std::size_t>(l.offset), static_cast<std::size_t>(l.size));
    }

    /// Flat index of `inst-var` (var may be `st`), -1 if absent.
    int findGlobal(std::string_view instance, std::string_view var) const;
    /// Resolves `inst-label`; command -1 if absent.
    LabelRef findLabel(std::string_view instance, std::string_view label) const;
    std::string labelName(LabelRef l) const;
    bool isSend(LabelRef l) const;
};

CompiledSystem compile_system(SystemModel parsed);
CompiledSystem compile_source(std::string_view source);

std::string format_state(const CompiledSystem& sys, const SystemState& s);

} // namespace rcheck
