#include "rcheck/system.hpp"

#include "rcheck/parser.hpp"
#include "rcheck/typecheck.hpp"

#include <sstream>

namespace rcheck {

int CompiledSystem::findGlobal(std::string_view instance, std::string_view var) const {
    int i = model.findInstance(instance);
    if (i < 0) return -1;
    const auto& l = layout[static_cast<std::size_t>(i)];
    const AgentDef& def = defOf(i);
    if (var == "st") return l.offset + static_cast<int>(def.locals.size());
    int v = def.findLocal(var);
    return v < 0 ? -1 : l.offset + v;
}

LabelRef CompiledSystem::findLabel(std::string_view instance, std::string_view label) const {
    int i = model.findInstance(instance);
    if (i < 0) return {};
    return {i, defOf(i).findCommand(label)};
}

std::string CompiledSystem::labelName(LabelRef l) const {
    return model.instances[static_cast<std::size_t>(l.instance)].id + "-" +
           defOf(l.instance).commands[static_cast<std::size_t>(l.command)].label;
}

bool CompiledSystem::isSend(LabelRef l) const {
    return defOf(l.instance).commands[static_cast<std::size_t>(l.command)].kind == CommandKind::Send;
}

CompiledSystem compile_system(SystemModel parsed) {
    TypedModel typed = typecheck(std::move(parsed));
    CompiledSystem sys;
    sys.model = std::move(typed.model);
    sys.warnings = std::move(typed.warnings);
    for (int a = 0; a < static_cast<int>(sys.model.agents.size()); ++a) {
        auto automaton = build_agent_automaton(sys.model.agents[static_cast<std::size_t>(a)]);
        sys.agents.push_back(compile_agent(sys.model, a, automaton));
    }
    int offset = 0;
    for (const auto& inst : sys.model.instances) {
        const SymbolicAgent& sa = sys.agents[static_cast<std::size_t>(inst.agent)];
        int size = static_cast<int>(sa.vars.size());
        sys.layout.push_back({inst.agent, offset, size});
        for (const auto& v : sa.vars) sys.globals.push_back({inst.id + "-" + v.name, v.type, v.pos});
        sys.instanceInit.push_back(make_and({sa.theta, inst.extraInit}));
        offset += size;
    }
    sys.stateSize = offset;
    return sys;
}

CompiledSystem compile_source(std::string_view source) { return compile_system(parse_model(source)); }

std::string format_state(const CompiledSystem& sys, const SystemState& s) {
    std::ostringstream out;
    for (int i = 0; i < sys.numInstances(); ++i) {
        const auto& l = sys.layout[static_cast<std::size_t>(i)];
        const auto& sa = sys.agentOf(i);
        out << (i ? " | " : "") << sys.model.instances[static_cast<std::size_t>(i)].id << ":";
        for (int v = 0; v < l.size; ++v) {
            out << " " << sa.vars[static_cast<std::size_t>(v)].name << "="
                << to_string(s[static_cast<std::size_t>(l.offset + v)], sys.model);
        }
    }
    return out.str();
}

} // namespace rcheck
