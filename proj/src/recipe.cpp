#include "rcheck/recipe.hpp"

#include "rcheck/parser.hpp"

#include <algorithm>
#include <sstream>

namespace rcheck {

Classification classify(const Command& c) {
    Classification out;
    out.type = c.kind;
    for (const auto& u : c.update) out.vars.push_back(u.index);
    std::sort(out.vars.begin(), out.vars.end());
    out.guard = c.kind == CommandKind::Send ? c.senderPred : make_bool(false);
    return out;
}

namespace {

ExprPtr local_var(const AgentDef& agent, int i, bool primed) {
    const auto& d = agent.locals[static_cast<std::size_t>(i)];
    return make_var({VarScope::Local, i, primed}, d.name, d.type);
}

} // namespace

ExprPtr st_var(const AgentDef& agent, int numStates, bool primed) {
    return make_var({VarScope::Local, static_cast<int>(agent.locals.size()), primed}, "st",
                    Type::integer(0, numStates - 1));
}

ExprPtr pred_of(const Command& c, const AgentDef& agent, const SystemModel& model) {
    std::vector<ExprPtr> parts{c.pre};
    parts.push_back(make_binary(ExprKind::Eq, make_var({VarScope::Channel, 0}, "ch", Type::channel()), c.channel));
    if (c.kind == CommandKind::Send) {
        for (std::size_t i = 0; i < model.dataVars.size(); ++i) {
            const auto& d = model.dataVars[i];
            ExprPtr lhs = make_var({VarScope::Data, static_cast<int>(i)}, d.name, d.type);
            ExprPtr rhs = make_const(Value::undef());
            for (const auto& a : c.data) {
                if (a.index == static_cast<int>(i)) rhs = a.value;
            }
            parts.push_back(make_binary(ExprKind::Eq, lhs, rhs));
        }
    }
    for (const auto& u : c.update) {
        parts.push_back(make_binary(ExprKind::Eq, local_var(agent, u.index, true), u.value));
    }
    return make_and(parts);
}

ExprPtr keep_pred(const AgentDef& agent, const std::vector<int>& vars) {
    std::vector<ExprPtr> parts;
    for (int v : vars) parts.push_back(make_binary(ExprKind::Eq, local_var(agent, v, true), local_var(agent, v, false)));
    return make_and(parts);
}

std::vector<ExprPtr> conjuncts(const ExprPtr& e) {
    if (e->kind != ExprKind::And) return {e};
    auto l = conjuncts(e->args[0]);
    auto r = conjuncts(e->args[1]);
    l.insert(l.end(), r.begin(), r.end());
    return l;
}

SymbolicAgent compile_agent(const SystemModel& model, int agentIndex, const StructureAutomaton& automaton) {
    const AgentDef& def = model.agents[static_cast<std::size_t>(agentIndex)];
    SymbolicAgent out;
    out.agent = agentIndex;
    out.automaton = automaton;
    out.vars = def.locals;
    out.vars.push_back({"st", Type::integer(0, automaton.numStates - 1), def.pos});

    ExprPtr st = st_var(def, automaton.numStates);
    ExprPtr stNext = st_var(def, automaton.numStates, true);
    auto stIs = [](const ExprPtr& v, int s) { return make_binary(ExprKind::Eq, v, make_const(Value::integer(s))); };

    out.theta = make_and({def.init, stIs(st, automaton.initial)});
    for (const auto& r : def.relabel) out.relabel.push_back(r.value);
    out.receiveGuard = def.receiveGuard;

    std::vector<ExprPtr> guards;
    for (const auto& c : def.commands) {
        if (c.kind == CommandKind::Send) guards.push_back(c.senderPred);
    }
    out.sendGuard = make_or(guards);

    for (const auto& e : automaton.edges) {
        const Command& c = def.commands[static_cast<std::size_t>(e.command)];
        auto cls = classify(c);
        GuardedTransition g;
        g.label = c.label;
        g.source = e.source;
        g.target = e.target;
        g.command = e.command;
        g.kind = c.kind;
        for (int v = 0; v < static_cast<int>(def.locals.size()); ++v) {
            if (!std::binary_search(cls.vars.begin(), cls.vars.end(), v)) g.kept.push_back(v);
        }
        g.pred = make_and({pred_of(c, def, model), stIs(st, e.source), stIs(stNext, e.target), keep_pred(def, g.kept)});
        (c.kind == CommandKind::Send ? out.sendRel : out.recvRel).push_back(std::move(g));
    }
    return out;
}

std::string dump(const SymbolicAgent& a, const SystemModel& model) {
    const AgentDef& def = model.agents[static_cast<std::size_t>(a.agent)];
    std::ostringstream out;
    out << "agent " << def.name << "\n";
    out << "  V: ";
    for (std::size_t i = 0; i < a.vars.size(); ++i) {
        out << (i ? ", " : "") << a.vars[i].name << " : " << to_string(a.vars[i].type);
    }
    out << "\n  theta: " << print_expr(a.theta, &model) << "\n";
    for (std::size_t i = 0; i < a.relabel.size(); ++i) {
        out << "  f(" << model.commonVars[i].name << ") = " << print_expr(a.relabel[i], &model) << "\n";
    }
    out << "  g^r: " << print_expr(a.receiveGuard, &model) << "\n";
    out << "  g^s: " << print_expr(a.sendGuard, &model) << "\n";
    out << "  T^s:\n";
    for (const auto& g : a.sendRel) out << "    " << g.label << " := " << print_expr(g.pred, &model) << "\n";
    out << "  T^r:\n";
    for (const auto& g : a.recvRel) out << "    " << g.label << " := " << print_expr(g.pred, &model) << "\n";
    return out.str();
}

} // namespace rcheck
