#include "rcheck/automaton.hpp"

#include "rcheck/parser.hpp"

#include <algorithm>
#include <sstream>

namespace rcheck {

namespace {

struct Builder {
    StructureAutomaton& out;

    int fresh() { return out.numStates++; }

    void build(const ProcessPtr& p, int si, int sf) {
        using K = Process::Kind;
        switch (p->kind) {
        case K::Cmd: out.edges.push_back({si, p->command, sf}); return;
        case K::Choice:
            build(p->left, si, sf);
            build(p->right, si, sf);
            return;
        case K::Rep: build(p->left, si, si); return;
        case K::Seq: {
            int s1 = fresh();
            build(p->left, si, s1);
            build(p->right, s1, sf);
            return;
        }
        }
    }
};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

} // namespace

std::vector<int> StructureAutomaton::reachable() const {
    std::vector<bool> seen(static_cast<std::size_t>(numStates), false);
    std::vector<int> stack{initial};
    seen[static_cast<std::size_t>(initial)] = true;
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (const auto& e : edges) {
            if (e.source == s && !seen[static_cast<std::size_t>(e.target)]) {
                seen[static_cast<std::size_t>(e.target)] = true;
                stack.push_back(e.target);
            }
        }
    }
    std::vector<int> r;
    for (int s = 0; s < numStates; ++s) {
        if (seen[static_cast<std::size_t>(s)]) r.push_back(s);
    }
    return r;
}

std::vector<int> StructureAutomaton::unreachable() const {
    auto r = reachable();
    std::vector<int> out;
    std::size_t j = 0;
    for (int s = 0; s < numStates; ++s) {
        if (j < r.size() && r[j] == s) {
            ++j;
        } else {
            out.push_back(s);
        }
    }
    return out;
}

StructureAutomaton build_automaton(const ProcessPtr& process, bool repeatTop) {
    StructureAutomaton a;
    a.numStates = 1;
    a.initial = 0;
    if (repeatTop) {
        a.final = 0;
        Builder{a}.build(process, 0, 0);
        return a;
    }
    // Distinct final state: minted after the traversal so internal ids stay
    // in pre-order.
    StructureAutomaton tmp;
    Builder{tmp}.build(process, 0, -1);
    int fin = tmp.numStates;
    for (auto& e : tmp.edges) {
        if (e.target == -1) e.target = fin;
    }
    a.edges = std::move(tmp.edges);
    a.numStates = fin + 1;
    a.final = fin;
    auto reach = a.reachable();
    if (std::find(reach.begin(), reach.end(), fin) == reach.end()) {
        Diagnostic d;
        d.severity = Severity::Info;
        d.code = "unreachable-final";
        d.message = "final state s" + std::to_string(fin) + " is unreachable";
        a.notes.push_back(std::move(d));
    }
    return a;
}

StructureAutomaton build_agent_automaton(const AgentDef& agent) { return build_automaton(agent.process, true); }

std::string export_dot(const StructureAutomaton& a, const AgentDef& agent, bool fullCommands) {
    std::ostringstream out;
    out << "digraph \"" << escape(agent.name) << "\" {\n";
    out << "  rankdir=LR;\n";
    out << "  node [shape=circle];\n";
    for (int s = 0; s < a.numStates; ++s) {
        out << "  s" << s;
        if (s == a.initial) out << " [shape=doublecircle]";
        out << ";\n";
    }
    for (const auto& e : a.edges) {
        const Command& c = agent.commands[static_cast<std::size_t>(e.command)];
        std::string label = c.label;
        if (fullCommands) label += ": " + print_command(c, false);
        out << "  s" << e.source << " -> s" << e.target << " [label=\"" << escape(label) << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

nlohmann::json automaton_json(const StructureAutomaton& a, const AgentDef& agent) {
    nlohmann::json states = nlohmann::json::array();
    for (int s = 0; s < a.numStates; ++s) states.push_back("s" + std::to_string(s));
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : a.edges) {
        const Command& c = agent.commands[static_cast<std::size_t>(e.command)];
        edges.push_back({{"source", "s" + std::to_string(e.source)},
                         {"target", "s" + std::to_string(e.target)},
                         {"label", c.label},
                         {"kind", c.kind == CommandKind::Send ? "send" : "receive"},
                         {"command", print_command(c, false)}});
    }
    return {{"agent", agent.name},
            {"states", states},
            {"initial", "s" + std::to_string(a.initial)},
            {"final", "s" + std::to_string(a.final)},
            {"edges", edges}};
}

} // namespace rcheck
