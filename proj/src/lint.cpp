#include "rcheck/lint.hpp"

#include "rcheck/eval.hpp"
#include "rcheck/explore.hpp"

#include <map>
#include <set>

namespace rcheck {

std::size_t LintReport::warningCount() const {
    std::size_t n = 0;
    for (const auto& d : diagnostics) n += d.severity == Severity::Warning;
    return n;
}

namespace {

Diagnostic make(Severity sev, std::string code, std::string subject, std::string message) {
    Diagnostic d;
    d.severity = sev;
    d.code = std::move(code);
    d.subject = std::move(subject);
    d.message = std::move(message);
    return d;
}

} // namespace

LintReport lint(const CompiledSystem& sys, std::size_t budget) {
    LintReport r;
    std::vector<Diagnostic> notes;
    for (const auto& w : sys.warnings) r.diagnostics.push_back(w);

    for (const auto& sa : sys.agents) {
        const AgentDef& def = sys.model.agents[static_cast<std::size_t>(sa.agent)];
        for (const auto& n : sa.automaton.notes) notes.push_back(n);
        auto dead = sa.automaton.unreachable();
        if (dead.empty()) continue;
        auto d = make(Severity::Warning, "unreachable-state", def.name,
                      std::to_string(dead.size()) + " control state(s) unreachable from s0");
        for (int s : dead) d.details.push_back("s" + std::to_string(s));
        d.pos = def.pos;
        r.diagnostics.push_back(std::move(d));
    }

    StateGraph g = explore(sys, budget);
    r.statesExplored = g.states.size();
    r.truncated = g.truncated;

    // receiver agent type -> control states where it blocked a broadcast, and examples
    std::map<int, std::set<int>> blockedAt;
    std::map<int, std::set<std::string>> blockedLabels;
    std::map<std::pair<int, int>, bool> emptyChannel;  // (instance, command)
    std::vector<std::set<int>> visited(sys.numInstances());

    for (const auto& s : g.states) {
        for (int i = 0; i < sys.numInstances(); ++i) {
            visited[static_cast<std::size_t>(i)].insert(sys.slice(s, i).back().v);
        }
        for (const auto& b : blocked_sends(sys, s)) {
            if (b.channel != Value::star() || b.piFailed) continue;
            int type = sys.layout[static_cast<std::size_t>(b.receiver)].agent;
            blockedAt[type].insert(sys.slice(s, b.receiver).back().v);
            int cmd = sys.agentOf(b.sender).sendRel[static_cast<std::size_t>(b.sendEdge)].command;
            blockedLabels[type].insert(sys.defOf(b.sender).commands[static_cast<std::size_t>(cmd)].label);
        }
        for (int i = 0; i < sys.numInstances(); ++i) {
            const auto& sa = sys.agentOf(i);
            const auto& def = sys.defOf(i);
            auto local = sys.slice(s, i);
            for (const auto& e : sa.sendRel) {
                if (e.source != local.back().v) continue;
                const Command& c = def.commands[static_cast<std::size_t>(e.command)];
                Env env;
                env.locals = local;
                if (eval_bool(c.pre, env) && eval(c.channel, env) == Value::empty()) {
                    emptyChannel[{sys.layout[static_cast<std::size_t>(i)].agent, e.command}] = true;
                }
            }
        }
    }

    for (const auto& [type, states] : blockedAt) {
        const AgentDef& def = sys.model.agents[static_cast<std::size_t>(type)];
        std::string where;
        for (int s : states) where += (where.empty() ? "s" : ", s") + std::to_string(s);
        auto d = make(Severity::Warning, "not-input-enabled", def.name,
                      "not broadcast input-enabled: blocks broadcasts at control state(s) " + where);
        for (const auto& l : blockedLabels[type]) d.details.push_back("blocked: " + l);
        d.pos = def.pos;
        r.diagnostics.push_back(std::move(d));
    }

    for (const auto& [key, _] : emptyChannel) {
        const AgentDef& def = sys.model.agents[static_cast<std::size_t>(key.first)];
        const Command& c = def.commands[static_cast<std::size_t>(key.second)];
        auto d = make(Severity::Info, "empty-channel", def.name,
                      "'" + c.label + "' has its guard satisfied while its channel is empty; the send is disabled there");
        d.pos = c.pos;
        notes.push_back(std::move(d));
    }

    if (!g.truncated) {
        std::set<int> reportedTypes;
        for (int i = 0; i < sys.numInstances(); ++i) {
            const auto& sa = sys.agentOf(i);
            auto reach = sa.automaton.reachable();
            std::vector<int> never;
            for (int s : reach) {
                if (!visited[static_cast<std::size_t>(i)].count(s)) never.push_back(s);
            }
            if (never.empty()) continue;
            auto d = make(Severity::Info, "unvisited-state", sys.model.instances[static_cast<std::size_t>(i)].id,
                          "control state(s) never visited in the reachable state space");
            for (int s : never) d.details.push_back("s" + std::to_string(s));
            notes.push_back(std::move(d));
        }
    } else {
        notes.push_back(make(Severity::Info, "exploration-truncated", "",
                             "state budget of " + std::to_string(budget) + " reached; reachability checks are partial"));
    }

    for (auto& n : notes) r.diagnostics.push_back(std::move(n));
    return r;
}

} // namespace rcheck
