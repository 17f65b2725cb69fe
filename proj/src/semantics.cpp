#include "rcheck/semantics.hpp"

#include "rcheck/eval.hpp"
#include "rcheck/parser.hpp"

#include <sstream>

namespace rcheck {

namespace {

// Odometer over a list of domains; calls f for every combination.
template <class F>
void for_each_product(const std::vector<std::vector<Value>>& domains, F&& f) {
    std::vector<std::size_t> idx(domains.size(), 0);
    for (const auto& d : domains) {
        if (d.empty()) return;
    }
    std::vector<Value> cur(domains.size());
    for (;;) {
        for (std::size_t i = 0; i < domains.size(); ++i) cur[i] = domains[i][idx[i]];
        f(cur);
        std::size_t k = domains.size();
        while (k > 0) {
            --k;
            if (++idx[k] < domains[k].size()) break;
            idx[k] = 0;
            if (k == 0) return;
        }
        if (domains.empty()) return;
    }
}

std::vector<std::vector<Value>> var_domains(const CompiledSystem& sys, const SymbolicAgent& sa) {
    std::vector<std::vector<Value>> out;
    for (std::size_t v = 0; v + 1 < sa.vars.size(); ++v) out.push_back(domain_of(sa.vars[v].type, sys.model));
    std::vector<Value> st;
    for (int s = 0; s < sa.automaton.numStates; ++s) st.push_back(Value::integer(s));
    out.push_back(std::move(st));
    return out;
}

struct RecvChoice {
    int edge;
    std::vector<Value> next;  // successor slice
};

// Applies `updates` to `cur` simultaneously. False if a value leaves its domain.
bool apply_updates(const CompiledSystem& sys, const AgentDef& def, const std::vector<Assignment>& updates,
                   const Env& env, std::vector<Value>& next) {
    std::vector<std::pair<int, Value>> writes;
    for (const auto& u : updates) {
        Value v = eval(u.value, env);
        if (!in_domain(v, def.locals[static_cast<std::size_t>(u.index)].type, sys.model)) return false;
        writes.emplace_back(u.index, v);
    }
    for (const auto& [i, v] : writes) next[static_cast<std::size_t>(i)] = v;
    return true;
}

} // namespace

std::vector<SystemState> initial_states(const CompiledSystem& sys) {
    std::vector<std::vector<std::vector<Value>>> perInstance;
    for (int i = 0; i < sys.numInstances(); ++i) {
        const SymbolicAgent& sa = sys.agentOf(i);
        auto doms = var_domains(sys, sa);
        doms.back() = {Value::integer(sa.automaton.initial)};
        std::vector<std::vector<Value>> ok;
        const ExprPtr& init = sys.instanceInit[static_cast<std::size_t>(i)];
        for_each_product(doms, [&](const std::vector<Value>& vals) {
            Env env;
            env.locals = vals;
            if (eval_bool(init, env)) ok.push_back(vals);
        });
        if (ok.empty()) {
            throw Error(ErrorCode::EmptyInitialSet,
                        "initial condition of '" + sys.model.instances[static_cast<std::size_t>(i)].id +
                            "' is unsatisfiable");
        }
        perInstance.push_back(std::move(ok));
    }
    std::vector<SystemState> out;
    std::vector<std::size_t> idx(perInstance.size(), 0);
    for (;;) {
        SystemState s;
        s.reserve(static_cast<std::size_t>(sys.stateSize));
        for (std::size_t i = 0; i < perInstance.size(); ++i) {
            const auto& v = perInstance[i][idx[i]];
            s.insert(s.end(), v.begin(), v.end());
        }
        out.push_back(std::move(s));
        std::size_t k = perInstance.size();
        bool done = true;
        while (k > 0) {
            --k;
            if (++idx[k] < perInstance[k].size()) {
                done = false;
                break;
            }
            idx[k] = 0;
        }
        if (done) break;
    }
    return out;
}

namespace {

std::vector<JointTransition> transitions_impl(const CompiledSystem& sys, const SystemState& s,
                                              std::vector<BlockedSend>* blockedOut) {
    std::vector<JointTransition> out;
    const int n = sys.numInstances();
    const auto& model = sys.model;

    for (int k = 0; k < n; ++k) {
        const SymbolicAgent& sa = sys.agentOf(k);
        const AgentDef& def = sys.defOf(k);
        auto local = sys.slice(s, k);
        const int st = local.back().v;

        for (int e = 0; e < static_cast<int>(sa.sendRel.size()); ++e) {
            const GuardedTransition& g = sa.sendRel[static_cast<std::size_t>(e)];
            if (g.source != st) continue;
            const Command& c = def.commands[static_cast<std::size_t>(g.command)];
            Env senv;
            senv.locals = local;
            if (!eval_bool(c.pre, senv)) continue;
            Value ch = eval(c.channel, senv);
            if (ch == Value::empty()) continue;

            std::vector<Value> data(model.dataVars.size(), Value::undef());
            for (const auto& d : c.data) data[static_cast<std::size_t>(d.index)] = eval(d.value, senv);

            std::vector<Value> senderNext(local.begin(), local.end());
            if (!apply_updates(sys, def, c.update, senv, senderNext)) continue;
            senderNext.back() = Value::integer(g.target);

            Env pienv;
            pienv.locals = local;
            pienv.data = data;
            pienv.channel = ch;
            ExprPtr pi = partial_eval(c.senderPred, pienv);

            // Per-receiver alternatives; empty optional list = blocked.
            std::vector<std::vector<ReceiverOutcome>> choices(static_cast<std::size_t>(n));
            std::vector<std::vector<std::vector<Value>>> nexts(static_cast<std::size_t>(n));
            bool blocked = false;
            for (int j = 0; j < n && (!blocked || blockedOut); ++j) {
                auto& ch_j = choices[static_cast<std::size_t>(j)];
                auto& nx_j = nexts[static_cast<std::size_t>(j)];
                if (j == k) {
                    ch_j.push_back({Outcome::Sender, e});
                    nx_j.push_back(senderNext);
                    continue;
                }
                const SymbolicAgent& ra = sys.agentOf(j);
                const AgentDef& rdef = sys.defOf(j);
                auto rl = sys.slice(s, j);
                std::vector<Value> same(rl.begin(), rl.end());
                Env genv;
                genv.locals = rl;
                genv.channel = ch;
                bool connected = ch == Value::star() || eval_bool(ra.receiveGuard, genv);
                if (!connected) {
                    ch_j.push_back({Outcome::IdleNotConnected});
                    nx_j.push_back(same);
                    continue;
                }
                std::vector<Value> common;
                for (const auto& f : ra.relabel) common.push_back(eval(f, genv));
                Env cenv;
                cenv.common = common;
                if (!eval_bool(pi, cenv)) {
                    if (ch == Value::star()) {
                        ch_j.push_back({Outcome::IdleBroadcastExcluded});
                        nx_j.push_back(same);
                    } else {
                        blocked = true;
                        if (blockedOut) blockedOut->push_back({k, e, j, ch, true});
                    }
                    continue;
                }
                Env renv;
                renv.locals = rl;
                renv.data = data;
                for (int r = 0; r < static_cast<int>(ra.recvRel.size()); ++r) {
                    const GuardedTransition& rg = ra.recvRel[static_cast<std::size_t>(r)];
                    if (rg.source != rl.back().v) continue;
                    const Command& rc = rdef.commands[static_cast<std::size_t>(rg.command)];
                    if (!(eval(rc.channel, renv) == ch)) continue;
                    if (!eval_bool(rc.pre, renv)) continue;
                    std::vector<Value> next = same;
                    if (!apply_updates(sys, rdef, rc.update, renv, next)) continue;
                    next.back() = Value::integer(rg.target);
                    ch_j.push_back({Outcome::Received, r});
                    nx_j.push_back(std::move(next));
                }
                if (ch_j.empty()) {
                    blocked = true;
                    if (blockedOut) blockedOut->push_back({k, e, j, ch, false});
                }
            }
            if (blocked) continue;

            Message msg{ch, data, k, pi};
            std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
            for (;;) {
                JointTransition t;
                t.message = msg;
                t.sendEdge = e;
                t.successor.reserve(static_cast<std::size_t>(sys.stateSize));
                t.fired.push_back({k, g.command});
                for (int j = 0; j < n; ++j) {
                    auto ju = static_cast<std::size_t>(j);
                    const auto& o = choices[ju][idx[ju]];
                    t.outcomes.push_back(o);
                    const auto& nx = nexts[ju][idx[ju]];
                    t.successor.insert(t.successor.end(), nx.begin(), nx.end());
                    if (o.kind == Outcome::Received) {
                        t.fired.push_back({j, sys.agentOf(j).recvRel[static_cast<std::size_t>(o.edge)].command});
                    }
                }
                out.push_back(std::move(t));
                int q = n;
                bool done = true;
                while (q > 0) {
                    --q;
                    auto qu = static_cast<std::size_t>(q);
                    if (++idx[qu] < choices[qu].size()) {
                        done = false;
                        break;
                    }
                    idx[qu] = 0;
                }
                if (done) break;
            }
        }
    }
    return out;
}

} // namespace

std::vector<JointTransition> enabled_transitions(const CompiledSystem& sys, const SystemState& s) {
    return transitions_impl(sys, s, nullptr);
}

std::vector<BlockedSend> blocked_sends(const CompiledSystem& sys, const SystemState& s) {
    std::vector<BlockedSend> out;
    transitions_impl(sys, s, &out);
    return out;
}

std::vector<JointTransition> brute_force_oracle(const CompiledSystem& sys, const SystemState& s, int maxAgents,
                                                int maxDomain) {
    const auto& model = sys.model;
    const int n = sys.numInstances();
    if (n > maxAgents) {
        throw Error(ErrorCode::OracleTooLarge, "oracle limited to " + std::to_string(maxAgents) + " instances");
    }
    std::vector<std::vector<std::vector<Value>>> doms;
    for (int i = 0; i < n; ++i) {
        doms.push_back(var_domains(sys, sys.agentOf(i)));
        for (const auto& d : doms.back()) {
            if (static_cast<int>(d.size()) > maxDomain) {
                throw Error(ErrorCode::OracleTooLarge, "oracle limited to domains of " + std::to_string(maxDomain));
            }
        }
    }
    std::vector<std::vector<Value>> dataDoms;
    for (const auto& d : model.dataVars) {
        dataDoms.push_back(domain_of(d.type, model, d.type.kind != TypeKind::Enum));
        if (static_cast<int>(dataDoms.back().size()) > maxDomain + 1) {
            throw Error(ErrorCode::OracleTooLarge, "oracle limited to domains of " + std::to_string(maxDomain));
        }
    }
    std::vector<Value> channels;
    for (std::size_t c = 0; c < model.channels.size(); ++c) channels.push_back(Value::channel(static_cast<int>(c)));
    channels.push_back(Value::star());

    std::vector<JointTransition> out;
    for (int k = 0; k < n; ++k) {
        const SymbolicAgent& sa = sys.agentOf(k);
        const AgentDef& def = sys.defOf(k);
        auto local = sys.slice(s, k);
        for (int e = 0; e < static_cast<int>(sa.sendRel.size()); ++e) {
            const GuardedTransition& g = sa.sendRel[static_cast<std::size_t>(e)];
            const ExprPtr& pi = def.commands[static_cast<std::size_t>(g.command)].senderPred;
            for (const Value& ch : channels) {
                for_each_product(dataDoms, [&](const std::vector<Value>& data) {
                    // Sender successors satisfying T^s.
                    std::vector<std::vector<Value>> senderNexts;
                    for_each_product(doms[static_cast<std::size_t>(k)], [&](const std::vector<Value>& nx) {
                        Env env;
                        env.locals = local;
                        env.primedLocals = nx;
                        env.data = data;
                        env.channel = ch;
                        if (eval_bool(g.pred, env)) senderNexts.push_back(nx);
                    });
                    if (senderNexts.empty()) return;

                    std::vector<std::vector<std::pair<ReceiverOutcome, std::vector<Value>>>> per(
                        static_cast<std::size_t>(n));
                    for (int j = 0; j < n; ++j) {
                        auto& alts = per[static_cast<std::size_t>(j)];
                        if (j == k) {
                            for (auto& nx : senderNexts) alts.push_back({{Outcome::Sender, e}, nx});
                            continue;
                        }
                        const SymbolicAgent& ra = sys.agentOf(j);
                        auto rl = sys.slice(s, j);
                        Env genv;
                        genv.locals = rl;
                        genv.channel = ch;
                        // g^r(star) is taken as true.
                        bool gr = ch == Value::star() || eval_bool(ra.receiveGuard, genv);
                        std::vector<Value> common;
                        for (const auto& f : ra.relabel) common.push_back(eval(f, genv));
                        Env pienv;
                        pienv.locals = local;
                        pienv.data = data;
                        pienv.channel = ch;
                        pienv.common = common;
                        bool piOk = eval_bool(pi, pienv);
                        for_each_product(doms[static_cast<std::size_t>(j)], [&](const std::vector<Value>& nx) {
                            bool same = std::equal(nx.begin(), nx.end(), rl.begin(), rl.end());
                            if (gr && piOk) {
                                Env renv;
                                renv.locals = rl;
                                renv.primedLocals = nx;
                                renv.data = data;
                                renv.channel = ch;
                                for (int r = 0; r < static_cast<int>(ra.recvRel.size()); ++r) {
                                    if (eval_bool(ra.recvRel[static_cast<std::size_t>(r)].pred, renv)) {
                                        alts.push_back({{Outcome::Received, r}, nx});
                                    }
                                }
                            }
                            if (!gr && same) alts.push_back({{Outcome::IdleNotConnected}, nx});
                            if (ch == Value::star() && !piOk && same) {
                                alts.push_back({{Outcome::IdleBroadcastExcluded}, nx});
                            }
                        });
                        if (alts.empty()) return;
                    }

                    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
                    for (;;) {
                        JointTransition t;
                        t.sendEdge = e;
                        t.message.channel = ch;
                        t.message.data = data;
                        t.message.sender = k;
                        t.message.pi = pi;
                        t.fired.push_back({k, g.command});
                        for (int j = 0; j < n; ++j) {
                            const auto& [o, nx] = per[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]];
                            t.outcomes.push_back(o);
                            t.successor.insert(t.successor.end(), nx.begin(), nx.end());
                            if (o.kind == Outcome::Received) {
                                t.fired.push_back({j, sys.agentOf(j).recvRel[static_cast<std::size_t>(o.edge)].command});
                            }
                        }
                        out.push_back(std::move(t));
                        int q = n;
                        bool done = true;
                        while (q > 0) {
                            --q;
                            auto qu = static_cast<std::size_t>(q);
                            if (++idx[qu] < per[qu].size()) {
                                done = false;
                                break;
                            }
                            idx[qu] = 0;
                        }
                        if (done) break;
                    }
                });
            }
        }
    }
    return out;
}

TransitionKey key_of(const JointTransition& t) {
    return {t.message.sender, t.sendEdge, t.message.channel, t.message.data, t.outcomes, t.successor};
}

std::string describe(const CompiledSystem& sys, const JointTransition& t) {
    std::ostringstream out;
    const auto& model = sys.model;
    out << sys.labelName(t.fired.front()) << " on " << to_string(t.message.channel, model) << " (";
    for (std::size_t d = 0; d < t.message.data.size(); ++d) {
        out << (d ? ", " : "") << model.dataVars[d].name << "=" << to_string(t.message.data[d], model);
    }
    out << ")";
    if (t.fired.size() > 1) {
        out << " received by";
        for (std::size_t i = 1; i < t.fired.size(); ++i) out << " " << sys.labelName(t.fired[i]);
    }
    return out.str();
}

} // namespace rcheck
