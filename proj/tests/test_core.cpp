#include "rcheck/corpus.hpp"
#include "rcheck/eval.hpp"
#include "rcheck/parser.hpp"
#include "rcheck/semantics.hpp"
#include "rcheck/typecheck.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace rcheck;

namespace {

const CompiledSystem& corpus() {
    static const CompiledSystem sys = compile_source(load_fixture("resource-allocation").model);
    return sys;
}

std::string head(const std::string& locals) {
    return "enums: Role = {client, mgr}\nchannels: c, b\nmessage-structure: MSG : Role\n"
           "communication-variables: cv : Role\nagent A local: " +
           locals + " init: TRUE relabel: cv <- client receive-guard: TRUE repeat: ";
}

std::vector<std::string> printed(const std::vector<ExprPtr>& xs, const SystemModel& m) {
    std::vector<std::string> out;
    for (const auto& x : xs) out.push_back(print_expr(x, &m));
    return out;
}

int instance(const CompiledSystem& sys, const std::string& id) { return sys.model.findInstance(id); }

Value get(const CompiledSystem& sys, const SystemState& s, const std::string& inst, const std::string& var) {
    return s[static_cast<std::size_t>(sys.findGlobal(inst, var))];
}

Value chan(const CompiledSystem& sys, const std::string& name) { return Value::channel(sys.model.findChannel(name)); }

} // namespace

// ---------------------------------------------------------------------------
// typecheck

TEST(Typecheck, ClientRelabelWellTyped) {
    const auto& sys = corpus();
    const AgentDef& client = sys.model.agents[0];
    ASSERT_EQ(client.relabel.size(), 1u);
    EXPECT_EQ(client.relabel[0].value->kind, ExprKind::Var);
    EXPECT_EQ(client.relabel[0].value->name, "role");
    EXPECT_EQ(client.relabel[0].value->type.kind, TypeKind::Enum);
}

TEST(Typecheck, ChannelComparedWithBool) {
    std::string src = head("cLink : channel") + "<cLink == TRUE> *? []\nsystem = A(a, TRUE)";
    try {
        compile_source(src);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::TypeMismatch);
        ASSERT_TRUE(e.position());
    }
}

TEST(Typecheck, MissingRelabelWarnsAndDefaults) {
    const auto& sys = corpus();
    ASSERT_EQ(sys.warnings.size(), 1u);
    EXPECT_EQ(sys.warnings[0].code, "missing-relabel");
    EXPECT_EQ(sys.warnings[0].subject, "Machine");
    const AgentDef& machine = sys.model.agents[2];
    ASSERT_EQ(machine.relabel.size(), 1u);
    EXPECT_EQ(machine.relabel[0].value->value, Value::undef());
}

TEST(Typecheck, UpdateToUndeclaredVar) {
    std::string src = head("x : bool") + "<TRUE> *? [y := TRUE]\nsystem = A(a, TRUE)";
    try {
        compile_source(src);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UpdateToUndeclaredVar);
    }
}

TEST(Typecheck, SendScopeExcludesDataVars) {
    std::string src = head("x : Role") + "<MSG == client> *! (TRUE)()[]\nsystem = A(a, TRUE)";
    try {
        compile_source(src);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnknownName);
    }
}

TEST(Typecheck, IntAssignmentsAreClamped) {
    std::string src = head("n : int[0..2]") + "<TRUE> *? [n := n + 1]\nsystem = A(a, TRUE)";
    auto sys = compile_source(src);
    const auto& u = sys.model.agents[0].commands[0].update[0];
    EXPECT_EQ(u.value->kind, ExprKind::Clamp);
    EXPECT_EQ(u.value->lo, 0);
    EXPECT_EQ(u.value->hi, 2);
}

// ---------------------------------------------------------------------------
// eval

TEST(Eval, InitialConditionExamples) {
    const auto& sys = corpus();
    auto s0 = initial_states(sys).at(0);
    const AgentDef& client = sys.model.agents[0];
    Env env;
    env.locals = sys.slice(s0, 0);
    EXPECT_TRUE(eval_bool(client.commands[0].pre, env));  // cLink == c

    const AgentDef& machine = sys.model.agents[2];
    Env menv;
    menv.locals = sys.slice(s0, instance(sys, "machine1"));
    EXPECT_TRUE(eval_bool(machine.init, menv));  // !asgn && cLink == empty

    // rReserve pre with MSG bound to reserve.
    std::vector<Value> data{Value::enumConst(sys.model.findEnumConstant("reserve")), Value::undef()};
    env.data = data;
    EXPECT_TRUE(eval_bool(client.commands[1].pre, env));
}

TEST(Eval, UndefComparisons) {
    auto m = compile_source(head("x : Role, n : int[0..3]") + "<TRUE> *? []\nsystem = A(a, TRUE)");
    Env env;
    std::vector<Value> locals{Value::undef(), Value::undef(), Value::integer(0)};
    env.locals = locals;
    auto lookup = [&](const Expr& n) -> ExprPtr {
        int i = m.model.agents[0].findLocal(n.name);
        if (i < 0) return nullptr;
        return make_var({VarScope::Local, i}, n.name, m.model.agents[0].locals[static_cast<std::size_t>(i)].type);
    };
    auto ev = [&](const char* text) { return eval_bool(resolve_bool(parse_standalone_expr(text), m.model, lookup), env); };
    EXPECT_TRUE(ev("x == undef"));
    EXPECT_FALSE(ev("x == client"));
    EXPECT_TRUE(ev("x != mgr"));
    EXPECT_FALSE(ev("n < 2"));
    EXPECT_FALSE(ev("n >= 0"));
    EXPECT_FALSE(ev("n == 0"));
}

TEST(Eval, UnboundSymbolIsHardError) {
    const auto& sys = corpus();
    Env env;
    try {
        eval(sys.model.agents[0].init, env);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnboundSymbol);
    }
}

TEST(Eval, SubstituteCommonExamples) {
    const auto& sys = corpus();
    const auto& m = sys.model;
    const ExprPtr& pi = m.agents[0].commands[2].senderPred;  // cv == mgr
    auto sub = substitute_common(pi, sys.agents[0].relabel);
    EXPECT_EQ(print_expr(sub, &m), "role == mgr");

    auto mach = substitute_common(pi, sys.agents[2].relabel);
    EXPECT_EQ(print_expr(mach, &m), "undef == mgr");
    Env env;
    EXPECT_FALSE(eval_bool(mach, env));

    auto t = substitute_common(make_bool(true), sys.agents[0].relabel);
    EXPECT_TRUE(is_const_true(t));
}

TEST(Eval, SubstitutionAgreesWithExtendedEnvironment) {
    // eval(substitute_common(p, f), s) == eval(p, s + cv := eval(f(cv), s))
    auto sys = compile_source(
        "enums: R = {a, b, c}\nchannels: k\nmessage-structure:\ncommunication-variables: u : R, w : int[0..3]\n"
        "agent A local: x : R, y : int[0..3], z : bool init: TRUE relabel: u <- x w <- y + 1\n"
        "receive-guard: TRUE repeat: <TRUE> *? []\nsystem = A(a1, TRUE)");
    const auto& m = sys.model;
    const AgentDef& def = m.agents[0];
    std::vector<ExprPtr> relabel;
    for (const auto& r : def.relabel) relabel.push_back(r.value);
    auto lookup = [&](const Expr& n) -> ExprPtr {
        if (int i = m.findCommonVar(n.name); i >= 0) {
            return make_var({VarScope::Common, i}, n.name, m.commonVars[static_cast<std::size_t>(i)].type);
        }
        return nullptr;
    };
    const char* preds[] = {"u == a", "u != b || w > 2", "w == 1 -> u == c", "!(u == undef) && w <= 3", "w - 1 == 0"};
    std::mt19937_64 rng(11);
    auto xs = domain_of(def.locals[0].type, m);
    for (const char* text : preds) {
        ExprPtr p = resolve_bool(parse_standalone_expr(text), m, lookup);
        ExprPtr sub = substitute_common(p, relabel);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<Value> locals{xs[rng() % xs.size()], Value::integer(static_cast<int>(rng() % 4)),
                                      Value::boolean(rng() % 2), Value::integer(0)};
            Env lenv;
            lenv.locals = locals;
            std::vector<Value> common;
            for (const auto& f : relabel) common.push_back(eval(f, lenv));
            Env cenv;
            cenv.common = common;
            EXPECT_EQ(eval(sub, lenv), eval(p, cenv)) << text;
            EXPECT_EQ(eval(sub, lenv), eval(sub, lenv));
        }
    }
}

TEST(Eval, SaturationStaysInBounds) {
    auto sys = compile_source(head("n : int[-2..2]") +
                              "(up: <TRUE> *? [n := n + 3] + down: <TRUE> *? [n := n - 3])\nsystem = A(a, TRUE)");
    const auto& cmds = sys.model.agents[0].commands;
    for (int v = -2; v <= 2; ++v) {
        std::vector<Value> locals{Value::integer(v), Value::integer(0)};
        Env env;
        env.locals = locals;
        for (const auto& c : cmds) {
            Value r = eval(c.update[0].value, env);
            EXPECT_GE(r.v, -2);
            EXPECT_LE(r.v, 2);
        }
    }
}

// ---------------------------------------------------------------------------
// structure automaton

TEST(Automaton, SingleCommand) {
    auto m = parse_model(head("x : bool") + "<TRUE> *? []\nsystem = A(a, TRUE)");
    auto a = build_automaton(m.agents[0].process, false);
    EXPECT_EQ(a.numStates, 2);
    ASSERT_EQ(a.edges.size(), 1u);
    EXPECT_EQ(a.edges[0], (AutomatonEdge{0, 0, 1}));
    std::string dot = export_dot(a, m.agents[0]);
    EXPECT_NE(dot.find("s0 [shape=doublecircle]"), std::string::npos);
    EXPECT_NE(dot.find("s0 -> s1"), std::string::npos);
}

TEST(Automaton, CorpusShapes) {
    const auto& sys = corpus();
    const int states[] = {6, 4, 2};
    const std::size_t edges[] = {9, 5, 6};
    for (int a = 0; a < 3; ++a) {
        const auto& au = sys.agents[static_cast<std::size_t>(a)].automaton;
        EXPECT_EQ(au.numStates, states[a]) << a;
        EXPECT_EQ(au.edges.size(), edges[a]) << a;
        EXPECT_EQ(au.edges.size(), sys.model.agents[static_cast<std::size_t>(a)].commands.size());
        EXPECT_TRUE(au.unreachable().empty());
    }
}

TEST(Automaton, ClientEdgesByHand) {
    const auto& sys = corpus();
    const auto& def = sys.model.agents[0];
    std::vector<std::tuple<int, std::string, int>> got;
    for (const auto& e : sys.agents[0].automaton.edges) {
        got.emplace_back(e.source, def.commands[static_cast<std::size_t>(e.command)].label, e.target);
    }
    std::vector<std::tuple<int, std::string, int>> want{
        {0, "sReserve", 1}, {0, "rReserve", 1}, {1, "sRequest", 2}, {2, "rConnect", 3}, {3, "sRelease", 4},
        {4, "sBuy", 5},     {5, "sSolve", 0},   {5, "Client_cmd8", 0}, {1, "rRelease", 0}};
    EXPECT_EQ(got, want);
}

TEST(Automaton, ManagerEdgesByHand) {
    const auto& sys = corpus();
    const auto& def = sys.model.agents[1];
    std::vector<std::tuple<int, std::string, int>> got;
    for (const auto& e : sys.agents[1].automaton.edges) {
        got.emplace_back(e.source, def.commands[static_cast<std::size_t>(e.command)].label, e.target);
    }
    std::vector<std::tuple<int, std::string, int>> want{
        {0, "rRequest", 1}, {1, "sForward", 2}, {2, "rConnect", 0}, {2, "rFull", 3}, {3, "sRequest", 2}};
    EXPECT_EQ(got, want);
}

TEST(Automaton, DeterministicAcrossRuns) {
    auto a = parse_model(load_fixture("resource-allocation").model);
    auto b = parse_model(load_fixture("resource-allocation").model);
    for (std::size_t i = 0; i < a.agents.size(); ++i) {
        auto x = build_agent_automaton(a.agents[i]);
        auto y = build_agent_automaton(b.agents[i]);
        EXPECT_EQ(x.edges, y.edges);
        EXPECT_EQ(export_dot(x, a.agents[i], true), export_dot(y, b.agents[i], true));
    }
}

TEST(Automaton, RepBeforeSequenceLeavesUnreachableState) {
    auto m = parse_model(head("x : bool") + "rep (a: <TRUE> *? []) ; b: <TRUE> *? []\nsystem = A(a1, TRUE)");
    auto au = build_agent_automaton(m.agents[0]);
    EXPECT_EQ(au.unreachable(), std::vector<int>{1});
    auto plain = build_automaton(m.agents[0].process, false);
    ASSERT_EQ(plain.notes.size(), 1u);
    EXPECT_EQ(plain.notes[0].severity, Severity::Info);
}

TEST(Automaton, JsonDump) {
    const auto& sys = corpus();
    auto j = automaton_json(sys.agents[2].automaton, sys.model.agents[2]);
    EXPECT_EQ(j["agent"], "Machine");
    EXPECT_EQ(j["states"].size(), 2u);
    EXPECT_EQ(j["edges"].size(), 6u);
    EXPECT_EQ(j["edges"][0]["label"], "rForward");
    EXPECT_EQ(j["edges"][0]["kind"], "receive");
}

// ---------------------------------------------------------------------------
// ReCiPe form

TEST(Recipe, Classify) {
    const auto& def = corpus().model.agents[0];
    auto s = classify(def.commands[0]);
    EXPECT_EQ(s.type, CommandKind::Send);
    EXPECT_TRUE(s.vars.empty());
    EXPECT_EQ(print_expr(s.guard), "cv == role");
    auto r = classify(def.commands[1]);
    EXPECT_EQ(r.type, CommandKind::Receive);
    EXPECT_EQ(r.vars, std::vector<int>{0});
    EXPECT_TRUE(is_const_false(r.guard));
    auto e = classify(def.commands[7]);
    EXPECT_TRUE(e.vars.empty());
}

TEST(Recipe, PredOfWorkedExample) {
    auto sys = compile_source(
        "enums: M = {m}\nchannels: c, b\nmessage-structure: MSG : M\ncommunication-variables:\n"
        "agent A local: Link : channel init: TRUE relabel: receive-guard: TRUE\n"
        "repeat: <Link==c> *! (TRUE)(MSG := m)[Link := b]\nsystem = A(a, TRUE)");
    const auto& m = sys.model;
    auto p = pred_of(m.agents[0].commands[0], m.agents[0], m);
    EXPECT_EQ(printed(conjuncts(p), m),
              (std::vector<std::string>{"Link == c", "ch == *", "MSG == m", "Link' == b"}));
}

TEST(Recipe, PredOfMachineConnect) {
    const auto& sys = corpus();
    const auto& m = sys.model;
    const auto& def = m.agents[2];
    auto p = pred_of(def.commands[static_cast<std::size_t>(def.findCommand("sConnect"))], def, m);
    EXPECT_EQ(printed(conjuncts(p), m),
              (std::vector<std::string>{"cLink == c", "!asgn", "ch == cLink", "MSG == connect", "LNK == pLink",
                                        "cLink' == empty", "asgn' == TRUE"}));
}

TEST(Recipe, PredOfBareReceive) {
    auto sys = compile_source(
        "enums:\nchannels: x\nmessage-structure:\ncommunication-variables:\n"
        "agent A local: v : bool init: TRUE relabel: receive-guard: TRUE repeat: <TRUE> x? []\nsystem = A(a, TRUE)");
    auto p = pred_of(sys.model.agents[0].commands[0], sys.model.agents[0], sys.model);
    EXPECT_EQ(print_expr(p, &sys.model), "ch == x");
}

TEST(Recipe, TransitionCensus) {
    const auto& sys = corpus();
    EXPECT_EQ(sys.agents[0].sendRel.size(), 5u);
    EXPECT_EQ(sys.agents[0].recvRel.size(), 4u);
    std::vector<std::string> sends;
    for (const auto& g : sys.agents[0].sendRel) sends.push_back(g.label);
    EXPECT_EQ(sends, (std::vector<std::string>{"sReserve", "sRequest", "sRelease", "sBuy", "sSolve"}));
    EXPECT_EQ(sys.agents[2].sendRel.size(), 2u);
    EXPECT_EQ(sys.agents[2].recvRel.size(), 4u);
}

TEST(Recipe, ReceiveOnlyAgentHasFalseSendGuard) {
    auto sys = compile_source(head("x : bool") + "<TRUE> *? []\nsystem = A(a, TRUE)");
    EXPECT_TRUE(sys.agents[0].sendRel.empty());
    EXPECT_TRUE(is_const_false(sys.agents[0].sendGuard));
}

TEST(Recipe, KeepSets) {
    const auto& sys = corpus();
    const auto& def = sys.model.agents[0];
    EXPECT_TRUE(is_const_true(keep_pred(def, {})));
    for (const auto& g : sys.agents[0].sendRel) {
        if (g.label != "sBuy") continue;
        std::vector<std::string> names;
        for (int v : g.kept) names.push_back(def.locals[static_cast<std::size_t>(v)].name);
        EXPECT_EQ(names, (std::vector<std::string>{"cLink", "tLink", "role"}));
        EXPECT_EQ(conjuncts(keep_pred(def, g.kept)).size(), 3u);
    }
    // varsOf and kept partition the locals.
    for (const auto& sa : sys.agents) {
        const auto& d = sys.model.agents[static_cast<std::size_t>(sa.agent)];
        for (const auto* rel : {&sa.sendRel, &sa.recvRel}) {
            for (const auto& g : *rel) {
                auto vars = classify(d.commands[static_cast<std::size_t>(g.command)]).vars;
                std::set<int> all(vars.begin(), vars.end());
                for (int k : g.kept) EXPECT_TRUE(all.insert(k).second);
                EXPECT_EQ(all.size(), d.locals.size());
            }
        }
    }
}

TEST(Recipe, KeepSingleton) {
    auto sys = compile_source(head("asgn : bool") + "<TRUE> *? []\nsystem = A(a, TRUE)");
    EXPECT_EQ(print_expr(keep_pred(sys.model.agents[0], {0})), "asgn' == asgn");
}

TEST(Recipe, SendGuardIsDisjunctionOfPis) {
    const auto& sys = corpus();
    const auto& m = sys.model;
    const auto& sa = sys.agents[0];
    // Truth table over cv and role.
    for (const auto& cv : domain_of(m.commonVars[0].type, m)) {
        for (const auto& role : domain_of(m.commonVars[0].type, m)) {
            std::vector<Value> locals{Value::channel(0), Value::empty(), Value::channel(1), role, Value::integer(0)};
            std::vector<Value> common{cv};
            Env env;
            env.locals = locals;
            env.common = common;
            bool any = false;
            for (const auto& c : m.agents[0].commands) {
                if (c.kind == CommandKind::Send) any = any || eval_bool(c.senderPred, env);
            }
            EXPECT_EQ(eval_bool(sa.sendGuard, env), any);
        }
    }
}

TEST(Recipe, Dump) {
    const auto& sys = corpus();
    std::string d = dump(sys.agents[1], sys.model);
    EXPECT_NE(d.find("sForward := "), std::string::npos);
    EXPECT_NE(d.find("theta: "), std::string::npos);
    EXPECT_EQ(d, dump(sys.agents[1], sys.model));
}

// ---------------------------------------------------------------------------
// execution semantics

TEST(Semantics, CorpusInitialState) {
    const auto& sys = corpus();
    auto init = initial_states(sys);
    ASSERT_EQ(init.size(), 1u);
    const auto& s = init[0];
    EXPECT_EQ(get(sys, s, "client1", "cLink"), chan(sys, "c"));
    EXPECT_EQ(get(sys, s, "client1", "mLink"), Value::empty());
    EXPECT_EQ(get(sys, s, "client1", "tLink"), chan(sys, "t"));
    EXPECT_EQ(get(sys, s, "client1", "role"), Value::enumConst(sys.model.findEnumConstant("client")));
    EXPECT_EQ(get(sys, s, "machine3", "gLink"), chan(sys, "g2"));
}

TEST(Semantics, InitDisjunctionEnumerates) {
    auto sys = compile_source(
        "enums:\nchannels:\nmessage-structure:\ncommunication-variables:\n"
        "agent A local: x : int[1..3] init: x == 1 || x == 2 relabel: receive-guard: TRUE repeat: <TRUE> *? []\n"
        "system = A(a, TRUE)");
    EXPECT_EQ(initial_states(sys).size(), 2u);
}

TEST(Semantics, EmptyInitialSet) {
    auto sys = compile_source(
        "enums:\nchannels:\nmessage-structure:\ncommunication-variables:\n"
        "agent A local: x : bool init: x && !x relabel: receive-guard: TRUE repeat: <TRUE> *? []\n"
        "system = A(a, TRUE)");
    try {
        initial_states(sys);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::EmptyInitialSet);
    }
}

TEST(Semantics, ReserveBroadcast) {
    const auto& sys = corpus();
    auto s0 = initial_states(sys)[0];
    auto ts = enabled_transitions(sys, s0);
    ASSERT_EQ(ts.size(), 3u);  // one reserve per client
    const auto& t = ts[0];
    EXPECT_EQ(sys.labelName(t.fired[0]), "client1-sReserve");
    EXPECT_EQ(t.message.channel, Value::star());
    EXPECT_EQ(t.outcomes[1].kind, Outcome::Received);
    EXPECT_EQ(t.outcomes[2].kind, Outcome::Received);
    for (int j = 3; j < 7; ++j) EXPECT_EQ(t.outcomes[static_cast<std::size_t>(j)].kind, Outcome::IdleBroadcastExcluded);
    EXPECT_EQ(get(sys, t.successor, "client2", "cLink"), Value::empty());
    EXPECT_EQ(get(sys, t.successor, "client3", "cLink"), Value::empty());
    EXPECT_EQ(get(sys, t.successor, "client1", "st"), Value::integer(1));
    EXPECT_EQ(get(sys, t.successor, "client1", "cLink"), chan(sys, "c"));
}

TEST(Semantics, RequestMulticast) {
    const auto& sys = corpus();
    auto s1 = enabled_transitions(sys, initial_states(sys)[0])[0].successor;
    auto ts = enabled_transitions(sys, s1);
    std::vector<std::string> labels;
    for (const auto& t : ts) labels.push_back(sys.labelName(t.fired[0]));
    ASSERT_EQ(ts.size(), 1u) << ::testing::PrintToString(labels);
    const auto& t = ts[0];
    EXPECT_EQ(labels[0], "client1-sRequest");
    EXPECT_EQ(t.message.channel, chan(sys, "c"));
    EXPECT_EQ(t.outcomes[3].kind, Outcome::Received);
    EXPECT_EQ(sys.labelName(t.fired[1]), "manager-rRequest");
    for (int j : {1, 2, 4, 5, 6}) EXPECT_EQ(t.outcomes[static_cast<std::size_t>(j)].kind, Outcome::IdleNotConnected);
}

TEST(Semantics, FullBlockedWhileGroupMemberUnassigned) {
    // machine1 assigned and listening on c; machine2 idle in the same group.
    const auto& sys = corpus();
    auto s = initial_states(sys)[0];
    auto set = [&](const char* inst, const char* var, Value v) {
        s[static_cast<std::size_t>(sys.findGlobal(inst, var))] = v;
    };
    set("machine1", "asgn", Value::boolean(true));
    set("machine1", "cLink", chan(sys, "c"));
    set("machine1", "st", Value::integer(1));
    for (const auto& t : enabled_transitions(sys, s)) {
        EXPECT_NE(sys.labelName(t.fired[0]), "machine1-sFull");
    }
}

TEST(Semantics, DeterministicOrder) {
    const auto& sys = corpus();
    auto s0 = initial_states(sys)[0];
    auto a = enabled_transitions(sys, s0);
    auto b = enabled_transitions(sys, s0);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(key_of(a[i]), key_of(b[i]));
}

TEST(Semantics, OracleRejectsLargeSystems) {
    const auto& sys = corpus();
    try {
        brute_force_oracle(sys, initial_states(sys)[0]);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OracleTooLarge);
    }
}
