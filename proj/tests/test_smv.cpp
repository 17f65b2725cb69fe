#include "rcheck/checker.hpp"
#include "rcheck/corpus.hpp"
#include "rcheck/eval.hpp"
#include "rcheck/explore.hpp"
#include "rcheck/smv.hpp"

#include "smv_eval.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

using namespace rcheck;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string golden_path(const std::string& name) { return std::string(RCHECK_TEST_DIR) + "/golden/" + name; }

void check_golden(const std::string& name, const std::string& text) {
    if (std::getenv("RCHECK_UPDATE_GOLDEN")) {
        std::ofstream(golden_path(name)) << text;
        return;
    }
    std::string want = read_file(golden_path(name));
    ASSERT_FALSE(want.empty()) << "missing golden " << name << "; run with RCHECK_UPDATE_GOLDEN=1";
    EXPECT_EQ(text, want) << name << " drifted from its golden file";
}

struct Model {
    CompiledSystem sys;
    std::vector<PropertySpec> props;
};

Model toy() {
    return {compile_source(read_file(golden_path("toy.rcp"))), parse_property_file(read_file(golden_path("toy.ltl")))};
}

Model fixture(const std::string& name) {
    auto fx = load_fixture(name);
    return {compile_source(fx.model), parse_property_file(fx.properties)};
}

smv::V to_smv(const Value& v, const SystemModel& m) {
    switch (v.kind) {
    case ValueKind::Bool: return smv::V::boolean(v.v != 0);
    case ValueKind::Int: return smv::V::integer(v.v);
    case ValueKind::Chan: return smv::V::sym(v.v == kChanStar ? "star" : smv_ident(to_string(v, m)));
    default: return smv::V::sym(smv_ident(to_string(v, m)));
    }
}

// Next-state valuation the exporter must accept for an explicit step.
std::map<std::string, smv::V> valuation(const CompiledSystem& sys, const SystemState& s, const Value& ch,
                                        const std::vector<Value>& data, const std::vector<std::string>& latched) {
    std::map<std::string, smv::V> out;
    const auto& m = sys.model;
    for (int i = 0; i < sys.numInstances(); ++i) {
        const auto& def = sys.defOf(i);
        auto slice = sys.slice(s, i);
        std::string inst = smv_ident(m.instances[static_cast<std::size_t>(i)].id);
        for (std::size_t v = 0; v < def.locals.size(); ++v) out[inst + "_" + def.locals[v].name] = to_smv(slice[v], m);
        out[inst + "_st"] = to_smv(slice.back(), m);
        for (const auto& g : sys.agentOf(i).recvRel) {
            out[inst + "_" + def.commands[static_cast<std::size_t>(g.command)].label] = smv::V::boolean(false);
        }
    }
    out["ch"] = to_smv(ch, m);
    for (std::size_t d = 0; d < m.dataVars.size(); ++d) out[smv_ident(m.dataVars[d].name)] = to_smv(data[d], m);
    for (const auto& l : latched) out[l] = smv::V::boolean(true);
    return out;
}

std::string smv_label(const CompiledSystem& sys, LabelRef l) {
    std::string n = sys.labelName(l);
    return smv_ident(n);
}

// Guard-blind successors: every send edge leaving the current states, with
// each other instance either idle or taking any receive edge leaving its
// state, ignoring pre-conditions, channels and sender predicates.
std::vector<std::map<std::string, smv::V>> candidates(const CompiledSystem& sys, const SystemState& s) {
    std::vector<std::map<std::string, smv::V>> out;
    const int n = sys.numInstances();
    auto step = [&](int i, const GuardedTransition& g, const std::vector<Value>& data, std::vector<Value>& next) {
        const auto& def = sys.defOf(i);
        rcheck::Env env;
        env.locals = sys.slice(s, i);
        env.data = data;
        for (const auto& u : def.commands[static_cast<std::size_t>(g.command)].update) {
            next[static_cast<std::size_t>(u.index)] = eval(u.value, env);
        }
        next.back() = Value::integer(g.target);
    };
    for (int k = 0; k < n; ++k) {
        for (const auto& g : sys.agentOf(k).sendRel) {
            auto local = sys.slice(s, k);
            if (g.source != local.back().v) continue;
            const Command& c = sys.defOf(k).commands[static_cast<std::size_t>(g.command)];
            rcheck::Env senv;
            senv.locals = local;
            Value ch = eval(c.channel, senv);
            std::vector<Value> data(sys.model.dataVars.size(), Value::undef());
            for (const auto& d : c.data) data[static_cast<std::size_t>(d.index)] = eval(d.value, senv);
            // Per instance: (successor slice, latched label) options.
            std::vector<std::vector<std::pair<std::vector<Value>, std::string>>> opts(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) {
                auto sl = sys.slice(s, j);
                std::vector<Value> same(sl.begin(), sl.end());
                if (j == k) {
                    step(k, g, data, same);
                    opts[static_cast<std::size_t>(j)].push_back({same, ""});
                    continue;
                }
                opts[static_cast<std::size_t>(j)].push_back({same, ""});
                for (const auto& r : sys.agentOf(j).recvRel) {
                    if (r.source != sl.back().v) continue;
                    auto next = same;
                    step(j, r, data, next);
                    opts[static_cast<std::size_t>(j)].push_back({next, smv_label(sys, {j, r.command})});
                }
            }
            std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
            for (;;) {
                SystemState succ;
                std::vector<std::string> latched;
                for (int j = 0; j < n; ++j) {
                    const auto& o = opts[static_cast<std::size_t>(j)][idx[static_cast<std::size_t>(j)]];
                    succ.insert(succ.end(), o.first.begin(), o.first.end());
                    if (!o.second.empty()) latched.push_back(o.second);
                }
                out.push_back(valuation(sys, succ, ch, data, latched));
                std::size_t j = 0;
                while (j < idx.size() && ++idx[j] == opts[j].size()) idx[j++] = 0;
                if (j == idx.size()) break;
            }
        }
    }
    return out;
}

} // namespace

TEST(Smv, ToyGolden) {
    auto t = toy();
    std::string text = export_smv(t.sys, t.props);
    check_golden("toy.smv", text);
    // One send label, one DEFINE for it, and the stutter disjunct.
    EXPECT_NE(text.find("  solo_tick := ((next(ch) = star) & (next(solo_n) = max(0, min(2, (solo_n + 1)))) & (solo_st = 0) "
                        "& (next(solo_st) = 0));"),
              std::string::npos);
    EXPECT_NE(text.find("(_deadlock & (next(ch) = undef) & _solo_idle)"), std::string::npos);
}

TEST(Smv, CorpusGolden) {
    auto c = fixture("resource-allocation");
    check_golden("resource-allocation.smv", export_smv(c.sys, c.props));
}

TEST(Smv, ByteStable) {
    for (const auto& name : fixture_names()) {
        auto a = fixture(name);
        auto b = fixture(name);
        EXPECT_EQ(export_smv(a.sys, a.props), export_smv(b.sys, b.props)) << name;
    }
}

TEST(Smv, NamesAndSections) {
    auto c = fixture("resource-allocation");
    std::string text = export_smv(c.sys, c.props);
    EXPECT_NE(text.find("  client1_cLink : {c, t, g1, g2, vmm1, vmm2, vmm3, star, empty};"), std::string::npos);
    EXPECT_NE(text.find("  machine3_rForward : boolean;"), std::string::npos);
    EXPECT_NE(text.find("LTLSPEC NAME p6 := "), std::string::npos);
    EXPECT_EQ(text.find("client1-cLink"), std::string::npos);
    auto doc = smv::Parser(text).document();
    EXPECT_EQ(doc.specs.size(), c.props.size());
    ASSERT_TRUE(doc.trans);
    ASSERT_TRUE(doc.init);
    // Every send edge is a DEFINE whose body is the edge predicate.
    for (int i = 0; i < c.sys.numInstances(); ++i) {
        for (const auto& g : c.sys.agentOf(i).sendRel) {
            EXPECT_TRUE(doc.defines.count(smv_label(c.sys, {i, g.command}))) << g.label;
        }
    }
}

TEST(Smv, KeywordsAreMangled) {
    EXPECT_EQ(smv_ident("next"), "next_");
    EXPECT_EQ(smv_ident("client1-cLink"), "client1_cLink");
    EXPECT_EQ(smv_ident("mod"), "mod_");
    EXPECT_EQ(smv_ident("sForward"), "sForward");
}

TEST(Smv, BooleanMessageVariablesAreRejected) {
    auto sys = compile_source(R"(
enums:
channels:
message-structure: FLAG : bool
communication-variables:

agent A
  local: x : bool
  init: !x
  relabel:
  receive-guard: ch == *
  repeat: ( s: <TRUE> *! (TRUE)(FLAG := TRUE)[] )

system = A(a, TRUE)
)");
    try {
        export_smv(sys);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedDomain);
    }
}

// The exported relation, read back by an independent interpreter, must agree
// with the explicit semantics at every reachable state: each explicit step is
// a TRANS model, and every single-variable perturbation of a step is one only
// when it is itself an explicit step.
TEST(Smv, TransMatchesExplicitSemantics) {
    std::vector<Model> models{toy()};
    for (const auto& name : fixture_names()) models.push_back(fixture(name));
    for (const auto& mdl : models) {
        const auto& sys = mdl.sys;
        std::string text = export_smv(sys);
        auto doc = smv::Parser(text).document();
        std::vector<Value> undefs(sys.model.dataVars.size(), Value::undef());

        for (const auto& s : initial_states(sys)) {
            smv::Env env{&doc, valuation(sys, s, Value::undef(), undefs, {}), {}};
            EXPECT_TRUE(env.holds(doc.init));
        }

        auto graph = explore(sys, 100000);
        ASSERT_FALSE(graph.truncated);
        std::size_t checked = 0;
        for (const auto& s : graph.states) {
            smv::Env env{&doc, valuation(sys, s, Value::undef(), undefs, {}), {}};
            auto ts = enabled_transitions(sys, s);
            std::set<std::map<std::string, smv::V>> valid;
            for (const auto& t : ts) {
                std::vector<std::string> latched;
                for (std::size_t f = 1; f < t.fired.size(); ++f) latched.push_back(smv_label(sys, t.fired[f]));
                valid.insert(valuation(sys, t.successor, t.message.channel, t.message.data, latched));
            }
            if (ts.empty()) valid.insert(valuation(sys, s, Value::undef(), undefs, {}));
            EXPECT_EQ(env.holds(doc.defines.at("_deadlock")), ts.empty()) << format_state(sys, s);

            for (const auto& t : ts) {
                std::vector<std::string> latched;
                for (std::size_t f = 1; f < t.fired.size(); ++f) latched.push_back(smv_label(sys, t.fired[f]));
                env.nxt = valuation(sys, t.successor, t.message.channel, t.message.data, latched);
                EXPECT_TRUE(env.holds(doc.defines.at(smv_label(sys, t.fired.front())))) << describe(sys, t);
            }
            for (const auto& good : valid) {
                env.nxt = good;
                EXPECT_TRUE(env.holds(doc.trans)) << format_state(sys, s);
                for (const auto& [var, dom] : doc.vars) {
                    for (const auto& alt : dom) {
                        if (alt == good.at(var)) continue;
                        env.nxt = good;
                        env.nxt[var] = alt;
                        ++checked;
                        EXPECT_EQ(env.holds(doc.trans), valid.count(env.nxt) > 0)
                            << format_state(sys, s) << " next(" << var << ") perturbed";
                    }
                }
            }
            for (const auto& cand : candidates(sys, s)) {
                env.nxt = cand;
                ++checked;
                EXPECT_EQ(env.holds(doc.trans), valid.count(cand) > 0) << format_state(sys, s) << " guard-blind candidate";
            }
        }
        EXPECT_GT(checked, 0u);
    }
}

TEST(Smv, ExternalCheckerAgrees) {
    auto bin = external_checker();
    if (!bin) GTEST_SKIP() << "RCHECK_SMV_CHECKER not set";
    for (const auto& name : fixture_names()) {
        auto m = fixture(name);
        std::vector<PropertySpec> annotated;
        for (const auto& p : m.props) {
            if (p.expectHolds) annotated.push_back(p);
        }
        auto verdicts = run_external_checker(*bin, export_smv(m.sys, annotated));
        ASSERT_EQ(verdicts.size(), annotated.size()) << name;
        for (std::size_t i = 0; i < annotated.size(); ++i) {
            auto v = model_check(m.sys, parse_ltl(annotated[i].formula, m.sys));
            EXPECT_EQ(verdicts[i], v.kind == VerdictKind::Holds) << name << "/" << annotated[i].name;
        }
    }
}
