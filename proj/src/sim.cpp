#include "rcheck/sim.hpp"

#include "rcheck/eval.hpp"
#include "rcheck/parser.hpp"
#include "rcheck/typecheck.hpp"

#include <algorithm>

namespace rcheck {

Constraint parse_constraint(std::string_view text, const CompiledSystem& sys) {
    ExprOptions opts;
    opts.allowNext = true;
    ExprPtr raw = parse_standalone_expr(text, opts);
    NameLookup lookup = [&sys](const Expr& n) -> ExprPtr {
        if (n.qualifier.empty()) return nullptr;
        int g = sys.findGlobal(n.qualifier, n.name);
        if (g >= 0) {
            const auto& decl = sys.globals[static_cast<std::size_t>(g)];
            return make_var({VarScope::Global, g, n.next}, decl.name, decl.type, n.pos);
        }
        LabelRef l = sys.findLabel(n.qualifier, n.name);
        if (l.command >= 0) {
            if (n.next) {
                throw Error(ErrorCode::UnknownVariable, "next() only wraps instance variables, not label '" +
                                                            n.qualifier + "-" + n.name + "'",
                            n.pos);
            }
            auto e = std::make_shared<Expr>(*make_label(l.instance, l.command, n.qualifier + "-" + n.name, n.pos));
            e->type = Type::boolean();
            return e;
        }
        return nullptr;
    };
    return {std::string(text), resolve_bool(raw, sys.model, lookup, ErrorCode::UnknownVariable)};
}

namespace {

bool holds(const ExprPtr& e, const CompiledSystem& sys, const AugState& from, const JointTransition& t) {
    Env env;
    env.global = from.base;
    env.primedGlobal = t.successor;
    env.label = [&](int instance, int command) {
        LabelRef l{instance, command};
        if (sys.isSend(l)) return t.fired.front() == l;
        return std::binary_search(from.lastFired.begin(), from.lastFired.end(), l);
    };
    return eval_bool(e, env);
}

} // namespace

bool constraint_holds(const Constraint& c, const CompiledSystem& sys, const AugState& from, const JointTransition& t) {
    return holds(c.expr, sys, from, t);
}

Session::Session(std::shared_ptr<const CompiledSystem> sys, std::uint64_t seed, std::string modelText)
    : sys_(std::move(sys)), seed_(seed), modelText_(std::move(modelText)), rng_(seed) {
    auto init = initial_states(*sys_);
    if (init.size() > 1) {
        std::uniform_int_distribution<std::size_t> pick(0, init.size() - 1);
        initialIndex_ = static_cast<int>(pick(rng_));
    }
    current_ = AugState{init[static_cast<std::size_t>(initialIndex_)], {}};
    enabled_ = enabled_transitions(*sys_, current_.base);
}

StepResult Session::take(int index, std::string constraint) {
    StepResult r;
    r.deadlock = enabled_.empty();
    r.choice = index;
    TraceStep ts;
    ts.choice = index;
    ts.constraint = std::move(constraint);
    if (index < 0) {
        if (!r.deadlock) throw Error(ErrorCode::ProtocolError, "stutter steps are only taken at a deadlock");
        current_ = advance(current_, nullptr);
    } else {
        if (static_cast<std::size_t>(index) >= enabled_.size()) {
            throw Error(ErrorCode::ProtocolError, "choice " + std::to_string(index) + " out of range (" +
                                                      std::to_string(enabled_.size()) + " enabled)");
        }
        r.transition = enabled_[static_cast<std::size_t>(index)];
        current_ = advance(current_, &*r.transition);
        ts.transition = r.transition;
    }
    ts.target = current_;
    trace_.push_back(std::move(ts));
    enabled_ = enabled_transitions(*sys_, current_.base);
    return r;
}

StepResult Session::step_random() {
    if (enabled_.empty()) return take(-1, {});
    std::uniform_int_distribution<std::size_t> pick(0, enabled_.size() - 1);
    return take(static_cast<int>(pick(rng_)), {});
}

StepResult Session::step_choice(int index) { return take(index, {}); }

StepResult Session::step_constrained(const std::string& text) {
    Constraint c = parse_constraint(text, *sys_);
    if (enabled_.empty()) {
        throw Error(ErrorCode::Deadlock, "no step is enabled; only a stutter (random) step can be taken");
    }
    for (std::size_t i = 0; i < enabled_.size(); ++i) {
        if (holds(c.expr, *sys_, current_, enabled_[i])) return take(static_cast<int>(i), text);
    }
    // Nearest misses: the steps failing the fewest top-level conjuncts.
    auto parts = conjuncts(c.expr);
    std::vector<std::pair<std::size_t, std::string>> misses;
    for (const auto& t : enabled_) {
        std::vector<std::string> failed;
        for (const auto& p : parts) {
            if (!holds(p, *sys_, current_, t)) failed.push_back(print_expr(p, &sys_->model));
        }
        std::string why;
        for (const auto& f : failed) why += (why.empty() ? "" : ", ") + f;
        misses.emplace_back(failed.size(), describe(*sys_, t) + " (fails " + why + ")");
    }
    std::stable_sort(misses.begin(), misses.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> nearest;
    std::string msg = "constraint '" + text + "' is not satisfied by any of the " + std::to_string(enabled_.size()) +
                      " enabled steps; nearest misses:";
    for (const auto& m : misses) {
        if (m.first != misses.front().first || nearest.size() == 5) break;
        nearest.push_back(m.second);
        msg += "\n  " + m.second;
    }
    throw Error(ErrorCode::InfeasibleConstraint, msg, std::nullopt, nearest);
}

nlohmann::json Session::inspect() const {
    using nlohmann::json;
    const auto& sys = *sys_;
    json instances = json::array();
    for (int i = 0; i < sys.numInstances(); ++i) {
        const auto& inst = sys.model.instances[static_cast<std::size_t>(i)];
        instances.push_back({{"id", inst.id}, {"type", inst.typeName}, {"state", sys.slice(current_.base, i).back().v}});
    }
    json received = json::array();
    for (const auto& l : current_.lastFired) received.push_back(sys.labelName(l));
    json enabled = json::array();
    for (std::size_t i = 0; i < enabled_.size(); ++i) {
        json t = transition_json(sys, enabled_[i]);
        t["index"] = i;
        t["description"] = describe(sys, enabled_[i]);
        enabled.push_back(t);
    }
    json trace = json::array();
    for (std::size_t i = 0; i < trace_.size(); ++i) {
        const auto& s = trace_[i];
        json j{{"step", i + 1}, {"choice", s.choice}};
        if (s.transition) j["label"] = sys.labelName(s.transition->fired.front());
        else j["stutter"] = true;
        if (!s.constraint.empty()) j["constraint"] = s.constraint;
        trace.push_back(j);
    }
    return {{"variables", state_json(sys, current_.base)},
            {"instances", instances},
            {"received", received},
            {"enabled", enabled},
            {"deadlock", enabled_.empty()},
            {"trace", trace},
            {"traceLength", trace_.size()}};
}

nlohmann::json Session::export_trace() const {
    using nlohmann::json;
    json choices = json::array();
    for (const auto& s : trace_) {
        json c{{"choice", s.choice}};
        if (s.transition) c["label"] = sys_->labelName(s.transition->fired.front());
        if (!s.constraint.empty()) c["constraint"] = s.constraint;
        choices.push_back(c);
    }
    return {{"format", "rcheck-trace"}, {"version", 1},         {"model", modelText_},
            {"seed", seed_},            {"initial", initialIndex_}, {"choices", choices}};
}

Session Session::replay(const nlohmann::json& trace) {
    auto bad = [](const std::string& why) { return Error(ErrorCode::ProtocolError, "bad trace: " + why); };
    if (!trace.is_object() || trace.value("format", "") != "rcheck-trace") throw bad("not an rcheck-trace document");
    if (trace.value("version", 0) != 1) throw bad("unsupported version");
    if (!trace.contains("model") || !trace["model"].is_string()) throw bad("missing model text");
    std::string model = trace["model"];
    auto sys = std::make_shared<const CompiledSystem>(compile_source(model));
    Session s(sys, trace.value("seed", std::uint64_t{0}), model);
    if (trace.contains("initial") && trace["initial"].get<int>() != s.initialIndex_) throw bad("initial state differs");
    for (const auto& c : trace.value("choices", nlohmann::json::array())) {
        int choice = c.value("choice", -1);
        auto r = s.take(choice, c.value("constraint", ""));
        if (c.contains("label") && (!r.transition || sys->labelName(r.transition->fired.front()) != c["label"])) {
            throw bad("step " + std::to_string(s.trace_.size()) + " does not replay");
        }
    }
    return s;
}

} // namespace rcheck
