#include "rcheck/eval.hpp"

#include <algorithm>

namespace rcheck {

namespace {

const Value& pick(std::span<const Value> s, int index, const Expr& e, const char* what) {
    if (s.empty() || index < 0 || static_cast<std::size_t>(index) >= s.size()) {
        throw Error(ErrorCode::UnboundSymbol, std::string(what) + " '" + e.name + "' is not bound", e.pos);
    }
    return s[static_cast<std::size_t>(index)];
}

Value lookup_var(const Expr& e, const Env& env) {
    const VarRef& r = e.var;
    switch (r.scope) {
    case VarScope::Local: return pick(r.primed ? env.primedLocals : env.locals, r.index, e, "local");
    case VarScope::Data: return pick(env.data, r.index, e, "message variable");
    case VarScope::Common: return pick(env.common, r.index, e, "common variable");
    case VarScope::Global: return pick(r.primed ? env.primedGlobal : env.global, r.index, e, "variable");
    case VarScope::Channel:
        if (!env.channel) throw Error(ErrorCode::UnboundSymbol, "'ch' is not bound", e.pos);
        return *env.channel;
    }
    return Value::undef();
}

bool bound(const Expr& e, const Env& env) {
    const VarRef& r = e.var;
    switch (r.scope) {
    case VarScope::Local: return !(r.primed ? env.primedLocals : env.locals).empty();
    case VarScope::Data: return !env.data.empty();
    case VarScope::Common: return !env.common.empty();
    case VarScope::Global: return !(r.primed ? env.primedGlobal : env.global).empty();
    case VarScope::Channel: return env.channel.has_value();
    }
    return false;
}

} // namespace

Value apply_binary(ExprKind kind, const Value& a, const Value& b) {
    switch (kind) {
    case ExprKind::And: return Value::boolean(a.isTrue() && b.isTrue());
    case ExprKind::Or: return Value::boolean(a.isTrue() || b.isTrue());
    case ExprKind::Implies: return Value::boolean(!a.isTrue() || b.isTrue());
    case ExprKind::Eq: return Value::boolean(a == b);
    case ExprKind::Ne: return Value::boolean(!(a == b));
    case ExprKind::Lt:
    case ExprKind::Le:
    case ExprKind::Gt:
    case ExprKind::Ge: {
        if (a.kind != ValueKind::Int || b.kind != ValueKind::Int) return Value::boolean(false);
        bool r = kind == ExprKind::Lt   ? a.v < b.v
                 : kind == ExprKind::Le ? a.v <= b.v
                 : kind == ExprKind::Gt ? a.v > b.v
                                        : a.v >= b.v;
        return Value::boolean(r);
    }
    case ExprKind::Add:
    case ExprKind::Sub:
        if (a.kind != ValueKind::Int || b.kind != ValueKind::Int) return Value::undef();
        return Value::integer(kind == ExprKind::Add ? a.v + b.v : a.v - b.v);
    default: return Value::undef();
    }
}

Value eval(const ExprPtr& e, const Env& env) {
    switch (e->kind) {
    case ExprKind::Const: return e->value;
    case ExprKind::Var: return lookup_var(*e, env);
    case ExprKind::Label:
        if (!env.label) throw Error(ErrorCode::UnboundSymbol, "label '" + e->name + "' is not bound", e->pos);
        return Value::boolean(env.label(e->instance, e->command));
    case ExprKind::Name:
        throw Error(ErrorCode::UnboundSymbol, "unresolved name '" + e->name + "'", e->pos);
    case ExprKind::Not: return Value::boolean(!eval(e->args[0], env).isTrue());
    case ExprKind::Neg: {
        Value v = eval(e->args[0], env);
        return v.kind == ValueKind::Int ? Value::integer(-v.v) : Value::undef();
    }
    case ExprKind::Clamp: {
        Value v = eval(e->args[0], env);
        if (v.kind != ValueKind::Int) return v;
        return Value::integer(std::clamp(v.v, e->lo, e->hi));
    }
    case ExprKind::And:
        if (!eval(e->args[0], env).isTrue()) return Value::boolean(false);
        return Value::boolean(eval(e->args[1], env).isTrue());
    case ExprKind::Or:
        if (eval(e->args[0], env).isTrue()) return Value::boolean(true);
        return Value::boolean(eval(e->args[1], env).isTrue());
    case ExprKind::Implies:
        if (!eval(e->args[0], env).isTrue()) return Value::boolean(true);
        return Value::boolean(eval(e->args[1], env).isTrue());
    default: return apply_binary(e->kind, eval(e->args[0], env), eval(e->args[1], env));
    }
}

bool eval_bool(const ExprPtr& e, const Env& env) { return eval(e, env).isTrue(); }

ExprPtr rewrite(const ExprPtr& e, const std::function<ExprPtr(const ExprPtr&)>& f) {
    if (ExprPtr r = f(e)) return r;
    if (e->args.empty()) return e;
    std::vector<ExprPtr> args;
    bool changed = false;
    for (const auto& a : e->args) {
        args.push_back(rewrite(a, f));
        changed = changed || args.back() != a;
    }
    if (!changed) return e;
    auto out = std::make_shared<Expr>(*e);
    out->args = std::move(args);
    return out;
}

namespace {

ExprPtr const_like(const ExprPtr& orig, Value v) {
    auto out = std::make_shared<Expr>(*make_const(v, orig->pos, orig->type));
    if (v.kind == ValueKind::Bool) out->type = Type::boolean();
    return out;
}

bool is_const(const ExprPtr& e) { return e->kind == ExprKind::Const; }

} // namespace

ExprPtr partial_eval(const ExprPtr& e, const Env& env) {
    switch (e->kind) {
    case ExprKind::Const: return e;
    case ExprKind::Var:
        if (!bound(*e, env)) return e;
        {
            auto out = std::make_shared<Expr>(*make_const(lookup_var(*e, env), e->pos, e->type));
            return out;
        }
    case ExprKind::Label:
        if (!env.label) return e;
        return const_like(e, Value::boolean(env.label(e->instance, e->command)));
    case ExprKind::Name: return e;
    default: break;
    }
    std::vector<ExprPtr> args;
    bool allConst = true;
    for (const auto& a : e->args) {
        args.push_back(partial_eval(a, env));
        allConst = allConst && is_const(args.back());
    }
    if (allConst) {
        Env empty;
        auto tmp = std::make_shared<Expr>(*e);
        tmp->args = args;
        return const_like(e, eval(tmp, empty));
    }
    switch (e->kind) {
    case ExprKind::And:
        if (is_const(args[0]) && !args[0]->value.isTrue()) return const_like(e, Value::boolean(false));
        if (is_const(args[1]) && !args[1]->value.isTrue()) return const_like(e, Value::boolean(false));
        if (is_const_true(args[0])) return args[1];
        if (is_const_true(args[1])) return args[0];
        break;
    case ExprKind::Or:
        if (is_const_true(args[0]) || is_const_true(args[1])) return const_like(e, Value::boolean(true));
        if (is_const(args[0])) return args[1];
        if (is_const(args[1])) return args[0];
        break;
    case ExprKind::Implies:
        if (is_const(args[0]) && !args[0]->value.isTrue()) return const_like(e, Value::boolean(true));
        if (is_const_true(args[1])) return const_like(e, Value::boolean(true));
        if (is_const_true(args[0])) return args[1];
        break;
    default: break;
    }
    auto out = std::make_shared<Expr>(*e);
    out->args = std::move(args);
    return out;
}

ExprPtr substitute_common(const ExprPtr& pred, const std::vector<ExprPtr>& relabel) {
    return rewrite(pred, [&](const ExprPtr& n) -> ExprPtr {
        if (n->kind == ExprKind::Var && n->var.scope == VarScope::Common) {
            return relabel.at(static_cast<std::size_t>(n->var.index));
        }
        return nullptr;
    });
}

bool mentions(const ExprPtr& e, VarScope scope) {
    if (e->kind == ExprKind::Var && e->var.scope == scope) return true;
    return std::any_of(e->args.begin(), e->args.end(), [&](const ExprPtr& a) { return mentions(a, scope); });
}

} // namespace rcheck
