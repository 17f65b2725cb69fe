#include "rcheck/typecheck.hpp"

#include <algorithm>

namespace rcheck {

bool compatible(const Type& to, const Type& from) {
    if (to.kind == TypeKind::Undef || from.kind == TypeKind::Undef) return true;
    if (to.kind != from.kind) return false;
    if (to.kind == TypeKind::Enum) return to.enumId == from.enumId;
    return true;
}

namespace {

[[noreturn]] void mismatch(const Expr& e, const std::string& what) {
    throw Error(ErrorCode::TypeMismatch, what, e.pos);
}

std::string describe(const Type& t) { return to_string(t); }

void need(const Expr& at, const ExprPtr& arg, TypeKind kind, const char* role) {
    if (arg->type.kind != kind) {
        mismatch(at, std::string(role) + " operand has type " + describe(arg->type));
    }
}

std::shared_ptr<Expr> rebuild(const Expr& orig, std::vector<ExprPtr> args) {
    auto e = std::make_shared<Expr>(orig);
    e->args = std::move(args);
    return e;
}

ExprPtr resolve_rec(const ExprPtr& e, const SystemModel& model, const NameLookup& lookup, ErrorCode unknown) {
    switch (e->kind) {
    case ExprKind::Const: {
        if (e->value.kind == ValueKind::Enum && e->type.kind == TypeKind::Unknown) {
            auto out = std::make_shared<Expr>(*e);
            int owner = model.enumConstants.at(static_cast<std::size_t>(e->value.v)).second;
            out->type = Type::enumeration(model.enums[static_cast<std::size_t>(owner)].name, owner);
            return out;
        }
        return e;
    }
    case ExprKind::Var:
    case ExprKind::Label:
        return e;
    case ExprKind::Name: {
        if (ExprPtr r = lookup(*e)) return r;
        if (e->qualifier.empty() && !e->next) {
            if (int c = model.findChannel(e->name); c >= 0) {
                auto out = std::make_shared<Expr>(*make_const(Value::channel(c), e->pos));
                out->name = e->name;
                return out;
            }
            if (int k = model.findEnumConstant(e->name); k >= 0) {
                int owner = model.enumConstants[static_cast<std::size_t>(k)].second;
                auto out = std::make_shared<Expr>(
                    *make_const(Value::enumConst(k), e->pos,
                                Type::enumeration(model.enums[static_cast<std::size_t>(owner)].name, owner)));
                out->name = e->name;
                return out;
            }
        }
        std::string shown = e->qualifier.empty() ? e->name : e->qualifier + "-" + e->name;
        throw Error(unknown, "unknown name '" + shown + "'", e->pos);
    }
    default: break;
    }

    std::vector<ExprPtr> args;
    args.reserve(e->args.size());
    for (const auto& a : e->args) args.push_back(resolve_rec(a, model, lookup, unknown));
    auto out = rebuild(*e, args);

    switch (e->kind) {
    case ExprKind::Not:
        need(*e, args[0], TypeKind::Bool, "'!'");
        out->type = Type::boolean();
        break;
    case ExprKind::Neg:
        need(*e, args[0], TypeKind::Int, "'-'");
        out->type = Type::integer(-args[0]->type.hi, -args[0]->type.lo);
        break;
    case ExprKind::And:
    case ExprKind::Or:
    case ExprKind::Implies:
        need(*e, args[0], TypeKind::Bool, "boolean");
        need(*e, args[1], TypeKind::Bool, "boolean");
        out->type = Type::boolean();
        break;
    case ExprKind::Eq:
    case ExprKind::Ne:
        if (!compatible(args[0]->type, args[1]->type)) {
            mismatch(*e, "cannot compare " + describe(args[0]->type) + " with " + describe(args[1]->type));
        }
        out->type = Type::boolean();
        break;
    case ExprKind::Lt:
    case ExprKind::Le:
    case ExprKind::Gt:
    case ExprKind::Ge:
        need(*e, args[0], TypeKind::Int, "ordered comparison");
        need(*e, args[1], TypeKind::Int, "ordered comparison");
        out->type = Type::boolean();
        break;
    case ExprKind::Add:
    case ExprKind::Sub: {
        need(*e, args[0], TypeKind::Int, "arithmetic");
        need(*e, args[1], TypeKind::Int, "arithmetic");
        const auto& a = args[0]->type;
        const auto& b = args[1]->type;
        out->type = e->kind == ExprKind::Add ? Type::integer(a.lo + b.lo, a.hi + b.hi)
                                             : Type::integer(a.lo - b.hi, a.hi - b.lo);
        break;
    }
    case ExprKind::Clamp:
        need(*e, args[0], TypeKind::Int, "clamp");
        out->type = Type::integer(e->lo, e->hi);
        break;
    default: break;
    }
    return out;
}

// Per-agent resolution context.
struct Scope {
    const SystemModel* model = nullptr;
    const AgentDef* agent = nullptr;
    bool channel = false;
    bool data = false;
    bool common = false;
    bool st = false;
};

ExprPtr scope_lookup(const Scope& s, const Expr& n) {
    if (!n.qualifier.empty() || n.next) {
        throw Error(ErrorCode::UnknownName, "qualified names are not allowed inside agent definitions", n.pos);
    }
    if (int i = s.agent->findLocal(n.name); i >= 0) {
        return make_var({VarScope::Local, i}, n.name, s.agent->locals[static_cast<std::size_t>(i)].type, n.pos);
    }
    if (s.st && n.name == "st") {
        return make_var({VarScope::Local, static_cast<int>(s.agent->locals.size())}, "st", Type::integer(0, 4096), n.pos);
    }
    if (s.channel && n.name == "ch") return make_var({VarScope::Channel, 0}, "ch", Type::channel(), n.pos);
    if (s.data) {
        if (int i = s.model->findDataVar(n.name); i >= 0) {
            return make_var({VarScope::Data, i}, n.name, s.model->dataVars[static_cast<std::size_t>(i)].type, n.pos);
        }
    }
    if (s.common) {
        if (int i = s.model->findCommonVar(n.name); i >= 0) {
            return make_var({VarScope::Common, i}, n.name, s.model->commonVars[static_cast<std::size_t>(i)].type, n.pos);
        }
    }
    return nullptr;
}

ExprPtr resolve_in(const ExprPtr& e, const Scope& s, bool wantBool) {
    NameLookup lookup = [&s](const Expr& n) { return scope_lookup(s, n); };
    return wantBool ? resolve_bool(e, *s.model, lookup) : resolve_expr(e, *s.model, lookup);
}

ExprPtr fit(const ExprPtr& value, const Type& target, const std::string& targetName) {
    if (!compatible(target, value->type)) {
        throw Error(ErrorCode::TypeMismatch,
                    "cannot assign " + to_string(value->type) + " to '" + targetName + "' of type " + to_string(target),
                    value->pos);
    }
    if (target.kind == TypeKind::Int && value->type.kind == TypeKind::Int &&
        (value->type.lo < target.lo || value->type.hi > target.hi)) {
        return make_clamp(value, target.lo, target.hi);
    }
    return value;
}

void resolve_type(Type& t, const SystemModel& model, SourcePos pos) {
    if (t.kind != TypeKind::Enum) return;
    t.enumId = model.findEnum(t.enumName);
    if (t.enumId < 0) throw Error(ErrorCode::UnknownName, "unknown type '" + t.enumName + "'", pos);
}

void check_channel_expr(const ExprPtr& ch, const Command& c) {
    if (ch->type.kind != TypeKind::Chan) {
        throw Error(ErrorCode::TypeMismatch, "channel position of '" + c.label + "' has type " + to_string(ch->type),
                    ch->pos);
    }
}

void check_agent(AgentDef& a, const SystemModel& model, std::vector<Diagnostic>& warnings) {
    for (auto& v : a.locals) resolve_type(v.type, model, v.pos);

    Scope locals{&model, &a};
    a.init = resolve_in(a.init, locals, true);

    std::vector<Assignment> relabel(model.commonVars.size());
    std::vector<bool> given(model.commonVars.size(), false);
    for (auto& r : a.relabel) {
        int cv = model.findCommonVar(r.target);
        if (cv < 0) {
            throw Error(ErrorCode::UpdateToUndeclaredVar, "relabel of undeclared common variable '" + r.target + "'", r.pos);
        }
        const auto& decl = model.commonVars[static_cast<std::size_t>(cv)];
        r.index = cv;
        r.value = fit(resolve_in(r.value, locals, false), decl.type, decl.name);
        relabel[static_cast<std::size_t>(cv)] = r;
        given[static_cast<std::size_t>(cv)] = true;
    }
    for (std::size_t i = 0; i < model.commonVars.size(); ++i) {
        if (given[i]) continue;
        const auto& decl = model.commonVars[i];
        Diagnostic d;
        d.severity = Severity::Warning;
        d.code = "missing-relabel";
        d.subject = a.name;
        d.message = "no relabel for common variable '" + decl.name + "'; defaulting to undef";
        d.pos = a.pos;
        warnings.push_back(std::move(d));
        relabel[i] = Assignment{decl.name, static_cast<int>(i), make_const(Value::undef(), a.pos), a.pos};
    }
    a.relabel = std::move(relabel);

    Scope guard{&model, &a, true};
    a.receiveGuard = resolve_in(a.receiveGuard, guard, true);

    for (auto& c : a.commands) {
        bool send = c.kind == CommandKind::Send;
        Scope pre{&model, &a, false, !send};
        c.pre = resolve_in(c.pre, pre, true);
        c.channel = resolve_in(c.channel, locals, false);
        check_channel_expr(c.channel, c);
        if (send) {
            Scope pi{&model, &a, true, true, true};
            c.senderPred = resolve_in(c.senderPred, pi, true);
            for (auto& d : c.data) {
                int idx = model.findDataVar(d.target);
                if (idx < 0) {
                    throw Error(ErrorCode::UpdateToUndeclaredVar, "'" + d.target + "' is not a message variable", d.pos);
                }
                const auto& decl = model.dataVars[static_cast<std::size_t>(idx)];
                d.index = idx;
                d.value = fit(resolve_in(d.value, locals, false), decl.type, decl.name);
            }
        }
        for (auto& u : c.update) {
            int idx = a.findLocal(u.target);
            if (idx < 0) {
                throw Error(ErrorCode::UpdateToUndeclaredVar,
                            "'" + u.target + "' is not a local variable of " + a.name, u.pos);
            }
            const auto& decl = a.locals[static_cast<std::size_t>(idx)];
            u.index = idx;
            u.value = fit(resolve_in(u.value, pre, false), decl.type, decl.name);
        }
    }
}

} // namespace

ExprPtr resolve_expr(const ExprPtr& e, const SystemModel& model, const NameLookup& lookup, ErrorCode unknownCode) {
    return resolve_rec(e, model, lookup, unknownCode);
}

ExprPtr resolve_bool(const ExprPtr& e, const SystemModel& model, const NameLookup& lookup, ErrorCode unknownCode) {
    ExprPtr r = resolve_rec(e, model, lookup, unknownCode);
    if (r->type.kind != TypeKind::Bool) {
        throw Error(ErrorCode::TypeMismatch, "expected a boolean expression, found " + to_string(r->type), r->pos);
    }
    return r;
}

TypedModel typecheck(SystemModel model) {
    TypedModel out;
    for (auto& d : model.dataVars) resolve_type(d.type, model, d.pos);
    for (auto& c : model.commonVars) resolve_type(c.type, model, c.pos);
    for (auto& a : model.agents) check_agent(a, model, out.warnings);
    for (auto& inst : model.instances) {
        const AgentDef& a = model.agents[static_cast<std::size_t>(inst.agent)];
        Scope locals{&model, &a};
        inst.extraInit = resolve_in(inst.extraInit, locals, true);
    }
    out.model = std::move(model);
    return out;
}

} // namespace rcheck
