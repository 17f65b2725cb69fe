#include "rcheck/ast.hpp"

namespace rcheck {

ExprPtr make_const(Value v, SourcePos pos, Type type) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Const;
    e->value = v;
    e->pos = pos;
    if (type.kind == TypeKind::Unknown) {
        switch (v.kind) {
        case ValueKind::Bool: type = Type::boolean(); break;
        case ValueKind::Int: type = Type::integer(v.v, v.v); break;
        case ValueKind::Chan: type = Type::channel(); break;
        case ValueKind::Undef: type = Type::undefined(); break;
        case ValueKind::Enum: break;
        }
    }
    e->type = std::move(type);
    return e;
}

ExprPtr make_bool(bool b) { return make_const(Value::boolean(b)); }

ExprPtr make_name(std::string name, SourcePos pos, std::string qualifier, bool next) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Name;
    e->name = std::move(name);
    e->qualifier = std::move(qualifier);
    e->next = next;
    e->pos = pos;
    return e;
}

ExprPtr make_var(VarRef ref, std::string name, Type type, SourcePos pos) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Var;
    e->var = ref;
    e->name = std::move(name);
    e->type = std::move(type);
    e->pos = pos;
    return e;
}

ExprPtr make_label(int instance, int command, std::string name, SourcePos pos) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Label;
    e->instance = instance;
    e->command = command;
    e->name = std::move(name);
    e->type = Type::boolean();
    e->pos = pos;
    return e;
}

ExprPtr make_unary(ExprKind kind, ExprPtr operand, SourcePos pos) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->pos = pos;
    e->type = kind == ExprKind::Not ? Type::boolean() : operand->type;
    e->args.push_back(std::move(operand));
    return e;
}

ExprPtr make_binary(ExprKind kind, ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->pos = pos;
    if (kind == ExprKind::Add || kind == ExprKind::Sub) {
        e->type = lhs->type;
    } else {
        e->type = Type::boolean();
    }
    e->args.push_back(std::move(lhs));
    e->args.push_back(std::move(rhs));
    return e;
}

ExprPtr make_clamp(ExprPtr operand, int lo, int hi) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Clamp;
    e->pos = operand->pos;
    e->lo = lo;
    e->hi = hi;
    e->type = Type::integer(lo, hi);
    e->args.push_back(std::move(operand));
    return e;
}

ExprPtr make_and(const std::vector<ExprPtr>& parts) {
    ExprPtr acc;
    for (const auto& p : parts) {
        if (is_const_true(p)) continue;
        acc = acc ? make_binary(ExprKind::And, acc, p) : p;
    }
    return acc ? acc : make_bool(true);
}

ExprPtr make_or(const std::vector<ExprPtr>& parts) {
    ExprPtr acc;
    for (const auto& p : parts) {
        if (is_const_false(p)) continue;
        acc = acc ? make_binary(ExprKind::Or, acc, p) : p;
    }
    return acc ? acc : make_bool(false);
}

bool is_const_true(const ExprPtr& e) {
    return e && e->kind == ExprKind::Const && e->value == Value::boolean(true);
}

bool is_const_false(const ExprPtr& e) {
    return e && e->kind == ExprKind::Const && e->value == Value::boolean(false);
}

bool same_structure(const ExprPtr& a, const ExprPtr& b) {
    if (!a || !b) return !a && !b;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
    case ExprKind::Const:
        if (!(a->value == b->value)) return false;
        break;
    case ExprKind::Name:
        if (a->name != b->name || a->qualifier != b->qualifier || a->next != b->next) return false;
        break;
    case ExprKind::Var:
        if (!(a->var == b->var)) return false;
        break;
    case ExprKind::Label:
        if (a->instance != b->instance || a->command != b->command) return false;
        break;
    case ExprKind::Clamp:
        if (a->lo != b->lo || a->hi != b->hi) return false;
        break;
    default:
        break;
    }
    if (a->args.size() != b->args.size()) return false;
    for (std::size_t i = 0; i < a->args.size(); ++i) {
        if (!same_structure(a->args[i], b->args[i])) return false;
    }
    return true;
}

namespace {

template <class Range>
int find_by_name(const Range& r, std::string_view n) {
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i].name == n) return static_cast<int>(i);
    }
    return -1;
}

bool same_assignments(const std::vector<Assignment>& a, const std::vector<Assignment>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].target != b[i].target || !same_structure(a[i].value, b[i].value)) return false;
    }
    return true;
}

bool same_process(const ProcessPtr& a, const ProcessPtr& b) {
    if (!a || !b) return !a && !b;
    return a->kind == b->kind && a->command == b->command && same_process(a->left, b->left) &&
           same_process(a->right, b->right);
}

bool same_vars(const std::vector<VarDecl>& a, const std::vector<VarDecl>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].name != b[i].name || a[i].type.kind != b[i].type.kind || a[i].type.lo != b[i].type.lo ||
            a[i].type.hi != b[i].type.hi || a[i].type.enumName != b[i].type.enumName) {
            return false;
        }
    }
    return true;
}

} // namespace

int AgentDef::findLocal(std::string_view n) const { return find_by_name(locals, n); }

int AgentDef::findCommand(std::string_view label) const {
    for (std::size_t i = 0; i < commands.size(); ++i) {
        if (commands[i].label == label) return static_cast<int>(i);
    }
    return -1;
}

int SystemModel::findAgent(std::string_view n) const { return find_by_name(agents, n); }

int SystemModel::findInstance(std::string_view n) const {
    for (std::size_t i = 0; i < instances.size(); ++i) {
        if (instances[i].id == n) return static_cast<int>(i);
    }
    return -1;
}

int SystemModel::findChannel(std::string_view n) const { return find_by_name(channels, n); }
int SystemModel::findDataVar(std::string_view n) const { return find_by_name(dataVars, n); }
int SystemModel::findCommonVar(std::string_view n) const { return find_by_name(commonVars, n); }
int SystemModel::findEnum(std::string_view n) const { return find_by_name(enums, n); }

int SystemModel::findEnumConstant(std::string_view n) const {
    for (std::size_t i = 0; i < enumConstants.size(); ++i) {
        if (enumConstants[i].first == n) return static_cast<int>(i);
    }
    return -1;
}

bool same_structure(const SystemModel& a, const SystemModel& b) {
    if (a.enums.size() != b.enums.size() || a.channels.size() != b.channels.size()) return false;
    for (std::size_t i = 0; i < a.enums.size(); ++i) {
        if (a.enums[i].name != b.enums[i].name || a.enums[i].constants != b.enums[i].constants) return false;
    }
    for (std::size_t i = 0; i < a.channels.size(); ++i) {
        if (a.channels[i].name != b.channels[i].name) return false;
    }
    if (!same_vars(a.dataVars, b.dataVars) || !same_vars(a.commonVars, b.commonVars)) return false;
    if (a.agents.size() != b.agents.size() || a.instances.size() != b.instances.size()) return false;
    for (std::size_t i = 0; i < a.agents.size(); ++i) {
        const auto& x = a.agents[i];
        const auto& y = b.agents[i];
        if (x.name != y.name || !same_vars(x.locals, y.locals) || !same_structure(x.init, y.init) ||
            !same_assignments(x.relabel, y.relabel) || !same_structure(x.receiveGuard, y.receiveGuard) ||
            !same_process(x.process, y.process) || x.commands.size() != y.commands.size()) {
            return false;
        }
        for (std::size_t c = 0; c < x.commands.size(); ++c) {
            const auto& p = x.commands[c];
            const auto& q = y.commands[c];
            if (p.label != q.label || p.kind != q.kind || !same_structure(p.pre, q.pre) ||
                !same_structure(p.channel, q.channel) || !same_structure(p.senderPred, q.senderPred) ||
                !same_assignments(p.data, q.data) || !same_assignments(p.update, q.update)) {
                return false;
            }
        }
    }
    for (std::size_t i = 0; i < a.instances.size(); ++i) {
        const auto& x = a.instances[i];
        const auto& y = b.instances[i];
        if (x.typeName != y.typeName || x.id != y.id || !same_structure(x.extraInit, y.extraInit)) return false;
    }
    return true;
}

std::string to_string(const Value& v, const SystemModel& model) {
    switch (v.kind) {
    case ValueKind::Undef: return "undef";
    case ValueKind::Bool: return v.v ? "TRUE" : "FALSE";
    case ValueKind::Int: return std::to_string(v.v);
    case ValueKind::Enum:
        if (v.v >= 0 && static_cast<std::size_t>(v.v) < model.enumConstants.size()) {
            return model.enumConstants[static_cast<std::size_t>(v.v)].first;
        }
        return "enum#" + std::to_string(v.v);
    case ValueKind::Chan:
        if (v.v == kChanStar) return "*";
        if (v.v == kChanEmpty) return "empty";
        if (v.v >= 0 && static_cast<std::size_t>(v.v) < model.channels.size()) {
            return model.channels[static_cast<std::size_t>(v.v)].name;
        }
        return "chan#" + std::to_string(v.v);
    }
    return "?";
}

std::string to_string(const Type& t) {
    switch (t.kind) {
    case TypeKind::Unknown: return "?";
    case TypeKind::Bool: return "bool";
    case TypeKind::Int: return "int[" + std::to_string(t.lo) + ".." + std::to_string(t.hi) + "]";
    case TypeKind::Enum: return t.enumName;
    case TypeKind::Chan: return "channel";
    case TypeKind::Undef: return "undef";
    }
    return "?";
}

std::vector<Value> domain_of(const Type& t, const SystemModel& model, bool withUndef) {
    std::vector<Value> out;
    switch (t.kind) {
    case TypeKind::Bool:
        out = {Value::boolean(false), Value::boolean(true)};
        break;
    case TypeKind::Int:
        for (int n = t.lo; n <= t.hi; ++n) out.push_back(Value::integer(n));
        break;
    case TypeKind::Enum:
        for (std::size_t i = 0; i < model.enumConstants.size(); ++i) {
            if (model.enumConstants[i].second == t.enumId) out.push_back(Value::enumConst(static_cast<int>(i)));
        }
        out.push_back(Value::undef());
        return out;
    case TypeKind::Chan:
        for (std::size_t i = 0; i < model.channels.size(); ++i) out.push_back(Value::channel(static_cast<int>(i)));
        out.push_back(Value::star());
        out.push_back(Value::empty());
        break;
    case TypeKind::Undef:
    case TypeKind::Unknown:
        break;
    }
    if (withUndef) out.push_back(Value::undef());
    return out;
}

bool in_domain(const Value& v, const Type& t, const SystemModel& model, bool withUndef) {
    if (v.kind == ValueKind::Undef) return withUndef || t.kind == TypeKind::Enum;
    switch (t.kind) {
    case TypeKind::Bool: return v.kind == ValueKind::Bool;
    case TypeKind::Int: return v.kind == ValueKind::Int && v.v >= t.lo && v.v <= t.hi;
    case TypeKind::Enum:
        return v.kind == ValueKind::Enum && v.v >= 0 && static_cast<std::size_t>(v.v) < model.enumConstants.size() &&
               model.enumConstants[static_cast<std::size_t>(v.v)].second == t.enumId;
    case TypeKind::Chan:
        return v.kind == ValueKind::Chan && v.v >= kChanStar && v.v < static_cast<int>(model.channels.size());
    default: return false;
    }
}

} // namespace rcheck
