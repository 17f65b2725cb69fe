#include "rcheck/parser.hpp"

#include <set>
#include <sstream>

namespace rcheck {

namespace {
constexpr int kMaxNesting = 200;
}

// ---------------------------------------------------------------------------
// TokenCursor

TokenCursor::TokenCursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
    if (tokens_.empty() || tokens_.back().kind != TokenKind::End) {
        Token end;
        end.kind = TokenKind::End;
        if (!tokens_.empty()) end.pos = tokens_.back().pos;
        tokens_.push_back(end);
    }
}

const Token& TokenCursor::peek(std::size_t k) const {
    std::size_t i = pos_ + k;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
}

const Token& TokenCursor::next() {
    const Token& t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
}

bool TokenCursor::accept(TokenKind kind) {
    if (!at(kind)) return false;
    next();
    return true;
}

const Token& TokenCursor::expect(TokenKind kind, std::string_view what) {
    if (!at(kind)) fail({what.empty() ? to_string(kind) : std::string(what)});
    return next();
}

void TokenCursor::fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == TokenKind::End ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorCode::SyntaxError, "unexpected " + found, t.pos, std::move(expected));
}

void TokenCursor::enter() {
    if (++depth_ > kMaxNesting) {
        throw Error(ErrorCode::SyntaxError, "nesting too deep", peek().pos);
    }
}

// ---------------------------------------------------------------------------
// Expressions

namespace {

struct DepthGuard {
    explicit DepthGuard(TokenCursor& c) : cur(c) { cur.enter(); }
    ~DepthGuard() { cur.leave(); }
    TokenCursor& cur;
};

class ExprParser {
public:
    ExprParser(TokenCursor& cur, ExprOptions opts) : cur_(cur), opts_(opts) {}

    ExprPtr parse() { return opts_.comparisonOnly ? comparison() : implies(); }

private:
    ExprPtr implies() {
        DepthGuard g(cur_);
        ExprPtr lhs = disj();
        if (cur_.at(TokenKind::Arrow)) {
            SourcePos pos = cur_.next().pos;
            ExprPtr rhs = implies();
            return make_binary(ExprKind::Implies, lhs, rhs, pos);
        }
        return lhs;
    }

    ExprPtr disj() {
        ExprPtr lhs = conj();
        while (cur_.at(TokenKind::OrOr) || cur_.at(TokenKind::Pipe)) {
            SourcePos pos = cur_.next().pos;
            lhs = make_binary(ExprKind::Or, lhs, conj(), pos);
        }
        return lhs;
    }

    ExprPtr conj() {
        ExprPtr lhs = comparison();
        while (cur_.at(TokenKind::AndAnd) || cur_.at(TokenKind::Amp)) {
            SourcePos pos = cur_.next().pos;
            lhs = make_binary(ExprKind::And, lhs, comparison(), pos);
        }
        return lhs;
    }

    std::optional<ExprKind> comparison_op() const {
        switch (cur_.peek().kind) {
        case TokenKind::EqEq: return ExprKind::Eq;
        case TokenKind::NotEq: return ExprKind::Ne;
        case TokenKind::LAngle: return ExprKind::Lt;
        case TokenKind::LessEq: return ExprKind::Le;
        case TokenKind::GreaterEq: return ExprKind::Ge;
        case TokenKind::RAngle:
            if (opts_.noGreater) return std::nullopt;
            return ExprKind::Gt;
        default: return std::nullopt;
        }
    }

    ExprPtr comparison() {
        ExprPtr lhs = additive();
        if (auto op = comparison_op()) {
            SourcePos pos = cur_.next().pos;
            ExprPtr rhs = additive();
            return make_binary(*op, lhs, rhs, pos);
        }
        return lhs;
    }

    ExprPtr additive() {
        ExprPtr lhs = unary();
        while (cur_.at(TokenKind::Plus) || cur_.at(TokenKind::Minus)) {
            const Token& t = cur_.next();
            ExprKind k = t.kind == TokenKind::Plus ? ExprKind::Add : ExprKind::Sub;
            lhs = make_binary(k, lhs, unary(), t.pos);
        }
        return lhs;
    }

    ExprPtr unary() {
        DepthGuard g(cur_);
        if (cur_.at(TokenKind::Bang)) {
            SourcePos pos = cur_.next().pos;
            return make_unary(ExprKind::Not, unary(), pos);
        }
        if (cur_.at(TokenKind::Minus)) {
            SourcePos pos = cur_.next().pos;
            if (cur_.at(TokenKind::Int)) {
                const Token& t = cur_.next();
                return make_const(Value::integer(static_cast<std::int32_t>(-t.number)), pos);
            }
            return make_unary(ExprKind::Neg, unary(), pos);
        }
        return primary();
    }

    ExprPtr primary() {
        const Token& t = cur_.peek();
        switch (t.kind) {
        case TokenKind::LParen: {
            cur_.next();
            ExprOptions inner = opts_;
            inner.noGreater = false;
            inner.comparisonOnly = false;
            ExprPtr e = ExprParser(cur_, inner).parse();
            cur_.expect(TokenKind::RParen);
            return e;
        }
        case TokenKind::KwTrue: cur_.next(); return make_const(Value::boolean(true), t.pos);
        case TokenKind::KwFalse: cur_.next(); return make_const(Value::boolean(false), t.pos);
        case TokenKind::Int: {
            cur_.next();
            return make_const(Value::integer(static_cast<std::int32_t>(t.number)), t.pos);
        }
        case TokenKind::Star: cur_.next(); return make_const(Value::star(), t.pos);
        case TokenKind::KwEmpty: cur_.next(); return make_const(Value::empty(), t.pos);
        case TokenKind::KwUndef: cur_.next(); return make_const(Value::undef(), t.pos);
        case TokenKind::Ident: {
            cur_.next();
            return make_name(t.text, t.pos);
        }
        case TokenKind::QualifiedIdent: {
            cur_.next();
            return qualified(t, false);
        }
        case TokenKind::KwNext: {
            if (!opts_.allowNext) break;
            cur_.next();
            cur_.expect(TokenKind::LParen);
            const Token& n = cur_.peek();
            ExprPtr e;
            if (n.kind == TokenKind::QualifiedIdent) {
                cur_.next();
                e = qualified(n, true);
            } else {
                cur_.fail({"instance-qualified variable"});
            }
            cur_.expect(TokenKind::RParen);
            return e;
        }
        default: break;
        }
        cur_.fail({"expression"});
    }

    static ExprPtr qualified(const Token& t, bool next) {
        auto dash = t.text.find('-');
        return make_name(t.text.substr(dash + 1), t.pos, t.text.substr(0, dash), next);
    }

    TokenCursor& cur_;
    ExprOptions opts_;
};

} // namespace

ExprPtr parse_expr(TokenCursor& cur, ExprOptions options) { return ExprParser(cur, options).parse(); }

ExprPtr parse_standalone_expr(std::string_view text, ExprOptions options) {
    TokenCursor cur(tokenize(text, LexOptions{.qualifiedNames = true}));
    ExprPtr e = parse_expr(cur, options);
    if (!cur.at(TokenKind::End)) cur.fail({"end of expression"});
    return e;
}

// ---------------------------------------------------------------------------
// Model

namespace {

const std::set<std::string, std::less<>> kReservedNames{"star", "empty", "undef", "ch", "st"};

class ModelParser {
public:
    explicit ModelParser(std::string_view src) : cur_(tokenize(src)) {}

    SystemModel run() {
        header();
        while (cur_.at(TokenKind::KwAgent)) agent();
        system();
        if (!cur_.at(TokenKind::End)) cur_.fail({"end of input"});
        return std::move(model_);
    }

private:
    const Token& declared_name(std::string_view what) {
        const Token& t = cur_.peek();
        if (t.kind == TokenKind::KwEmpty || t.kind == TokenKind::KwUndef ||
            (t.kind == TokenKind::Ident && kReservedNames.count(t.text))) {
            throw Error(ErrorCode::ReservedName, "'" + t.text + "' is reserved and cannot be declared", t.pos);
        }
        return cur_.expect(TokenKind::Ident, what);
    }

    void unique(std::set<std::string>& seen, const Token& t, std::string_view what) {
        if (!seen.insert(t.text).second) {
            throw Error(ErrorCode::DuplicateDeclaration, std::string(what) + " '" + t.text + "' declared twice", t.pos);
        }
    }

    void header() {
        cur_.expect(TokenKind::KwEnums);
        cur_.expect(TokenKind::Colon);
        while (cur_.at(TokenKind::Ident) || cur_.at(TokenKind::KwEmpty) || cur_.at(TokenKind::KwUndef)) {
            EnumDecl decl;
            const Token& n = declared_name("enum name");
            unique(globals_, n, "name");
            decl.name = n.text;
            decl.pos = n.pos;
            cur_.expect(TokenKind::Equals);
            cur_.expect(TokenKind::LBrace);
            do {
                const Token& c = declared_name("enum constant");
                unique(globals_, c, "name");
                decl.constants.push_back(c.text);
                model_.enumConstants.emplace_back(c.text, static_cast<int>(model_.enums.size()));
            } while (cur_.accept(TokenKind::Comma));
            cur_.expect(TokenKind::RBrace);
            cur_.accept(TokenKind::Comma);
            model_.enums.push_back(std::move(decl));
        }

        cur_.expect(TokenKind::KwChannels);
        cur_.expect(TokenKind::Colon);
        if (!cur_.at(TokenKind::KwMessageStructure)) {
            do {
                const Token& c = declared_name("channel name");
                unique(globals_, c, "name");
                model_.channels.push_back({c.text, c.pos});
            } while (cur_.accept(TokenKind::Comma));
        }

        cur_.expect(TokenKind::KwMessageStructure);
        cur_.expect(TokenKind::Colon);
        if (!cur_.at(TokenKind::KwCommunicationVariables)) model_.dataVars = var_decls(globals_);

        cur_.expect(TokenKind::KwCommunicationVariables);
        cur_.expect(TokenKind::Colon);
        if (cur_.at(TokenKind::Ident)) model_.commonVars = var_decls(globals_);
    }

    Type type() {
        const Token& t = cur_.peek();
        switch (t.kind) {
        case TokenKind::KwBool: cur_.next(); return Type::boolean();
        case TokenKind::KwChannel: cur_.next(); return Type::channel();
        case TokenKind::KwInt: {
            cur_.next();
            cur_.expect(TokenKind::LBracket);
            int lo = bound();
            cur_.expect(TokenKind::DotDot);
            int hi = bound();
            cur_.expect(TokenKind::RBracket);
            if (lo > hi) throw Error(ErrorCode::TypeMismatch, "empty integer range", t.pos);
            if (static_cast<long long>(hi) - lo > 4096) {
                throw Error(ErrorCode::UnsupportedDomain, "integer range too large", t.pos);
            }
            return Type::integer(lo, hi);
        }
        case TokenKind::Ident: cur_.next(); return Type::enumeration(t.text);
        default: cur_.fail({"type"});
        }
    }

    int bound() {
        bool neg = cur_.accept(TokenKind::Minus);
        const Token& n = cur_.expect(TokenKind::Int, "integer bound");
        return static_cast<int>(neg ? -n.number : n.number);
    }

    std::vector<VarDecl> var_decls(std::set<std::string>& seen) {
        std::vector<VarDecl> out;
        do {
            const Token& n = declared_name("variable name");
            unique(seen, n, "variable");
            cur_.expect(TokenKind::Colon);
            out.push_back({n.text, type(), n.pos});
        } while (cur_.accept(TokenKind::Comma));
        return out;
    }

    void agent() {
        AgentDef def;
        def.pos = cur_.expect(TokenKind::KwAgent).pos;
        const Token& n = declared_name("agent name");
        for (const auto& a : model_.agents) {
            if (a.name == n.text) throw Error(ErrorCode::DuplicateDeclaration, "agent '" + n.text + "' declared twice", n.pos);
        }
        def.name = n.text;

        cur_.expect(TokenKind::KwLocal);
        cur_.expect(TokenKind::Colon);
        std::set<std::string> locals;
        if (cur_.at(TokenKind::Ident)) def.locals = var_decls(locals);

        cur_.expect(TokenKind::KwInit);
        cur_.expect(TokenKind::Colon);
        def.init = parse_expr(cur_);

        cur_.expect(TokenKind::KwRelabel);
        cur_.expect(TokenKind::Colon);
        std::set<std::string> relabelled;
        while (cur_.at(TokenKind::Ident)) {
            const Token& cv = cur_.next();
            unique(relabelled, cv, "relabel of");
            cur_.expect(TokenKind::LeftArrow);
            def.relabel.push_back({cv.text, -1, parse_expr(cur_), cv.pos});
            cur_.accept(TokenKind::Comma);
        }

        cur_.expect(TokenKind::KwReceiveGuard);
        cur_.expect(TokenKind::Colon);
        def.receiveGuard = parse_expr(cur_);

        cur_.expect(TokenKind::KwRepeat);
        cur_.expect(TokenKind::Colon);
        agent_ = &def;
        def.process = process();
        agent_ = nullptr;

        // Synthetic labels: <agent>_cmd<k>, k = 1-based source position.
        std::set<std::string> labels;
        for (auto& c : def.commands) {
            if (!c.syntheticLabel && !labels.insert(c.label).second) {
                throw Error(ErrorCode::DuplicateDeclaration, "label '" + c.label + "' used twice in agent " + def.name, c.pos);
            }
        }
        for (std::size_t k = 0; k < def.commands.size(); ++k) {
            auto& c = def.commands[k];
            if (!c.syntheticLabel) continue;
            c.label = def.name + "_cmd" + std::to_string(k + 1);
            if (!labels.insert(c.label).second) {
                throw Error(ErrorCode::DuplicateDeclaration, "label '" + c.label + "' collides with a generated label", c.pos);
            }
        }
        model_.agents.push_back(std::move(def));
    }

    ProcessPtr process() {
        DepthGuard g(cur_);
        ProcessPtr lhs = sequence();
        if (cur_.at(TokenKind::Plus)) {
            SourcePos pos = cur_.next().pos;
            auto p = std::make_shared<Process>();
            p->kind = Process::Kind::Choice;
            p->left = lhs;
            p->right = process();
            p->pos = pos;
            return p;
        }
        return lhs;
    }

    ProcessPtr sequence() {
        DepthGuard g(cur_);
        ProcessPtr lhs = term();
        if (cur_.at(TokenKind::Semicolon)) {
            SourcePos pos = cur_.next().pos;
            auto p = std::make_shared<Process>();
            p->kind = Process::Kind::Seq;
            p->left = lhs;
            p->right = sequence();
            p->pos = pos;
            return p;
        }
        return lhs;
    }

    ProcessPtr term() {
        DepthGuard g(cur_);
        const Token& t = cur_.peek();
        if (t.kind == TokenKind::LParen) {
            cur_.next();
            ProcessPtr p = process();
            cur_.expect(TokenKind::RParen);
            return p;
        }
        if (t.kind == TokenKind::KwRep) {
            cur_.next();
            auto p = std::make_shared<Process>();
            p->kind = Process::Kind::Rep;
            p->left = term();
            p->pos = t.pos;
            return p;
        }
        if (t.kind == TokenKind::LAngle || (t.kind == TokenKind::Ident && cur_.peek(1).kind == TokenKind::Colon)) {
            auto p = std::make_shared<Process>();
            p->kind = Process::Kind::Cmd;
            p->pos = t.pos;
            p->command = command();
            return p;
        }
        cur_.fail({"'('", "'rep'", "command"});
    }

    std::vector<Assignment> assignments(TokenKind close) {
        std::vector<Assignment> out;
        std::set<std::string> seen;
        if (cur_.at(close)) return out;
        do {
            const Token& n = cur_.expect(TokenKind::Ident, "variable");
            unique(seen, n, "assignment to");
            cur_.expect(TokenKind::Assign);
            out.push_back({n.text, -1, parse_expr(cur_), n.pos});
        } while (cur_.accept(TokenKind::Comma));
        return out;
    }

    int command() {
        Command c;
        c.pos = cur_.peek().pos;
        if (cur_.at(TokenKind::Ident)) {
            c.label = cur_.next().text;
            cur_.expect(TokenKind::Colon);
        } else {
            c.syntheticLabel = true;
        }
        cur_.expect(TokenKind::LAngle);
        c.pre = parse_expr(cur_, ExprOptions{.noGreater = true});
        cur_.expect(TokenKind::RAngle);

        const Token& ch = cur_.peek();
        if (ch.kind == TokenKind::Star) {
            cur_.next();
            c.channel = make_const(Value::star(), ch.pos);
        } else if (ch.kind == TokenKind::Ident) {
            cur_.next();
            c.channel = make_name(ch.text, ch.pos);
        } else {
            cur_.fail({"'*'", "channel"});
        }

        if (cur_.accept(TokenKind::Bang)) {
            c.kind = CommandKind::Send;
            cur_.expect(TokenKind::LParen);
            c.senderPred = parse_expr(cur_);
            cur_.expect(TokenKind::RParen);
            cur_.expect(TokenKind::LParen);
            c.data = assignments(TokenKind::RParen);
            cur_.expect(TokenKind::RParen);
        } else if (cur_.accept(TokenKind::Question)) {
            c.kind = CommandKind::Receive;
        } else {
            cur_.fail({"'!'", "'?'"});
        }
        cur_.expect(TokenKind::LBracket);
        c.update = assignments(TokenKind::RBracket);
        cur_.expect(TokenKind::RBracket);

        agent_->commands.push_back(std::move(c));
        return static_cast<int>(agent_->commands.size() - 1);
    }

    void system() {
        cur_.expect(TokenKind::KwSystem);
        cur_.expect(TokenKind::Equals);
        do {
            Instance inst;
            const Token& type = cur_.expect(TokenKind::Ident, "agent type");
            inst.typeName = type.text;
            inst.pos = type.pos;
            cur_.expect(TokenKind::LParen);
            const Token& id = declared_name("instance id");
            inst.id = id.text;
            cur_.expect(TokenKind::Comma);
            inst.extraInit = parse_expr(cur_);
            cur_.expect(TokenKind::RParen);
            inst.agent = model_.findAgent(inst.typeName);
            if (inst.agent < 0) {
                throw Error(ErrorCode::UnknownAgentType, "unknown agent type '" + inst.typeName + "'", type.pos);
            }
            if (model_.findInstance(inst.id) >= 0) {
                throw Error(ErrorCode::DuplicateInstanceId, "instance id '" + inst.id + "' used twice", id.pos);
            }
            model_.instances.push_back(std::move(inst));
        } while (cur_.accept(TokenKind::OrOr));
    }

    TokenCursor cur_;
    SystemModel model_;
    AgentDef* agent_ = nullptr;
    std::set<std::string> globals_;
};

} // namespace

SystemModel parse_model(std::string_view source) { return ModelParser(source).run(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

const char* op_text(ExprKind k) {
    switch (k) {
    case ExprKind::And: return " && ";
    case ExprKind::Or: return " || ";
    case ExprKind::Implies: return " -> ";
    case ExprKind::Eq: return " == ";
    case ExprKind::Ne: return " != ";
    case ExprKind::Lt: return " < ";
    case ExprKind::Le: return " <= ";
    case ExprKind::Gt: return " > ";
    case ExprKind::Ge: return " >= ";
    case ExprKind::Add: return " + ";
    case ExprKind::Sub: return " - ";
    default: return " ? ";
    }
}

bool is_binary(const ExprPtr& e) { return e->args.size() == 2; }

void print_to(std::ostream& out, const ExprPtr& e, const SystemModel* model) {
    switch (e->kind) {
    case ExprKind::Const:
        if (!e->name.empty()) {
            out << e->name;
        } else if (e->value.kind == ValueKind::Chan && e->value.v == kChanStar) {
            out << "*";
        } else if (model) {
            out << to_string(e->value, *model);
        } else if (e->value.kind == ValueKind::Enum || (e->value.kind == ValueKind::Chan && e->value.v >= 0)) {
            out << (e->value.kind == ValueKind::Enum ? "enum#" : "chan#") << e->value.v;
        } else {
            out << to_string(e->value, SystemModel{});
        }
        return;
    case ExprKind::Name:
        if (e->next) out << "next(";
        if (!e->qualifier.empty()) out << e->qualifier << "-";
        out << e->name;
        if (e->next) out << ")";
        return;
    case ExprKind::Var:
        if (e->var.scope == VarScope::Global && e->var.primed) {
            out << "next(" << e->name << ")";
        } else {
            out << e->name << (e->var.primed ? "'" : "");
        }
        return;
    case ExprKind::Label:
        out << e->name;
        return;
    case ExprKind::Not:
    case ExprKind::Neg:
        out << (e->kind == ExprKind::Not ? "!" : "-");
        if (is_binary(e->args[0]) || e->args[0]->kind == ExprKind::Clamp) {
            out << "(";
            print_to(out, e->args[0], model);
            out << ")";
        } else {
            print_to(out, e->args[0], model);
        }
        return;
    case ExprKind::Clamp:
        out << "clamp(";
        print_to(out, e->args[0], model);
        out << ", " << e->lo << ", " << e->hi << ")";
        return;
    default: break;
    }
    for (std::size_t i = 0; i < 2; ++i) {
        const auto& a = e->args[i];
        bool paren = is_binary(a);
        if (paren) out << "(";
        print_to(out, a, model);
        if (paren) out << ")";
        if (i == 0) out << op_text(e->kind);
    }
}

void print_assignments(std::ostream& out, const std::vector<Assignment>& as) {
    for (std::size_t i = 0; i < as.size(); ++i) {
        if (i) out << ", ";
        out << as[i].target << " := " << print_expr(as[i].value);
    }
}

void print_process_to(std::ostream& out, const ProcessPtr& p, const AgentDef& agent, int indent) {
    auto pad = [&](int n) { return std::string(static_cast<std::size_t>(n) * 2, ' '); };
    using K = Process::Kind;
    auto wrapped = [&](const ProcessPtr& child, bool paren) {
        if (paren) {
            out << "(\n" << pad(indent + 1);
            print_process_to(out, child, agent, indent + 1);
            out << "\n" << pad(indent) << ")";
        } else {
            print_process_to(out, child, agent, indent);
        }
    };
    switch (p->kind) {
    case K::Cmd: out << print_command(agent.commands[static_cast<std::size_t>(p->command)]); return;
    case K::Rep:
        out << "rep ";
        wrapped(p->left, p->left->kind != K::Cmd);
        return;
    case K::Seq:
        wrapped(p->left, p->left->kind == K::Seq || p->left->kind == K::Choice);
        out << ";\n" << pad(indent);
        wrapped(p->right, p->right->kind == K::Choice);
        return;
    case K::Choice:
        wrapped(p->left, p->left->kind == K::Choice);
        out << "\n" << pad(indent) << "+\n" << pad(indent);
        wrapped(p->right, false);
        return;
    }
}

void print_vars(std::ostream& out, const std::vector<VarDecl>& vars) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) out << ", ";
        out << vars[i].name << " : " << to_string(vars[i].type);
    }
}

} // namespace

std::string print_expr(const ExprPtr& e, const SystemModel* model) {
    std::ostringstream out;
    print_to(out, e, model);
    return out.str();
}

std::string print_command(const Command& c, bool withLabel) {
    std::ostringstream out;
    if (withLabel && !c.syntheticLabel) out << c.label << ": ";
    std::string pre = print_expr(c.pre);
    // '>' would close the guard early
    if (pre.find('>') != std::string::npos) pre = "(" + pre + ")";
    out << "<" << pre << "> " << print_expr(c.channel);
    if (c.kind == CommandKind::Send) {
        out << "! (" << print_expr(c.senderPred) << ")(";
        print_assignments(out, c.data);
        out << ")[";
    } else {
        out << "? [";
    }
    print_assignments(out, c.update);
    out << "]";
    return out.str();
}

std::string print_process(const ProcessPtr& p, const AgentDef& agent) {
    std::ostringstream out;
    print_process_to(out, p, agent, 0);
    return out.str();
}

std::string print_model(const SystemModel& model) {
    std::ostringstream out;
    out << "enums:\n";
    for (const auto& e : model.enums) {
        out << "  " << e.name << " = {";
        for (std::size_t i = 0; i < e.constants.size(); ++i) out << (i ? ", " : "") << e.constants[i];
        out << "}\n";
    }
    out << "channels: ";
    for (std::size_t i = 0; i < model.channels.size(); ++i) out << (i ? ", " : "") << model.channels[i].name;
    out << "\nmessage-structure: ";
    print_vars(out, model.dataVars);
    out << "\ncommunication-variables: ";
    print_vars(out, model.commonVars);
    out << "\n";
    for (const auto& a : model.agents) {
        out << "\nagent " << a.name << "\n  local: ";
        print_vars(out, a.locals);
        out << "\n  init: " << print_expr(a.init) << "\n  relabel:\n";
        for (const auto& r : a.relabel) out << "    " << r.target << " <- " << print_expr(r.value) << "\n";
        out << "  receive-guard: " << print_expr(a.receiveGuard) << "\n  repeat: (\n    ";
        std::ostringstream body;
        print_process_to(body, a.process, a, 2);
        out << body.str() << "\n  )\n";
    }
    out << "\nsystem = ";
    for (std::size_t i = 0; i < model.instances.size(); ++i) {
        const auto& inst = model.instances[i];
        if (i) out << "\n  || ";
        out << inst.typeName << "(" << inst.id << ", " << print_expr(inst.extraInit) << ")";
    }
    out << "\n";
    return out.str();
}

} // namespace rcheck
