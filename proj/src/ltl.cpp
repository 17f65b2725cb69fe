#include "rcheck/ltl.hpp"

#include "rcheck/parser.hpp"
#include "rcheck/typecheck.hpp"

#include <map>
#include <regex>
#include <sstream>

namespace rcheck {

LtlPtr ltl_const(bool b) {
    auto n = std::make_shared<LtlNode>();
    n->op = b ? LtlOp::True : LtlOp::False;
    return n;
}

LtlPtr ltl_atom(int index) {
    auto n = std::make_shared<LtlNode>();
    n->op = LtlOp::Atom;
    n->atom = index;
    return n;
}

LtlPtr ltl_unary(LtlOp op, LtlPtr a) {
    auto n = std::make_shared<LtlNode>();
    n->op = op;
    n->lhs = std::move(a);
    return n;
}

LtlPtr ltl_binary(LtlOp op, LtlPtr a, LtlPtr b) {
    auto n = std::make_shared<LtlNode>();
    n->op = op;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

namespace {

bool is_temporal(const Token& t, const char* op) { return t.kind == TokenKind::Ident && t.text == op; }

bool is_comparison_or_arith(TokenKind k) {
    switch (k) {
    case TokenKind::EqEq:
    case TokenKind::NotEq:
    case TokenKind::LAngle:
    case TokenKind::RAngle:
    case TokenKind::LessEq:
    case TokenKind::GreaterEq:
    case TokenKind::Plus:
    case TokenKind::Minus:
        return true;
    default:
        return false;
    }
}

struct DepthGuard {
    explicit DepthGuard(TokenCursor& c) : cur(c) { cur.enter(); }
    ~DepthGuard() { cur.leave(); }
    TokenCursor& cur;
};

class LtlParser {
public:
    LtlParser(TokenCursor& cur, const CompiledSystem* sys) : cur_(cur), sys_(sys) {}

    LtlFormula run() {
        LtlFormula f;
        f.root = implies();
        if (!cur_.at(TokenKind::End)) cur_.fail({"end of formula"});
        f.atoms = std::move(atoms_);
        return f;
    }

private:
    LtlPtr implies() {
        DepthGuard g(cur_);
        LtlPtr lhs = disj();
        if (cur_.accept(TokenKind::Arrow)) return ltl_binary(LtlOp::Implies, lhs, implies());
        return lhs;
    }

    LtlPtr disj() {
        LtlPtr lhs = conj();
        while (cur_.accept(TokenKind::Pipe) || cur_.accept(TokenKind::OrOr)) lhs = ltl_binary(LtlOp::Or, lhs, conj());
        return lhs;
    }

    LtlPtr conj() {
        LtlPtr lhs = until();
        while (cur_.accept(TokenKind::Amp) || cur_.accept(TokenKind::AndAnd)) lhs = ltl_binary(LtlOp::And, lhs, until());
        return lhs;
    }

    LtlPtr until() {
        DepthGuard g(cur_);
        LtlPtr lhs = unary();
        if (is_temporal(cur_.peek(), "U")) {
            cur_.next();
            return ltl_binary(LtlOp::Until, lhs, until());
        }
        return lhs;
    }

    LtlPtr unary() {
        DepthGuard g(cur_);
        const Token& t = cur_.peek();
        if (t.kind == TokenKind::Bang) {
            cur_.next();
            return ltl_unary(LtlOp::Not, unary());
        }
        // X/F/G only act as operators when something follows that can start a formula.
        static const std::pair<const char*, LtlOp> ops[] = {
            {"X", LtlOp::Next}, {"F", LtlOp::Finally}, {"G", LtlOp::Globally}};
        for (const auto& [name, op] : ops) {
            if (is_temporal(t, name) && starts_formula(cur_.peek(1))) {
                cur_.next();
                return ltl_unary(op, unary());
            }
        }
        return atomic();
    }

    static bool starts_formula(const Token& t) {
        switch (t.kind) {
        case TokenKind::LParen:
        case TokenKind::Bang:
        case TokenKind::Ident:
        case TokenKind::QualifiedIdent:
        case TokenKind::KwTrue:
        case TokenKind::KwFalse:
        case TokenKind::Int:
            return true;
        default:
            return false;
        }
    }

    // Whether the parenthesis at the cursor closes before a comparison,
    // i.e. it is part of an arithmetic atom rather than a subformula.
    bool paren_is_arith() const {
        int depth = 0;
        for (std::size_t k = 0;; ++k) {
            const Token& t = cur_.peek(k);
            if (t.kind == TokenKind::End) return false;
            if (t.kind == TokenKind::LParen) ++depth;
            if (t.kind == TokenKind::RParen && --depth == 0) return is_comparison_or_arith(cur_.peek(k + 1).kind);
        }
    }

    LtlPtr atomic() {
        if (cur_.at(TokenKind::LParen) && !paren_is_arith()) {
            cur_.next();
            LtlPtr inner = implies();
            cur_.expect(TokenKind::RParen);
            return inner;
        }
        SourcePos pos = cur_.peek().pos;
        if (!starts_formula(cur_.peek())) cur_.fail({"formula"});
        ExprOptions opts;
        opts.comparisonOnly = true;
        ExprPtr leaf = parse_expr(cur_, opts);
        if (leaf->kind == ExprKind::Const && leaf->value.kind == ValueKind::Bool) return ltl_const(leaf->value.isTrue());
        return ltl_atom(intern(leaf, pos));
    }

    int intern(const ExprPtr& leaf, SourcePos pos) {
        LtlAtom atom;
        atom.text = print_expr(leaf);
        auto it = index_.find(atom.text);
        if (it != index_.end()) return it->second;
        if (sys_) {
            resolve(atom, leaf, pos);
        } else if (leaf->kind != ExprKind::Name || !leaf->qualifier.empty()) {
            throw Error(ErrorCode::SyntaxError, "abstract formulas take plain identifiers as atoms", pos);
        }
        int id = static_cast<int>(atoms_.size());
        if (id >= 64) throw Error(ErrorCode::SyntaxError, "too many distinct atoms (limit 64)", pos);
        atoms_.push_back(std::move(atom));
        index_.emplace(atoms_.back().text, id);
        return id;
    }

    ExprPtr lookup(const Expr& n) const {
        if (n.qualifier.empty()) return nullptr;
        if (n.next) throw Error(ErrorCode::UnknownVariable, "next() is not allowed in formulas", n.pos);
        int g = sys_->findGlobal(n.qualifier, n.name);
        if (g >= 0) {
            const auto& decl = sys_->globals[static_cast<std::size_t>(g)];
            return make_var({VarScope::Global, g}, decl.name, decl.type, n.pos);
        }
        LabelRef l = sys_->findLabel(n.qualifier, n.name);
        if (l.command >= 0) {
            auto e = std::make_shared<Expr>(*make_label(l.instance, l.command, n.qualifier + "-" + n.name, n.pos));
            e->type = Type::boolean();
            return e;
        }
        return nullptr;
    }

    void resolve(LtlAtom& atom, const ExprPtr& leaf, SourcePos pos) {
        NameLookup f = [this](const Expr& n) { return lookup(n); };
        if (leaf->kind == ExprKind::Name) {
            ExprPtr r = lookup(*leaf);
            if (!r) {
                throw Error(ErrorCode::UnknownLabel, "unknown label or variable '" + atom.text + "'", pos);
            }
            if (r->kind == ExprKind::Label) atom.label = LabelRef{r->instance, r->command};
            if (r->type.kind != TypeKind::Bool) {
                throw Error(ErrorCode::TypeMismatch, "atom '" + atom.text + "' is not boolean", pos);
            }
            atom.expr = r;
            return;
        }
        atom.expr = resolve_bool(leaf, sys_->model, f, ErrorCode::UnknownVariable);
    }

    TokenCursor& cur_;
    const CompiledSystem* sys_;
    std::vector<LtlAtom> atoms_;
    std::map<std::string, int> index_;
};

LtlFormula parse_with(std::string_view text, const CompiledSystem* sys) {
    LexOptions lo;
    lo.qualifiedNames = true;
    TokenCursor cur(tokenize(text, lo));
    return LtlParser(cur, sys).run();
}

void print_rec(std::ostream& out, const LtlPtr& n, const std::vector<LtlAtom>& atoms, bool nested) {
    auto sub = [&](const LtlPtr& c) { print_rec(out, c, atoms, true); };
    auto bin = [&](const char* op) {
        if (nested) out << "(";
        sub(n->lhs);
        out << " " << op << " ";
        sub(n->rhs);
        if (nested) out << ")";
    };
    switch (n->op) {
    case LtlOp::True: out << "TRUE"; break;
    case LtlOp::False: out << "FALSE"; break;
    case LtlOp::Atom: {
        const auto& t = atoms[static_cast<std::size_t>(n->atom)].text;
        bool compound = t.find(' ') != std::string::npos;
        out << (compound ? "(" : "") << t << (compound ? ")" : "");
        break;
    }
    case LtlOp::Not: out << "!"; sub(n->lhs); break;
    case LtlOp::Next: out << "X "; sub(n->lhs); break;
    case LtlOp::Finally: out << "F "; sub(n->lhs); break;
    case LtlOp::Globally: out << "G "; sub(n->lhs); break;
    case LtlOp::And: bin("&"); break;
    case LtlOp::Or: bin("|"); break;
    case LtlOp::Implies: bin("->"); break;
    case LtlOp::Until: bin("U"); break;
    case LtlOp::Release: bin("R"); break;
    }
}

} // namespace

LtlFormula parse_ltl(std::string_view text, const CompiledSystem& sys) { return parse_with(text, &sys); }

LtlFormula parse_abstract_ltl(std::string_view text) { return parse_with(text, nullptr); }

std::string print_ltl(const LtlPtr& node, const std::vector<LtlAtom>& atoms) {
    std::ostringstream out;
    print_rec(out, node, atoms, false);
    return out.str();
}

std::string print_ltl(const LtlFormula& f) { return print_ltl(f.root, f.atoms); }

std::vector<PropertySpec> parse_property_file(std::string_view text) {
    static const std::regex line_re(R"(^\s*([A-Za-z_][A-Za-z0-9_]*)\s*:\s*(.*?)\s*;\s*(?:expect\s+(holds|fails))?\s*$)");
    std::vector<PropertySpec> out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::smatch m;
        if (!std::regex_match(line, m, line_re)) {
            throw Error(ErrorCode::SyntaxError, "expected `name : formula ; [expect holds|fails]`", SourcePos{lineNo, 1});
        }
        PropertySpec p;
        p.name = m[1];
        p.formula = m[2];
        if (m[3].matched) p.expectHolds = m[3] == "holds";
        p.pos = {lineNo, 1};
        for (const auto& q : out) {
            if (q.name == p.name) {
                throw Error(ErrorCode::DuplicateDeclaration, "property '" + p.name + "' declared twice", p.pos);
            }
        }
        out.push_back(std::move(p));
    }
    return out;
}

bool eval_ltl(const LtlPtr& f, const LassoWord& w, std::size_t pos) {
    const std::size_t n = w.prefix.size() + w.loop.size();
    auto succ = [&](std::size_t i) { return i + 1 < n ? i + 1 : w.prefix.size(); };
    auto letter = [&](std::size_t i) { return i < w.prefix.size() ? w.prefix[i] : w.loop[i - w.prefix.size()]; };
    switch (f->op) {
    case LtlOp::True: return true;
    case LtlOp::False: return false;
    case LtlOp::Atom: return (letter(pos) >> f->atom) & 1u;
    case LtlOp::Not: return !eval_ltl(f->lhs, w, pos);
    case LtlOp::And: return eval_ltl(f->lhs, w, pos) && eval_ltl(f->rhs, w, pos);
    case LtlOp::Or: return eval_ltl(f->lhs, w, pos) || eval_ltl(f->rhs, w, pos);
    case LtlOp::Implies: return !eval_ltl(f->lhs, w, pos) || eval_ltl(f->rhs, w, pos);
    case LtlOp::Next: return eval_ltl(f->lhs, w, succ(pos));
    case LtlOp::Finally:
    case LtlOp::Globally:
    case LtlOp::Until:
    case LtlOp::Release: break;
    }
    // Every position reachable from `pos` is seen within n steps.
    std::size_t i = pos;
    for (std::size_t step = 0; step < n; ++step, i = succ(i)) {
        switch (f->op) {
        case LtlOp::Finally:
            if (eval_ltl(f->lhs, w, i)) return true;
            break;
        case LtlOp::Globally:
            if (!eval_ltl(f->lhs, w, i)) return false;
            break;
        case LtlOp::Until:
            if (eval_ltl(f->rhs, w, i)) return true;
            if (!eval_ltl(f->lhs, w, i)) return false;
            break;
        case LtlOp::Release:
            if (!eval_ltl(f->rhs, w, i)) return false;
            if (eval_ltl(f->lhs, w, i)) return true;
            break;
        default: break;
        }
    }
    return f->op == LtlOp::Globally || f->op == LtlOp::Release;
}

} // namespace rcheck
