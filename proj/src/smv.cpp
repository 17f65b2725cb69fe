#include "rcheck/smv.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <unistd.h>

namespace rcheck {

namespace {

const std::set<std::string>& smv_keywords() {
    static const std::set<std::string> k{
        "MODULE", "DEFINE", "MDEFINE", "CONSTANTS", "VAR", "IVAR", "FROZENVAR", "INIT", "TRANS", "INVAR", "SPEC",
        "CTLSPEC", "LTLSPEC", "PSLSPEC", "COMPUTE", "NAME", "INVARSPEC", "FAIRNESS", "JUSTICE", "COMPASSION",
        "ISA", "ASSIGN", "CONSTRAINT", "SIMPWFF", "CTLWFF", "LTLWFF", "PSLWFF", "COMPWFF", "IN", "MIN", "MAX",
        "MIRROR", "PRED", "PREDICATES", "process", "array", "of", "boolean", "integer", "real", "word", "word1",
        "bool", "signed", "unsigned", "extend", "resize", "sizeof", "uwconst", "swconst", "EX", "AX", "EF", "AF",
        "EG", "AG", "E", "F", "O", "G", "H", "X", "Y", "Z", "A", "U", "S", "V", "T", "BU", "EBF", "ABF", "EBG",
        "ABG", "case", "esac", "mod", "next", "init", "union", "in", "xor", "xnor", "self", "TRUE", "FALSE",
        "count", "abs", "max", "min", "floor", "toint", "typeof"};
    return k;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep, const std::string& empty) {
    if (parts.empty()) return empty;
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
    return out;
}

std::string conj(const std::vector<std::string>& parts) {
    if (parts.size() == 1) return parts[0];
    return parts.empty() ? "TRUE" : "(" + join(parts, " & ", "") + ")";
}

std::string disj(const std::vector<std::string>& parts) {
    if (parts.size() == 1) return parts[0];
    return parts.empty() ? "FALSE" : "(" + join(parts, " | ", "") + ")";
}

// How message and communication variables render in a given position.
struct Ctx {
    explicit Ctx(int i = -1, std::string c = "next(ch)") : inst(i), ch(std::move(c)) {}

    int inst;                         // owner of Local references
    std::string ch;
    std::vector<std::string> data;    // empty: next(<data var>)
    std::vector<std::string> common;  // rendered relabelling of the receiver
};

class Printer {
public:
    explicit Printer(const CompiledSystem& sys) : sys_(sys) {}

    std::string inst(int i) const { return smv_ident(sys_.model.instances[static_cast<std::size_t>(i)].id); }

    std::string var(int i, int idx, bool primed) const {
        const auto& def = sys_.defOf(i);
        std::string n = inst(i) + "_" +
                        (idx == static_cast<int>(def.locals.size()) ? std::string("st")
                                                                    : def.locals[static_cast<std::size_t>(idx)].name);
        return primed ? "next(" + n + ")" : n;
    }

    std::string global(int slot, bool primed) const {
        for (int i = 0; i < sys_.numInstances(); ++i) {
            const auto& l = sys_.layout[static_cast<std::size_t>(i)];
            if (slot >= l.offset && slot < l.offset + l.size) return var(i, slot - l.offset, primed);
        }
        throw Error(ErrorCode::UnknownVariable, "state slot " + std::to_string(slot) + " out of range");
    }

    std::string label(int i, int command) const {
        return inst(i) + "_" + sys_.defOf(i).commands[static_cast<std::size_t>(command)].label;
    }

    std::string data(int d) const { return smv_ident(sys_.model.dataVars[static_cast<std::size_t>(d)].name); }

    std::string value(const Value& v) const {
        switch (v.kind) {
        case ValueKind::Undef: return "undef";
        case ValueKind::Bool: return v.v ? "TRUE" : "FALSE";
        case ValueKind::Int: return std::to_string(v.v);
        case ValueKind::Enum: return smv_ident(to_string(v, sys_.model));
        case ValueKind::Chan: return v.v == kChanStar ? "star" : smv_ident(to_string(v, sys_.model));
        }
        return "undef";
    }

    std::string domain(const Type& t, bool withUndef) const {
        if (t.kind == TypeKind::Bool) return "boolean";
        if (t.kind == TypeKind::Int && !withUndef) return std::to_string(t.lo) + ".." + std::to_string(t.hi);
        // Message integers need undef too: a mixed enumeration, fine for equality.
        std::vector<std::string> vals;
        for (const auto& v : domain_of(t, sys_.model, withUndef && t.kind != TypeKind::Enum)) vals.push_back(value(v));
        return "{" + join(vals, ", ", "") + "}";
    }

    // Whether an expression can evaluate to undef; comparisons against undef
    // of anything else are folded, since SMV rejects them as ill-typed.
    static bool undefable(const ExprPtr& e) {
        switch (e->kind) {
        case ExprKind::Const: return e->value.isUndef();
        case ExprKind::Var:
            return e->var.scope == VarScope::Data || e->type.kind == TypeKind::Enum || e->type.kind == TypeKind::Undef;
        case ExprKind::Add:
        case ExprKind::Sub:
        case ExprKind::Clamp:
        case ExprKind::Neg:
            return std::any_of(e->args.begin(), e->args.end(), [](const ExprPtr& a) { return undefable(a); });
        default: return false;
        }
    }

    std::string expr(const ExprPtr& e, const Ctx& c) const {
        auto arg = [&](std::size_t i) { return expr(e->args[i], c); };
        auto bin = [&](const char* op) { return "(" + arg(0) + " " + op + " " + arg(1) + ")"; };
        switch (e->kind) {
        case ExprKind::Const: return value(e->value);
        case ExprKind::Var: return varref(*e, c);
        case ExprKind::Label: return label(e->instance, e->command);
        case ExprKind::Name: throw Error(ErrorCode::UnboundSymbol, "unresolved name '" + e->name + "'", e->pos);
        case ExprKind::Not: return "!" + arg(0);
        case ExprKind::Neg: return "-" + arg(0);
        case ExprKind::And:
        case ExprKind::Or: {
            std::vector<std::string> parts;
            flatten(e, e->kind, c, parts);
            return "(" + join(parts, e->kind == ExprKind::And ? " & " : " | ", "") + ")";
        }
        case ExprKind::Implies: return bin("->");
        case ExprKind::Eq:
        case ExprKind::Ne: {
            bool lu = e->args[0]->kind == ExprKind::Const && e->args[0]->value.isUndef();
            bool ru = e->args[1]->kind == ExprKind::Const && e->args[1]->value.isUndef();
            if ((lu && !undefable(e->args[1])) || (ru && !undefable(e->args[0]))) {
                return e->kind == ExprKind::Eq ? "FALSE" : "TRUE";
            }
            return bin(e->kind == ExprKind::Eq ? "=" : "!=");
        }
        case ExprKind::Lt: return bin("<");
        case ExprKind::Le: return bin("<=");
        case ExprKind::Gt: return bin(">");
        case ExprKind::Ge: return bin(">=");
        case ExprKind::Add: return bin("+");
        case ExprKind::Sub: return bin("-");
        case ExprKind::Clamp:
            return "max(" + std::to_string(e->lo) + ", min(" + std::to_string(e->hi) + ", " + arg(0) + "))";
        }
        return "FALSE";
    }

    // Conjunct that keeps an update's value inside the target's domain.
    std::string defined(const Assignment& u, const AgentDef& def, const Ctx& c) const {
        const Type& t = def.locals[static_cast<std::size_t>(u.index)].type;
        if (t.kind == TypeKind::Enum || !undefable(u.value)) return {};
        return "(" + expr(u.value, c) + " != undef)";
    }

private:
    std::string varref(const Expr& e, const Ctx& c) const {
        const VarRef& r = e.var;
        switch (r.scope) {
        case VarScope::Local:
            if (c.inst < 0) throw Error(ErrorCode::UnboundSymbol, "local '" + e.name + "' outside an instance", e.pos);
            return var(c.inst, r.index, r.primed);
        case VarScope::Global: return global(r.index, r.primed);
        case VarScope::Channel: return c.ch;
        case VarScope::Data:
            return c.data.empty() ? "next(" + data(r.index) + ")" : c.data[static_cast<std::size_t>(r.index)];
        case VarScope::Common:
            if (static_cast<std::size_t>(r.index) >= c.common.size()) {
                throw Error(ErrorCode::UnboundSymbol, "common variable '" + e.name + "' is not bound", e.pos);
            }
            return c.common[static_cast<std::size_t>(r.index)];
        }
        return "FALSE";
    }

    void flatten(const ExprPtr& e, ExprKind k, const Ctx& c, std::vector<std::string>& out) const {
        if (e->kind == k) {
            for (const auto& a : e->args) flatten(a, k, c, out);
        } else {
            out.push_back(expr(e, c));
        }
    }

    const CompiledSystem& sys_;
};

std::string ltl(const LtlPtr& n, const LtlFormula& f, const Printer& p) {
    auto un = [&](const char* op) { return std::string(op) + " " + ltl(n->lhs, f, p); };
    auto bin = [&](const char* op) { return "(" + ltl(n->lhs, f, p) + " " + op + " " + ltl(n->rhs, f, p) + ")"; };
    switch (n->op) {
    case LtlOp::True: return "TRUE";
    case LtlOp::False: return "FALSE";
    case LtlOp::Atom: {
        const auto& a = f.atoms[static_cast<std::size_t>(n->atom)];
        if (a.label) return p.label(a.label->instance, a.label->command);
        return p.expr(a.expr, Ctx{});
    }
    case LtlOp::Not: return "!" + ltl(n->lhs, f, p);
    case LtlOp::And: return bin("&");
    case LtlOp::Or: return bin("|");
    case LtlOp::Implies: return bin("->");
    case LtlOp::Next: return un("X");
    case LtlOp::Finally: return un("F");
    case LtlOp::Globally: return un("G");
    case LtlOp::Until: return bin("U");
    case LtlOp::Release: return bin("V");
    }
    return "TRUE";
}

} // namespace

std::string smv_ident(const std::string& name) {
    std::string out = name;
    std::replace(out.begin(), out.end(), '-', '_');
    if (smv_keywords().count(out)) out += "_";
    return out;
}

std::string export_smv(const CompiledSystem& sys, const std::vector<PropertySpec>& properties) {
    const auto& model = sys.model;
    const int n = sys.numInstances();
    Printer p(sys);
    for (const auto& d : model.dataVars) {
        if (d.type.kind == TypeKind::Bool) {
            throw Error(ErrorCode::UnsupportedDomain,
                        "boolean message variable '" + d.name + "' has no SMV encoding with undef",
                        d.pos);
        }
    }

    // Receive commands of each instance, one latched boolean each.
    std::vector<std::vector<int>> recvCommands(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        for (const auto& g : sys.agentOf(i).recvRel) {
            auto& v = recvCommands[static_cast<std::size_t>(i)];
            if (std::find(v.begin(), v.end(), g.command) == v.end()) v.push_back(g.command);
        }
    }
    auto helper = [&](int i, const std::string& what) { return "_" + p.inst(i) + "_" + what; };

    std::ostringstream out;
    out << "-- generated by rcheck\n";
    out << "MODULE main\n";
    out << "VAR\n";
    for (int i = 0; i < n; ++i) {
        const auto& sa = sys.agentOf(i);
        const auto& def = sys.defOf(i);
        for (std::size_t v = 0; v < def.locals.size(); ++v) {
            out << "  " << p.var(i, static_cast<int>(v), false) << " : " << p.domain(def.locals[v].type, false) << ";\n";
        }
        out << "  " << p.var(i, static_cast<int>(def.locals.size()), false) << " : 0.." << sa.automaton.numStates - 1
            << ";\n";
    }
    {
        std::vector<std::string> chans;
        for (const auto& c : model.channels) chans.push_back(smv_ident(c.name));
        chans.push_back("star");
        chans.push_back("undef");
        out << "  -- the message of the current step\n";
        out << "  ch : {" << join(chans, ", ", "") << "};\n";
    }
    for (std::size_t d = 0; d < model.dataVars.size(); ++d) {
        out << "  " << p.data(static_cast<int>(d)) << " : " << p.domain(model.dataVars[d].type, true) << ";\n";
    }
    out << "  -- receive labels, latched at the target state\n";
    for (int i = 0; i < n; ++i) {
        for (int c : recvCommands[static_cast<std::size_t>(i)]) out << "  " << p.label(i, c) << " : boolean;\n";
    }

    out << "DEFINE\n";
    out << "  -- send labels\n";
    for (int k = 0; k < n; ++k) {
        for (const auto& g : sys.agentOf(k).sendRel) {
            out << "  " << p.label(k, g.command) << " := " << p.expr(g.pred, Ctx{k}) << ";\n";
        }
    }

    out << "  -- receiver roles\n";
    for (int j = 0; j < n; ++j) {
        const auto& sa = sys.agentOf(j);
        const auto& def = sys.defOf(j);
        const auto& rc = recvCommands[static_cast<std::size_t>(j)];
        std::vector<std::string> keep, quiet, recv;
        for (int v = 0; v <= static_cast<int>(def.locals.size()); ++v) {
            keep.push_back("(" + p.var(j, v, true) + " = " + p.var(j, v, false) + ")");
        }
        for (int c : rc) quiet.push_back("!next(" + p.label(j, c) + ")");
        for (const auto& g : sa.recvRel) {
            std::vector<std::string> alt{p.expr(g.pred, Ctx{j})};
            for (int c : rc) alt.push_back((c == g.command ? "next(" : "!next(") + p.label(j, c) + ")");
            recv.push_back(conj(alt));
        }
        out << "  " << helper(j, "keep") << " := " << conj(keep) << ";\n";
        out << "  " << helper(j, "quiet") << " := " << conj(quiet) << ";\n";
        out << "  " << helper(j, "idle") << " := (" << helper(j, "keep") << " & " << helper(j, "quiet") << ");\n";
        out << "  " << helper(j, "conn") << " := ((next(ch) = star) | " << p.expr(sa.receiveGuard, Ctx{j}) << ");\n";
        out << "  " << helper(j, "recv") << " := " << disj(recv) << ";\n";
    }

    // Enabledness of each send edge with the message fixed by the sender:
    // the same case split as the step relation, over current values only.
    out << "  -- enabled sends\n";
    std::vector<std::string> enabled;
    for (int k = 0; k < n; ++k) {
        const auto& sa = sys.agentOf(k);
        const auto& def = sys.defOf(k);
        for (const auto& g : sa.sendRel) {
            const Command& c = def.commands[static_cast<std::size_t>(g.command)];
            Ctx sc{k};
            const std::string chan = p.expr(c.channel, sc);
            std::vector<std::string> dataVals(model.dataVars.size(), "undef");
            for (const auto& d : c.data) dataVals[static_cast<std::size_t>(d.index)] = p.expr(d.value, sc);

            std::vector<std::string> parts{"(" + p.var(k, static_cast<int>(def.locals.size()), false) +
                                           " = " + std::to_string(g.source) + ")"};
            if (!is_const_true(c.pre)) parts.push_back(p.expr(c.pre, sc));
            parts.push_back("(" + chan + " != empty)");
            for (const auto& u : c.update) {
                auto d = p.defined(u, def, sc);
                if (!d.empty()) parts.push_back(d);
            }
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                const auto& ra = sys.agentOf(j);
                const auto& rdef = sys.defOf(j);
                Ctx gc{j, chan};
                Ctx pc{k, chan};
                pc.data = dataVals;
                for (const auto& f : ra.relabel) pc.common.push_back(p.expr(f, gc));
                const std::string pi = p.expr(c.senderPred, pc);
                std::vector<std::string> rcv;
                for (const auto& rg : ra.recvRel) {
                    const Command& r = rdef.commands[static_cast<std::size_t>(rg.command)];
                    Ctx rctx{j, chan};
                    rctx.data = dataVals;
                    std::vector<std::string> a{
                        "(" + p.var(j, static_cast<int>(rdef.locals.size()), false) + " = " + std::to_string(rg.source) +
                            ")",
                        "(" + p.expr(r.channel, rctx) + " = " + chan + ")"};
                    if (!is_const_true(r.pre)) a.push_back(p.expr(r.pre, rctx));
                    for (const auto& u : r.update) {
                        auto d = p.defined(u, rdef, rctx);
                        if (!d.empty()) a.push_back(d);
                    }
                    rcv.push_back(conj(a));
                }
                const std::string conn = "((" + chan + " = star) | " + p.expr(ra.receiveGuard, gc) + ")";
                parts.push_back("(!" + conn + " | (" + pi + " & " + disj(rcv) + ") | ((" + chan + " = star) & !" + pi +
                                "))");
            }
            std::string name = helper(k, "en_" + c.label);
            out << "  " << name << " := " << conj(parts) << ";\n";
            enabled.push_back(name);
        }
    }
    out << "  _deadlock := !" << disj(enabled) << ";\n";

    out << "INIT\n";
    {
        std::vector<std::string> init;
        for (int i = 0; i < n; ++i) init.push_back(p.expr(sys.instanceInit[static_cast<std::size_t>(i)], Ctx{i}));
        init.push_back("(ch = undef)");
        for (std::size_t d = 0; d < model.dataVars.size(); ++d) {
            init.push_back("(" + p.data(static_cast<int>(d)) + " = undef)");
        }
        for (int i = 0; i < n; ++i) {
            for (int c : recvCommands[static_cast<std::size_t>(i)]) init.push_back("!" + p.label(i, c));
        }
        out << "  " << join(init, "\n  & ", "TRUE") << ";\n";
    }

    out << "TRANS\n";
    std::vector<std::string> steps;
    for (int k = 0; k < n; ++k) {
        const auto& def = sys.defOf(k);
        for (const auto& g : sys.agentOf(k).sendRel) {
            const Command& c = def.commands[static_cast<std::size_t>(g.command)];
            std::vector<std::string> parts{p.label(k, g.command), helper(k, "quiet")};
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                Ctx pc{k};
                for (const auto& f : sys.agentOf(j).relabel) pc.common.push_back(p.expr(f, Ctx{j}));
                const std::string pi = p.expr(c.senderPred, pc);
                parts.push_back("((" + helper(j, "conn") + " & " + pi + " & " + helper(j, "recv") + ") | (!" +
                                helper(j, "conn") + " & " + helper(j, "idle") + ") | ((next(ch) = star) & !" + pi +
                                " & " + helper(j, "idle") + "))");
            }
            steps.push_back("(" + join(parts, "\n     & ", "") + ")");
        }
    }
    {
        std::vector<std::string> stutter{"_deadlock", "(next(ch) = undef)"};
        for (std::size_t d = 0; d < model.dataVars.size(); ++d) {
            stutter.push_back("(next(" + p.data(static_cast<int>(d)) + ") = undef)");
        }
        for (int i = 0; i < n; ++i) stutter.push_back(helper(i, "idle"));
        steps.push_back("-- stuttering completion at deadlocks\n    (" + join(stutter, " & ", "") + ")");
    }
    out << "  " << join(steps, "\n  | ", "FALSE") << ";\n";

    for (const auto& prop : properties) {
        auto f = parse_ltl(prop.formula, sys);
        out << "LTLSPEC NAME " << smv_ident(prop.name) << " := " << ltl(f.root, f, p) << ";\n";
    }
    return out.str();
}

std::optional<std::string> external_checker() {
    const char* v = std::getenv("RCHECK_SMV_CHECKER");
    if (!v || !*v) return std::nullopt;
    return std::string(v);
}

std::vector<bool> run_external_checker(const std::string& binary, const std::string& smv, int timeoutSeconds) {
    namespace fs = std::filesystem;
    fs::path file = fs::temp_directory_path() / ("rcheck-" + std::to_string(::getpid()) + ".smv");
    {
        std::ofstream f(file);
        if (!f) throw Error(ErrorCode::IoError, "cannot write " + file.string());
        f << smv;
    }
    std::string cmd = "timeout " + std::to_string(timeoutSeconds) + " '" + binary + "' '" + file.string() + "' 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) throw Error(ErrorCode::IoError, "cannot run " + binary);
    std::string output;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), static_cast<int>(buf.size()), pipe)) output += buf.data();
    int status = ::pclose(pipe);
    fs::remove(file);
    if (status != 0) throw Error(ErrorCode::IoError, binary + " failed (status " + std::to_string(status) + "):\n" + output);

    std::vector<bool> verdicts;
    static const std::regex line(R"(^-- specification .* is (true|false)\s*$)");
    std::istringstream in(output);
    for (std::string l; std::getline(in, l);) {
        std::smatch m;
        if (std::regex_match(l, m, line)) verdicts.push_back(m[1] == "true");
    }
    return verdicts;
}

} // namespace rcheck
