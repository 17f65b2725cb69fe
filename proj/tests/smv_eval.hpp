#pragma once

// A small interpreter for the SMV subset the exporter emits: enough to
// evaluate INIT, TRANS and DEFINEs on concrete current/next valuations.

#include <cctype>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace smv {

struct V {
    enum Kind { Bool, Int, Sym } kind = Sym;
    long i = 0;
    std::string s;

    static V boolean(bool b) { return {Bool, b ? 1 : 0, {}}; }
    static V integer(long n) { return {Int, n, {}}; }
    static V sym(std::string x) { return {Sym, 0, std::move(x)}; }
    bool operator==(const V& o) const { return kind == o.kind && i == o.i && s == o.s; }
    bool operator<(const V& o) const {
        if (kind != o.kind) return kind < o.kind;
        return i != o.i ? i < o.i : s < o.s;
    }
};

struct Node {
    std::string op;  // id num next not neg and or imp eq ne lt le gt ge add sub max min
    std::string name;
    long num = 0;
    std::vector<std::shared_ptr<Node>> kids;
};
using NodePtr = std::shared_ptr<Node>;

struct Document {
    std::vector<std::pair<std::string, std::vector<V>>> vars;  // declared order
    std::map<std::string, NodePtr> defines;
    NodePtr init, trans;
    std::vector<std::string> specs;  // LTLSPEC names
};

class Parser {
public:
    explicit Parser(const std::string& text) {
        for (std::size_t i = 0; i < text.size();) {
            char c = text[i];
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++i;
            } else if (text.compare(i, 2, "--") == 0) {
                while (i < text.size() && text[i] != '\n') ++i;
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::size_t j = i;
                while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
                toks_.push_back(text.substr(i, j - i));
                i = j;
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
                toks_.push_back(text.substr(i, j - i));
                i = j;
            } else {
                static const char* two[] = {":=", "..", "->", "!=", "<=", ">="};
                std::string t(1, c);
                for (const char* op : two) {
                    if (text.compare(i, 2, op) == 0) t = op;
                }
                toks_.push_back(t);
                i += t.size();
            }
        }
    }

    Document document() {
        Document d;
        expect("MODULE");
        expect("main");
        std::string section;
        while (pos_ < toks_.size()) {
            const std::string& t = peek();
            if (t == "VAR" || t == "DEFINE") {
                section = next();
            } else if (t == "INIT") {
                next();
                d.init = expr();
                expect(";");
            } else if (t == "TRANS") {
                next();
                d.trans = expr();
                expect(";");
            } else if (t == "LTLSPEC") {
                next();
                expect("NAME");
                d.specs.push_back(next());
                while (next() != ";") {}
            } else if (section == "VAR") {
                std::string name = next();
                expect(":");
                d.vars.emplace_back(name, domain());
                expect(";");
            } else if (section == "DEFINE") {
                std::string name = next();
                expect(":=");
                d.defines[name] = expr();
                expect(";");
            } else {
                throw std::runtime_error("unexpected token " + t);
            }
        }
        return d;
    }

private:
    const std::string& peek() const {
        static const std::string eof;
        return pos_ < toks_.size() ? toks_[pos_] : eof;
    }
    std::string next() { return toks_.at(pos_++); }
    void expect(const std::string& t) {
        if (next() != t) throw std::runtime_error("expected " + t + " near token " + std::to_string(pos_));
    }
    bool accept(const std::string& t) {
        if (peek() != t) return false;
        ++pos_;
        return true;
    }
    static NodePtr mk(std::string op, std::vector<NodePtr> kids = {}) {
        auto n = std::make_shared<Node>();
        n->op = std::move(op);
        n->kids = std::move(kids);
        return n;
    }

    std::vector<V> domain() {
        std::vector<V> out;
        if (accept("boolean")) return {V::boolean(false), V::boolean(true)};
        if (accept("{")) {
            do {
                std::string t = next();
                out.push_back(std::isdigit(static_cast<unsigned char>(t[0])) ? V::integer(std::stol(t)) : V::sym(t));
            } while (accept(","));
            expect("}");
            return out;
        }
        long lo = std::stol(next());
        expect("..");
        long hi = std::stol(next());
        for (long n = lo; n <= hi; ++n) out.push_back(V::integer(n));
        return out;
    }

    NodePtr expr() {
        auto l = disj();
        if (accept("->")) return mk("imp", {l, expr()});
        return l;
    }
    NodePtr disj() {
        auto l = conj();
        while (accept("|")) l = mk("or", {l, conj()});
        return l;
    }
    NodePtr conj() {
        auto l = comparison();
        while (accept("&")) l = mk("and", {l, comparison()});
        return l;
    }
    NodePtr comparison() {
        auto l = additive();
        static const std::map<std::string, std::string> ops{{"=", "eq"}, {"!=", "ne"}, {"<", "lt"},
                                                           {"<=", "le"}, {">", "gt"}, {">=", "ge"}};
        auto it = ops.find(peek());
        if (it == ops.end()) return l;
        next();
        return mk(it->second, {l, additive()});
    }
    NodePtr additive() {
        auto l = atom();  // `!` binds tighter than anything binary, as in SMV
        for (;;) {
            if (accept("+")) {
                l = mk("add", {l, atom()});
            } else if (accept("-")) {
                l = mk("sub", {l, atom()});
            } else {
                return l;
            }
        }
    }
    NodePtr atom() {
        if (accept("(")) {
            auto e = expr();
            expect(")");
            return e;
        }
        if (accept("-")) return mk("neg", {atom()});
        if (accept("!")) return mk("not", {atom()});
        std::string t = next();
        if (std::isdigit(static_cast<unsigned char>(t[0]))) {
            auto n = mk("num");
            n->num = std::stol(t);
            return n;
        }
        if ((t == "next" || t == "max" || t == "min") && accept("(")) {
            auto a = expr();
            std::vector<NodePtr> kids{a};
            if (t != "next") {
                expect(",");
                kids.push_back(expr());
            }
            expect(")");
            return mk(t, kids);
        }
        auto n = mk("id");
        n->name = t;
        return n;
    }

    std::vector<std::string> toks_;
    std::size_t pos_ = 0;
};

struct Env {
    const Document* doc = nullptr;
    std::map<std::string, V> cur, nxt;

    V eval(const NodePtr& n, bool inNext = false) const {
        const std::string& op = n->op;
        auto b = [&](std::size_t k) { return eval(n->kids[k], inNext); };
        auto truth = [&](std::size_t k) {
            V v = b(k);
            if (v.kind != V::Bool) throw std::runtime_error("non-boolean operand of " + op);
            return v.i != 0;
        };
        auto ints = [&](auto f) {
            V x = b(0), y = b(1);
            if (x.kind != V::Int || y.kind != V::Int) throw std::runtime_error("non-integer operand of " + op);
            return f(x.i, y.i);
        };
        if (op == "num") return V::integer(n->num);
        if (op == "id") {
            if (n->name == "TRUE") return V::boolean(true);
            if (n->name == "FALSE") return V::boolean(false);
            auto d = doc->defines.find(n->name);
            if (d != doc->defines.end()) return eval(d->second, inNext);
            const auto& m = inNext ? nxt : cur;
            auto it = m.find(n->name);
            if (it != m.end()) return it->second;
            for (const auto& [name, dom] : doc->vars) {
                if (name == n->name) throw std::runtime_error("unbound variable " + name);
            }
            return V::sym(n->name);
        }
        if (op == "next") return eval(n->kids[0], true);
        if (op == "not") return V::boolean(!truth(0));
        if (op == "and") return V::boolean(truth(0) && truth(1));
        if (op == "or") return V::boolean(truth(0) || truth(1));
        if (op == "imp") return V::boolean(!truth(0) || truth(1));
        if (op == "eq") return V::boolean(b(0) == b(1));
        if (op == "ne") return V::boolean(!(b(0) == b(1)));
        if (op == "lt") return V::boolean(ints([](long x, long y) { return x < y; }));
        if (op == "le") return V::boolean(ints([](long x, long y) { return x <= y; }));
        if (op == "gt") return V::boolean(ints([](long x, long y) { return x > y; }));
        if (op == "ge") return V::boolean(ints([](long x, long y) { return x >= y; }));
        if (op == "add") return V::integer(ints([](long x, long y) { return x + y; }));
        if (op == "sub") return V::integer(ints([](long x, long y) { return x - y; }));
        if (op == "max") return V::integer(ints([](long x, long y) { return x > y ? x : y; }));
        if (op == "min") return V::integer(ints([](long x, long y) { return x < y ? x : y; }));
        if (op == "neg") {
            V v = b(0);
            return V::integer(-v.i);
        }
        throw std::runtime_error("unknown operator " + op);
    }

    bool holds(const NodePtr& n) const {
        V v = eval(n);
        return v.kind == V::Bool && v.i != 0;
    }
};

} // namespace smv
