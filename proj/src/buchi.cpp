#include "rcheck/buchi.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace rcheck {

namespace {

enum class NOp : std::uint8_t { True, False, Lit, And, Or, X, U, R };

struct NForm {
    NOp op;
    int a = -1;  // Lit: atom; otherwise child ids
    int b = -1;
    bool positive = true;  // Lit
};

// Hash-consed negation normal form.
class Table {
public:
    int make(NOp op, int a = -1, int b = -1, bool positive = true) {
        auto key = std::make_tuple(op, a, b, positive);
        auto it = ids_.find(key);
        if (it != ids_.end()) return it->second;
        int id = static_cast<int>(forms.size());
        forms.push_back({op, a, b, positive});
        ids_.emplace(key, id);
        return id;
    }

    int nnf(const LtlPtr& n, bool neg) {
        switch (n->op) {
        case LtlOp::True: return make(neg ? NOp::False : NOp::True);
        case LtlOp::False: return make(neg ? NOp::True : NOp::False);
        case LtlOp::Atom: return make(NOp::Lit, n->atom, -1, !neg);
        case LtlOp::Not: return nnf(n->lhs, !neg);
        case LtlOp::And: return make(neg ? NOp::Or : NOp::And, nnf(n->lhs, neg), nnf(n->rhs, neg));
        case LtlOp::Or: return make(neg ? NOp::And : NOp::Or, nnf(n->lhs, neg), nnf(n->rhs, neg));
        case LtlOp::Implies: return make(neg ? NOp::And : NOp::Or, nnf(n->lhs, !neg), nnf(n->rhs, neg));
        case LtlOp::Next: return make(NOp::X, nnf(n->lhs, neg));
        case LtlOp::Finally:
            return neg ? make(NOp::R, make(NOp::False), nnf(n->lhs, true)) : make(NOp::U, make(NOp::True), nnf(n->lhs, false));
        case LtlOp::Globally:
            return neg ? make(NOp::U, make(NOp::True), nnf(n->lhs, true)) : make(NOp::R, make(NOp::False), nnf(n->lhs, false));
        case LtlOp::Until: return make(neg ? NOp::R : NOp::U, nnf(n->lhs, neg), nnf(n->rhs, neg));
        case LtlOp::Release: return make(neg ? NOp::U : NOp::R, nnf(n->lhs, neg), nnf(n->rhs, neg));
        }
        return make(NOp::True);
    }

    std::string print(int id, const std::vector<LtlAtom>& atoms) const {
        const NForm& f = forms[static_cast<std::size_t>(id)];
        auto bin = [&](const char* op) { return "(" + print(f.a, atoms) + " " + op + " " + print(f.b, atoms) + ")"; };
        switch (f.op) {
        case NOp::True: return "TRUE";
        case NOp::False: return "FALSE";
        case NOp::Lit: return (f.positive ? "" : "!") + atoms[static_cast<std::size_t>(f.a)].text;
        case NOp::And: return bin("&");
        case NOp::Or: return bin("|");
        case NOp::X: return "X " + print(f.a, atoms);
        case NOp::U: return bin("U");
        case NOp::R: return bin("R");
        }
        return "?";
    }

    std::vector<NForm> forms;

private:
    std::map<std::tuple<NOp, int, int, bool>, int> ids_;
};

struct Cover {
    std::uint64_t pos = 0;
    std::uint64_t neg = 0;
    std::set<int> next;
    std::set<int> postponed;  // untils deferred on this edge

    bool operator<(const Cover& o) const {
        return std::tie(pos, neg, next, postponed) < std::tie(o.pos, o.neg, o.next, o.postponed);
    }
};

void expand(const Table& t, std::vector<int> todo, std::set<int> done, Cover cur, std::set<Cover>& out) {
    while (!todo.empty()) {
        int id = todo.back();
        todo.pop_back();
        if (!done.insert(id).second) continue;
        const NForm& f = t.forms[static_cast<std::size_t>(id)];
        switch (f.op) {
        case NOp::True: break;
        case NOp::False: return;
        case NOp::Lit: {
            std::uint64_t bit = std::uint64_t{1} << f.a;
            if (f.positive) {
                if (cur.neg & bit) return;
                cur.pos |= bit;
            } else {
                if (cur.pos & bit) return;
                cur.neg |= bit;
            }
            break;
        }
        case NOp::And:
            todo.push_back(f.a);
            todo.push_back(f.b);
            break;
        case NOp::X: cur.next.insert(f.a); break;
        case NOp::Or: {
            auto t1 = todo;
            t1.push_back(f.a);
            expand(t, std::move(t1), done, cur, out);
            todo.push_back(f.b);
            break;
        }
        case NOp::U: {
            auto t1 = todo;
            t1.push_back(f.b);
            expand(t, std::move(t1), done, cur, out);
            todo.push_back(f.a);
            cur.next.insert(id);
            cur.postponed.insert(id);
            break;
        }
        case NOp::R: {
            auto t1 = todo;
            t1.push_back(f.a);
            t1.push_back(f.b);
            expand(t, std::move(t1), done, cur, out);
            todo.push_back(f.b);
            cur.next.insert(id);
            break;
        }
        }
    }
    out.insert(std::move(cur));
}

void collect_untils(const Table& t, int id, std::set<int>& out) {
    const NForm& f = t.forms[static_cast<std::size_t>(id)];
    if (f.op == NOp::Lit || f.op == NOp::True || f.op == NOp::False) return;
    if (f.op == NOp::U) out.insert(id);
    if (f.a >= 0) collect_untils(t, f.a, out);
    if (f.b >= 0) collect_untils(t, f.b, out);
}

} // namespace

BuchiAutomaton ltl_to_buchi(const LtlPtr& formula, const std::vector<LtlAtom>& atoms) {
    Table t;
    int root = t.nnf(formula, false);
    std::set<int> untilSet;
    collect_untils(t, root, untilSet);
    std::vector<int> untils(untilSet.begin(), untilSet.end());
    const std::size_t k = untils.size();

    // Generalized automaton over obligation sets.
    std::map<std::set<int>, int> stateIds;
    std::vector<std::set<int>> states;
    std::vector<std::vector<std::pair<int, Cover>>> gedges;
    std::deque<int> queue;
    auto state_of = [&](const std::set<int>& s) {
        auto [it, fresh] = stateIds.emplace(s, static_cast<int>(states.size()));
        if (fresh) {
            states.push_back(s);
            gedges.emplace_back();
            queue.push_back(it->second);
        }
        return it->second;
    };
    state_of({root});
    while (!queue.empty()) {
        int q = queue.front();
        queue.pop_front();
        std::set<Cover> covers;
        const auto& obligations = states[static_cast<std::size_t>(q)];
        expand(t, std::vector<int>(obligations.begin(), obligations.end()), {}, Cover{}, covers);
        for (const auto& c : covers) {
            int target = state_of(c.next);
            gedges[static_cast<std::size_t>(q)].push_back({target, c});
        }
    }

    auto acc_for = [&](const Cover& c, std::size_t i) { return !c.postponed.count(untils[i]); };

    BuchiAutomaton out;
    std::map<std::pair<int, std::size_t>, int> ids;
    std::deque<std::pair<int, std::size_t>> work;
    auto node = [&](int q, std::size_t level) {
        auto [it, fresh] = ids.emplace(std::make_pair(q, level), out.numStates);
        if (fresh) {
            ++out.numStates;
            out.edges.emplace_back();
            std::string name;
            for (int f : states[static_cast<std::size_t>(q)]) name += (name.empty() ? "" : ", ") + t.print(f, atoms);
            name = "{" + name + "}";
            if (k > 1) name += "#" + std::to_string(level);
            out.stateNames.push_back(name);
            work.emplace_back(q, level);
        }
        return it->second;
    };
    out.initial.push_back(node(0, 0));
    while (!work.empty()) {
        auto [q, level] = work.front();
        work.pop_front();
        int from = ids.at({q, level});
        std::set<std::tuple<int, std::uint64_t, std::uint64_t, bool>> seen;
        for (const auto& [target, c] : gedges[static_cast<std::size_t>(q)]) {
            bool accepting = false;
            std::size_t next = level;
            if (k == 0) {
                accepting = true;
            } else {
                while (next < k && acc_for(c, next)) ++next;
                if (next == k) {
                    accepting = true;
                    next = 0;
                }
            }
            int to = node(target, next);
            if (!seen.emplace(to, c.pos, c.neg, accepting).second) continue;
            out.edges[static_cast<std::size_t>(from)].push_back({to, c.pos, c.neg, accepting});
        }
    }
    return out;
}

bool accepts(const BuchiAutomaton& a, const LassoWord& w) {
    const std::size_t n = w.prefix.size() + w.loop.size();
    auto succ = [&](std::size_t i) { return i + 1 < n ? i + 1 : w.prefix.size(); };
    auto letter = [&](std::size_t i) { return i < w.prefix.size() ? w.prefix[i] : w.loop[i - w.prefix.size()]; };
    const int total = a.numStates * static_cast<int>(n);
    auto id = [&](int q, std::size_t i) { return q * static_cast<int>(n) + static_cast<int>(i); };

    // Tarjan over the product of the automaton with the word's positions,
    // restricted to nodes reachable from the initial ones.
    std::vector<int> index(static_cast<std::size_t>(total), -1), low(static_cast<std::size_t>(total), 0),
        comp(static_cast<std::size_t>(total), -1);
    std::vector<int> stack;
    int counter = 0, comps = 0;
    bool found = false;
    auto for_succ = [&](int x, auto&& f) {
        int q = x / static_cast<int>(n);
        auto i = static_cast<std::size_t>(x % static_cast<int>(n));
        for (const auto& e : a.edges[static_cast<std::size_t>(q)]) {
            if (e.matches(letter(i))) f(id(e.target, succ(i)), e.accepting);
        }
    };
    auto strong = [&](auto&& self, int x) -> void {
        auto ux = static_cast<std::size_t>(x);
        index[ux] = low[ux] = counter++;
        stack.push_back(x);
        for_succ(x, [&](int y, bool) {
            auto uy = static_cast<std::size_t>(y);
            if (index[uy] < 0) {
                self(self, y);
                low[ux] = std::min(low[ux], low[uy]);
            } else if (comp[uy] < 0) {
                low[ux] = std::min(low[ux], index[uy]);
            }
        });
        if (low[ux] == index[ux]) {
            int y;
            do {
                y = stack.back();
                stack.pop_back();
                comp[static_cast<std::size_t>(y)] = comps;
            } while (y != x);
            ++comps;
        }
    };
    for (int q : a.initial) {
        if (index[static_cast<std::size_t>(id(q, 0))] < 0) strong(strong, id(q, 0));
    }
    for (int x = 0; x < total && !found; ++x) {
        if (index[static_cast<std::size_t>(x)] < 0) continue;
        for_succ(x, [&](int y, bool acc) {
            if (acc && comp[static_cast<std::size_t>(x)] == comp[static_cast<std::size_t>(y)]) found = true;
        });
    }
    return found;
}

std::string dump(const BuchiAutomaton& a, const std::vector<LtlAtom>& atoms) {
    std::ostringstream out;
    for (int q = 0; q < a.numStates; ++q) {
        bool init = std::find(a.initial.begin(), a.initial.end(), q) != a.initial.end();
        out << "q" << q << (init ? " (initial)" : "") << " " << a.stateNames[static_cast<std::size_t>(q)] << "\n";
        for (const auto& e : a.edges[static_cast<std::size_t>(q)]) {
            std::string label;
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                if (e.pos >> i & 1u) label += (label.empty() ? "" : " & ") + atoms[i].text;
                if (e.neg >> i & 1u) label += (label.empty() ? "!" : " & !") + atoms[i].text;
            }
            out << "  -> q" << e.target << " [" << (label.empty() ? "TRUE" : label) << "]" << (e.accepting ? " *" : "")
                << "\n";
        }
    }
    return out.str();
}

} // namespace rcheck
