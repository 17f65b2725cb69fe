#include "rcheck/checker.hpp"

#include "rcheck/eval.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

namespace rcheck {

AugState advance(const AugState& s, const JointTransition* t) {
    AugState out;
    if (!t) {
        out.base = s.base;
        return out;
    }
    out.base = t->successor;
    out.lastFired.assign(t->fired.begin() + 1, t->fired.end());
    std::sort(out.lastFired.begin(), out.lastFired.end());
    return out;
}

std::uint64_t atoms_at(const LtlFormula& f, const CompiledSystem& sys, const AugState& s,
                       const JointTransition* outgoing) {
    Env env;
    env.global = s.base;
    env.label = [&](int instance, int command) {
        LabelRef l{instance, command};
        if (sys.isSend(l)) return outgoing != nullptr && outgoing->fired.front() == l;
        return std::binary_search(s.lastFired.begin(), s.lastFired.end(), l);
    };
    std::uint64_t letter = 0;
    for (std::size_t i = 0; i < f.atoms.size(); ++i) {
        if (eval_bool(f.atoms[i].expr, env)) letter |= std::uint64_t{1} << i;
    }
    return letter;
}

const char* to_string(VerdictKind k) {
    switch (k) {
    case VerdictKind::Holds: return "holds";
    case VerdictKind::Fails: return "fails";
    case VerdictKind::HoldsUpToBound: return "holds up to bound";
    }
    return "?";
}

namespace {

struct Move {
    int transition;  // index into enabled_transitions, -1 = stutter
    std::uint64_t letter;
    int target;      // augmented state id
};

// Lazily built augmented state graph.
class AugGraph {
public:
    AugGraph(const CompiledSystem& sys, const LtlFormula& f) : sys_(sys), f_(f) {}

    int intern(AugState s) {
        SystemState key = s.base;
        for (const auto& l : s.lastFired) {
            key.push_back(Value::integer(l.instance));
            key.push_back(Value::integer(l.command));
        }
        auto [it, fresh] = ids_.emplace(std::move(key), static_cast<int>(states_.size()));
        if (fresh) {
            states_.push_back(std::move(s));
            moves_.emplace_back();
            built_.push_back(false);
        }
        return it->second;
    }

    const std::vector<Move>& moves(int id) {
        auto u = static_cast<std::size_t>(id);
        if (!built_[u]) {
            AugState s = states_[u];
            auto ts = enabled_transitions(sys_, s.base);
            std::vector<Move> out;
            if (ts.empty()) {
                out.push_back({-1, atoms_at(f_, sys_, s, nullptr), intern(advance(s, nullptr))});
            }
            for (std::size_t i = 0; i < ts.size(); ++i) {
                out.push_back({static_cast<int>(i), atoms_at(f_, sys_, s, &ts[i]), intern(advance(s, &ts[i]))});
            }
            moves_[u] = std::move(out);
            built_[u] = true;
        }
        return moves_[u];
    }

    const AugState& state(int id) const { return states_[static_cast<std::size_t>(id)]; }
    std::size_t size() const { return states_.size(); }

    LassoStep step(int id, int transition) const {
        LassoStep st;
        st.state = state(id);
        if (transition >= 0) {
            st.transition = enabled_transitions(sys_, st.state.base)[static_cast<std::size_t>(transition)];
        }
        return st;
    }

private:
    const CompiledSystem& sys_;
    const LtlFormula& f_;
    std::unordered_map<SystemState, int, ValueVectorHash> ids_;
    std::vector<AugState> states_;
    std::vector<std::vector<Move>> moves_;
    std::vector<bool> built_;
};

// Product of the augmented graph with the automaton of the negated formula.
// Node = ((aug * |Q|) + q) * 2 + acc, acc marking entry via an accepting edge.
class Product {
public:
    Product(const CompiledSystem& sys, const LtlFormula& f)
        : aug(sys, f), ba(ltl_to_buchi(ltl_unary(LtlOp::Not, f.root), f.atoms)) {}

    using Node = std::uint64_t;
    struct Succ {
        Node node;
        int transition;
    };

    Node make(int augId, int q, bool acc) const {
        return ((static_cast<Node>(augId) * static_cast<Node>(ba.numStates)) + static_cast<Node>(q)) * 2 + (acc ? 1 : 0);
    }
    int augOf(Node n) const { return static_cast<int>((n / 2) / static_cast<Node>(ba.numStates)); }
    int qOf(Node n) const { return static_cast<int>((n / 2) % static_cast<Node>(ba.numStates)); }
    static bool accepting(Node n) { return n & 1u; }

    std::vector<Node> initial(const CompiledSystem& sys) {
        std::vector<Node> out;
        for (const auto& s : initial_states(sys)) {
            int a = aug.intern(AugState{s, {}});
            for (int q : ba.initial) out.push_back(make(a, q, false));
        }
        return out;
    }

    std::vector<Succ> successors(Node n) {
        std::vector<Succ> out;
        const auto& edges = ba.edges[static_cast<std::size_t>(qOf(n))];
        for (const auto& m : aug.moves(augOf(n))) {
            for (const auto& e : edges) {
                if (e.matches(m.letter)) out.push_back({make(m.target, e.target, e.accepting), m.transition});
            }
        }
        return out;
    }

    AugGraph aug;
    BuchiAutomaton ba;
};

[[noreturn]] void budget_exceeded(std::size_t limit, std::size_t visited) {
    throw Error(ErrorCode::StateSpaceBudgetExceeded, "state budget of " + std::to_string(limit) +
                                                         " product states exceeded (visited " +
                                                         std::to_string(visited) + ")");
}

double since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

Verdict model_check(const CompiledSystem& sys, const LtlFormula& f, const CheckOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    Product p(sys, f);
    using Node = Product::Node;

    struct Frame {
        Node node;
        std::vector<Product::Succ> succ;
        std::size_t next = 0;
    };
    std::unordered_map<Node, std::uint8_t> flags;  // 1: outer visited, 2: inner visited
    Verdict v;

    auto build_lasso = [&](const std::vector<Frame>& outer, const std::vector<Frame>& inner, int closing) {
        Lasso l;
        // outer.back() is the seed; every earlier frame's last taken successor leads onward.
        for (std::size_t i = 0; i + 1 < outer.size(); ++i) {
            const auto& fr = outer[i];
            l.prefix.push_back(p.aug.step(p.augOf(fr.node), fr.succ[fr.next - 1].transition));
        }
        for (std::size_t i = 0; i + 1 < inner.size(); ++i) {
            const auto& fr = inner[i];
            l.loop.push_back(p.aug.step(p.augOf(fr.node), fr.succ[fr.next - 1].transition));
        }
        l.loop.push_back(p.aug.step(p.augOf(inner.back().node), closing));
        return l;
    };

    auto inner_search = [&](Node seed, const std::vector<Frame>& outer) -> bool {
        std::vector<Frame> stack;
        stack.push_back({seed, p.successors(seed)});
        flags[seed] |= 2;
        while (!stack.empty()) {
            Frame& top = stack.back();
            if (top.next == top.succ.size()) {
                stack.pop_back();
                continue;
            }
            const auto s = top.succ[top.next++];
            if (s.node == seed) {
                v.lasso = build_lasso(outer, stack, s.transition);
                return true;
            }
            auto& fl = flags[s.node];
            if (fl & 2) continue;
            fl |= 2;
            stack.push_back({s.node, p.successors(s.node)});
        }
        return false;
    };

    std::size_t visited = 0;
    for (Node root : p.initial(sys)) {
        if (flags[root] & 1) continue;
        flags[root] |= 1;
        if (++visited > opts.budget) budget_exceeded(opts.budget, visited);
        std::vector<Frame> stack;
        stack.push_back({root, p.successors(root)});
        while (!stack.empty()) {
            Frame& top = stack.back();
            if (top.next < top.succ.size()) {
                Node n = top.succ[top.next++].node;
                auto& fl = flags[n];
                if (fl & 1) continue;
                fl |= 1;
                if (++visited > opts.budget) budget_exceeded(opts.budget, visited);
                stack.push_back({n, p.successors(n)});
                continue;
            }
            // Post-order: search for a cycle back to an accepting node.
            if (Product::accepting(top.node)) {
                // The seed frame is re-entered by the inner search; the outer
                // stack below it forms the prefix.
                Node seed = top.node;
                if (inner_search(seed, stack)) {
                    v.kind = VerdictKind::Fails;
                    v.productStates = visited;
                    v.systemStates = p.aug.size();
                    v.seconds = since(t0);
                    return v;
                }
            }
            stack.pop_back();
        }
    }
    v.kind = VerdictKind::Holds;
    v.productStates = visited;
    v.systemStates = p.aug.size();
    v.seconds = since(t0);
    return v;
}

Verdict bounded_check(const CompiledSystem& sys, const LtlFormula& f, int k, const CheckOptions& opts) {
    if (k < 1) throw Error(ErrorCode::SyntaxError, "bound must be at least 1");
    auto t0 = std::chrono::steady_clock::now();
    Product p(sys, f);
    using Node = Product::Node;

    struct Info {
        int depth;
        Node parent;
        int transition;
    };
    std::unordered_map<Node, Info> seen;
    std::vector<Node> order;
    std::deque<Node> queue;
    const Node none = ~Node{0};
    for (Node r : p.initial(sys)) {
        if (seen.emplace(r, Info{0, none, -1}).second) {
            order.push_back(r);
            queue.push_back(r);
        }
    }
    while (!queue.empty()) {
        Node n = queue.front();
        queue.pop_front();
        int d = seen.at(n).depth;
        if (d + 1 >= k) continue;  // a loop needs at least one more step
        for (const auto& s : p.successors(n)) {
            if (seen.emplace(s.node, Info{d + 1, n, s.transition}).second) {
                if (seen.size() > opts.budget) budget_exceeded(opts.budget, seen.size());
                order.push_back(s.node);
                queue.push_back(s.node);
            }
        }
    }

    Verdict v;
    v.bound = k;
    std::size_t work = seen.size();
    for (Node m : order) {
        const int budgetLen = k - seen.at(m).depth;
        // BFS over (node, passed-accepting) back to (m, true).
        using Key = std::pair<Node, bool>;
        struct Back {
            Key parent;
            int transition;
            int depth;
        };
        std::map<Key, Back> back;
        std::deque<Key> q;
        Key start{m, false};
        back.emplace(start, Back{start, -1, 0});
        q.push_back(start);
        std::optional<std::pair<Key, int>> hit;  // last node before closing, closing transition
        while (!q.empty() && !hit) {
            Key cur = q.front();
            q.pop_front();
            int d = back.at(cur).depth;
            if (d >= budgetLen) continue;
            for (const auto& s : p.successors(cur.first)) {
                bool acc = cur.second || Product::accepting(s.node);
                // Entry flags differ between the first and the repeated visit.
                if ((s.node >> 1) == (m >> 1) && acc) {
                    hit = std::make_pair(cur, s.transition);
                    break;
                }
                Key nk{s.node, acc};
                if (back.emplace(nk, Back{cur, s.transition, d + 1}).second) {
                    if (++work > opts.budget) budget_exceeded(opts.budget, work);
                    q.push_back(nk);
                }
            }
        }
        if (!hit) continue;

        Lasso l;
        std::vector<Node> prefixNodes;
        std::vector<int> prefixMoves;
        for (Node x = m; seen.at(x).parent != none; x = seen.at(x).parent) {
            prefixNodes.push_back(seen.at(x).parent);
            prefixMoves.push_back(seen.at(x).transition);
        }
        for (std::size_t i = prefixNodes.size(); i-- > 0;) {
            l.prefix.push_back(p.aug.step(p.augOf(prefixNodes[i]), prefixMoves[i]));
        }
        std::vector<LassoStep> loop;
        loop.push_back(p.aug.step(p.augOf(hit->first.first), hit->second));
        for (Key x = hit->first; !(x == start);) {
            const Back& b = back.at(x);
            loop.push_back(p.aug.step(p.augOf(b.parent.first), b.transition));
            x = b.parent;
        }
        std::reverse(loop.begin(), loop.end());
        l.loop = std::move(loop);
        v.kind = VerdictKind::Fails;
        v.lasso = std::move(l);
        v.productStates = work;
        v.systemStates = p.aug.size();
        v.seconds = since(t0);
        return v;
    }
    v.kind = VerdictKind::HoldsUpToBound;
    v.productStates = work;
    v.systemStates = p.aug.size();
    v.seconds = since(t0);
    return v;
}

LassoWord lasso_word(const CompiledSystem& sys, const LtlFormula& f, const Lasso& lasso) {
    LassoWord w;
    auto letter = [&](const LassoStep& s) {
        return atoms_at(f, sys, s.state, s.transition ? &*s.transition : nullptr);
    };
    for (const auto& s : lasso.prefix) w.prefix.push_back(letter(s));
    for (const auto& s : lasso.loop) w.loop.push_back(letter(s));
    return w;
}

std::string validate_lasso(const CompiledSystem& sys, const LtlFormula& f, const Lasso& lasso) {
    if (lasso.loop.empty()) return "empty loop";
    std::vector<const LassoStep*> steps;
    for (const auto& s : lasso.prefix) steps.push_back(&s);
    for (const auto& s : lasso.loop) steps.push_back(&s);

    const AugState& first = steps.front()->state;
    auto inits = initial_states(sys);
    if (!first.lastFired.empty() || std::find(inits.begin(), inits.end(), first.base) == inits.end()) {
        return "first state is not initial";
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const LassoStep& s = *steps[i];
        auto enabled = enabled_transitions(sys, s.state.base);
        if (s.transition) {
            auto key = key_of(*s.transition);
            bool found = std::any_of(enabled.begin(), enabled.end(), [&](const auto& t) { return key_of(t) == key; });
            if (!found) return "step " + std::to_string(i) + ": transition not enabled";
        } else if (!enabled.empty()) {
            return "step " + std::to_string(i) + ": stutter at a non-deadlocked state";
        }
        AugState next = advance(s.state, s.transition ? &*s.transition : nullptr);
        const AugState& expect = i + 1 < steps.size() ? steps[i + 1]->state : lasso.loop.front().state;
        if (!(next == expect)) return "step " + std::to_string(i) + ": successor mismatch";
    }
    LassoWord w = lasso_word(sys, f, lasso);
    if (eval_ltl(f.root, w)) return "the lasso satisfies the formula";
    if (!accepts(ltl_to_buchi(ltl_unary(LtlOp::Not, f.root), f.atoms), w)) {
        return "the automaton of the negation rejects the lasso";
    }
    return {};
}

std::string format_lasso(const CompiledSystem& sys, const Lasso& lasso) {
    std::ostringstream out;
    auto emit = [&](const LassoStep& s, std::size_t i) {
        out << "  [" << i << "] " << format_state(sys, s.state.base) << "\n";
        if (!s.state.lastFired.empty()) {
            out << "      received:";
            for (const auto& l : s.state.lastFired) out << " " << sys.labelName(l);
            out << "\n";
        }
        out << "      -> " << (s.transition ? describe(sys, *s.transition) : std::string("stutter (deadlock)")) << "\n";
    };
    std::size_t i = 0;
    out << "prefix:\n";
    for (const auto& s : lasso.prefix) emit(s, i++);
    out << "loop:\n";
    for (const auto& s : lasso.loop) emit(s, i++);
    out << "  (back to [" << lasso.prefix.size() << "])\n";
    return out.str();
}

nlohmann::json state_json(const CompiledSystem& sys, const SystemState& s) {
    nlohmann::json state = nlohmann::json::object();
    for (std::size_t g = 0; g < sys.globals.size(); ++g) state[sys.globals[g].name] = to_string(s[g], sys.model);
    return state;
}

nlohmann::json transition_json(const CompiledSystem& sys, const JointTransition& t) {
    using nlohmann::json;
    const auto& model = sys.model;
    json data = json::object();
    for (std::size_t d = 0; d < t.message.data.size(); ++d) {
        data[model.dataVars[d].name] = to_string(t.message.data[d], model);
    }
    json outcomes = json::object();
    for (std::size_t i = 0; i < t.outcomes.size(); ++i) {
        const auto& o = t.outcomes[i];
        std::string what;
        switch (o.kind) {
        case Outcome::Sender: what = "sender"; break;
        case Outcome::Received:
            what = "received " + sys.defOf(static_cast<int>(i))
                                     .commands[static_cast<std::size_t>(
                                         sys.agentOf(static_cast<int>(i)).recvRel[static_cast<std::size_t>(o.edge)].command)]
                                     .label;
            break;
        case Outcome::IdleNotConnected: what = "not connected"; break;
        case Outcome::IdleBroadcastExcluded: what = "excluded"; break;
        }
        outcomes[model.instances[i].id] = what;
    }
    json fired = json::array();
    for (const auto& l : t.fired) fired.push_back(sys.labelName(l));
    return {{"sender", model.instances[static_cast<std::size_t>(t.message.sender)].id},
            {"label", sys.labelName(t.fired.front())},
            {"channel", to_string(t.message.channel, model)},
            {"data", data},
            {"receivers", outcomes},
            {"fired", fired}};
}

nlohmann::json lasso_json(const CompiledSystem& sys, const Lasso& lasso) {
    using nlohmann::json;
    auto step_json = [&](const LassoStep& s) {
        json received = json::array();
        for (const auto& l : s.state.lastFired) received.push_back(sys.labelName(l));
        json j{{"state", state_json(sys, s.state.base)}, {"received", received}};
        if (!s.transition) {
            j["stutter"] = true;
            return j;
        }
        j.update(transition_json(sys, *s.transition));
        return j;
    };
    json prefix = json::array(), loop = json::array();
    for (const auto& s : lasso.prefix) prefix.push_back(step_json(s));
    for (const auto& s : lasso.loop) loop.push_back(step_json(s));
    return {{"prefix", prefix}, {"loop", loop}};
}

} // namespace rcheck
