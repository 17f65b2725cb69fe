#include "rcheck/protocol.hpp"

#include "rcheck/lint.hpp"

#include "httplib.h"

#include <istream>
#include <ostream>

namespace rcheck {

using nlohmann::json;

namespace {

json error_payload(const Error& e) {
    json p{{"code", to_string(e.code())}, {"message", e.detail()}};
    if (e.position()) {
        p["line"] = e.position()->line;
        p["column"] = e.position()->column;
    }
    if (!e.expected().empty()) p["expected"] = e.expected();
    return p;
}

Error protocol_error(const std::string& msg) { return Error(ErrorCode::ProtocolError, msg); }

std::string text_arg(const json& req, const char* key) {
    if (!req.contains(key) || !req[key].is_string()) throw protocol_error(std::string("missing string field '") + key + "'");
    return req[key].get<std::string>();
}

Session& live(std::optional<Session>& sim) {
    if (!sim) throw protocol_error("no model loaded in this session");
    return *sim;
}

json step_payload(const Session& s, const StepResult& r) {
    json p;
    if (r.transition) {
        p["transition"] = transition_json(s.system(), *r.transition);
    } else {
        p["stutter"] = true;
    }
    p["choice"] = r.choice;
    p["deadlock"] = r.deadlock;
    p["snapshot"] = s.inspect();
    return p;
}

} // namespace

std::shared_ptr<ProtocolServer::State> ProtocolServer::open(std::string& id) {
    std::lock_guard<std::mutex> g(sessionsLock_);
    id = "s" + std::to_string(nextId_++);
    auto st = std::make_shared<State>();
    sessions_[id] = st;
    return st;
}

std::shared_ptr<ProtocolServer::State> ProtocolServer::find(const std::string& id) {
    std::lock_guard<std::mutex> g(sessionsLock_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw protocol_error("unknown session '" + id + "'");
    return it->second;
}

json ProtocolServer::handle(const json& req) {
    std::string id;
    try {
        if (!req.is_object()) throw protocol_error("request must be an object");
        std::string cmd = text_arg(req, "cmd");
        std::shared_ptr<State> st;
        if (req.contains("session") && req["session"].is_string()) {
            id = req["session"].get<std::string>();
            st = find(id);
        } else if (cmd == "hello" || cmd == "load") {
            st = open(id);
        } else {
            throw protocol_error("'" + cmd + "' needs a session; send hello or load first");
        }
        std::lock_guard<std::mutex> g(st->lock);
        return {{"status", "ok"}, {"session", id}, {"payload", dispatch(cmd, req, *st)}};
    } catch (const Error& e) {
        return {{"status", "error"}, {"session", id}, {"payload", error_payload(e)}};
    } catch (const std::exception& e) {
        return {{"status", "error"}, {"session", id}, {"payload", error_payload(protocol_error(e.what()))}};
    }
}

json ProtocolServer::dispatch(const std::string& cmd, const json& req, State& st) {
    if (cmd == "hello") {
        return {{"protocol", "rcheck"},
                {"version", kProtocolVersion},
                {"commands", {"hello", "load", "new", "step", "inspect", "automata", "check", "trace-export",
                              "trace-import"}}};
    }
    if (cmd == "load") {
        std::string text = text_arg(req, "model");
        auto sys = std::make_shared<const CompiledSystem>(compile_source(text));
        std::uint64_t seed = req.value("seed", std::uint64_t{0});
        Session sim(sys, seed, text);
        st.modelText = text;
        st.sys = sys;
        st.sim.emplace(std::move(sim));
        json warnings = json::array();
        for (const auto& d : lint(*sys).diagnostics) warnings.push_back(format(d));
        json agents = json::array();
        for (const auto& a : sys->model.agents) agents.push_back(a.name);
        return {{"agents", agents}, {"diagnostics", warnings}, {"snapshot", st.sim->inspect()}};
    }
    if (cmd == "trace-import") {
        if (!req.contains("trace")) throw protocol_error("missing field 'trace'");
        Session sim = Session::replay(req["trace"]);
        st.modelText = sim.model_text();
        st.sys = sim.shared_system();
        st.sim.emplace(std::move(sim));
        return {{"snapshot", st.sim->inspect()}};
    }

    Session& sim = live(st.sim);
    if (cmd == "new") {
        st.sim.emplace(st.sys, req.value("seed", std::uint64_t{0}), st.modelText);
        return {{"snapshot", st.sim->inspect()}};
    }
    if (cmd == "step") {
        std::string mode = req.value("mode", "random");
        StepResult r;
        if (mode == "random") {
            r = sim.step_random();
        } else if (mode == "constrained") {
            r = sim.step_constrained(text_arg(req, "constraint"));
        } else if (mode == "choice") {
            if (!req.contains("choice") || !req["choice"].is_number_integer()) throw protocol_error("missing 'choice'");
            r = sim.step_choice(req["choice"].get<int>());
        } else {
            throw protocol_error("unknown step mode '" + mode + "'");
        }
        return step_payload(sim, r);
    }
    if (cmd == "inspect") {
        if (!req.contains("at")) return sim.inspect();
        if (!req["at"].is_number_integer()) throw protocol_error("'at' must be an integer");
        int at = req["at"].get<int>();
        if (at < 0 || static_cast<std::size_t>(at) > sim.trace().size()) throw protocol_error("'at' out of range");
        Session past(st.sys, sim.seed(), st.modelText);
        for (int i = 0; i < at; ++i) past.step_choice(sim.trace()[static_cast<std::size_t>(i)].choice);
        return past.inspect();
    }
    if (cmd == "automata") {
        json agents = json::array();
        for (const auto& a : st.sys->agents) {
            agents.push_back(automaton_json(a.automaton, st.sys->model.agents[static_cast<std::size_t>(a.agent)]));
        }
        return {{"agents", agents}};
    }
    if (cmd == "check") {
        auto f = parse_ltl(text_arg(req, "formula"), *st.sys);
        CheckOptions opts;
        opts.budget = req.value("budget", opts.budget);
        Verdict v = req.contains("bound") ? bounded_check(*st.sys, f, req["bound"].get<int>(), opts)
                                          : model_check(*st.sys, f, opts);
        json p{{"formula", print_ltl(f)},
               {"verdict", to_string(v.kind)},
               {"productStates", v.productStates},
               {"systemStates", v.systemStates},
               {"seconds", v.seconds}};
        if (v.bound >= 0) p["bound"] = v.bound;
        if (v.lasso) p["lasso"] = lasso_json(*st.sys, *v.lasso);
        return p;
    }
    if (cmd == "trace-export") return sim.export_trace();
    throw protocol_error("unknown command '" + cmd + "'");
}

std::string ProtocolServer::handle_line(const std::string& line) {
    json req;
    try {
        req = json::parse(line);
    } catch (const json::parse_error& e) {
        return json{{"status", "error"}, {"session", ""}, {"payload", error_payload(protocol_error(e.what()))}}.dump();
    }
    return handle(req).dump();
}

void ProtocolServer::serve_stream(std::istream& in, std::ostream& out) {
    for (std::string line; std::getline(in, line);) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out << handle_line(line) << "\n" << std::flush;
    }
}

HttpFrontend::HttpFrontend(ProtocolServer& server, std::string staticDir)
    : server_(server), staticDir_(std::move(staticDir)), http_(std::make_unique<httplib::Server>()) {
    configure();
}

HttpFrontend::~HttpFrontend() { stop(); }

void HttpFrontend::configure() {
    http_->Post("/rpc", [this](const httplib::Request& req, httplib::Response& res) {
        res.set_content(server_.handle_line(req.body), "application/json");
    });
    if (!staticDir_.empty() && !http_->set_mount_point("/", staticDir_)) {
        throw Error(ErrorCode::IoError, "static directory '" + staticDir_ + "' not found");
    }
}

int HttpFrontend::start(int port) {
    int bound = port == 0 ? http_->bind_to_any_port("127.0.0.1") : (http_->bind_to_port("127.0.0.1", port) ? port : -1);
    if (bound < 0) throw Error(ErrorCode::IoError, "cannot bind 127.0.0.1:" + std::to_string(port));
    thread_ = std::thread([this] { http_->listen_after_bind(); });
    http_->wait_until_ready();
    return bound;
}

void HttpFrontend::run(int port) {
    if (!http_->listen("127.0.0.1", port)) throw Error(ErrorCode::IoError, "cannot serve on 127.0.0.1:" + std::to_string(port));
}

void HttpFrontend::stop() {
    if (http_) http_->stop();
    if (thread_.joinable()) thread_.join();
}

} // namespace rcheck
