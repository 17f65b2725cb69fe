#pragma once

#include "rcheck/sim.hpp"

#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <thread>

namespace httplib {
class Server;
}

namespace rcheck {

inline constexpr int kProtocolVersion = 1;

/// Request/response handler for the simulator wire protocol. A request is an
/// object `{"cmd": ..., "session": id?, ...}`; every response is
/// `{"status": "ok"|"error", "session": id, "payload": ...}`.
///
///   hello                      open a session
///   load {model}               compile a model into the session (seed 0)
///   new {seed}                 restart the simulation
///   step {mode, constraint?, choice?}   mode: random | constrained | choice
///   inspect {at?}              snapshot, optionally after the first `at` steps
///   automata                   structure automata of every agent type
///   check {formula, bound?, budget?}
///   trace-export / trace-import {trace}
///
/// Sessions are independent; requests on one session are serialized.
class ProtocolServer {
public:
    nlohmann::json handle(const nlohmann::json& request);
    /// One NDJSON line in, one out. Malformed JSON is a ProtocolError response.
    std::string handle_line(const std::string& line);
    /// Reads requests until EOF, one response line per request line.
    void serve_stream(std::istream& in, std::ostream& out);

private:
    struct State {
        std::mutex lock;
        std::string modelText;
        std::shared_ptr<const CompiledSystem> sys;
        std::optional<Session> sim;
    };

    std::shared_ptr<State> open(std::string& id);
    std::shared_ptr<State> find(const std::string& id);
    nlohmann::json dispatch(const std::string& cmd, const nlohmann::json& req, State& st);

    std::mutex sessionsLock_;
    std::map<std::string, std::shared_ptr<State>> sessions_;
    int nextId_ = 1;
};

/// `POST /rpc` with one request object per body, plus static files from
/// `staticDir` (when non-empty) under `/`. Binds to 127.0.0.1 only.
class HttpFrontend {
public:
    HttpFrontend(ProtocolServer& server, std::string staticDir = {});
    ~HttpFrontend();

    /// Binds (port 0 picks a free one) and serves on a background thread.
    int start(int port);
    /// Binds and serves on the calling thread until stop().
    void run(int port);
    void stop();

private:
    void configure();

    ProtocolServer& server_;
    std::string staticDir_;
    std::unique_ptr<httplib::Server> http_;
    std::thread thread_;
};

} // namespace rcheck
