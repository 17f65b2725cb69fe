#include "rcheck/corpus.hpp"
#include "rcheck/lint.hpp"
#include "rcheck/protocol.hpp"
#include "rcheck/smv.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace rcheck;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Exit codes are the contract: 0 ok, 1 an `expect` annotation was not met,
// 2 usage, I/O or model errors.
constexpr int kOk = 0, kMismatch = 1, kUsage = 2;

struct Input {
    std::string path;   // as given; `@name` selects a bundled fixture
    std::string text;
    std::string props;  // bundled properties, empty for files
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot read '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
}

Input read_model(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') {
        auto fx = load_fixture(arg.substr(1));
        return {arg, fx.model, fx.properties};
    }
    return {arg, read_file(arg), {}};
}

void emit(const std::string& where, const std::string& text) {
    if (where.empty() || where == "-") {
        std::cout << text;
    } else {
        write_file(where, text);
    }
}

std::vector<PropertySpec> properties(const Input& in, const std::string& propsPath,
                                     const std::vector<std::string>& formulas) {
    std::vector<PropertySpec> out;
    if (!propsPath.empty()) {
        out = parse_property_file(read_file(propsPath));
    } else if (formulas.empty()) {
        out = parse_property_file(in.props);
    }
    for (std::size_t i = 0; i < formulas.size(); ++i) {
        PropertySpec p;
        p.name = "f" + std::to_string(i + 1);
        p.formula = formulas[i];
        out.push_back(p);
    }
    return out;
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

int cmd_parse(const Input& in, bool asJson) {
    auto sys = compile_source(in.text);
    auto report = lint(sys);
    if (asJson) {
        json diags = json::array();
        for (const auto& d : report.diagnostics) diags.push_back(format(d));
        json agents = json::array();
        for (const auto& a : sys.model.agents) agents.push_back(a.name);
        std::cout << json{{"agents", agents},
                          {"instances", sys.numInstances()},
                          {"warnings", report.warningCount()},
                          {"diagnostics", diags}}
                         .dump(2)
                  << "\n";
        return kOk;
    }
    std::cout << in.path << ": " << sys.model.agents.size() << " agent types, " << sys.numInstances()
              << " instances, " << report.warningCount() << " warnings\n";
    for (const auto& d : report.diagnostics) std::cout << format(d) << "\n";
    return kOk;
}

int cmd_automata(const Input& in, const std::string& outDir, bool asJson, bool full) {
    auto sys = compile_source(in.text);
    if (asJson) {
        json agents = json::array();
        for (const auto& a : sys.agents) {
            agents.push_back(automaton_json(a.automaton, sys.model.agents[static_cast<std::size_t>(a.agent)]));
        }
        if (outDir.empty()) {
            std::cout << agents.dump(2) << "\n";
        } else {
            fs::create_directories(outDir);
            write_file(fs::path(outDir) / "automata.json", agents.dump(2) + "\n");
        }
        return kOk;
    }
    if (!outDir.empty()) fs::create_directories(outDir);
    for (const auto& a : sys.agents) {
        const auto& def = sys.model.agents[static_cast<std::size_t>(a.agent)];
        std::string dot = export_dot(a.automaton, def, full);
        if (outDir.empty()) {
            std::cout << dot << "\n";
        } else {
            fs::path p = fs::path(outDir) / (lower(def.name) + ".dot");
            write_file(p, dot);
            std::cout << p.string() << ": " << a.automaton.numStates << " states, " << a.automaton.edges.size()
                      << " edges\n";
        }
    }
    return kOk;
}

int cmd_check(const Input& in, const std::vector<PropertySpec>& props, int bound, std::size_t budget, bool asJson,
              bool showLasso) {
    auto sys = compile_source(in.text);
    if (props.empty()) throw Error(ErrorCode::IoError, "no properties: pass --props FILE or --formula TEXT");
    CheckOptions opts;
    opts.budget = budget;
    int mismatches = 0;
    json rows = json::array();
    if (!asJson) {
        std::printf("%-14s %-18s %-8s %10s %10s %9s\n", "property", "verdict", "expect", "product", "system",
                    "seconds");
    }
    for (const auto& p : props) {
        auto f = parse_ltl(p.formula, sys);
        Verdict v = bound >= 0 ? bounded_check(sys, f, bound, opts) : model_check(sys, f, opts);
        bool holds = v.kind != VerdictKind::Fails;
        bool met = !p.expectHolds || *p.expectHolds == holds;
        if (!met) ++mismatches;
        std::string expect = p.expectHolds ? (*p.expectHolds ? "holds" : "fails") : "-";
        if (asJson) {
            json row{{"name", p.name},
                     {"formula", p.formula},
                     {"verdict", to_string(v.kind)},
                     {"productStates", v.productStates},
                     {"systemStates", v.systemStates},
                     {"seconds", v.seconds},
                     {"met", met}};
            if (p.expectHolds) row["expect"] = expect;
            if (v.bound >= 0) row["bound"] = v.bound;
            if (v.lasso) row["lasso"] = lasso_json(sys, *v.lasso);
            rows.push_back(row);
            continue;
        }
        std::printf("%-14s %-18s %-8s %10zu %10zu %9.3f%s\n", p.name.c_str(), to_string(v.kind), expect.c_str(),
                    v.productStates, v.systemStates, v.seconds, met ? "" : "  MISMATCH");
        if (showLasso && v.lasso) std::cout << format_lasso(sys, *v.lasso) << "\n";
    }
    if (asJson) {
        std::cout << json{{"properties", rows}, {"mismatches", mismatches}}.dump(2) << "\n";
    } else if (mismatches) {
        std::cout << mismatches << " expectation(s) not met\n";
    }
    return mismatches ? kMismatch : kOk;
}

int cmd_export_smv(const Input& in, const std::vector<PropertySpec>& props, const std::string& out) {
    emit(out, export_smv(compile_source(in.text), props));
    return kOk;
}

void print_snapshot(const json& snap) {
    for (const auto& [k, v] : snap["variables"].items()) std::cout << "  " << k << " = " << v.dump() << "\n";
    if (!snap["received"].empty()) {
        std::cout << "  received:";
        for (const auto& r : snap["received"]) std::cout << " " << r.get<std::string>();
        std::cout << "\n";
    }
    if (snap["deadlock"].get<bool>()) std::cout << "  deadlock: only stutter steps remain\n";
    for (const auto& t : snap["enabled"]) {
        std::cout << "  [" << t["index"] << "] " << t["description"].get<std::string>() << "\n";
    }
}

// Line-oriented front end over the wire protocol. Anything that is not a
// keyword is taken as a step constraint; lines starting with `{` are raw
// protocol requests on the current session.
int cmd_simulate(const Input& in, std::uint64_t seed, std::istream& input) {
    ProtocolServer srv;
    json r = srv.handle({{"cmd", "load"}, {"model", in.text}, {"seed", seed}});
    if (r["status"] != "ok") {
        std::cerr << "error: " << r["payload"]["message"].get<std::string>() << "\n";
        return kUsage;
    }
    std::string id = r["session"];
    auto call = [&](json req) {
        req["session"] = id;
        json res = srv.handle(req);
        if (res["status"] != "ok") {
            std::cout << "error: " << res["payload"]["code"].get<std::string>() << ": "
                      << res["payload"]["message"].get<std::string>() << "\n";
            return json();
        }
        return res["payload"];
    };
    auto stepped = [](const json& p) {
        if (p.is_null()) return;
        int n = p["snapshot"]["traceLength"];
        if (p.contains("transition")) {
            std::cout << "step " << n << ": " << p["snapshot"]["trace"].back()["label"].get<std::string>() << "\n";
        } else {
            std::cout << "step " << n << ": stutter\n";
        }
    };
    print_snapshot(r["payload"]["snapshot"]);
    for (std::string line; std::cout << "> " << std::flush, std::getline(input, line);) {
        auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
        if (line == "quit" || line == "exit") break;
        if (line == "help") {
            std::cout << "random | choose N | inspect [K] | export [FILE] | import FILE | restart [SEED] | check "
                         "FORMULA | quit\notherwise the line is a constraint, e.g. next(client1-cLink) == c\n";
        } else if (line == "random" || line == "r") {
            stepped(call({{"cmd", "step"}, {"mode", "random"}}));
        } else if (line.rfind("choose ", 0) == 0) {
            stepped(call({{"cmd", "step"}, {"mode", "choice"}, {"choice", std::atoi(line.c_str() + 7)}}));
        } else if (line == "inspect" || line.rfind("inspect ", 0) == 0) {
            json req{{"cmd", "inspect"}};
            if (line.size() > 8) req["at"] = std::atoi(line.c_str() + 8);
            json p = call(req);
            if (!p.is_null()) print_snapshot(p);
        } else if (line == "export" || line.rfind("export ", 0) == 0) {
            json p = call({{"cmd", "trace-export"}});
            if (!p.is_null()) {
                if (line.size() > 7) {
                    write_file(line.substr(7), p.dump(2) + "\n");
                } else {
                    std::cout << p.dump() << "\n";
                }
            }
        } else if (line.rfind("import ", 0) == 0) {
            json p = call({{"cmd", "trace-import"}, {"trace", json::parse(read_file(line.substr(7)))}});
            if (!p.is_null()) print_snapshot(p["snapshot"]);
        } else if (line == "restart" || line.rfind("restart ", 0) == 0) {
            json p = call({{"cmd", "new"}, {"seed", line.size() > 8 ? std::stoull(line.substr(8)) : seed}});
            if (!p.is_null()) print_snapshot(p["snapshot"]);
        } else if (line.rfind("check ", 0) == 0) {
            json p = call({{"cmd", "check"}, {"formula", line.substr(6)}});
            if (!p.is_null()) std::cout << p["formula"].get<std::string>() << ": " << p["verdict"].get<std::string>() << "\n";
        } else if (line[0] == '{') {
            json req = json::parse(line, nullptr, false);
            if (req.is_discarded()) {
                std::cout << "error: malformed request\n";
                continue;
            }
            std::cout << call(req).dump() << "\n";
        } else {
            stepped(call({{"cmd", "step"}, {"mode", "constrained"}, {"constraint", line}}));
        }
    }
    return kOk;
}

int cmd_serve(int port, const std::string& staticDir, bool stdio) {
    ProtocolServer srv;
    if (stdio) {
        srv.serve_stream(std::cin, std::cout);
        return kOk;
    }
    HttpFrontend http(srv, staticDir);
    std::cerr << "serving on http://127.0.0.1:" << port << "/\n";
    http.run(port);
    return kOk;
}

int cmd_corpus(const std::string& name, const std::string& outDir) {
    if (name.empty()) {
        for (const auto& n : fixture_names()) std::cout << n << "\n";
        return kOk;
    }
    auto fx = load_fixture(name);
    if (outDir.empty()) {
        std::cout << fx.model;
        return kOk;
    }
    fs::create_directories(outDir);
    write_file(fs::path(outDir) / (name + ".rcp"), fx.model);
    if (!fx.properties.empty()) write_file(fs::path(outDir) / (name + ".ltl"), fx.properties);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rcheck: parse, visualise, model check, export and simulate reconfigurable multi-agent systems"};
    app.require_subcommand(1);
    std::string model, props, out, staticDir;
    std::vector<std::string> formulas;
    bool asJson = false, full = false, showLasso = false, stdio = false;
    int bound = -1, port = 8080;
    std::size_t budget = CheckOptions{}.budget;
    std::uint64_t seed = 0;
#ifdef RCHECK_WEB_DIR
    staticDir = RCHECK_WEB_DIR;
#endif
    const char* modelHelp = "model file, or @name for a bundled fixture";

    auto* parse = app.add_subcommand("parse", "typecheck and lint a model");
    parse->add_option("model", model, modelHelp)->required();
    parse->add_flag("--json", asJson);

    auto* automata = app.add_subcommand("automata", "structure automata per agent type (DOT, or JSON)");
    automata->add_option("model", model, modelHelp)->required();
    automata->add_option("-o,--out", out, "directory for one file per agent type");
    automata->add_flag("--json", asJson);
    automata->add_flag("--full", full, "label edges with whole commands");

    auto* check = app.add_subcommand("check", "model check LTL properties");
    check->add_option("model", model, modelHelp)->required();
    check->add_option("-p,--props", props, "property file (`name : formula ; expect holds|fails`)");
    check->add_option("-f,--formula", formulas, "ad hoc formula, repeatable");
    check->add_option("-k,--bound", bound, "only look for counterexamples of at most k steps")->check(CLI::NonNegativeNumber);
    check->add_option("--budget", budget, "product state budget");
    check->add_flag("--json", asJson);
    check->add_flag("--lasso", showLasso, "print counterexamples");

    auto* smv = app.add_subcommand("export-smv", "write an SMV model");
    smv->add_option("model", model, modelHelp)->required();
    smv->add_option("-p,--props", props, "property file to add as LTLSPECs");
    smv->add_option("-o,--out", out, "output file (default stdout)");

    auto* sim = app.add_subcommand("simulate", "interactive simulation on stdin");
    sim->add_option("model", model, modelHelp)->required();
    sim->add_option("-s,--seed", seed);

    auto* serve = app.add_subcommand("serve", "wire protocol over HTTP (POST /rpc) or stdio");
    serve->add_option("--port", port)->check(CLI::Range(0, 65535));
    serve->add_option("--static", staticDir, "directory of web assets served under /");
    serve->add_flag("--stdio", stdio, "newline-delimited JSON on stdin/stdout instead of HTTP");

    std::string fixture;
    auto* corpus = app.add_subcommand("corpus", "list or extract bundled fixtures");
    corpus->add_option("name", fixture);
    corpus->add_option("-o,--out", out, "directory for NAME.rcp and NAME.ltl");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (corpus->parsed()) return cmd_corpus(fixture, out);
        if (serve->parsed()) return cmd_serve(port, staticDir, stdio);
        Input in = read_model(model);
        if (parse->parsed()) return cmd_parse(in, asJson);
        if (automata->parsed()) return cmd_automata(in, out, asJson, full);
        if (check->parsed()) {
            return cmd_check(in, properties(in, props, formulas), bound, budget, asJson, showLasso);
        }
        if (smv->parsed()) return cmd_export_smv(in, props.empty() ? std::vector<PropertySpec>{} : properties(in, props, {}), out);
        if (sim->parsed()) return cmd_simulate(in, seed, std::cin);
    } catch (const Error& e) {
        std::cerr << (model.empty() ? "rcheck" : model) << (e.position() ? ":" : ": ") << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "rcheck: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
