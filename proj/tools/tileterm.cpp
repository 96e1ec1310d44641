#include <csignal>
#include <iostream>

#include "CLI11.hpp"
#include "tileterm/server.hpp"
#include "tileterm/shell.hpp"

namespace {
tileterm::ProofApi* g_api = nullptr;
void on_signal(int) {
    if (g_api) g_api->stop();
}
}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tileterm: termination proofs for PBPO+ graph transformation systems"};
    app.require_subcommand(1);
    std::string workspace = "./corpus";

    auto* repl = app.add_subcommand("repl", "interactive proof shell");
    repl->add_option("--workspace", workspace, "directory with systems/ and tiles/");

    std::string script;
    bool json = false;
    auto* batch = app.add_subcommand("batch", "replay a command script");
    batch->add_option("script", script, "script file")->required();
    batch->add_flag("--json", json, "print a JSON report");
    batch->add_option("--workspace", workspace, "directory with systems/ and tiles/");

    int port = 8080;
    std::string host = "127.0.0.1";
    std::string persist, static_dir;
    int budget = 30;
    auto* serve = app.add_subcommand("serve", "HTTP API for the proof explorer");
    serve->add_option("--port", port, "port to listen on");
    serve->add_option("--host", host, "address to bind");
    serve->add_option("--workspace", workspace, "directory with systems/ and tiles/");
    serve->add_option("--persist", persist, "directory for session snapshots");
    serve->add_option("--static", static_dir, "directory served under /");
    serve->add_option("--budget", budget, "analysis time budget in seconds");

    CLI11_PARSE(app, argc, argv);

    auto ws = tileterm::load_workspace(workspace);

    if (*repl) {
        tileterm::Shell shell(std::move(ws));
        return tileterm::run_repl(shell, std::cin, std::cout);
    }
    if (*batch) return tileterm::run_batch(ws, script, json, std::cout, std::cerr);

    for (const auto& w : ws.warnings) std::cerr << "warning: " << w << "\n";
    tileterm::ServerOptions opts;
    if (!persist.empty()) opts.persist_dir = persist;
    if (!static_dir.empty()) opts.static_dir = static_dir;
    opts.analysis_budget = std::chrono::seconds(budget);
    tileterm::ProofApi api(std::move(ws), opts);
    int bound = api.bind(host, port);
    if (bound < 0) {
        std::cerr << "cannot bind " << host << ":" << port << "\n";
        return 1;
    }
    g_api = &api;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cerr << "listening on http://" << host << ":" << bound << "\n";
    api.listen_after_bind();
    return 0;
}
