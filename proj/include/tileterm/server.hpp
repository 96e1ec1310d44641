#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include "json.hpp"
#include "tileterm/termination.hpp"
#include "tileterm/workspace.hpp"

namespace tileterm {

struct ServerOptions {
    std::optional<std::filesystem::path> persist_dir;
    std::optional<std::filesystem::path> static_dir;
    std::chrono::milliseconds analysis_budget{30000};
    std::chrono::seconds idle_timeout{24 * 3600};
    std::string cors_origin = "*";
};

struct ApiResponse {
    int status = 200;
    nlohmann::json body;
    std::string text;  // used instead of body when non-empty
};

class ProofApi {
public:
    ProofApi(Workspace ws, ServerOptions opts);
    ~ProofApi();

    // Routing without a socket; `path` excludes the query string.
    ApiResponse handle(const std::string& method, const std::string& path, const std::string& body);

    // Binds to host:port (0 picks a free port) and returns the port, or -1.
    int bind(const std::string& host, int port);
    // Blocks until stop().
    bool listen_after_bind();
    void stop();

    std::size_t session_count() const;

private:
    struct Session {
        std::string id;
        std::size_t system;
        ProofState state;
        std::chrono::steady_clock::time_point created, updated;
        std::shared_mutex mu;
    };

    ApiResponse list_systems() const;
    ApiResponse get_system(const std::string& id) const;
    ApiResponse list_tiles() const;
    ApiResponse create_session(const std::string& body);
    ApiResponse analyze(const std::string& id, const std::string& body);
    ApiResponse undo(const std::string& id);
    ApiResponse get_session(const std::string& id);
    ApiResponse export_script(const std::string& id);

    std::shared_ptr<Session> find(const std::string& id);
    void expire();
    void persist(const Session& s) const;
    void restore();
    nlohmann::json session_json(const Session& s) const;
    std::optional<TileConfig> parse_entries(const nlohmann::json& entries, std::string& error) const;

    Workspace ws_;
    ServerOptions opts_;
    mutable std::mutex store_mu_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    struct Http;
    std::unique_ptr<Http> http_;
};

}  // namespace tileterm
