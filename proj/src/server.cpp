#include "tileterm/server.hpp"

#include <fstream>
#include <future>
#include <random>
#include <regex>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "tileterm/report.hpp"

namespace tileterm {

using nlohmann::json;

struct ProofApi::Http {
    httplib::Server server;
};

namespace {

ApiResponse error(int status, const std::string& msg) { return {status, {{"error", msg}}, ""}; }

std::string new_token() {
    static std::mutex mu;
    static std::mt19937_64 rng{std::random_device{}()};
    std::lock_guard lock(mu);
    std::ostringstream ss;
    ss << std::hex << rng() << rng();
    return ss.str();
}

}  // namespace

ProofApi::ProofApi(Workspace ws, ServerOptions opts)
    : ws_(std::move(ws)), opts_(std::move(opts)), http_(std::make_unique<Http>()) {
    restore();
}

ProofApi::~ProofApi() { stop(); }

std::size_t ProofApi::session_count() const {
    std::lock_guard lock(store_mu_);
    return sessions_.size();
}

ApiResponse ProofApi::handle(const std::string& method, const std::string& path,
                             const std::string& body) {
    static const std::regex system_re("^/api/systems/([^/]+)$");
    static const std::regex session_re("^/api/sessions/([^/]+)$");
    static const std::regex action_re("^/api/sessions/([^/]+)/(analyze|undo|script)$");
    expire();
    std::smatch m;
    try {
        if (method == "GET" && path == "/api/systems") return list_systems();
        if (method == "GET" && std::regex_match(path, m, system_re)) return get_system(m[1]);
        if (method == "GET" && path == "/api/tiles") return list_tiles();
        if (method == "POST" && path == "/api/sessions") return create_session(body);
        if (method == "GET" && std::regex_match(path, m, session_re)) return get_session(m[1]);
        if (std::regex_match(path, m, action_re)) {
            if (method == "POST" && m[2] == "analyze") return analyze(m[1], body);
            if (method == "POST" && m[2] == "undo") return undo(m[1]);
            if (method == "GET" && m[2] == "script") return export_script(m[1]);
        }
    } catch (const std::exception& e) {
        return error(500, e.what());
    }
    return error(404, "no such endpoint: " + method + " " + path);
}

ApiResponse ProofApi::list_systems() const {
    json out = json::array();
    for (std::size_t i = 0; i < ws_.systems.size(); ++i)
        out.push_back({{"id", ws_.systems[i].name},
                       {"index", i},
                       {"name", ws_.systems[i].name},
                       {"ruleCount", ws_.systems[i].rules.size()}});
    return {200, out, ""};
}

ApiResponse ProofApi::get_system(const std::string& id) const {
    const auto* sys = ws_.find_system(id);
    if (!sys) return error(404, "unknown system '" + id + "'");
    json rules = json::array();
    for (const auto& r : sys->rules) rules.push_back(rule_json(r));
    return {200, {{"id", sys->name}, {"name", sys->name}, {"text", sys->text}, {"rules", rules}}, ""};
}

ApiResponse ProofApi::list_tiles() const {
    json out = json::array();
    for (std::size_t i = 0; i < ws_.tiles.size(); ++i)
        out.push_back({{"id", ws_.tiles[i].tile.name},
                       {"index", i},
                       {"name", ws_.tiles[i].tile.name},
                       {"graph", graph_json(*ws_.tiles[i].tile.graph)}});
    return {200, out, ""};
}

json ProofApi::session_json(const Session& s) const {
    json j = transcript_json(s.state);
    j["sessionId"] = s.id;
    j["systemId"] = ws_.systems[s.system].name;
    return j;
}

ApiResponse ProofApi::create_session(const std::string& body) {
    json req = json::parse(body, nullptr, false);
    if (req.is_discarded() || !req.is_object() || !req.contains("systemId") || !req["systemId"].is_string())
        return error(422, "expected {\"systemId\": string}");
    std::string sid = req["systemId"];
    std::size_t idx = ws_.systems.size();
    for (std::size_t i = 0; i < ws_.systems.size(); ++i)
        if (ws_.systems[i].name == sid) idx = i;
    if (idx == ws_.systems.size()) return error(404, "unknown system '" + sid + "'");

    auto s = std::make_shared<Session>();
    s->id = new_token();
    s->system = idx;
    s->state = ProofState::start(ws_.systems[idx].name, ws_.systems[idx].rules);
    s->created = s->updated = std::chrono::steady_clock::now();
    {
        std::lock_guard lock(store_mu_);
        sessions_[s->id] = s;
    }
    persist(*s);
    return {201, session_json(*s), ""};
}

std::shared_ptr<ProofApi::Session> ProofApi::find(const std::string& id) {
    std::lock_guard lock(store_mu_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

std::optional<TileConfig> ProofApi::parse_entries(const json& entries, std::string& err) const {
    if (!entries.is_array() || entries.empty()) {
        err = "entries must be a non-empty array";
        return std::nullopt;
    }
    TileConfig cfg;
    for (const auto& e : entries) {
        if (!e.is_object() || !e.contains("tileId") || !e.contains("weight") || !e.contains("class")) {
            err = "each entry needs tileId, weight and class";
            return std::nullopt;
        }
        const TileFile* tile = nullptr;
        if (e["tileId"].is_string()) tile = ws_.find_tile(e["tileId"].get<std::string>());
        else if (e["tileId"].is_number_unsigned() && e["tileId"].get<std::size_t>() < ws_.tiles.size())
            tile = &ws_.tiles[e["tileId"].get<std::size_t>()];
        if (!tile) {
            err = "unknown tile " + e["tileId"].dump();
            return std::nullopt;
        }
        if (!e["weight"].is_number_integer() || e["weight"].get<long long>() < 1) {
            err = "weight must be an integer >= 1";
            return std::nullopt;
        }
        if (!e["class"].is_string() || e["class"].get<std::string>().size() != 1 ||
            std::string("rmhRMH").find(e["class"].get<std::string>()[0]) == std::string::npos) {
            err = "class must be one of \"r\", \"m\", \"h\"";
            return std::nullopt;
        }
        cfg.entries.push_back({tile->tile, e["weight"].get<std::uint64_t>(),
                               parse_class_char(e["class"].get<std::string>()[0])});
    }
    try {
        check_config(cfg);
    } catch (const std::invalid_argument& ex) {
        err = ex.what();
        return std::nullopt;
    }
    return cfg;
}

ApiResponse ProofApi::analyze(const std::string& id, const std::string& body) {
    auto s = find(id);
    if (!s) return error(404, "unknown session '" + id + "'");
    json req = json::parse(body, nullptr, false);
    if (req.is_discarded() || !req.is_object() || !req.contains("entries"))
        return error(422, "expected {\"entries\": [...]}");
    std::string err;
    auto cfg = parse_entries(req["entries"], err);
    if (!cfg) return error(422, err);

    std::unique_lock lock(s->mu, std::try_to_lock);
    if (!lock.owns_lock()) return error(409, "session is being modified by another request");
    if (s->state.terminating()) return error(409, "the system is already proven terminating");

    auto work = std::make_shared<std::packaged_task<std::pair<ProofState, Analysis>()>>(
        [state = s->state, c = *cfg]() mutable {
            auto a = analyze_system(state, c);
            return std::make_pair(std::move(state), std::move(a));
        });
    auto fut = work->get_future();
    std::thread([work] { (*work)(); }).detach();
    if (fut.wait_for(opts_.analysis_budget) != std::future_status::ready)
        return error(503, "analysis timeout");
    auto [next, analysis] = fut.get();
    s->state = std::move(next);
    s->updated = std::chrono::steady_clock::now();
    persist(*s);

    json out = analysis_json(analysis, s->state);
    out["reports"] = out["verdicts"];
    out["stage"] = s->state.transcript.size();
    out["sessionId"] = s->id;
    out["report"] = render_report(analysis, s->state, *cfg);
    return {200, out, ""};
}

ApiResponse ProofApi::undo(const std::string& id) {
    auto s = find(id);
    if (!s) return error(404, "unknown session '" + id + "'");
    std::unique_lock lock(s->mu, std::try_to_lock);
    if (!lock.owns_lock()) return error(409, "session is being modified by another request");
    if (!s->state.undo()) return error(409, "nothing to undo");
    s->updated = std::chrono::steady_clock::now();
    persist(*s);
    return {200, session_json(*s), ""};
}

ApiResponse ProofApi::get_session(const std::string& id) {
    auto s = find(id);
    if (!s) return error(404, "unknown session '" + id + "'");
    std::shared_lock lock(s->mu);
    return {200, session_json(*s), ""};
}

ApiResponse ProofApi::export_script(const std::string& id) {
    auto s = find(id);
    if (!s) return error(404, "unknown session '" + id + "'");
    std::shared_lock lock(s->mu);
    std::string text = "# proof transcript for " + s->state.system + "\n";
    text += "select " + std::to_string(s->system) + "\n";
    for (const auto& st : s->state.transcript) {
        text += "use";
        for (const auto& e : st.cfg.entries) {
            std::size_t idx = 0;
            for (std::size_t i = 0; i < ws_.tiles.size(); ++i)
                if (ws_.tiles[i].tile.name == e.tile.name) idx = i;
            text += " " + std::to_string(idx) + " " + std::to_string(e.weight) + " " + class_char(e.cls);
        }
        text += "\n";
        for (const auto& v : st.verdicts)
            text += "expect status " + v.rule + " " + status_name(v.status) + "\n";
    }
    if (s->state.terminating()) text += "expect terminating\n";
    return {200, nullptr, text};
}

void ProofApi::expire() {
    auto now = std::chrono::steady_clock::now();
    std::vector<std::string> gone;
    {
        std::lock_guard lock(store_mu_);
        for (auto it = sessions_.begin(); it != sessions_.end();) {
            if (now - it->second->updated > opts_.idle_timeout) {
                gone.push_back(it->first);
                it = sessions_.erase(it);
            } else {
                ++it;
            }
        }
    }
    if (opts_.persist_dir)
        for (const auto& id : gone) {
            std::error_code ec;
            std::filesystem::remove(*opts_.persist_dir / (id + ".json"), ec);
        }
}

void ProofApi::persist(const Session& s) const {
    if (!opts_.persist_dir) return;
    std::error_code ec;
    std::filesystem::create_directories(*opts_.persist_dir, ec);
    json stages = json::array();
    for (const auto& st : s.state.transcript) stages.push_back(config_json(st.cfg));
    json snap = {{"sessionId", s.id}, {"systemId", s.state.system}, {"stages", stages}};
    std::ofstream(*opts_.persist_dir / (s.id + ".json")) << snap.dump(2) << "\n";
}

void ProofApi::restore() {
    if (!opts_.persist_dir || !std::filesystem::is_directory(*opts_.persist_dir)) return;
    for (const auto& entry : std::filesystem::directory_iterator(*opts_.persist_dir)) {
        if (entry.path().extension() != ".json") continue;
        std::ifstream in(entry.path());
        json snap = json::parse(in, nullptr, false);
        if (snap.is_discarded() || !snap.contains("sessionId") || !snap.contains("systemId")) continue;
        const auto* sys = ws_.find_system(snap["systemId"].get<std::string>());
        if (!sys) continue;
        auto s = std::make_shared<Session>();
        s->id = snap["sessionId"];
        s->system = static_cast<std::size_t>(sys - ws_.systems.data());
        s->state = ProofState::start(sys->name, sys->rules);
        bool ok = true;
        for (const auto& st : snap.value("stages", json::array())) {
            json entries = json::array();
            for (const auto& e : st)
                entries.push_back({{"tileId", e["tile"]}, {"weight", e["weight"]}, {"class", e["class"]}});
            std::string err;
            auto cfg = parse_entries(entries, err);
            if (!cfg) { ok = false; break; }
            analyze_system(s->state, *cfg);
        }
        if (!ok) continue;
        s->created = s->updated = std::chrono::steady_clock::now();
        sessions_[s->id] = s;
    }
}

int ProofApi::bind(const std::string& host, int port) {
    auto& srv = http_->server;
    auto cors = opts_.cors_origin;
    srv.set_default_headers({{"Access-Control-Allow-Origin", cors},
                             {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                             {"Access-Control-Allow-Headers", "Content-Type"}});
    auto route = [this](const httplib::Request& req, httplib::Response& res) {
        auto r = handle(req.method, req.path, req.body);
        res.status = r.status;
        if (!r.text.empty()) res.set_content(r.text, "text/plain");
        else res.set_content(r.body.dump(), "application/json");
    };
    srv.Get(R"(/api/.*)", route);
    srv.Post(R"(/api/.*)", route);
    srv.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    if (opts_.static_dir) srv.set_mount_point("/", opts_.static_dir->string());
    if (port == 0) return srv.bind_to_any_port(host);
    return srv.bind_to_port(host, port) ? port : -1;
}

bool ProofApi::listen_after_bind() { return http_->server.listen_after_bind(); }

void ProofApi::stop() {
    if (http_) http_->server.stop();
}

}  // namespace tileterm
