#include "tileterm/shell.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "tileterm/report.hpp"

namespace tileterm {

namespace {

const char* kSelectionHelp =
    ">> Available commands:\n"
    "select [n]  : select system n for termination proving\n"
    "inspect [n] : inspect option (system/tile) n in detail\n"
    "systems     : list the available systems\n"
    "help        : print all available commands\n"
    "exit        : exit the program\n";

const char* kProofHelp =
    ">> Available commands:\n"
    "use [i w c]+ :\n"
    "use tile i with weight w, and count morphisms of class c, where:\n"
    "- i and w are integers (and w is positive), and \n"
    "- c is a character (r: regular monos, m: monos, h: homomorphisms)\n"
    "multiple tiles can be specified. \n"
    "for example, 'use 3 4 h 5 9 r' uses:\n"
    "- tile 3 with weight 4 (counting homomorphisms), and\n"
    "- tile 5 with weight 9 (counting regular monos)\n"
    "inspect [n] : inspect option (system/tile) n in detail\n"
    "back : return to system selection mode\n"
    "help : print all available commands\n"
    "tiles : list the available tiles\n"
    "exit : exit the program\n";

std::vector<std::string> words(const std::string& line) {
    std::istringstream ss(line);
    std::vector<std::string> out;
    std::string w;
    while (ss >> w) out.push_back(w);
    return out;
}

std::optional<long long> integer(const std::string& s) {
    long long v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
    return v;
}

std::string with_newline(std::string s) {
    if (!s.empty() && s.back() != '\n') s += '\n';
    return s;
}

CommandResult fail(std::string msg) { return {">> " + msg + "\n", false, true}; }

}  // namespace

TileConfig parse_use_arguments(const std::vector<std::string>& args, const Workspace& ws) {
    if (args.empty() || args.size() % 3 != 0)
        throw std::invalid_argument("expected one or more triples 'i w c'");
    TileConfig cfg;
    std::set<long long> seen;
    for (std::size_t k = 0; k < args.size(); k += 3) {
        auto i = integer(args[k]);
        auto w = integer(args[k + 1]);
        if (!i || *i < 0 || static_cast<std::size_t>(*i) >= ws.tiles.size())
            throw std::invalid_argument("'" + args[k] + "' is not a tile index");
        if (!w || *w < 1) throw std::invalid_argument("weight '" + args[k + 1] + "' is not a positive integer");
        if (args[k + 2].size() != 1) throw std::invalid_argument("class '" + args[k + 2] + "' is not one of r, m, h");
        char c = args[k + 2][0];
        if (c != 'r' && c != 'm' && c != 'h')
            throw std::invalid_argument("class '" + args[k + 2] + "' is not one of r, m, h");
        if (!seen.insert(*i).second) throw std::invalid_argument("tile " + args[k] + " is used twice");
        cfg.entries.push_back({ws.tiles[*i].tile, static_cast<std::uint64_t>(*w), parse_class_char(c)});
    }
    return cfg;
}

Shell::Shell(Workspace ws) : ws_(std::move(ws)) {}

std::string Shell::banner() const {
    std::string s = "=== tileterm REPL ===\n";
    for (const auto& w : ws_.warnings) s += ">> Warning: " + w + "\n";
    s += ">> You are in system selection mode.\n";
    s += ">> Type 'help' to view the available commands.\n";
    return s;
}

CommandResult Shell::execute(const std::string& line) {
    auto ws = words(line);
    if (ws.empty()) return {};
    std::string cmd = ws[0];
    std::vector<std::string> args(ws.begin() + 1, ws.end());
    if (cmd == "exit") return {"", true, false};
    return proof_ ? proof_command(cmd, args) : selection_command(cmd, args);
}

CommandResult Shell::selection_command(const std::string& cmd, const std::vector<std::string>& args) {
    auto index = [&](std::size_t limit) -> std::optional<std::size_t> {
        if (args.size() != 1) return std::nullopt;
        auto n = integer(args[0]);
        if (!n || *n < 0 || static_cast<std::size_t>(*n) >= limit) return std::nullopt;
        return static_cast<std::size_t>(*n);
    };
    if (cmd == "help") return {kSelectionHelp};
    if (cmd == "systems") {
        std::string s = ">> The following systems were loaded:\n";
        for (std::size_t i = 0; i < ws_.systems.size(); ++i)
            s += "(" + std::to_string(i) + ") " + ws_.systems[i].name + "\n";
        return {s};
    }
    if (cmd == "inspect") {
        auto n = index(ws_.systems.size());
        if (!n) return fail("Usage: inspect n, where n is a system index.");
        const auto& sys = ws_.systems[*n];
        return {"SYSTEM: " + sys.name + "\n" + with_newline(sys.text)};
    }
    if (cmd == "select") {
        auto n = index(ws_.systems.size());
        if (!n) return fail("Usage: select n, where n is a system index.");
        const auto& sys = ws_.systems[*n];
        proof_ = ProofState::start(sys.name, sys.rules);
        proof_system_ = *n;
        std::string s = ">> Entering proof mode for system " + sys.name + ".\n";
        s += ">> The system consists of " + std::to_string(sys.rules.size()) +
             (sys.rules.size() == 1 ? " rule.\n" : " rules.\n");
        s += ">> The system is as follows:\n\n" + with_newline(sys.text);
        return {s};
    }
    return fail("Unknown command '" + cmd + "'. Type 'help' to view the available commands.");
}

CommandResult Shell::proof_command(const std::string& cmd, const std::vector<std::string>& args) {
    if (cmd == "help") return {kProofHelp};
    if (cmd == "tiles") {
        std::string s = ">> The following tiles were loaded:\n";
        for (std::size_t i = 0; i < ws_.tiles.size(); ++i)
            s += "(" + std::to_string(i) + ") " + ws_.tiles[i].tile.name + "\n";
        return {s};
    }
    if (cmd == "inspect") {
        std::optional<long long> n = args.size() == 1 ? integer(args[0]) : std::nullopt;
        if (!n || *n < 0 || static_cast<std::size_t>(*n) >= ws_.tiles.size())
            return fail("Usage: inspect n, where n is a tile index.");
        const auto& t = ws_.tiles[*n].tile;
        return {"TILE: " + t.name + "\n" + serialize_tile(*t.graph)};
    }
    if (cmd == "back") {
        proof_.reset();
        return {">> Returning to system selection mode.\n"};
    }
    if (cmd == "use") return use(args);
    return fail("Unknown command '" + cmd + "'. Type 'help' to view the available commands.");
}

CommandResult Shell::use(const std::vector<std::string>& args) {
    TileConfig cfg;
    try {
        cfg = parse_use_arguments(args, ws_);
    } catch (const std::invalid_argument& e) {
        return fail(std::string("Invalid use command: ") + e.what() + ". Type 'help' for the syntax.");
    }
    auto analysis = analyze_system(*proof_, cfg);
    std::string s = render_report(analysis, *proof_, cfg);
    history_.push_back({proof_->system, cfg, analysis, proof_->remaining_names(), proof_->terminating()});
    s += "\n";
    if (proof_->terminating()) {
        s += ">> The pruned system is empty!\n";
        s += ">> You have proven system " + proof_->system + " terminating.\n";
        s += ">> Returning to system selection mode.\n";
        proof_.reset();
    } else if (analysis.pruned) {
        std::string names;
        for (const auto& n : proof_->remaining_names()) names += (names.empty() ? "" : ", ") + n;
        s += ">> Continuing with the pruned system, which contains rules: " + names + "\n";
    } else {
        s += ">> No rules were pruned.\n";
    }
    return {s};
}

int run_repl(Shell& shell, std::istream& in, std::ostream& out) {
    out << shell.banner();
    std::string line;
    while (true) {
        out << Shell::prompt() << std::flush;
        if (!std::getline(in, line)) {
            out << "\n";
            return 0;
        }
        auto r = shell.execute(line);
        out << r.output;
        if (r.exit) return 0;
    }
}

int run_batch(const Workspace& ws, const std::filesystem::path& script, bool json,
              std::ostream& out, std::ostream& err) {
    std::ifstream in(script);
    if (!in) {
        err << "cannot read script " << script.string() << "\n";
        return 2;
    }
    Shell shell(ws);
    nlohmann::json commands = nlohmann::json::array();
    nlohmann::json expectations = nlohmann::json::array();
    nlohmann::json analyses = nlohmann::json::array();
    int code = 0;
    std::string line;
    std::size_t lineno = 0;
    if (!json) out << shell.banner();

    while (std::getline(in, line)) {
        ++lineno;
        auto ws_ = words(line);
        if (ws_.empty() || ws_[0][0] == '#') continue;
        if (ws_[0] == "expect") {
            bool ok = false;
            std::string detail;
            const auto& hist = shell.history();
            if (ws_.size() == 2 && ws_[1] == "terminating") {
                ok = !hist.empty() && hist.back().terminating;
                detail = hist.empty() ? "no analysis has run" : "remaining rules: " + std::to_string(hist.back().remaining.size());
            } else if (ws_.size() == 4 && ws_[1] == "status") {
                if (!hist.empty())
                    for (const auto& v : hist.back().analysis.verdicts)
                        if (v.rule == ws_[2]) {
                            ok = status_name(v.status) == ws_[3];
                            detail = "status is " + status_name(v.status);
                        }
                if (detail.empty()) detail = "rule not analyzed";
            } else {
                err << script.string() << ":" << lineno << ": malformed expect\n";
                return 2;
            }
            expectations.push_back({{"line", lineno}, {"text", line}, {"ok", ok}, {"detail", detail}});
            if (!json) out << (ok ? ">> expectation holds: " : ">> EXPECTATION FAILED: ") << line << " (" << detail << ")\n";
            if (!ok) code = 1;
            continue;
        }
        auto before = shell.history().size();
        auto r = shell.execute(line);
        if (!json) out << Shell::prompt() << line << "\n" << r.output;
        commands.push_back({{"line", lineno}, {"command", line}, {"error", r.error}});
        if (r.error) {
            err << script.string() << ":" << lineno << ": " << r.output;
            if (json) out << nlohmann::json{{"error", r.output}, {"line", lineno}}.dump(2) << "\n";
            return 2;
        }
        if (shell.history().size() > before) {
            const auto& rec = shell.history().back();
            nlohmann::json a = {{"system", rec.system}, {"entries", config_json(rec.cfg)}};
            nlohmann::json vs = nlohmann::json::array();
            for (const auto& v : rec.analysis.verdicts) vs.push_back(verdict_json(v));
            a["verdicts"] = vs;
            a["pruned"] = rec.analysis.pruned;
            a["remaining"] = rec.remaining;
            a["terminating"] = rec.terminating;
            analyses.push_back(std::move(a));
        }
        if (r.exit) break;
    }
    if (json)
        out << nlohmann::json{{"script", script.string()},
                              {"commands", commands},
                              {"analyses", analyses},
                              {"expectations", expectations},
                              {"exitCode", code}}
                   .dump(2)
            << "\n";
    return code;
}

}  // namespace tileterm
