#include "tileterm/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

namespace tileterm {

namespace fs = std::filesystem;

const SystemFile* Workspace::find_system(const std::string& name) const {
    for (const auto& s : systems)
        if (s.name == name) return &s;
    return nullptr;
}

const TileFile* Workspace::find_tile(const std::string& name) const {
    for (const auto& t : tiles)
        if (t.tile.name == name) return &t;
    return nullptr;
}

std::string display_name(const fs::path& file) {
    static const std::regex prefix("^[0-9]+-");
    return std::regex_replace(file.stem().string(), prefix, "", std::regex_constants::format_first_only);
}

namespace {

std::vector<fs::path> sorted_files(const fs::path& dir, const std::string& ext) {
    std::vector<fs::path> out;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) return out;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (!entry.is_regular_file()) continue;
        if (!ext.empty() && entry.path().extension() != ext) continue;
        if (entry.path().filename().string().front() == '.') continue;
        out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    return out;
}

std::optional<std::string> slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

Workspace load_workspace(const fs::path& root) {
    Workspace ws;
    ws.root = root;
    if (!fs::is_directory(root)) ws.warnings.push_back("workspace " + root.string() + " does not exist");

    for (const auto& p : sorted_files(root / "systems", ".pbpop")) {
        auto text = slurp(p);
        if (!text) {
            ws.warnings.push_back(p.string() + ": cannot read file");
            continue;
        }
        auto name = display_name(p);
        if (ws.find_system(name)) {
            ws.warnings.push_back(p.string() + ": duplicate system name '" + name + "'");
            continue;
        }
        try {
            ws.systems.push_back({name, p, *text, parse_system(*text)});
        } catch (const std::exception& e) {
            ws.warnings.push_back(p.string() + ": " + e.what());
        }
    }
    for (const auto& p : sorted_files(root / "tiles", "")) {
        auto text = slurp(p);
        if (!text) {
            ws.warnings.push_back(p.string() + ": cannot read file");
            continue;
        }
        auto name = display_name(p);
        if (ws.find_tile(name)) {
            ws.warnings.push_back(p.string() + ": duplicate tile name '" + name + "'");
            continue;
        }
        try {
            ws.tiles.push_back({parse_tile(*text, name), p, *text});
        } catch (const std::exception& e) {
            ws.warnings.push_back(p.string() + ": " + e.what());
        }
    }
    return ws;
}

}  // namespace tileterm
