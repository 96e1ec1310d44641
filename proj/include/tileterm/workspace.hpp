#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tileterm/format.hpp"

namespace tileterm {

struct SystemFile {
    std::string name;
    std::filesystem::path path;
    std::string text;
    std::vector<PbpoRule> rules;
};

struct TileFile {
    Tile tile;
    std::filesystem::path path;
    std::string text;
};

struct Workspace {
    std::filesystem::path root;
    std::vector<SystemFile> systems;
    std::vector<TileFile> tiles;
    std::vector<std::string> warnings;

    const SystemFile* find_system(const std::string& name) const;
    const TileFile* find_tile(const std::string& name) const;
};

// "3-folding_an_edge.pbpop" -> "folding_an_edge"
std::string display_name(const std::filesystem::path& file);

// Systems from root/systems/*.pbpop and tiles from root/tiles/*, in sorted
// filename order. Unreadable or malformed files become warnings.
Workspace load_workspace(const std::filesystem::path& root);

}  // namespace tileterm
