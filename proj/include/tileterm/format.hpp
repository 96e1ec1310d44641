#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tileterm/rule.hpp"
#include "tileterm/termination.hpp"

namespace tileterm {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t col);
    std::size_t line() const { return line_; }
    std::size_t col() const { return col_; }

private:
    std::size_t line_, col_;
};

// A graph literal; surrounding braces are optional.
LabeledGraph parse_graph(std::string_view text);

// Rules come back validated and completed.
std::vector<PbpoRule> parse_system(std::string_view text);

Tile parse_tile(std::string_view text, std::string name);

// Reconstructs the morphism dom -> cod from element ids: same id, else the
// unique target whose dot-separated atoms contain the source's atoms; edges may
// also fall back to the unique parallel edge with the same label.
GraphMorphism infer_morphism(const GraphPtr& dom, const GraphPtr& cod, const std::string& what);

// "{ a:0 -E:0-> b:0 c:0 }", edges sorted by id, then isolated vertices.
std::string serialize_graph(const LabeledGraph& g);

// One item per line, no braces (tile files and tile listings).
std::string serialize_tile(const LabeledGraph& g);

std::string serialize_system(const std::vector<PbpoRule>& rules);

}  // namespace tileterm
