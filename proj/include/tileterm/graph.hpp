#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tileterm {

using Label = std::string;

struct LabelSet {
    std::set<Label> vertex_labels;
    std::set<Label> edge_labels;

    void merge(const LabelSet& other);
    bool operator==(const LabelSet&) const = default;
};

struct Vertex {
    std::string id;
    Label label;
};

struct Edge {
    std::string id;
    std::size_t src;
    std::size_t tgt;
    Label label;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Finite directed multigraph with vertex and edge labels. Element order is
// insertion order; every construction in the library inserts deterministically.
class LabeledGraph {
public:
    std::size_t add_vertex(std::string id, Label label);
    std::size_t add_edge(std::string id, std::size_t src, std::size_t tgt, Label label);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Vertex& vertex(std::size_t i) const { return vertices_.at(i); }
    const Edge& edge(std::size_t i) const { return edges_.at(i); }
    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return vertices_.empty(); }

    std::optional<std::size_t> find_vertex(std::string_view id) const;
    std::optional<std::size_t> find_edge(std::string_view id) const;

    LabelSet labels() const;

    bool operator==(const LabeledGraph& other) const;

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::unordered_map<std::string, std::size_t> vertex_index_;
    std::unordered_map<std::string, std::size_t> edge_index_;
};

using GraphPtr = std::shared_ptr<const LabeledGraph>;

inline GraphPtr share(LabeledGraph g) { return std::make_shared<const LabeledGraph>(std::move(g)); }

// Same structure with ids replaced by v0.., e0.. in current order.
LabeledGraph renumbered(const LabeledGraph& g);

// Disjoint union; clashing ids of b get a "_k" suffix.
LabeledGraph disjoint_union(const LabeledGraph& a, const LabeledGraph& b);

}  // namespace tileterm
