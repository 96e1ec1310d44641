#include "tileterm/graph.hpp"

namespace tileterm {

void LabelSet::merge(const LabelSet& other) {
    vertex_labels.insert(other.vertex_labels.begin(), other.vertex_labels.end());
    edge_labels.insert(other.edge_labels.begin(), other.edge_labels.end());
}

std::size_t LabeledGraph::add_vertex(std::string id, Label label) {
    if (vertex_index_.count(id)) throw GraphError("duplicate vertex id '" + id + "'");
    std::size_t i = vertices_.size();
    vertex_index_.emplace(id, i);
    vertices_.push_back({std::move(id), std::move(label)});
    return i;
}

std::size_t LabeledGraph::add_edge(std::string id, std::size_t src, std::size_t tgt, Label label) {
    if (edge_index_.count(id)) throw GraphError("duplicate edge id '" + id + "'");
    if (src >= vertices_.size() || tgt >= vertices_.size())
        throw GraphError("edge '" + id + "' has an endpoint outside the graph");
    std::size_t i = edges_.size();
    edge_index_.emplace(id, i);
    edges_.push_back({std::move(id), src, tgt, std::move(label)});
    return i;
}

std::optional<std::size_t> LabeledGraph::find_vertex(std::string_view id) const {
    auto it = vertex_index_.find(std::string(id));
    if (it == vertex_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> LabeledGraph::find_edge(std::string_view id) const {
    auto it = edge_index_.find(std::string(id));
    if (it == edge_index_.end()) return std::nullopt;
    return it->second;
}

LabelSet LabeledGraph::labels() const {
    LabelSet ls;
    for (const auto& v : vertices_) ls.vertex_labels.insert(v.label);
    for (const auto& e : edges_) ls.edge_labels.insert(e.label);
    return ls;
}

bool LabeledGraph::operator==(const LabeledGraph& o) const {
    if (vertices_.size() != o.vertices_.size() || edges_.size() != o.edges_.size()) return false;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].id != o.vertices_[i].id || vertices_[i].label != o.vertices_[i].label)
            return false;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& a = edges_[i];
        const auto& b = o.edges_[i];
        if (a.id != b.id || a.src != b.src || a.tgt != b.tgt || a.label != b.label) return false;
    }
    return true;
}

LabeledGraph renumbered(const LabeledGraph& g) {
    LabeledGraph out;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        out.add_vertex("v" + std::to_string(i), g.vertex(i).label);
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edge(i);
        out.add_edge("e" + std::to_string(i), e.src, e.tgt, e.label);
    }
    return out;
}

LabeledGraph disjoint_union(const LabeledGraph& a, const LabeledGraph& b) {
    LabeledGraph out = a;
    auto fresh_vertex = [&](const std::string& id) {
        std::string name = id;
        for (int k = 2; out.find_vertex(name); ++k) name = id + "_" + std::to_string(k);
        return name;
    };
    auto fresh_edge = [&](const std::string& id) {
        std::string name = id;
        for (int k = 2; out.find_edge(name); ++k) name = id + "_" + std::to_string(k);
        return name;
    };
    std::size_t off = a.vertex_count();
    for (const auto& v : b.vertices()) out.add_vertex(fresh_vertex(v.id), v.label);
    for (const auto& e : b.edges()) out.add_edge(fresh_edge(e.id), e.src + off, e.tgt + off, e.label);
    return out;
}

}  // namespace tileterm
