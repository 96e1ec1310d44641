#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tileterm/morphism.hpp"

namespace tileterm {

// Visitor receives the vertex and edge maps of each morphism found; return
// false to stop the search.
using MapVisitor =
    std::function<bool(const std::vector<std::size_t>& vmap, const std::vector<std::size_t>& emap)>;

void for_each_morphism(const LabeledGraph& t, const LabeledGraph& g, MorphismClass cls,
                       const MapVisitor& visit);

// Sorted lexicographically by (vmap, emap).
std::vector<GraphMorphism> enumerate_morphisms(const GraphPtr& t, const GraphPtr& g,
                                               MorphismClass cls);

std::size_t count_morphisms(const LabeledGraph& t, const LabeledGraph& g, MorphismClass cls);

// All g with e∘g = id_cod(e), sorted.
std::vector<GraphMorphism> right_inverses(const GraphMorphism& e);
bool is_split_epic(const GraphMorphism& e);

std::optional<GraphMorphism> find_isomorphism(const GraphPtr& g, const GraphPtr& h);
bool isomorphic(const LabeledGraph& g, const LabeledGraph& h);

// Isomorphism-invariant fingerprint used to bucket graphs before iso tests.
std::size_t invariant_hash(const LabeledGraph& g);

}  // namespace tileterm
