#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tileterm/graph.hpp"

namespace tileterm {

// R and M coincide in this category; the tag is kept for reporting.
enum class MorphismClass { Hom, Mono, RegularMono };

std::string class_name(MorphismClass c);           // "HOMOMORPHISMS", "MONOS", "REGULAR MONOS"
char class_char(MorphismClass c);                  // 'h', 'm', 'r'
MorphismClass parse_class_char(char c);            // throws std::invalid_argument

class MorphismError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GraphMorphism {
public:
    // Validates totality, homomorphism squares and labels.
    GraphMorphism(GraphPtr dom, GraphPtr cod, std::vector<std::size_t> vmap,
                  std::vector<std::size_t> emap);

    // Skips validation; for maps the caller has constructed correctly.
    static GraphMorphism trusted(GraphPtr dom, GraphPtr cod, std::vector<std::size_t> vmap,
                                 std::vector<std::size_t> emap);

    const LabeledGraph& dom() const { return *dom_; }
    const LabeledGraph& cod() const { return *cod_; }
    const GraphPtr& dom_ptr() const { return dom_; }
    const GraphPtr& cod_ptr() const { return cod_; }
    const std::vector<std::size_t>& vmap() const { return vmap_; }
    const std::vector<std::size_t>& emap() const { return emap_; }
    std::size_t v(std::size_t i) const { return vmap_[i]; }
    std::size_t e(std::size_t i) const { return emap_[i]; }

    bool operator==(const GraphMorphism& o) const;

private:
    GraphMorphism() = default;
    GraphPtr dom_, cod_;
    std::vector<std::size_t> vmap_, emap_;
};

// Objects are compared by pointer first, then structurally.
bool same_object(const GraphPtr& a, const GraphPtr& b);

GraphMorphism identity(const GraphPtr& g);
GraphMorphism compose(const GraphMorphism& g, const GraphMorphism& f);  // g after f

struct MorphismFlags {
    bool monic = false;
    bool epic = false;
    bool iso = false;
    bool regular_monic = false;
    bool split_epic = false;
};

bool is_monic(const GraphMorphism& f);
bool is_epic(const GraphMorphism& f);
bool is_iso(const GraphMorphism& f);
bool in_class(const GraphMorphism& f, MorphismClass c);
MorphismFlags classify(const GraphMorphism& f);

// Inverse of an isomorphism; throws if f is not iso.
GraphMorphism inverse(const GraphMorphism& f);

// Total order used for deterministic listings and deduplication.
bool morphism_less(const GraphMorphism& a, const GraphMorphism& b);

}  // namespace tileterm
