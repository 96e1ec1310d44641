#include "tileterm/morphism.hpp"

#include <stdexcept>

#include "tileterm/search.hpp"

namespace tileterm {

std::string class_name(MorphismClass c) {
    switch (c) {
        case MorphismClass::Hom: return "HOMOMORPHISMS";
        case MorphismClass::Mono: return "MONOS";
        case MorphismClass::RegularMono: return "REGULAR MONOS";
    }
    return "?";
}

char class_char(MorphismClass c) {
    switch (c) {
        case MorphismClass::Hom: return 'h';
        case MorphismClass::Mono: return 'm';
        case MorphismClass::RegularMono: return 'r';
    }
    return '?';
}

MorphismClass parse_class_char(char c) {
    switch (c) {
        case 'h': case 'H': return MorphismClass::Hom;
        case 'm': case 'M': return MorphismClass::Mono;
        case 'r': case 'R': return MorphismClass::RegularMono;
    }
    throw std::invalid_argument(std::string("unknown morphism class '") + c + "'");
}

GraphMorphism::GraphMorphism(GraphPtr dom, GraphPtr cod, std::vector<std::size_t> vmap,
                             std::vector<std::size_t> emap)
    : dom_(std::move(dom)), cod_(std::move(cod)), vmap_(std::move(vmap)), emap_(std::move(emap)) {
    if (!dom_ || !cod_) throw MorphismError("morphism with null object");
    const auto& d = *dom_;
    const auto& c = *cod_;
    if (vmap_.size() != d.vertex_count() || emap_.size() != d.edge_count())
        throw MorphismError("morphism is not total on its domain");
    for (std::size_t i = 0; i < vmap_.size(); ++i) {
        if (vmap_[i] >= c.vertex_count()) throw MorphismError("vertex image out of range");
        if (d.vertex(i).label != c.vertex(vmap_[i]).label)
            throw MorphismError("vertex '" + d.vertex(i).id + "' changes label");
    }
    for (std::size_t i = 0; i < emap_.size(); ++i) {
        if (emap_[i] >= c.edge_count()) throw MorphismError("edge image out of range");
        const auto& de = d.edge(i);
        const auto& ce = c.edge(emap_[i]);
        if (de.label != ce.label) throw MorphismError("edge '" + de.id + "' changes label");
        if (vmap_[de.src] != ce.src || vmap_[de.tgt] != ce.tgt)
            throw MorphismError("edge '" + de.id + "' is not mapped along its endpoints");
    }
}

GraphMorphism GraphMorphism::trusted(GraphPtr dom, GraphPtr cod, std::vector<std::size_t> vmap,
                                     std::vector<std::size_t> emap) {
    GraphMorphism f;
    f.dom_ = std::move(dom);
    f.cod_ = std::move(cod);
    f.vmap_ = std::move(vmap);
    f.emap_ = std::move(emap);
    return f;
}

bool same_object(const GraphPtr& a, const GraphPtr& b) {
    return a == b || (a && b && *a == *b);
}

bool GraphMorphism::operator==(const GraphMorphism& o) const {
    return vmap_ == o.vmap_ && emap_ == o.emap_ && same_object(dom_, o.dom_) &&
           same_object(cod_, o.cod_);
}

GraphMorphism identity(const GraphPtr& g) {
    std::vector<std::size_t> vm(g->vertex_count()), em(g->edge_count());
    for (std::size_t i = 0; i < vm.size(); ++i) vm[i] = i;
    for (std::size_t i = 0; i < em.size(); ++i) em[i] = i;
    return GraphMorphism::trusted(g, g, std::move(vm), std::move(em));
}

GraphMorphism compose(const GraphMorphism& g, const GraphMorphism& f) {
    if (!same_object(f.cod_ptr(), g.dom_ptr()))
        throw MorphismError("compose: codomain of the first map is not the domain of the second");
    std::vector<std::size_t> vm(f.vmap().size()), em(f.emap().size());
    for (std::size_t i = 0; i < vm.size(); ++i) vm[i] = g.v(f.v(i));
    for (std::size_t i = 0; i < em.size(); ++i) em[i] = g.e(f.e(i));
    return GraphMorphism::trusted(f.dom_ptr(), g.cod_ptr(), std::move(vm), std::move(em));
}

namespace {
bool injective(const std::vector<std::size_t>& m, std::size_t n) {
    std::vector<char> seen(n, 0);
    for (auto x : m) {
        if (seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}
bool surjective(const std::vector<std::size_t>& m, std::size_t n) {
    std::vector<char> seen(n, 0);
    std::size_t hit = 0;
    for (auto x : m)
        if (!seen[x]) seen[x] = 1, ++hit;
    return hit == n;
}
}  // namespace

bool is_monic(const GraphMorphism& f) {
    return injective(f.vmap(), f.cod().vertex_count()) && injective(f.emap(), f.cod().edge_count());
}

bool is_epic(const GraphMorphism& f) {
    return surjective(f.vmap(), f.cod().vertex_count()) &&
           surjective(f.emap(), f.cod().edge_count());
}

bool is_iso(const GraphMorphism& f) {
    return f.dom().vertex_count() == f.cod().vertex_count() &&
           f.dom().edge_count() == f.cod().edge_count() && is_monic(f);
}

bool in_class(const GraphMorphism& f, MorphismClass c) {
    return c == MorphismClass::Hom || is_monic(f);
}

MorphismFlags classify(const GraphMorphism& f) {
    MorphismFlags fl;
    fl.monic = is_monic(f);
    fl.epic = is_epic(f);
    fl.iso = fl.monic && fl.epic;
    fl.regular_monic = fl.monic;
    fl.split_epic = fl.epic && is_split_epic(f);
    return fl;
}

GraphMorphism inverse(const GraphMorphism& f) {
    if (!is_iso(f)) throw MorphismError("inverse of a non-isomorphism");
    std::vector<std::size_t> vm(f.cod().vertex_count()), em(f.cod().edge_count());
    for (std::size_t i = 0; i < f.vmap().size(); ++i) vm[f.v(i)] = i;
    for (std::size_t i = 0; i < f.emap().size(); ++i) em[f.e(i)] = i;
    return GraphMorphism::trusted(f.cod_ptr(), f.dom_ptr(), std::move(vm), std::move(em));
}

bool morphism_less(const GraphMorphism& a, const GraphMorphism& b) {
    if (a.vmap() != b.vmap()) return a.vmap() < b.vmap();
    return a.emap() < b.emap();
}

}  // namespace tileterm
