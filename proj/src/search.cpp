#include "tileterm/search.hpp"

#include <algorithm>
#include <map>
#include <tuple>
#include <unordered_map>

namespace tileterm {

namespace {

struct Degrees {
    std::size_t out = 0, in = 0, loops = 0;
};

std::vector<Degrees> degrees(const LabeledGraph& g) {
    std::vector<Degrees> d(g.vertex_count());
    for (const auto& e : g.edges()) {
        if (e.src == e.tgt) ++d[e.src].loops;
        else ++d[e.src].out, ++d[e.tgt].in;
    }
    return d;
}

// Backtracking homomorphism search. Vertices are placed in a connectivity-first,
// degree-descending order; an edge is checked as soon as both endpoints are placed.
class Searcher {
public:
    Searcher(const LabeledGraph& t, const LabeledGraph& g, bool mono,
             std::vector<std::vector<std::size_t>> vcands,
             const std::function<bool(std::size_t, std::size_t)>* edge_ok, const MapVisitor& visit)
        : t_(t), g_(g), mono_(mono), vcands_(std::move(vcands)), edge_ok_(edge_ok), visit_(visit) {}

    void run() {
        if (mono_ && (t_.vertex_count() > g_.vertex_count() || t_.edge_count() > g_.edge_count()))
            return;
        index_target();
        plan();
        vmap_.assign(t_.vertex_count(), 0);
        emap_.assign(t_.edge_count(), 0);
        vused_.assign(g_.vertex_count(), 0);
        eused_.assign(g_.edge_count(), 0);
        place_vertex(0);
    }

private:
    std::uint64_t key(std::size_t s, std::size_t t, std::size_t lab) const {
        return (static_cast<std::uint64_t>(s) * g_.vertex_count() + t) * (labels_.size() + 1) + lab;
    }

    void index_target() {
        for (const auto& e : g_.edges()) labels_.emplace(e.label, labels_.size());
        for (std::size_t i = 0; i < g_.edge_count(); ++i) {
            const auto& e = g_.edge(i);
            adj_[key(e.src, e.tgt, labels_.at(e.label))].push_back(i);
        }
        tlab_.resize(t_.edge_count());
        for (std::size_t i = 0; i < t_.edge_count(); ++i) {
            auto it = labels_.find(t_.edge(i).label);
            tlab_[i] = it == labels_.end() ? labels_.size() : it->second;
        }
    }

    void plan() {
        const std::size_t n = t_.vertex_count();
        auto td = degrees(t_);
        std::vector<std::vector<std::size_t>> incident(n);
        for (std::size_t i = 0; i < t_.edge_count(); ++i) {
            incident[t_.edge(i).src].push_back(i);
            if (t_.edge(i).tgt != t_.edge(i).src) incident[t_.edge(i).tgt].push_back(i);
        }
        std::vector<char> placed(n, 0);
        std::vector<std::size_t> links(n, 0);
        for (std::size_t step = 0; step < n; ++step) {
            std::size_t best = n;
            for (std::size_t v = 0; v < n; ++v) {
                if (placed[v]) continue;
                if (best == n) { best = v; continue; }
                auto deg = [&](std::size_t x) { return incident[x].size(); };
                if (std::pair(links[v], deg(v)) > std::pair(links[best], deg(best))) best = v;
            }
            placed[best] = 1;
            order_.push_back(best);
            std::vector<std::size_t> closing;
            for (auto e : incident[best]) {
                std::size_t other = t_.edge(e).src == best ? t_.edge(e).tgt : t_.edge(e).src;
                if (placed[other]) closing.push_back(e);
                else ++links[other];
            }
            closing_.push_back(std::move(closing));
        }
        for (const auto& c : closing_) edge_order_.insert(edge_order_.end(), c.begin(), c.end());

        if (vcands_.empty()) {
            auto gd = degrees(g_);
            vcands_.resize(n);
            for (std::size_t v = 0; v < n; ++v)
                for (std::size_t w = 0; w < g_.vertex_count(); ++w) {
                    if (t_.vertex(v).label != g_.vertex(w).label) continue;
                    if (mono_ && (gd[w].out < td[v].out || gd[w].in < td[v].in ||
                                  gd[w].loops < td[v].loops))
                        continue;
                    vcands_[v].push_back(w);
                }
        }
    }

    const std::vector<std::size_t>* edge_candidates(std::size_t te) const {
        const auto& e = t_.edge(te);
        if (tlab_[te] == labels_.size()) return nullptr;
        auto it = adj_.find(key(vmap_[e.src], vmap_[e.tgt], tlab_[te]));
        return it == adj_.end() ? nullptr : &it->second;
    }

    bool edge_possible(std::size_t te) const {
        const auto* c = edge_candidates(te);
        if (!c) return false;
        for (auto ge : *c) {
            if (mono_ && eused_[ge]) continue;
            if (edge_ok_ && !(*edge_ok_)(te, ge)) continue;
            return true;
        }
        return false;
    }

    void place_vertex(std::size_t k) {
        if (stop_) return;
        if (k == order_.size()) {
            place_edge(0);
            return;
        }
        std::size_t v = order_[k];
        for (auto w : vcands_[v]) {
            if (mono_ && vused_[w]) continue;
            vmap_[v] = w;
            bool ok = true;
            for (auto e : closing_[k])
                if (!edge_possible(e)) { ok = false; break; }
            if (!ok) continue;
            vused_[w] = 1;
            place_vertex(k + 1);
            vused_[w] = 0;
            if (stop_) return;
        }
    }

    void place_edge(std::size_t k) {
        if (stop_) return;
        if (k == edge_order_.size()) {
            if (!visit_(vmap_, emap_)) stop_ = true;
            return;
        }
        std::size_t te = edge_order_[k];
        const auto* c = edge_candidates(te);
        if (!c) return;
        for (auto ge : *c) {
            if (mono_ && eused_[ge]) continue;
            if (edge_ok_ && !(*edge_ok_)(te, ge)) continue;
            emap_[te] = ge;
            eused_[ge] = 1;
            place_edge(k + 1);
            eused_[ge] = 0;
            if (stop_) return;
        }
    }

    const LabeledGraph& t_;
    const LabeledGraph& g_;
    bool mono_;
    std::vector<std::vector<std::size_t>> vcands_;
    const std::function<bool(std::size_t, std::size_t)>* edge_ok_;
    const MapVisitor& visit_;

    std::map<Label, std::size_t> labels_;
    std::vector<std::size_t> tlab_;
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> adj_;
    std::vector<std::size_t> order_;
    std::vector<std::vector<std::size_t>> closing_;
    std::vector<std::size_t> edge_order_;
    std::vector<std::size_t> vmap_, emap_;
    std::vector<char> vused_, eused_;
    bool stop_ = false;
};

}  // namespace

void for_each_morphism(const LabeledGraph& t, const LabeledGraph& g, MorphismClass cls,
                       const MapVisitor& visit) {
    Searcher s(t, g, cls != MorphismClass::Hom, {}, nullptr, visit);
    s.run();
}

std::vector<GraphMorphism> enumerate_morphisms(const GraphPtr& t, const GraphPtr& g,
                                               MorphismClass cls) {
    std::vector<GraphMorphism> out;
    for_each_morphism(*t, *g, cls, [&](const auto& vm, const auto& em) {
        out.push_back(GraphMorphism::trusted(t, g, vm, em));
        return true;
    });
    std::sort(out.begin(), out.end(), morphism_less);
    return out;
}

std::size_t count_morphisms(const LabeledGraph& t, const LabeledGraph& g, MorphismClass cls) {
    std::size_t n = 0;
    for_each_morphism(t, g, cls, [&](const auto&, const auto&) {
        ++n;
        return true;
    });
    return n;
}

namespace {
void for_each_section(const GraphMorphism& e, const MapVisitor& visit) {
    const auto& a = e.dom();
    const auto& b = e.cod();
    std::vector<std::vector<std::size_t>> cands(b.vertex_count());
    for (std::size_t i = 0; i < a.vertex_count(); ++i) cands[e.v(i)].push_back(i);
    for (const auto& c : cands)
        if (c.empty()) return;
    std::function<bool(std::size_t, std::size_t)> edge_ok = [&](std::size_t be, std::size_t ae) {
        return e.e(ae) == be;
    };
    Searcher s(b, a, false, std::move(cands), &edge_ok, visit);
    s.run();
}
}  // namespace

std::vector<GraphMorphism> right_inverses(const GraphMorphism& e) {
    std::vector<GraphMorphism> out;
    for_each_section(e, [&](const auto& vm, const auto& em) {
        out.push_back(GraphMorphism::trusted(e.cod_ptr(), e.dom_ptr(), vm, em));
        return true;
    });
    std::sort(out.begin(), out.end(), morphism_less);
    return out;
}

bool is_split_epic(const GraphMorphism& e) {
    bool found = false;
    for_each_section(e, [&](const auto&, const auto&) {
        found = true;
        return false;
    });
    return found;
}

std::size_t invariant_hash(const LabeledGraph& g) {
    auto d = degrees(g);
    std::vector<std::tuple<Label, std::size_t, std::size_t, std::size_t>> vs;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        vs.emplace_back(g.vertex(i).label, d[i].out, d[i].in, d[i].loops);
    std::sort(vs.begin(), vs.end());
    std::vector<std::tuple<Label, Label, Label, bool>> es;
    for (const auto& e : g.edges())
        es.emplace_back(g.vertex(e.src).label, e.label, g.vertex(e.tgt).label, e.src == e.tgt);
    std::sort(es.begin(), es.end());
    std::string s;
    for (const auto& [l, o, i, lp] : vs)
        s += l + '\x1f' + std::to_string(o) + ',' + std::to_string(i) + ',' + std::to_string(lp) + ';';
    s += '|';
    for (const auto& [a, l, b, lp] : es) s += a + '\x1f' + l + '\x1f' + b + (lp ? "!" : ";");
    return std::hash<std::string>{}(s);
}

std::optional<GraphMorphism> find_isomorphism(const GraphPtr& g, const GraphPtr& h) {
    if (g->vertex_count() != h->vertex_count() || g->edge_count() != h->edge_count())
        return std::nullopt;
    if (invariant_hash(*g) != invariant_hash(*h)) return std::nullopt;
    std::optional<GraphMorphism> found;
    for_each_morphism(*g, *h, MorphismClass::Mono, [&](const auto& vm, const auto& em) {
        found = GraphMorphism::trusted(g, h, vm, em);
        return false;
    });
    return found;
}

bool isomorphic(const LabeledGraph& g, const LabeledGraph& h) {
    if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
    if (invariant_hash(g) != invariant_hash(h)) return false;
    bool found = false;
    for_each_morphism(g, h, MorphismClass::Mono, [&](const auto&, const auto&) {
        found = true;
        return false;
    });
    return found;
}

}  // namespace tileterm
