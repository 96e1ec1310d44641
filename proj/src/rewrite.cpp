#include "tileterm/rewrite.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "tileterm/search.hpp"

namespace tileterm {

namespace {

// Marks the L' elements in the image of tL.
struct PatternSlots {
    std::vector<char> vertex, edge;
    explicit PatternSlots(const PbpoRule& rule)
        : vertex(rule.Lp->vertex_count(), 0), edge(rule.Lp->edge_count(), 0) {
        for (auto x : rule.tL.vmap()) vertex[x] = 1;
        for (auto x : rule.tL.emap()) edge[x] = 1;
    }
};

// Strong match: every pattern element of L' has exactly one preimage.
bool strong(const PatternSlots& s, const std::vector<std::size_t>& vm,
            const std::vector<std::size_t>& em) {
    std::vector<unsigned char> cv(s.vertex.size(), 0), ce(s.edge.size(), 0);
    for (auto x : vm)
        if (s.vertex[x] && ++cv[x] > 1) return false;
    for (auto x : em)
        if (s.edge[x] && ++ce[x] > 1) return false;
    for (std::size_t i = 0; i < cv.size(); ++i)
        if (s.vertex[i] && cv[i] != 1) return false;
    for (std::size_t i = 0; i < ce.size(); ++i)
        if (s.edge[i] && ce[i] != 1) return false;
    return true;
}

GraphMorphism retarget_dom(const GraphMorphism& f, const GraphPtr& dom) {
    return GraphMorphism::trusted(dom, f.cod_ptr(), f.vmap(), f.emap());
}

GraphMorphism retarget_cod(const GraphMorphism& f, const GraphPtr& cod) {
    return GraphMorphism::trusted(f.dom_ptr(), cod, f.vmap(), f.emap());
}

// Copy of g with vertex/edge ids taken from the images under f, made unique.
GraphPtr named_after(const LabeledGraph& g, const GraphMorphism& f) {
    LabeledGraph out;
    auto pick = [](const std::string& base, auto&& taken) {
        std::string id = base;
        for (int k = 2; taken(id); ++k) id = base + "_" + std::to_string(k);
        return id;
    };
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        out.add_vertex(pick(f.cod().vertex(f.v(i)).id, [&](const std::string& s) { return out.find_vertex(s).has_value(); }),
                       g.vertex(i).label);
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edge(i);
        out.add_edge(pick(f.cod().edge(f.e(i)).id, [&](const std::string& s) { return out.find_edge(s).has_value(); }),
                     e.src, e.tgt, e.label);
    }
    return share(std::move(out));
}

void require(bool ok, const char* face) {
    if (!ok) throw StepError(std::string("step diagram face fails: ") + face);
}

}  // namespace

std::vector<Adherence> enumerate_adherences(const PbpoRule& rule, const GraphPtr& host,
                                            MorphismClass match_class) {
    PatternSlots slots(rule);
    std::vector<GraphMorphism> alphas;
    for_each_morphism(*host, *rule.Lp, MorphismClass::Hom, [&](const auto& vm, const auto& em) {
        if (strong(slots, vm, em)) alphas.push_back(GraphMorphism::trusted(host, rule.Lp, vm, em));
        return true;
    });
    std::sort(alphas.begin(), alphas.end(), morphism_less);
    std::vector<Adherence> out;
    for (auto& a : alphas) {
        auto pb = pullback(rule.tL, a);
        if (!is_iso(pb.p1)) continue;
        auto m = compose(pb.p2, inverse(pb.p1));
        if (!in_class(m, match_class)) continue;
        out.push_back({std::move(a), std::move(m)});
    }
    return out;
}

RewriteStep apply_step(const PbpoRule& rule, const GraphMorphism& alpha) {
    const auto& c = rule.done();
    if (!same_object(alpha.cod_ptr(), rule.Lp)) throw StepError("adherence does not land in L'");

    // (1) match
    auto pb1 = pullback(rule.tL, alpha);
    if (!is_iso(pb1.p1)) throw StepError("not an adherence");
    auto m = compose(pb1.p2, inverse(pb1.p1));

    // (2) G_K with g_L and u'
    auto pb2 = pullback(alpha, rule.lp);
    auto GK = named_after(*pb2.object, pb2.p1);
    auto gL = retarget_dom(pb2.p1, GK);
    auto up = retarget_dom(pb2.p2, GK);

    // (3) u from the pullback of u' along tK
    auto pb3 = pullback(up, rule.tK);
    if (!is_iso(pb3.p2)) throw StepError("pullback of u' along tK is not K");
    auto u = compose(pb3.p1, inverse(pb3.p2));

    // (4) G_R
    auto po = pushout(u, rule.r);
    auto gR = po.q1;
    auto w = po.q2;
    auto wp = pushout_mediator(po, compose(c.rp, up), c.tR);

    require(compose(alpha, m) == rule.tL, "alpha m = tL");
    require(compose(alpha, gL) == compose(rule.lp, up), "alpha gL = l' u'");
    require(compose(up, u) == rule.tK, "u' u = tK");
    require(compose(gL, u) == compose(m, rule.l), "gL u = m l");
    require(compose(gR, u) == compose(w, rule.r), "gR u = w r");
    require(compose(wp, w) == c.tR, "w' w = tR");
    require(compose(wp, gR) == compose(c.rp, up), "w' gR = r' u'");

    return {alpha.dom_ptr(), GK, po.object, alpha, m, gL, gR, u, up, w, wp};
}

namespace {

struct Component {
    GraphPtr graph;
    std::vector<std::size_t> vglobal, eglobal;
};

std::vector<Component> components(const LabeledGraph& g) {
    std::vector<std::size_t> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : g.edges()) {
        auto a = find(e.src), b = find(e.tgt);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<std::size_t, std::size_t> root_to_comp;
    std::vector<LabeledGraph> graphs;
    std::vector<Component> out;
    std::vector<std::size_t> local(g.vertex_count());
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        auto r = find(v);
        auto [it, fresh] = root_to_comp.emplace(r, out.size());
        if (fresh) {
            out.emplace_back();
            graphs.emplace_back();
        }
        local[v] = graphs[it->second].add_vertex(g.vertex(v).id, g.vertex(v).label);
        out[it->second].vglobal.push_back(v);
    }
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const auto& e = g.edge(i);
        auto ci = root_to_comp.at(find(e.src));
        graphs[ci].add_edge(e.id, local[e.src], local[e.tgt], e.label);
        out[ci].eglobal.push_back(i);
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i].graph = share(std::move(graphs[i]));
    return out;
}

struct Group {
    std::size_t rep;
    std::vector<std::pair<std::size_t, GraphMorphism>> members;  // component, iso rep -> component
};

struct LocalHom {
    std::vector<std::size_t> vm, em;
};

class SuccessorCollector {
public:
    SuccessorCollector(std::size_t bound, SuccessorSet& out) : bound_(bound), out_(out) {}

    bool full() const { return out_.truncated; }

    void add(const LabeledGraph& g) {
        auto r = renumbered(g);
        auto h = invariant_hash(r);
        auto& bucket = buckets_[h];
        for (auto idx : bucket)
            if (isomorphic(*out_.graphs[idx], r)) return;
        if (out_.graphs.size() >= bound_) {
            out_.truncated = true;
            return;
        }
        bucket.push_back(out_.graphs.size());
        out_.graphs.push_back(share(std::move(r)));
    }

private:
    std::size_t bound_;
    SuccessorSet& out_;
    std::map<std::size_t, std::vector<std::size_t>> buckets_;
};

}  // namespace

SuccessorSet successors(const std::vector<PbpoRule>& rules, const GraphPtr& host,
                        MorphismClass match_class, std::size_t bound) {
    SuccessorSet out;
    SuccessorCollector collect(bound, out);
    auto comps = components(*host);

    std::vector<Group> groups;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        bool placed = false;
        for (auto& grp : groups) {
            auto iso = find_isomorphism(comps[grp.rep].graph, comps[c].graph);
            if (iso) {
                grp.members.emplace_back(c, *iso);
                placed = true;
                break;
            }
        }
        if (!placed) groups.push_back({c, {{c, identity(comps[c].graph)}}});
    }

    for (const auto& rule : rules) {
        if (out.truncated) break;
        PatternSlots slots(rule);
        const auto& Lp = *rule.Lp;
        std::vector<std::vector<LocalHom>> homs(groups.size());
        bool dead = false;
        for (std::size_t gi = 0; gi < groups.size() && !dead; ++gi) {
            for_each_morphism(*comps[groups[gi].rep].graph, Lp, MorphismClass::Hom,
                              [&](const auto& vm, const auto& em) {
                                  std::vector<unsigned char> cv(Lp.vertex_count(), 0);
                                  for (auto x : vm)
                                      if (slots.vertex[x] && ++cv[x] > 1) return true;
                                  std::vector<unsigned char> ce(Lp.edge_count(), 0);
                                  for (auto x : em)
                                      if (slots.edge[x] && ++ce[x] > 1) return true;
                                  homs[gi].push_back({vm, em});
                                  return true;
                              });
            if (homs[gi].empty()) dead = true;
        }
        if (dead) continue;

        std::vector<std::size_t> vm(host->vertex_count()), em(host->edge_count());
        std::vector<unsigned char> cv(Lp.vertex_count(), 0), ce(Lp.edge_count(), 0);

        auto assign = [&](std::size_t comp, const GraphMorphism& iso, const LocalHom& h, int delta) {
            const auto& cg = comps[comp];
            bool ok = true;
            for (std::size_t i = 0; i < h.vm.size(); ++i) {
                auto tgt = h.vm[i];
                vm[cg.vglobal[iso.v(i)]] = tgt;
                if (slots.vertex[tgt]) {
                    cv[tgt] = static_cast<unsigned char>(cv[tgt] + delta);
                    if (cv[tgt] > 1) ok = false;
                }
            }
            for (std::size_t i = 0; i < h.em.size(); ++i) {
                auto tgt = h.em[i];
                em[cg.eglobal[iso.e(i)]] = tgt;
                if (slots.edge[tgt]) {
                    ce[tgt] = static_cast<unsigned char>(ce[tgt] + delta);
                    if (ce[tgt] > 1) ok = false;
                }
            }
            return ok;
        };

        auto finish = [&]() {
            for (std::size_t i = 0; i < cv.size(); ++i)
                if (slots.vertex[i] && cv[i] != 1) return;
            for (std::size_t i = 0; i < ce.size(); ++i)
                if (slots.edge[i] && ce[i] != 1) return;
            auto alpha = GraphMorphism::trusted(host, rule.Lp, vm, em);
            auto step = apply_step(rule, alpha);
            if (!in_class(step.m, match_class)) return;
            collect.add(*step.GR);
        };

        // Combinations with repetition within each isomorphism group.
        std::function<void(std::size_t, std::size_t, std::size_t)> go =
            [&](std::size_t gi, std::size_t mi, std::size_t min_hom) {
                if (collect.full()) return;
                if (gi == groups.size()) {
                    finish();
                    return;
                }
                const auto& grp = groups[gi];
                if (mi == grp.members.size()) {
                    go(gi + 1, 0, 0);
                    return;
                }
                const auto& [comp, iso] = grp.members[mi];
                for (std::size_t h = min_hom; h < homs[gi].size(); ++h) {
                    if (assign(comp, iso, homs[gi][h], +1)) go(gi, mi + 1, h);
                    assign(comp, iso, homs[gi][h], -1);
                    if (collect.full()) return;
                }
            };
        go(0, 0, 0);
    }
    return out;
}

}  // namespace tileterm
