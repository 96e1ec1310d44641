#include "support.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>
#include <stdexcept>

namespace testing {

std::filesystem::path source_dir() { return TILETERM_SOURCE_DIR; }
std::filesystem::path corpus_dir() { return source_dir() / "corpus"; }
std::filesystem::path data_dir() { return source_dir() / "tests" / "data"; }

GraphPtr gr(const std::string& literal) { return share(parse_graph(literal)); }

const Workspace& corpus() {
    static const Workspace ws = load_workspace(corpus_dir());
    return ws;
}

const Workspace& string_workspace() {
    static const Workspace ws = load_workspace(data_dir() / "string");
    return ws;
}

const PbpoRule& corpus_rule(const std::string& system, const std::string& rule) {
    const auto* sys = corpus().find_system(system);
    if (!sys) throw std::runtime_error("no corpus system " + system);
    for (const auto& r : sys->rules)
        if (r.name == rule) return r;
    throw std::runtime_error("no rule " + rule + " in " + system);
}

const Tile& corpus_tile(const std::string& name) {
    const auto* t = corpus().find_tile(name);
    if (!t) throw std::runtime_error("no corpus tile " + name);
    return t->tile;
}

Tile make_tile(const std::string& name, const std::string& literal) { return {name, gr(literal)}; }

TileConfig config(std::vector<std::tuple<Tile, std::uint64_t, MorphismClass>> entries) {
    TileConfig cfg;
    for (auto& [t, w, c] : entries) cfg.entries.push_back({t, w, c});
    return cfg;
}

namespace {

void assign_edges(const LabeledGraph& t, const LabeledGraph& g, bool mono,
                  const std::vector<std::size_t>& vm, std::size_t k, std::vector<std::size_t>& em,
                  std::vector<bool>& used, std::vector<Maps>& out) {
    if (k == t.edge_count()) {
        out.push_back({vm, em});
        return;
    }
    const auto& te = t.edge(k);
    for (std::size_t j = 0; j < g.edge_count(); ++j) {
        const auto& ge = g.edge(j);
        if (ge.label != te.label || ge.src != vm[te.src] || ge.tgt != vm[te.tgt]) continue;
        if (mono && used[j]) continue;
        used[j] = true;
        em[k] = j;
        assign_edges(t, g, mono, vm, k + 1, em, used, out);
        used[j] = false;
    }
}

void assign_vertices(const LabeledGraph& t, const LabeledGraph& g, bool mono, std::size_t k,
                     std::vector<std::size_t>& vm, std::vector<bool>& used,
                     std::vector<Maps>& out) {
    if (k == t.vertex_count()) {
        std::vector<std::size_t> em(t.edge_count());
        std::vector<bool> eused(g.edge_count());
        assign_edges(t, g, mono, vm, 0, em, eused, out);
        return;
    }
    for (std::size_t j = 0; j < g.vertex_count(); ++j) {
        if (g.vertex(j).label != t.vertex(k).label) continue;
        if (mono && used[j]) continue;
        used[j] = true;
        vm[k] = j;
        assign_vertices(t, g, mono, k + 1, vm, used, out);
        used[j] = false;
    }
}

}  // namespace

std::vector<Maps> brute_homs(const LabeledGraph& t, const LabeledGraph& g, bool mono) {
    std::vector<Maps> out;
    std::vector<std::size_t> vm(t.vertex_count());
    std::vector<bool> used(g.vertex_count());
    assign_vertices(t, g, mono, 0, vm, used, out);
    return out;
}

std::size_t brute_hom_count(const LabeledGraph& t, const LabeledGraph& g, bool mono) {
    return brute_homs(t, g, mono).size();
}

Maps maps_of(const GraphMorphism& f) { return {f.vmap(), f.emap()}; }

Maps compose_maps(const Maps& g, const Maps& f) {
    Maps out;
    for (auto x : f.v) out.v.push_back(g.v[x]);
    for (auto x : f.e) out.e.push_back(g.e[x]);
    return out;
}

bool pullback_universal(const GraphMorphism& f, const GraphMorphism& g, const Pullback& pb,
                        const std::vector<GraphPtr>& objects, std::string* why) {
    auto fail = [&](std::string m) {
        if (why) *why = std::move(m);
        return false;
    };
    Maps mf = maps_of(f), mg = maps_of(g), m1 = maps_of(pb.p1), m2 = maps_of(pb.p2);
    if (!(compose_maps(mf, m1) == compose_maps(mg, m2))) return fail("square does not commute");
    for (const auto& x : objects) {
        auto into_p = brute_homs(*x, *pb.object, false);
        for (const auto& x1 : brute_homs(*x, f.dom(), false))
            for (const auto& x2 : brute_homs(*x, g.dom(), false)) {
                if (!(compose_maps(mf, x1) == compose_maps(mg, x2))) continue;
                std::size_t n = 0;
                for (const auto& u : into_p)
                    if (compose_maps(m1, u) == x1 && compose_maps(m2, u) == x2) ++n;
                if (n != 1) return fail("cone has " + std::to_string(n) + " mediators");
            }
    }
    return true;
}

bool pushout_universal(const GraphMorphism& f, const GraphMorphism& g, const Pushout& po,
                       const std::vector<GraphPtr>& objects, std::string* why) {
    auto fail = [&](std::string m) {
        if (why) *why = std::move(m);
        return false;
    };
    Maps mf = maps_of(f), mg = maps_of(g), q1 = maps_of(po.q1), q2 = maps_of(po.q2);
    if (!(compose_maps(q1, mf) == compose_maps(q2, mg))) return fail("square does not commute");
    for (const auto& y : objects) {
        auto out_of_q = brute_homs(*po.object, *y, false);
        for (const auto& y1 : brute_homs(f.cod(), *y, false))
            for (const auto& y2 : brute_homs(g.cod(), *y, false)) {
                if (!(compose_maps(y1, mf) == compose_maps(y2, mg))) continue;
                std::size_t n = 0;
                for (const auto& u : out_of_q)
                    if (compose_maps(u, q1) == y1 && compose_maps(u, q2) == y2) ++n;
                if (n != 1) return fail("cocone has " + std::to_string(n) + " mediators");
            }
    }
    return true;
}

LabeledGraph random_graph(std::mt19937& rng, std::size_t max_v, std::size_t max_e,
                          const std::vector<std::string>& vlabels,
                          const std::vector<std::string>& elabels, std::size_t min_v) {
    LabeledGraph g;
    std::size_t nv = std::uniform_int_distribution<std::size_t>(min_v, max_v)(rng);
    for (std::size_t i = 0; i < nv; ++i)
        g.add_vertex("v" + std::to_string(i), vlabels[rng() % vlabels.size()]);
    if (nv == 0) return g;
    std::size_t ne = std::uniform_int_distribution<std::size_t>(0, max_e)(rng);
    for (std::size_t i = 0; i < ne; ++i)
        g.add_edge("e" + std::to_string(i), rng() % nv, rng() % nv, elabels[rng() % elabels.size()]);
    return g;
}

GraphMorphism random_mono(std::mt19937& rng, const GraphPtr& dom, std::size_t extra_v,
                          std::size_t extra_e, const std::vector<std::string>& vlabels,
                          const std::vector<std::string>& elabels) {
    LabeledGraph g;
    for (const auto& v : dom->vertices()) g.add_vertex(v.id, v.label);
    for (const auto& e : dom->edges()) g.add_edge(e.id, e.src, e.tgt, e.label);
    for (std::size_t i = 0; i < extra_v; ++i)
        g.add_vertex("n" + std::to_string(i), vlabels[rng() % vlabels.size()]);
    std::size_t nv = g.vertex_count();
    if (nv > 0)
        for (std::size_t i = 0; i < extra_e; ++i)
            g.add_edge("f" + std::to_string(i), rng() % nv, rng() % nv, elabels[rng() % elabels.size()]);
    std::vector<std::size_t> vm(dom->vertex_count()), em(dom->edge_count());
    std::iota(vm.begin(), vm.end(), 0);
    std::iota(em.begin(), em.end(), 0);
    return GraphMorphism(dom, share(std::move(g)), vm, em);
}

namespace {

struct UnionFind {
    std::vector<std::size_t> p;
    explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    std::size_t find(std::size_t x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void join(std::size_t a, std::size_t b) { p[find(a)] = find(b); }
};

// Gluing of D and R along k: K -> D and r: K -> R.
LabeledGraph glue(const LabeledGraph& d, const Maps& k, const LabeledGraph& r, const Maps& rm) {
    std::size_t dv = d.vertex_count(), de = d.edge_count();
    UnionFind vu(dv + r.vertex_count()), eu(de + r.edge_count());
    for (std::size_t i = 0; i < k.v.size(); ++i) vu.join(k.v[i], dv + rm.v[i]);
    for (std::size_t i = 0; i < k.e.size(); ++i) eu.join(k.e[i], de + rm.e[i]);
    auto vlabel = [&](std::size_t i) { return i < dv ? d.vertex(i).label : r.vertex(i - dv).label; };
    LabeledGraph h;
    std::vector<std::size_t> vidx(dv + r.vertex_count(), SIZE_MAX);
    for (std::size_t i = 0; i < vidx.size(); ++i) {
        auto root = vu.find(i);
        if (vidx[root] == SIZE_MAX) vidx[root] = h.add_vertex("v" + std::to_string(h.vertex_count()), vlabel(root));
    }
    std::vector<bool> seen(de + r.edge_count());
    for (std::size_t i = 0; i < seen.size(); ++i) {
        auto root = eu.find(i);
        if (seen[root]) continue;
        seen[root] = true;
        std::size_t s, t;
        std::string label;
        if (root < de) {
            s = d.edge(root).src, t = d.edge(root).tgt, label = d.edge(root).label;
        } else {
            s = dv + r.edge(root - de).src, t = dv + r.edge(root - de).tgt, label = r.edge(root - de).label;
        }
        h.add_edge("e" + std::to_string(h.edge_count()), vidx[vu.find(s)], vidx[vu.find(t)], label);
    }
    return h;
}

}  // namespace

std::vector<LabeledGraph> dpo_oracle_results(const DpoRule& rule, const LabeledGraph& host) {
    const auto& K = rule.l.dom();
    const auto& L = rule.l.cod();
    const auto& R = rule.r.cod();
    Maps lm = maps_of(rule.l), rm = maps_of(rule.r);
    std::size_t nv = host.vertex_count(), ne = host.edge_count();
    std::vector<LabeledGraph> out;
    for (const auto& m : brute_homs(L, host, true)) {
        std::vector<bool> in_l_v(nv), in_l_e(ne), in_k_v(nv), in_k_e(ne);
        for (auto x : m.v) in_l_v[x] = true;
        for (auto x : m.e) in_l_e[x] = true;
        Maps mk = compose_maps(m, lm);
        for (auto x : mk.v) in_k_v[x] = true;
        for (auto x : mk.e) in_k_e[x] = true;
        for (std::size_t vs = 0; vs < (std::size_t{1} << nv); ++vs)
            for (std::size_t es = 0; es < (std::size_t{1} << ne); ++es) {
                bool ok = true;
                for (std::size_t i = 0; i < nv && ok; ++i) {
                    bool in_d = vs >> i & 1;
                    ok = (in_d || in_l_v[i]) && ((in_d && in_l_v[i]) == in_k_v[i]);
                }
                for (std::size_t i = 0; i < ne && ok; ++i) {
                    bool in_d = es >> i & 1;
                    ok = (in_d || in_l_e[i]) && ((in_d && in_l_e[i]) == in_k_e[i]);
                    if (ok && in_d) ok = (vs >> host.edge(i).src & 1) && (vs >> host.edge(i).tgt & 1);
                }
                if (!ok) continue;
                LabeledGraph d;
                std::vector<std::size_t> vpos(nv), epos(ne);
                for (std::size_t i = 0; i < nv; ++i)
                    if (vs >> i & 1) vpos[i] = d.add_vertex(host.vertex(i).id, host.vertex(i).label);
                for (std::size_t i = 0; i < ne; ++i)
                    if (es >> i & 1)
                        epos[i] = d.add_edge(host.edge(i).id, vpos[host.edge(i).src], vpos[host.edge(i).tgt],
                                             host.edge(i).label);
                Maps k;
                for (auto x : mk.v) k.v.push_back(vpos[x]);
                for (auto x : mk.e) k.e.push_back(epos[x]);
                (void)K;
                out.push_back(glue(d, k, R, rm));
            }
    }
    return up_to_iso(out);
}

std::uint64_t brute_tiling_weight(const TileConfig& cfg, const LabeledGraph& g) {
    std::uint64_t w = 0;
    for (const auto& e : cfg.entries)
        w += e.weight * brute_hom_count(*e.tile.graph, g, e.cls != MorphismClass::Hom);
    return w;
}

namespace {
bool brute_iso(const LabeledGraph& a, const LabeledGraph& b) {
    if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
    return !brute_homs(a, b, true).empty();
}
}  // namespace

std::vector<LabeledGraph> up_to_iso(const std::vector<LabeledGraph>& gs) {
    std::vector<LabeledGraph> out;
    for (const auto& g : gs) {
        bool dup = false;
        for (const auto& h : out)
            if (brute_iso(g, h)) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(g);
    }
    return out;
}

bool same_up_to_iso(const std::vector<LabeledGraph>& a, const std::vector<LabeledGraph>& b) {
    auto ua = up_to_iso(a), ub = up_to_iso(b);
    if (ua.size() != ub.size()) return false;
    for (const auto& g : ua) {
        bool found = false;
        for (const auto& h : ub)
            if (brute_iso(g, h)) found = true;
        if (!found) return false;
    }
    return true;
}

}  // namespace testing

namespace testing {

namespace {

const std::vector<std::string> kV{"0", "1"};
const std::vector<std::string> kE{"a", "b"};

std::optional<Maps> random_hom(std::mt19937& rng, const LabeledGraph& a, const LabeledGraph& c) {
    auto hs = brute_homs(a, c, false);
    if (hs.empty()) return std::nullopt;
    return hs[rng() % hs.size()];
}

// Builds a random morphism A -> C with both sides random; retries until one exists.
GraphMorphism random_morphism(std::mt19937& rng, std::size_t av, std::size_t ae, std::size_t cv,
                              std::size_t ce) {
    while (true) {
        auto c = share(random_graph(rng, cv, ce, kV, kE, 1));
        auto a = share(random_graph(rng, av, ae, kV, kE));
        if (auto h = random_hom(rng, *a, *c)) return GraphMorphism(a, c, h->v, h->e);
    }
}

GraphMorphism random_morphism_from(std::mt19937& rng, const GraphPtr& a, std::size_t cv,
                                   std::size_t ce) {
    while (true) {
        auto c = share(random_graph(rng, cv, ce, kV, kE, 1));
        if (auto h = random_hom(rng, *a, *c)) return GraphMorphism(a, c, h->v, h->e);
    }
}

GraphMorphism random_morphism_into(std::mt19937& rng, const GraphPtr& c, std::size_t av,
                                   std::size_t ae) {
    while (true) {
        auto a = share(random_graph(rng, av, ae, kV, kE));
        if (auto h = random_hom(rng, *a, *c)) return GraphMorphism(a, c, h->v, h->e);
    }
}

std::vector<GraphPtr> representables() {
    std::vector<GraphPtr> out;
    for (const auto& v : kV) {
        LabeledGraph g;
        g.add_vertex("p", v);
        out.push_back(share(g));
        for (const auto& e : kE) {
            LabeledGraph loop;
            loop.add_edge("E", loop.add_vertex("p", v), 0, e);
            out.push_back(share(loop));
            for (const auto& w : kV) {
                LabeledGraph edge;
                auto p = edge.add_vertex("p", v);
                edge.add_edge("E", p, edge.add_vertex("q", w), e);
                out.push_back(share(edge));
            }
        }
    }
    return out;
}

bool injective(const std::vector<std::size_t>& m) {
    std::set<std::size_t> s(m.begin(), m.end());
    return s.size() == m.size();
}

bool surjective(const std::vector<std::size_t>& m, std::size_t n) {
    std::set<std::size_t> s(m.begin(), m.end());
    return s.size() == n;
}

LabeledGraph permuted(std::mt19937& rng, const LabeledGraph& g) {
    std::vector<std::size_t> perm(g.vertex_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::size_t> pos(perm.size());
    LabeledGraph h;
    for (std::size_t i = 0; i < perm.size(); ++i) pos[perm[i]] = h.add_vertex("w" + std::to_string(i), g.vertex(perm[i]).label);
    std::vector<std::size_t> eperm(g.edge_count());
    std::iota(eperm.begin(), eperm.end(), 0);
    std::shuffle(eperm.begin(), eperm.end(), rng);
    for (std::size_t i = 0; i < eperm.size(); ++i) {
        const auto& e = g.edge(eperm[i]);
        h.add_edge("d" + std::to_string(i), pos[e.src], pos[e.tgt], e.label);
    }
    return h;
}

}  // namespace

SuiteResult kernel_oracle_suite(unsigned seed, std::size_t iterations) {
    std::mt19937 rng(seed);
    SuiteResult res;
    const auto reps = representables();
    auto check = [&](bool ok, std::size_t it, const std::string& what) {
        ++res.cases;
        if (!ok) res.failures.push_back("iteration " + std::to_string(it) + ": " + what);
    };
    for (std::size_t it = 0; it < iterations; ++it) {
        {
            auto t = random_graph(rng, 3, 3, kV, kE);
            auto g = random_graph(rng, 4, 6, kV, kE);
            check(count_morphisms(t, g, MorphismClass::Hom) == brute_hom_count(t, g, false), it, "hom count");
            check(count_morphisms(t, g, MorphismClass::Mono) == brute_hom_count(t, g, true), it, "mono count");
            auto tp = share(t), gp = share(g);
            auto listed = enumerate_morphisms(tp, gp, MorphismClass::Hom);
            bool sorted = std::is_sorted(listed.begin(), listed.end(), morphism_less);
            bool distinct = std::adjacent_find(listed.begin(), listed.end()) == listed.end();
            check(sorted && distinct && listed.size() == brute_hom_count(t, g, false), it, "enumeration");
        }
        {
            auto f = random_morphism(rng, 3, 3, 3, 4);
            auto g = random_morphism_into(rng, f.cod_ptr(), 3, 3);
            auto pb = pullback(f, g);
            std::string why;
            auto objects = reps;
            objects.push_back(share(random_graph(rng, 2, 2, kV, kE)));
            check(pullback_universal(f, g, pb, objects, &why), it, "pullback: " + why);
            check(is_pullback_square(pb.p1, pb.p2, f, g), it, "pullback square test");
            check(pullback_arrow(f, g) == pb.p2, it, "pullback arrow");
        }
        {
            auto f = random_morphism(rng, 2, 2, 3, 3);
            auto g = random_morphism_from(rng, f.dom_ptr(), 3, 3);
            auto po = pushout(f, g);
            std::string why;
            std::vector<GraphPtr> objects{share(random_graph(rng, 2, 3, kV, kE, 1)),
                                          share(random_graph(rng, 3, 4, kV, kE, 1))};
            check(pushout_universal(f, g, po, objects, &why), it, "pushout: " + why);
            auto glued = glue(f.cod(), maps_of(f), g.cod(), maps_of(g));
            check(brute_iso(glued, *po.object), it, "pushout object differs from gluing");
            std::size_t self = 0;
            Maps q1 = maps_of(po.q1), q2 = maps_of(po.q2);
            for (const auto& u : brute_homs(*po.object, *po.object, false))
                if (compose_maps(u, q1) == q1 && compose_maps(u, q2) == q2) ++self;
            check(self == 1, it, "pushout self-cocone mediators");
        }
        {
            auto f = random_morphism(rng, 4, 4, 3, 5);
            auto fm = factorize(f);
            check(surjective(fm.e.vmap(), fm.e.cod().vertex_count()) &&
                      surjective(fm.e.emap(), fm.e.cod().edge_count()) && injective(fm.m.vmap()) &&
                      injective(fm.m.emap()) && compose(fm.m, fm.e) == f,
                  it, "factorization");
            check(is_monic(f) == (injective(f.vmap()) && injective(f.emap())), it, "monic test");
            check(is_epic(f) == (surjective(f.vmap(), f.cod().vertex_count()) &&
                                 surjective(f.emap(), f.cod().edge_count())),
                  it, "epic test");
            std::size_t sections = 0;
            Maps fmaps = maps_of(f);
            Maps id;
            id.v.resize(f.cod().vertex_count());
            id.e.resize(f.cod().edge_count());
            std::iota(id.v.begin(), id.v.end(), 0);
            std::iota(id.e.begin(), id.e.end(), 0);
            for (const auto& s : brute_homs(f.cod(), f.dom(), false))
                if (compose_maps(fmaps, s) == id) ++sections;
            check(right_inverses(f).size() == sections, it, "right inverse count");
            check(is_split_epic(f) == (sections > 0), it, "split epi test");
        }
        {
            auto g = random_graph(rng, 5, 6, kV, kE);
            auto h = permuted(rng, g);
            check(isomorphic(g, h) && invariant_hash(g) == invariant_hash(h), it, "permuted copy not isomorphic");
            auto iso = find_isomorphism(share(g), share(h));
            check(iso && is_iso(*iso), it, "isomorphism witness");
            auto k = random_graph(rng, 3, 3, kV, kE);
            auto j = random_graph(rng, 3, 3, kV, kE);
            check(isomorphic(k, j) == brute_iso(k, j), it, "isomorphism test");
        }
    }
    return res;
}

std::vector<SoundnessTarget> soundness_targets() {
    auto sys = [](const Workspace& ws, const std::string& name) { return ws.find_system(name)->rules; };
    const auto& c = corpus();
    auto t = [&](const std::string& n) { return c.find_tile(n)->tile; };
    const auto& sw = string_workspace();
    auto st = [&](const std::string& n) { return sw.find_tile(n)->tile; };
    using MC = MorphismClass;
    return {
        {"folding", sys(c, "folding_an_edge"), config({{t("single_nonloop_edge"), 1, MC::Mono}})},
        {"multiset", sys(c, "multiset_as_graph"), config({{t("a_loop"), 5, MC::Mono}, {t("b_loop"), 3, MC::Mono}})},
        {"generalized multiset", sys(c, "generalized_multiset_as_graph"),
         config({{t("a_loop"), 5, MC::Mono}, {t("b_loop"), 3, MC::Mono}})},
        {"deletion (homs)", sys(c, "delete_loop_and_nonloop"), config({{t("single_nonloop_edge"), 1, MC::Hom}})},
        {"deletion (monos)", sys(c, "delete_loop_and_nonloop"),
         config({{t("single_nonloop_edge"), 1, MC::Mono}, {t("single_loop"), 1, MC::Mono}})},
        {"unfold", sys(c, "unfold_to_triangle"), config({{t("two_opposing_edges"), 1, MC::Mono}})},
        {"duplicating", sys(c, "duplicating_bipartite_components"), config({{t("single_loop"), 1, MC::Mono}})},
        {"string (ab)", sys(sw, "string_rules"), config({{st("ab_path"), 1, MC::Mono}})},
        {"string (c)", sys(sw, "string_rules"), config({{st("c_edge"), 1, MC::Mono}})},
    };
}

namespace {

GraphPtr plant(std::mt19937& rng, const LabeledGraph& l, const LabelSet& labels, std::size_t max_v,
               std::size_t max_e) {
    std::vector<std::string> vl(labels.vertex_labels.begin(), labels.vertex_labels.end());
    std::vector<std::string> el(labels.edge_labels.begin(), labels.edge_labels.end());
    LabeledGraph g;
    for (const auto& v : l.vertices()) g.add_vertex(v.id, v.label);
    for (const auto& e : l.edges()) g.add_edge(e.id, e.src, e.tgt, e.label);
    std::size_t room_v = max_v > g.vertex_count() ? max_v - g.vertex_count() : 0;
    std::size_t room_e = max_e > g.edge_count() ? max_e - g.edge_count() : 0;
    std::size_t nv = std::uniform_int_distribution<std::size_t>(0, room_v)(rng);
    for (std::size_t i = 0; i < nv; ++i) g.add_vertex("h" + std::to_string(i), vl[rng() % vl.size()]);
    std::size_t ne = el.empty() || g.vertex_count() == 0 ? 0 : std::uniform_int_distribution<std::size_t>(0, room_e)(rng);
    for (std::size_t i = 0; i < ne; ++i) {
        std::size_t s = rng() % g.vertex_count();
        std::size_t t = rng() % 2 ? s : rng() % g.vertex_count();
        g.add_edge("k" + std::to_string(i), s, t, el[rng() % el.size()]);
    }
    return share(std::move(g));
}

}  // namespace

SuiteResult soundness_suite(unsigned seed, std::size_t hosts, std::size_t max_v, std::size_t max_e) {
    std::mt19937 rng(seed);
    SuiteResult res;
    for (const auto& target : soundness_targets()) {
        for (const auto& rule : target.rules) {
            auto verdict = classify_rule(rule, target.cfg);
            if (verdict.status == RuleStatus::Unknown) continue;
            bool strict = verdict.status == RuleStatus::Decreasing;
            auto cls = verdict.assumptions.empty() ? MorphismClass::Hom : MorphismClass::Mono;
            auto labels = rule_labels(rule);
            std::size_t productive = 0, attempts = 0;
            std::string where = target.label + " / " + rule.name;
            while (productive < hosts && attempts < 400 * hosts) {
                ++attempts;
                auto host = plant(rng, *rule.L, labels, max_v, max_e);
                auto succ = successors({rule}, host, cls);
                if (succ.graphs.empty() || succ.truncated) continue;
                ++productive;
                auto before = brute_tiling_weight(target.cfg, *host);
                for (const auto& h : succ.graphs) {
                    ++res.cases;
                    auto after = brute_tiling_weight(target.cfg, *h);
                    if (strict ? after >= before : after > before)
                        res.failures.push_back(where + ": weight " + std::to_string(before) + " -> " +
                                               std::to_string(after) + " for host " + serialize_graph(*host) +
                                               " giving " + serialize_graph(*h));
                }
            }
            if (productive < hosts)
                res.failures.push_back(where + ": only " + std::to_string(productive) + " hosts admitted a step");
        }
    }
    return res;
}

std::size_t longest_derivation(const std::vector<PbpoRule>& rules, const GraphPtr& host,
                               MorphismClass cls) {
    struct Entry {
        GraphPtr g;
        std::size_t len;
    };
    std::unordered_map<std::size_t, std::vector<Entry>> memo;
    std::function<std::size_t(const GraphPtr&, std::size_t)> go = [&](const GraphPtr& g, std::size_t depth) {
        if (depth > 10000) throw std::runtime_error("derivation does not seem to terminate");
        auto h = invariant_hash(*g);
        for (const auto& e : memo[h])
            if (isomorphic(*e.g, *g)) return e.len;
        std::size_t best = 0;
        auto succ = successors(rules, g, cls);
        if (succ.truncated) throw std::runtime_error("successor bound reached");
        for (const auto& s : succ.graphs) best = std::max(best, 1 + go(s, depth + 1));
        memo[h].push_back({g, best});
        return best;
    };
    return go(host, 0);
}

GraphPtr loops_and_isolated(std::size_t m, std::size_t n) {
    LabeledGraph g;
    auto x = g.add_vertex("x", "0");
    for (std::size_t i = 0; i < m; ++i) g.add_edge("l" + std::to_string(i), x, x, "0");
    for (std::size_t i = 1; i < n; ++i) g.add_vertex("y" + std::to_string(i), "0");
    return share(std::move(g));
}

}  // namespace testing
