#include "tileterm/limits.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace tileterm {

Pullback pullback(const GraphMorphism& f, const GraphMorphism& g) {
    if (!same_object(f.cod_ptr(), g.cod_ptr()))
        throw MorphismError("pullback: the cospan does not share its codomain");
    const auto& a = f.dom();
    const auto& b = g.dom();
    const std::size_t nb = b.vertex_count();

    std::vector<std::vector<std::size_t>> b_over(f.cod().vertex_count());
    for (std::size_t j = 0; j < nb; ++j) b_over[g.v(j)].push_back(j);
    std::vector<std::vector<std::size_t>> be_over(f.cod().edge_count());
    for (std::size_t j = 0; j < b.edge_count(); ++j) be_over[g.e(j)].push_back(j);

    LabeledGraph p;
    std::vector<std::size_t> p1v, p2v, p1e, p2e;
    std::unordered_map<std::uint64_t, std::size_t> pair_index;
    for (std::size_t i = 0; i < a.vertex_count(); ++i)
        for (auto j : b_over[f.v(i)]) {
            pair_index[static_cast<std::uint64_t>(i) * nb + j] =
                p.add_vertex("(" + a.vertex(i).id + "," + b.vertex(j).id + ")", a.vertex(i).label);
            p1v.push_back(i);
            p2v.push_back(j);
        }
    for (std::size_t i = 0; i < a.edge_count(); ++i)
        for (auto j : be_over[f.e(i)]) {
            const auto& ea = a.edge(i);
            const auto& eb = b.edge(j);
            auto s = pair_index.at(static_cast<std::uint64_t>(ea.src) * nb + eb.src);
            auto t = pair_index.at(static_cast<std::uint64_t>(ea.tgt) * nb + eb.tgt);
            p.add_edge("(" + ea.id + "," + eb.id + ")", s, t, ea.label);
            p1e.push_back(i);
            p2e.push_back(j);
        }
    auto obj = share(std::move(p));
    return {obj, GraphMorphism::trusted(obj, f.dom_ptr(), std::move(p1v), std::move(p1e)),
            GraphMorphism::trusted(obj, g.dom_ptr(), std::move(p2v), std::move(p2e))};
}

GraphMorphism pullback_arrow(const GraphMorphism& f, const GraphMorphism& g) {
    return pullback(f, g).p2;
}

namespace {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t x, std::size_t y) {
        x = find(x), y = find(y);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
    }
};

std::string class_name_of(const std::vector<const std::string*>& ids) {
    if (ids.size() == 1) return *ids.front();
    std::set<std::string> atoms;
    for (const auto* id : ids) {
        std::stringstream ss(*id);
        std::string part;
        while (std::getline(ss, part, '.'))
            if (!part.empty()) atoms.insert(part);
    }
    std::string out;
    for (const auto& x : atoms) out += (out.empty() ? "" : ".") + x;
    return out;
}

std::string unique_name(const std::string& base, std::set<std::string>& used) {
    std::string name = base;
    for (int k = 2; used.count(name); ++k) name = base + "_" + std::to_string(k);
    used.insert(name);
    return name;
}

}  // namespace

Pushout pushout(const GraphMorphism& f, const GraphMorphism& g) {
    if (!same_object(f.dom_ptr(), g.dom_ptr()))
        throw MorphismError("pushout: the span does not share its domain");
    const auto& b = f.cod();
    const auto& c = g.cod();
    const std::size_t nbv = b.vertex_count(), nbe = b.edge_count();

    UnionFind uv(nbv + c.vertex_count());
    UnionFind ue(nbe + c.edge_count());
    for (std::size_t i = 0; i < f.dom().vertex_count(); ++i) uv.unite(f.v(i), nbv + g.v(i));
    for (std::size_t i = 0; i < f.dom().edge_count(); ++i) ue.unite(f.e(i), nbe + g.e(i));

    auto vid = [&](std::size_t k) -> const Vertex& { return k < nbv ? b.vertex(k) : c.vertex(k - nbv); };
    auto eid = [&](std::size_t k) -> const Edge& { return k < nbe ? b.edge(k) : c.edge(k - nbe); };

    // Classes in order of their least member; representatives are least members.
    std::vector<std::size_t> vclass(uv.parent.size()), eclass(ue.parent.size());
    std::vector<std::vector<const std::string*>> vmembers, emembers;
    std::vector<std::size_t> vrep_to_class(uv.parent.size(), SIZE_MAX);
    for (std::size_t k = 0; k < uv.parent.size(); ++k) {
        auto r = uv.find(k);
        if (vrep_to_class[r] == SIZE_MAX) {
            vrep_to_class[r] = vmembers.size();
            vmembers.emplace_back();
        }
        vclass[k] = vrep_to_class[r];
        if (vid(k).label != vid(r).label)
            throw MorphismError("pushout: label conflict in merged vertex class");
        vmembers[vclass[k]].push_back(&vid(k).id);
    }
    std::vector<std::size_t> erep_to_class(ue.parent.size(), SIZE_MAX);
    for (std::size_t k = 0; k < ue.parent.size(); ++k) {
        auto r = ue.find(k);
        if (erep_to_class[r] == SIZE_MAX) {
            erep_to_class[r] = emembers.size();
            emembers.emplace_back();
        }
        eclass[k] = erep_to_class[r];
        if (eid(k).label != eid(r).label)
            throw MorphismError("pushout: label conflict in merged edge class");
        emembers[eclass[k]].push_back(&eid(k).id);
    }

    LabeledGraph q;
    std::set<std::string> used;
    std::vector<std::size_t> vfirst(vmembers.size(), SIZE_MAX);
    for (std::size_t k = 0; k < vclass.size(); ++k)
        if (vfirst[vclass[k]] == SIZE_MAX) vfirst[vclass[k]] = k;
    for (std::size_t cl = 0; cl < vmembers.size(); ++cl)
        q.add_vertex(unique_name(class_name_of(vmembers[cl]), used), vid(vfirst[cl]).label);
    used.clear();
    std::vector<std::size_t> efirst(emembers.size(), SIZE_MAX);
    for (std::size_t k = 0; k < eclass.size(); ++k)
        if (efirst[eclass[k]] == SIZE_MAX) efirst[eclass[k]] = k;
    for (std::size_t cl = 0; cl < emembers.size(); ++cl) {
        std::size_t k = efirst[cl];
        const auto& e = eid(k);
        std::size_t off = k < nbe ? 0 : nbv;
        q.add_edge(unique_name(class_name_of(emembers[cl]), used), vclass[e.src + off],
                   vclass[e.tgt + off], e.label);
    }

    auto obj = share(std::move(q));
    std::vector<std::size_t> q1v(nbv), q1e(nbe), q2v(c.vertex_count()), q2e(c.edge_count());
    for (std::size_t k = 0; k < nbv; ++k) q1v[k] = vclass[k];
    for (std::size_t k = 0; k < nbe; ++k) q1e[k] = eclass[k];
    for (std::size_t k = 0; k < q2v.size(); ++k) q2v[k] = vclass[nbv + k];
    for (std::size_t k = 0; k < q2e.size(); ++k) q2e[k] = eclass[nbe + k];
    return {obj, GraphMorphism::trusted(f.cod_ptr(), obj, std::move(q1v), std::move(q1e)),
            GraphMorphism::trusted(g.cod_ptr(), obj, std::move(q2v), std::move(q2e))};
}

Factorization factorize(const GraphMorphism& f) {
    const auto& c = f.cod();
    std::vector<char> vin(c.vertex_count(), 0), ein(c.edge_count(), 0);
    for (auto x : f.vmap()) vin[x] = 1;
    for (auto x : f.emap()) ein[x] = 1;
    LabeledGraph img;
    std::vector<std::size_t> vpos(c.vertex_count(), SIZE_MAX), epos(c.edge_count(), SIZE_MAX);
    std::vector<std::size_t> mv, me;
    for (std::size_t i = 0; i < c.vertex_count(); ++i)
        if (vin[i]) {
            vpos[i] = img.add_vertex(c.vertex(i).id, c.vertex(i).label);
            mv.push_back(i);
        }
    for (std::size_t i = 0; i < c.edge_count(); ++i)
        if (ein[i]) {
            const auto& e = c.edge(i);
            epos[i] = img.add_edge(e.id, vpos[e.src], vpos[e.tgt], e.label);
            me.push_back(i);
        }
    auto obj = share(std::move(img));
    std::vector<std::size_t> ev(f.vmap().size()), ee(f.emap().size());
    for (std::size_t i = 0; i < ev.size(); ++i) ev[i] = vpos[f.v(i)];
    for (std::size_t i = 0; i < ee.size(); ++i) ee[i] = epos[f.e(i)];
    return {GraphMorphism::trusted(f.dom_ptr(), obj, std::move(ev), std::move(ee)),
            GraphMorphism::trusted(obj, f.cod_ptr(), std::move(mv), std::move(me))};
}

GraphMorphism pullback_mediator(const Pullback& pb, const GraphMorphism& x1,
                                const GraphMorphism& x2) {
    const auto& p = *pb.object;
    std::vector<std::size_t> vm(x1.dom().vertex_count()), em(x1.dom().edge_count());
    for (std::size_t i = 0; i < vm.size(); ++i) {
        std::size_t hit = SIZE_MAX;
        for (std::size_t k = 0; k < p.vertex_count(); ++k)
            if (pb.p1.v(k) == x1.v(i) && pb.p2.v(k) == x2.v(i)) { hit = k; break; }
        if (hit == SIZE_MAX) throw MorphismError("pullback_mediator: span does not commute");
        vm[i] = hit;
    }
    for (std::size_t i = 0; i < em.size(); ++i) {
        std::size_t hit = SIZE_MAX;
        for (std::size_t k = 0; k < p.edge_count(); ++k)
            if (pb.p1.e(k) == x1.e(i) && pb.p2.e(k) == x2.e(i)) { hit = k; break; }
        if (hit == SIZE_MAX) throw MorphismError("pullback_mediator: span does not commute");
        em[i] = hit;
    }
    return GraphMorphism::trusted(x1.dom_ptr(), pb.object, std::move(vm), std::move(em));
}

GraphMorphism pushout_mediator(const Pushout& po, const GraphMorphism& y1,
                               const GraphMorphism& y2) {
    const auto& q = *po.object;
    std::vector<std::size_t> vm(q.vertex_count(), SIZE_MAX), em(q.edge_count(), SIZE_MAX);
    auto put = [](std::vector<std::size_t>& m, std::size_t at, std::size_t val) {
        if (m[at] != SIZE_MAX && m[at] != val)
            throw MorphismError("pushout_mediator: cospan does not agree on the span");
        m[at] = val;
    };
    for (std::size_t k = 0; k < po.q1.vmap().size(); ++k) put(vm, po.q1.v(k), y1.v(k));
    for (std::size_t k = 0; k < po.q2.vmap().size(); ++k) put(vm, po.q2.v(k), y2.v(k));
    for (std::size_t k = 0; k < po.q1.emap().size(); ++k) put(em, po.q1.e(k), y1.e(k));
    for (std::size_t k = 0; k < po.q2.emap().size(); ++k) put(em, po.q2.e(k), y2.e(k));
    return GraphMorphism(po.object, y1.cod_ptr(), std::move(vm), std::move(em));
}

bool is_pullback_square(const GraphMorphism& x1, const GraphMorphism& x2, const GraphMorphism& f,
                        const GraphMorphism& g) {
    if (!(compose(f, x1) == compose(g, x2))) return false;
    auto pb = pullback(f, g);
    return is_iso(pullback_mediator(pb, x1, x2));
}

}  // namespace tileterm
