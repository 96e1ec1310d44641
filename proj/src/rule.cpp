#include "tileterm/rule.hpp"

#include <set>

namespace tileterm {

const Completion& PbpoRule::done() const {
    if (!completion) throw std::logic_error("rule '" + name + "' is not completed");
    return *completion;
}

namespace {

void check_typed(const GraphMorphism& f, const GraphPtr& dom, const GraphPtr& cod,
                 const std::string& what, std::vector<std::string>& errors) {
    if (!same_object(f.dom_ptr(), dom) || !same_object(f.cod_ptr(), cod))
        errors.push_back(what + " is not typed correctly");
}

std::string differing(const GraphMorphism& a, const GraphMorphism& b) {
    std::string out;
    for (std::size_t i = 0; i < a.vmap().size(); ++i)
        if (a.v(i) != b.v(i)) out += (out.empty() ? "" : ", ") + a.dom().vertex(i).id;
    for (std::size_t i = 0; i < a.emap().size(); ++i)
        if (a.e(i) != b.e(i)) out += (out.empty() ? "" : ", ") + a.dom().edge(i).id;
    return out;
}

}  // namespace

RuleDiagnostics validate_rule(const PbpoRule& rule) {
    RuleDiagnostics d;
    check_typed(rule.l, rule.K, rule.L, "l: K -> L", d.errors);
    check_typed(rule.r, rule.K, rule.R, "r: K -> R", d.errors);
    check_typed(rule.tL, rule.L, rule.Lp, "tL: L -> L'", d.errors);
    check_typed(rule.tK, rule.K, rule.Kp, "tK: K -> K'", d.errors);
    check_typed(rule.lp, rule.Kp, rule.Lp, "l': K' -> L'", d.errors);
    if (!d.errors.empty()) return d;

    auto top = compose(rule.tL, rule.l);
    auto bottom = compose(rule.lp, rule.tK);
    if (!(top == bottom)) {
        d.errors.push_back("left square does not commute (at " + differing(top, bottom) + ")");
    } else {
        auto pb = pullback(rule.tL, rule.lp);
        auto med = pullback_mediator(pb, rule.l, rule.tK);
        if (!is_iso(med)) {
            std::string extra;
            std::vector<char> hit(pb.object->vertex_count(), 0);
            for (auto x : med.vmap()) hit[x] = 1;
            for (std::size_t k = 0; k < hit.size(); ++k)
                if (!hit[k]) extra += (extra.empty() ? "" : ", ") + pb.object->vertex(k).id;
            std::vector<char> ehit(pb.object->edge_count(), 0);
            for (auto x : med.emap()) ehit[x] = 1;
            for (std::size_t k = 0; k < ehit.size(); ++k)
                if (!ehit[k]) extra += (extra.empty() ? "" : ", ") + pb.object->edge(k).id;
            d.errors.push_back("left square is not a pullback" +
                               (extra.empty() ? std::string() : " (missing " + extra + ")"));
        }
    }
    d.tL_monic = is_monic(rule.tL);
    d.tK_monic = is_monic(rule.tK);
    if (!d.tL_monic) d.warnings.push_back("tL is not monic");
    if (!d.tK_monic) d.warnings.push_back("tK is not monic");

    if (rule.completion) {
        const auto& c = *rule.completion;
        if (!(compose(c.rp, rule.tK) == compose(c.tR, rule.r)))
            d.errors.push_back("right square does not commute");
    }
    return d;
}

PbpoRule complete_rule(PbpoRule rule) {
    if (rule.completion) return rule;
    auto po = pushout(rule.tK, rule.r);
    rule.completion = Completion{po.object, po.q1, po.q2};
    return rule;
}

Classifier partial_map_classifier(const GraphPtr& X, const LabelSet& labels) {
    LabelSet all = labels;
    all.merge(X->labels());
    if (all.vertex_labels.empty()) all.vertex_labels.insert("0");
    if (all.edge_labels.empty()) all.edge_labels.insert("0");

    LabeledGraph t = *X;
    const bool single = all.vertex_labels.size() == 1;
    for (const auto& lab : all.vertex_labels) {
        std::string base = single ? "c" : "c_" + lab;
        std::string id = base;
        for (int k = 2; t.find_vertex(id); ++k) id = base + "_" + std::to_string(k);
        t.add_vertex(id, lab);
    }
    std::size_t counter = 0;
    const std::size_t n = t.vertex_count();
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t g = 0; g < n; ++g)
            for (const auto& lab : all.edge_labels) {
                std::string id;
                do id = "t" + std::to_string(counter++);
                while (t.find_edge(id));
                t.add_edge(id, s, g, lab);
            }
    auto obj = share(std::move(t));
    std::vector<std::size_t> vm(X->vertex_count()), em(X->edge_count());
    for (std::size_t i = 0; i < vm.size(); ++i) vm[i] = i;
    for (std::size_t i = 0; i < em.size(); ++i) em[i] = i;
    return {obj, GraphMorphism::trusted(X, obj, std::move(vm), std::move(em))};
}

PbpoRule encode_dpo_rule(const DpoRule& rule, const LabelSet& labels) {
    if (!is_monic(rule.l)) throw std::invalid_argument("DPO rule '" + rule.name + "' is not left-linear");
    if (!same_object(rule.l.dom_ptr(), rule.r.dom_ptr()))
        throw std::invalid_argument("DPO rule '" + rule.name + "' is not a span");
    LabelSet all = labels;
    all.merge(rule.l.cod().labels());
    all.merge(rule.l.dom().labels());
    all.merge(rule.r.cod().labels());
    auto cls = partial_map_classifier(rule.l.dom_ptr(), all);
    auto po = pushout(rule.l, cls.eta);
    PbpoRule out{rule.name,
                 rule.l.cod_ptr(),
                 po.object,
                 rule.l.dom_ptr(),
                 cls.TX,
                 rule.r.cod_ptr(),
                 rule.l,
                 rule.r,
                 po.q1,
                 cls.eta,
                 po.q2,
                 std::nullopt};
    return complete_rule(std::move(out));
}

bool check_deleting_rule(const PbpoRule& rule) {
    return is_monic(rule.lp) && !is_epic(rule.l) && is_iso(rule.r);
}

LabelSet rule_labels(const PbpoRule& rule) {
    LabelSet ls;
    for (const auto& g : {rule.L, rule.Lp, rule.K, rule.Kp, rule.R}) ls.merge(g->labels());
    return ls;
}

}  // namespace tileterm
