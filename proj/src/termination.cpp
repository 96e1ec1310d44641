#include "tileterm/termination.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "tileterm/limits.hpp"
#include "tileterm/search.hpp"

namespace tileterm {

namespace {

constexpr std::size_t kMaxOutcomeSets = 10000;

using Key = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;

Key key_of(const GraphMorphism& f) { return {f.vmap(), f.emap()}; }

std::string describe(const GraphMorphism& f) {
    std::string s;
    for (std::size_t i = 0; i < f.emap().size(); ++i)
        s += (s.empty() ? "" : ",") + f.dom().edge(i).id + "->" + f.cod().edge(f.e(i)).id;
    for (std::size_t i = 0; i < f.vmap().size(); ++i)
        s += (s.empty() ? "" : ",") + f.dom().vertex(i).id + "->" + f.cod().vertex(f.v(i)).id;
    return "{" + s + "}";
}

}  // namespace

void check_config(const TileConfig& cfg) {
    std::set<std::string> names;
    for (const auto& e : cfg.entries) {
        if (e.weight < 1) throw std::invalid_argument("tile weight must be at least 1");
        if (!e.tile.graph) throw std::invalid_argument("tile '" + e.tile.name + "' has no graph");
        if (!names.insert(e.tile.name).second)
            throw std::invalid_argument("tile '" + e.tile.name + "' is listed twice");
    }
}

std::uint64_t tiling_weight(const TileConfig& cfg, const LabeledGraph& x) {
    std::uint64_t w = 0;
    for (const auto& e : cfg.entries) w += e.weight * count_morphisms(*e.tile.graph, x, e.cls);
    return w;
}

IsoPartition partition_by_iso(const GraphMorphism& base, const std::vector<GraphMorphism>& tilings) {
    IsoPartition p;
    for (const auto& t : tilings) {
        if (is_iso(pullback_arrow(base, t))) p.iso.push_back(t);
        else p.noniso.push_back(t);
    }
    return p;
}

std::vector<GraphMorphism> compute_phi(const PbpoRule& rule, const Tile& tile, MorphismClass cls) {
    const auto& c = rule.done();
    std::vector<GraphMorphism> phi;
    for (auto& f : enumerate_morphisms(tile.graph, c.Rp, MorphismClass::Hom)) {
        auto back = pullback(f, c.tR);
        if (in_class(back.p2, cls) && !is_iso(back.p1)) phi.push_back(std::move(f));
    }
    return phi;
}

SlideOptions slide_options(const GraphMorphism& f, const PbpoRule& rule, MorphismClass cls) {
    const auto& c = rule.done();
    SlideOptions out;
    auto pb = pullback(c.rp, f);  // p1 = <f|r'>, p2 = <r'|f>
    auto secs = right_inverses(pb.p2);
    out.sections = secs.size();
    out.split_epic = !secs.empty();
    std::set<Key> seen;
    for (const auto& g : secs) {
        auto x = compose(pb.p1, g);
        if (!seen.insert(key_of(x)).second) continue;
        if (cls != MorphismClass::Hom) {
            auto m = factorize(x).m;
            if (!is_monic(compose(rule.lp, m))) {
                ++out.rejected;
                continue;
            }
        }
        auto slid = compose(rule.lp, x);
        out.options.push_back({std::move(x), std::move(slid)});
    }
    return out;
}

SlideCheck check_slide_preconditions(const PbpoRule& rule, const TileConfig& cfg) {
    const auto& c = rule.done();
    SlideCheck check;
    check.ok = true;
    for (const auto& entry : cfg.entries) {
        SlideReport rep;
        rep.tile = entry.tile.name;
        rep.weight = entry.weight;
        rep.cls = entry.cls;
        rep.tR_in_class = in_class(c.tR, entry.cls);
        rep.tL_in_class = in_class(rule.tL, entry.cls);

        auto homs = enumerate_morphisms(entry.tile.graph, c.Rp, MorphismClass::Hom);
        rep.hom_into_r1 = homs.size();
        std::vector<GraphMorphism> phi;
        for (auto& f : homs) {
            auto back = pullback(f, c.tR);
            if (!in_class(back.p2, entry.cls)) continue;
            ++rep.valid;
            if (is_iso(back.p1)) ++rep.iso_in_r;
            else phi.push_back(f);
        }
        rep.noniso_in_r = phi.size();
        rep.r_weight = rep.iso_in_r * entry.weight;

        std::string failure;
        if (!rep.tR_in_class) failure = "tR is not in the class " + class_name(entry.cls);

        std::vector<std::vector<GraphMorphism>> options(phi.size());
        for (std::size_t i = 0; i < phi.size() && failure.empty(); ++i) {
            auto so = slide_options(phi[i], rule, entry.cls);
            if (!so.split_epic) {
                failure = "<r'|f> is not split epic for f = " + describe(phi[i]);
                break;
            }
            std::set<Key> distinct;
            for (auto& o : so.options)
                if (distinct.insert(key_of(o.slid)).second) options[i].push_back(std::move(o.slid));
            if (options[i].empty())
                failure = "l' does not preserve the factorization of any slide of f = " +
                          describe(phi[i]);
        }

        if (failure.empty()) {
            // Choice functions with pairwise distinct slid morphisms.
            std::set<std::vector<Key>> outcomes;
            std::vector<std::vector<GraphMorphism>> outcome_sets;
            std::vector<std::size_t> pick(phi.size());
            std::set<Key> used;
            bool capped = false;
            std::function<void(std::size_t)> go = [&](std::size_t i) {
                if (capped) return;
                if (i == phi.size()) {
                    std::vector<Key> ks(used.begin(), used.end());
                    if (outcomes.insert(ks).second) {
                        std::vector<GraphMorphism> set;
                        for (std::size_t j = 0; j < phi.size(); ++j) set.push_back(options[j][pick[j]]);
                        outcome_sets.push_back(std::move(set));
                        if (outcomes.size() >= kMaxOutcomeSets) capped = true;
                    }
                    return;
                }
                for (std::size_t k = 0; k < options[i].size(); ++k) {
                    auto key = key_of(options[i][k]);
                    if (used.count(key)) continue;
                    used.insert(key);
                    pick[i] = k;
                    go(i + 1);
                    used.erase(key);
                    if (capped) return;
                }
            };
            go(0);
            if (outcomes.empty()) {
                failure = "l' is not monic for the slid tilings";
            } else {
                rep.ways_to_slide = outcomes.size();
                rep.slid_sets = std::move(outcome_sets);
            }
        }

        rep.slide_successful = failure.empty();
        rep.failure = failure;
        if (!failure.empty() && check.ok) {
            check.ok = false;
            check.failure = entry.tile.name + ": " + failure;
        }
        check.chosen.push_back(rep.slid_sets.empty() ? std::vector<GraphMorphism>{}
                                                     : rep.slid_sets.front());
        check.reports.push_back(std::move(rep));
    }
    return check;
}

Delta compute_delta(const PbpoRule& rule, const TileConfig& cfg,
                    const std::vector<std::vector<std::vector<GraphMorphism>>>& all_slid_sets,
                    bool explicit_disjointness) {
    const auto& c = rule.done();
    bool shortcut = is_monic(rule.tK) && is_pullback_square(rule.tK, rule.r, c.rp, c.tR);
    Delta d;
    for (std::size_t i = 0; i < cfg.entries.size(); ++i) {
        const auto& entry = cfg.entries[i];
        std::set<Key> slid;
        if (!shortcut || explicit_disjointness)
            if (i < all_slid_sets.size())
                for (const auto& set : all_slid_sets[i])
                    for (const auto& s : set) slid.insert(key_of(s));
        std::set<Key> images;
        std::vector<GraphMorphism> kept;
        for (auto& t : enumerate_morphisms(entry.tile.graph, rule.L, entry.cls)) {
            auto img = key_of(compose(rule.tL, t));
            if (slid.count(img)) continue;
            if (!images.insert(img).second) continue;
            kept.push_back(std::move(t));
        }
        d.weight += kept.size() * entry.weight;
        d.per_tile.push_back(std::move(kept));
    }
    return d;
}

std::string status_name(RuleStatus s) {
    switch (s) {
        case RuleStatus::Decreasing: return "Decreasing";
        case RuleStatus::NonIncreasing: return "NonIncreasing";
        case RuleStatus::Unknown: return "Unknown";
    }
    return "?";
}

RuleVerdict classify_rule(const PbpoRule& rule, const TileConfig& cfg) {
    check_config(cfg);
    RuleVerdict v;
    v.rule = rule.name;
    auto diag = validate_rule(rule);
    if (!diag.ok()) {
        for (const auto& e : diag.errors) v.assumptions.push_back("invalid rule: " + e);
        return v;
    }
    auto check = check_slide_preconditions(rule, cfg);
    std::vector<std::vector<std::vector<GraphMorphism>>> sets;
    for (const auto& r : check.reports) sets.push_back(r.slid_sets);
    auto delta = compute_delta(rule, cfg, sets);
    for (std::size_t i = 0; i < check.reports.size(); ++i) {
        auto& r = check.reports[i];
        r.delta_size = delta.per_tile[i].size();
        r.delta_weight = r.delta_size * r.weight;
        v.r_weight += r.r_weight;
        if (!r.tL_in_class)
            v.assumptions.push_back("conditional on match restriction: tL is not in " +
                                    class_name(r.cls) + " for tile " + r.tile);
    }
    v.delta_weight = delta.weight;
    v.reports = std::move(check.reports);
    v.slide_successful = check.ok;
    if (!diag.tK_monic) {
        v.assumptions.push_back("tK is not monic");
        return v;
    }
    if (!check.ok) {
        v.assumptions.push_back("slide failed: " + check.failure);
        return v;
    }
    if (v.delta_weight > v.r_weight) v.status = RuleStatus::Decreasing;
    else if (v.delta_weight == v.r_weight) v.status = RuleStatus::NonIncreasing;
    return v;
}

ProofState ProofState::start(std::string system, std::vector<PbpoRule> rules) {
    ProofState s;
    s.system = std::move(system);
    s.original = std::move(rules);
    for (std::size_t i = 0; i < s.original.size(); ++i) s.remaining.push_back(i);
    return s;
}

std::vector<const PbpoRule*> ProofState::remaining_rules() const {
    std::vector<const PbpoRule*> out;
    for (auto i : remaining) out.push_back(&original[i]);
    return out;
}

std::vector<std::string> ProofState::remaining_names() const {
    std::vector<std::string> out;
    for (auto i : remaining) out.push_back(original[i].name);
    return out;
}

bool ProofState::undo() {
    if (transcript.empty()) return false;
    remaining = transcript.back().remaining_before;
    transcript.pop_back();
    return true;
}

Analysis analyze_system(ProofState& state, const TileConfig& cfg) {
    check_config(cfg);
    Analysis a;
    bool any_unknown = false;
    for (auto i : state.remaining) {
        a.verdicts.push_back(classify_rule(state.original[i], cfg));
        if (a.verdicts.back().status == RuleStatus::Unknown) any_unknown = true;
    }
    if (any_unknown) return a;

    ProofStage stage;
    stage.cfg = cfg;
    stage.verdicts = a.verdicts;
    stage.remaining_before = state.remaining;
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < state.remaining.size(); ++k) {
        auto idx = state.remaining[k];
        if (a.verdicts[k].status == RuleStatus::Decreasing) stage.pruned.push_back(state.original[idx].name);
        else keep.push_back(idx);
    }
    state.remaining = std::move(keep);
    stage.remaining_after = state.remaining_names();
    a.pruned = !stage.pruned.empty();
    state.transcript.push_back(std::move(stage));
    return a;
}

}  // namespace tileterm
