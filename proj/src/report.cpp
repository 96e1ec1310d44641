#include "tileterm/report.hpp"

#include <sstream>

#include "tileterm/format.hpp"

namespace tileterm {

namespace {

std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
    return s;
}

std::string conclusion(RuleStatus s) {
    switch (s) {
        case RuleStatus::Decreasing: return "PROVABLY DECREASING";
        case RuleStatus::NonIncreasing: return "PROVABLY NONINCREASING";
        case RuleStatus::Unknown: return "POSSIBLY INCREASING";
    }
    return "?";
}

const TileEntry* entry_for(const TileConfig& cfg, const std::string& tile) {
    for (const auto& e : cfg.entries)
        if (e.tile.name == tile) return &e;
    return nullptr;
}

}  // namespace

std::string render_report(const Analysis& analysis, const ProofState& state,
                          const TileConfig& cfg) {
    std::vector<std::string> names, dec, noninc, unknown;
    bool all_slid = true;
    for (const auto& v : analysis.verdicts) {
        names.push_back(v.rule);
        all_slid = all_slid && v.slide_successful;
        if (v.status == RuleStatus::Decreasing) dec.push_back(v.rule);
        else if (v.status == RuleStatus::NonIncreasing) noninc.push_back(v.rule);
        else unknown.push_back(v.rule);
    }

    std::ostringstream o;
    o << "\n";
    o << "=============== SYSTEM TERMINATION REPORT ===============\n";
    o << "---------------          SUMMARY          ---------------\n";
    o << "\n";
    o << "The system has " << names.size() << " rules, named: " << join(names) << "\n";
    o << "Was the sliding successful for every rule? " << (all_slid ? "yes" : "no") << "\n";
    o << "Provably decreasing rules: " << join(dec) << "\n";
    o << "Provably nonincreasing (but not provably decreasing) rules: " << join(noninc) << "\n";
    o << "Possibly increasing rules: " << join(unknown) << "\n";
    o << "The pruned system contains rules: " << join(state.remaining_names()) << "\n";
    o << "\n";
    if (state.remaining.empty())
        o << "The pruned system is empty, so the system is TERMINATING.\n";
    else if (!unknown.empty())
        o << "Some rules are possibly increasing, so no rules were pruned.\n";
    else
        o << "The pruned system is not empty, so termination remains to be shown for it.\n";
    o << "\n";
    o << "---------------   DETAILED RULE REPORTS   ---------------\n";

    for (const auto& v : analysis.verdicts) {
        o << "\n";
        o << ">>>>>>>>>>>>>>> rule " << v.rule << " <<<<<<<<<<<<<<<\n";
        o << "Summary:\n";
        o << "- The sliding is " << (v.slide_successful ? "SUCCESSFUL" : "UNSUCCESSFUL") << ".\n";
        o << "- The weight of Delta is " << v.delta_weight << ".\n";
        o << "- The weight of R is " << v.r_weight << ".\n";
        o << "- Conclusion: the rule is " << conclusion(v.status) << ".\n";
        for (const auto& a : v.assumptions) o << "- Note: " << a << ".\n";
        o << "\n";
        o << "The details per tile for this rule now follow.\n";
        for (const auto& r : v.reports) {
            o << "\n";
            o << "~~~ Tile " << r.tile << " with weight " << r.weight << ", counting "
              << class_name(r.cls) << " only\n";
            if (const auto* e = entry_for(cfg, r.tile)) o << serialize_tile(*e->tile.graph);
            o << "\n";
            o << "- The tiling of R has size:             " << r.iso_in_r << "\n";
            o << "- Giving a weight of:                   " << r.iso_in_r << " * " << r.weight
              << " = " << r.r_weight << "\n";
            o << "- A largest valid tiling of L has size: " << r.delta_size << "\n";
            o << "- Giving a weight of:                   " << r.delta_size << " * " << r.weight
              << " = " << r.delta_weight << "\n";
            o << "\n";
            o << "Slide data:\n";
            o << "\n";
            o << "# morphisms into R':           " << r.hom_into_r1 << "\n";
            o << "# of which valid:              " << r.valid << "\n";
            o << "# iso in R:                    " << r.iso_in_r << "\n";
            o << "# noniso in R:                 " << r.noniso_in_r << "\n";
            o << "# number of ways to slide:     " << r.ways_to_slide << "\n";
            if (!r.failure.empty()) o << "# slide failure:               " << r.failure << "\n";
        }
    }
    return o.str();
}

nlohmann::json graph_json(const LabeledGraph& g) {
    nlohmann::json vs = nlohmann::json::array(), es = nlohmann::json::array();
    for (const auto& v : g.vertices()) vs.push_back({{"id", v.id}, {"label", v.label}});
    for (const auto& e : g.edges())
        es.push_back({{"id", e.id},
                      {"src", g.vertex(e.src).id},
                      {"tgt", g.vertex(e.tgt).id},
                      {"label", e.label}});
    return {{"vertices", vs}, {"edges", es}};
}

nlohmann::json morphism_json(const GraphMorphism& f) {
    nlohmann::json vm = nlohmann::json::object(), em = nlohmann::json::object();
    for (std::size_t i = 0; i < f.vmap().size(); ++i) vm[f.dom().vertex(i).id] = f.cod().vertex(f.v(i)).id;
    for (std::size_t i = 0; i < f.emap().size(); ++i) em[f.dom().edge(i).id] = f.cod().edge(f.e(i)).id;
    return {{"vertices", vm}, {"edges", em}};
}

nlohmann::json rule_json(const PbpoRule& rule) {
    nlohmann::json j = {{"name", rule.name},
                        {"graphs",
                         {{"L", graph_json(*rule.L)},
                          {"Lp", graph_json(*rule.Lp)},
                          {"K", graph_json(*rule.K)},
                          {"Kp", graph_json(*rule.Kp)},
                          {"R", graph_json(*rule.R)}}},
                        {"morphisms",
                         {{"l", morphism_json(rule.l)},
                          {"r", morphism_json(rule.r)},
                          {"tL", morphism_json(rule.tL)},
                          {"tK", morphism_json(rule.tK)},
                          {"lp", morphism_json(rule.lp)}}}};
    if (rule.completion) {
        j["graphs"]["Rp"] = graph_json(*rule.completion->Rp);
        j["morphisms"]["rp"] = morphism_json(rule.completion->rp);
        j["morphisms"]["tR"] = morphism_json(rule.completion->tR);
    }
    return j;
}

nlohmann::json slide_report_json(const SlideReport& r) {
    nlohmann::json sets = nlohmann::json::array();
    for (const auto& s : r.slid_sets) {
        nlohmann::json one = nlohmann::json::array();
        for (const auto& f : s) one.push_back(morphism_json(f));
        sets.push_back(std::move(one));
        if (sets.size() >= 16) break;
    }
    return {{"tile", r.tile},
            {"weight", r.weight},
            {"class", std::string(1, class_char(r.cls))},
            {"homIntoR1", r.hom_into_r1},
            {"valid", r.valid},
            {"isoInR", r.iso_in_r},
            {"nonisoInR", r.noniso_in_r},
            {"waysToSlide", r.ways_to_slide},
            {"slidSets", sets},
            {"deltaSize", r.delta_size},
            {"deltaWeight", r.delta_weight},
            {"rWeight", r.r_weight},
            {"slideSuccessful", r.slide_successful},
            {"failure", r.failure}};
}

nlohmann::json verdict_json(const RuleVerdict& v) {
    nlohmann::json reps = nlohmann::json::array();
    for (const auto& r : v.reports) reps.push_back(slide_report_json(r));
    return {{"rule", v.rule},
            {"status", status_name(v.status)},
            {"slideSuccessful", v.slide_successful},
            {"deltaWeight", v.delta_weight},
            {"rWeight", v.r_weight},
            {"assumptions", v.assumptions},
            {"reports", reps}};
}

nlohmann::json config_json(const TileConfig& cfg) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& e : cfg.entries)
        out.push_back({{"tile", e.tile.name},
                       {"weight", e.weight},
                       {"class", std::string(1, class_char(e.cls))}});
    return out;
}

nlohmann::json analysis_json(const Analysis& analysis, const ProofState& state) {
    nlohmann::json vs = nlohmann::json::array();
    for (const auto& v : analysis.verdicts) vs.push_back(verdict_json(v));
    return {{"verdicts", vs},
            {"pruned", analysis.pruned},
            {"remaining", state.remaining_names()},
            {"terminating", state.terminating()}};
}

nlohmann::json transcript_json(const ProofState& state) {
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& st : state.transcript) {
        nlohmann::json vs = nlohmann::json::array();
        for (const auto& v : st.verdicts) vs.push_back(verdict_json(v));
        stages.push_back({{"entries", config_json(st.cfg)},
                          {"verdicts", vs},
                          {"prunedRules", st.pruned},
                          {"remaining", st.remaining_after}});
    }
    std::vector<std::string> original;
    for (const auto& r : state.original) original.push_back(r.name);
    return {{"system", state.system},
            {"rules", original},
            {"remaining", state.remaining_names()},
            {"terminating", state.terminating()},
            {"stages", stages}};
}

}  // namespace tileterm
