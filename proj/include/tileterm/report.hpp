#pragma once

#include <string>

#include "json.hpp"
#include "tileterm/termination.hpp"

namespace tileterm {

// Text report for one analysis; `state` is the state after it.
std::string render_report(const Analysis& analysis, const ProofState& state,
                          const TileConfig& cfg);

nlohmann::json graph_json(const LabeledGraph& g);
nlohmann::json morphism_json(const GraphMorphism& f);
nlohmann::json rule_json(const PbpoRule& rule);
nlohmann::json slide_report_json(const SlideReport& r);
nlohmann::json verdict_json(const RuleVerdict& v);
nlohmann::json config_json(const TileConfig& cfg);
nlohmann::json analysis_json(const Analysis& analysis, const ProofState& state);
nlohmann::json transcript_json(const ProofState& state);

}  // namespace tileterm
