#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tileterm/rule.hpp"

namespace tileterm {

struct Tile {
    std::string name;
    GraphPtr graph;
};

struct TileEntry {
    Tile tile;
    std::uint64_t weight = 1;
    MorphismClass cls = MorphismClass::Mono;
};

struct TileConfig {
    std::vector<TileEntry> entries;
};

// Throws std::invalid_argument on weight < 1 or duplicate tile names.
void check_config(const TileConfig& cfg);

std::uint64_t tiling_weight(const TileConfig& cfg, const LabeledGraph& x);

struct IsoPartition {
    std::vector<GraphMorphism> iso, noniso;
};

IsoPartition partition_by_iso(const GraphMorphism& base, const std::vector<GraphMorphism>& tilings);

// Φ for one tile: f: T -> R' with <f|tR> in the class and not iso.
std::vector<GraphMorphism> compute_phi(const PbpoRule& rule, const Tile& tile, MorphismClass cls);

struct SlideOption {
    GraphMorphism x;     // T -> K'
    GraphMorphism slid;  // l'∘x : T -> L'
};

struct SlideOptions {
    std::vector<SlideOption> options;
    bool split_epic = false;     // <r'|f> has a right inverse
    std::size_t sections = 0;    // number of right inverses
    std::size_t rejected = 0;    // composites dropped by the factorization check
};

SlideOptions slide_options(const GraphMorphism& f, const PbpoRule& rule, MorphismClass cls);

struct SlideReport {
    std::string tile;
    std::uint64_t weight = 1;
    MorphismClass cls = MorphismClass::Mono;
    std::size_t hom_into_r1 = 0;
    std::size_t valid = 0;
    std::size_t iso_in_r = 0;
    std::size_t noniso_in_r = 0;
    std::size_t ways_to_slide = 0;
    std::vector<std::vector<GraphMorphism>> slid_sets;  // distinct outcomes, capped
    std::size_t delta_size = 0;
    std::uint64_t delta_weight = 0;
    std::uint64_t r_weight = 0;
    bool slide_successful = false;
    std::string failure;
    bool tR_in_class = true;
    bool tL_in_class = true;
};

struct SlideCheck {
    bool ok = false;
    std::string failure;
    std::vector<SlideReport> reports;  // counters filled, Δ not yet
    std::vector<std::vector<GraphMorphism>> chosen;  // per tile, one slid set
};

SlideCheck check_slide_preconditions(const PbpoRule& rule, const TileConfig& cfg);

struct Delta {
    std::vector<std::vector<GraphMorphism>> per_tile;
    std::uint64_t weight = 0;
};

// With explicit_disjointness, the "tL∘t is not slid" condition is checked even
// when the shortcut applies.
Delta compute_delta(const PbpoRule& rule, const TileConfig& cfg,
                    const std::vector<std::vector<std::vector<GraphMorphism>>>& all_slid_sets,
                    bool explicit_disjointness = false);

enum class RuleStatus { Decreasing, NonIncreasing, Unknown };

std::string status_name(RuleStatus s);  // "Decreasing", "NonIncreasing", "Unknown"

struct RuleVerdict {
    std::string rule;
    RuleStatus status = RuleStatus::Unknown;
    std::vector<SlideReport> reports;
    std::vector<std::string> assumptions;
    bool slide_successful = false;
    std::uint64_t delta_weight = 0;
    std::uint64_t r_weight = 0;
};

RuleVerdict classify_rule(const PbpoRule& rule, const TileConfig& cfg);

struct ProofStage {
    TileConfig cfg;
    std::vector<RuleVerdict> verdicts;
    std::vector<std::string> pruned;
    std::vector<std::string> remaining_after;
    std::vector<std::size_t> remaining_before;
};

struct ProofState {
    std::string system;
    std::vector<PbpoRule> original;
    std::vector<std::size_t> remaining;  // indices into original
    std::vector<ProofStage> transcript;

    static ProofState start(std::string system, std::vector<PbpoRule> rules);
    std::vector<const PbpoRule*> remaining_rules() const;
    std::vector<std::string> remaining_names() const;
    bool terminating() const { return remaining.empty(); }
    // Drops the last stage and restores its rules; false if there is none.
    bool undo();
};

struct Analysis {
    std::vector<RuleVerdict> verdicts;
    bool pruned = false;
};

Analysis analyze_system(ProofState& state, const TileConfig& cfg);

}  // namespace tileterm
