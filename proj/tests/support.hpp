#pragma once

#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tileterm/format.hpp"
#include "tileterm/rewrite.hpp"
#include "tileterm/search.hpp"
#include "tileterm/termination.hpp"
#include "tileterm/workspace.hpp"

namespace testing {

using namespace tileterm;

std::filesystem::path source_dir();
std::filesystem::path corpus_dir();
std::filesystem::path data_dir();

GraphPtr gr(const std::string& literal);
const Workspace& corpus();
const Workspace& string_workspace();
const PbpoRule& corpus_rule(const std::string& system, const std::string& rule);
const Tile& corpus_tile(const std::string& name);
Tile make_tile(const std::string& name, const std::string& literal);
TileConfig config(std::vector<std::tuple<Tile, std::uint64_t, MorphismClass>> entries);

// Raw maps; validity is checked by brute force over all total assignments.
struct Maps {
    std::vector<std::size_t> v, e;
    bool operator==(const Maps&) const = default;
};

std::vector<Maps> brute_homs(const LabeledGraph& t, const LabeledGraph& g, bool mono);
std::size_t brute_hom_count(const LabeledGraph& t, const LabeledGraph& g, bool mono);

Maps maps_of(const GraphMorphism& f);
Maps compose_maps(const Maps& g, const Maps& f);

// Exhaustive universal property checks over the given test objects.
bool pullback_universal(const GraphMorphism& f, const GraphMorphism& g, const Pullback& pb,
                        const std::vector<GraphPtr>& objects, std::string* why = nullptr);
bool pushout_universal(const GraphMorphism& f, const GraphMorphism& g, const Pushout& po,
                       const std::vector<GraphPtr>& objects, std::string* why = nullptr);

LabeledGraph random_graph(std::mt19937& rng, std::size_t max_v, std::size_t max_e,
                          const std::vector<std::string>& vlabels,
                          const std::vector<std::string>& elabels, std::size_t min_v = 0);

// Monomorphism between two random graphs built by embedding.
GraphMorphism random_mono(std::mt19937& rng, const GraphPtr& dom, std::size_t extra_v,
                          std::size_t extra_e, const std::vector<std::string>& vlabels,
                          const std::vector<std::string>& elabels);

// All graphs obtained from one left-linear DPO step with monic matches,
// computed directly (gluing of subgraphs, no PBPO+ machinery).
std::vector<LabeledGraph> dpo_oracle_results(const DpoRule& rule, const LabeledGraph& host);

// Weighted count via brute-force hom counting.
std::uint64_t brute_tiling_weight(const TileConfig& cfg, const LabeledGraph& g);

// Keeps one representative per isomorphism class.
std::vector<LabeledGraph> up_to_iso(const std::vector<LabeledGraph>& gs);
bool same_up_to_iso(const std::vector<LabeledGraph>& a, const std::vector<LabeledGraph>& b);

struct SuiteResult {
    std::size_t cases = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

// Randomized kernel checks against the brute-force oracles above.
SuiteResult kernel_oracle_suite(unsigned seed, std::size_t iterations);

struct SoundnessTarget {
    std::string label;
    std::vector<PbpoRule> rules;
    TileConfig cfg;
};
std::vector<SoundnessTarget> soundness_targets();

// For every rule with a Decreasing/NonIncreasing verdict: random hosts with L
// planted, every successor must lower (resp. not raise) the brute weight.
// `hosts` counts hosts that admit at least one step.
SuiteResult soundness_suite(unsigned seed, std::size_t hosts, std::size_t max_v = 5,
                            std::size_t max_e = 6);

// Longest rewrite sequence from `host`; memoized over isomorphism classes.
std::size_t longest_derivation(const std::vector<PbpoRule>& rules, const GraphPtr& host,
                               MorphismClass cls);

// One vertex with m loops plus n-1 isolated vertices, all labeled 0.
GraphPtr loops_and_isolated(std::size_t m, std::size_t n);

}  // namespace testing
