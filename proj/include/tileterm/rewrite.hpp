#pragma once

#include <cstddef>
#include <vector>

#include "tileterm/rule.hpp"

namespace tileterm {

struct Adherence {
    GraphMorphism alpha;  // G_L -> L'
    GraphMorphism match;  // L -> G_L
};

struct RewriteStep {
    GraphPtr GL, GK, GR;
    GraphMorphism alpha;  // G_L -> L'
    GraphMorphism m;      // L -> G_L
    GraphMorphism gL;     // G_K -> G_L
    GraphMorphism gR;     // G_K -> G_R
    GraphMorphism u;      // K -> G_K
    GraphMorphism up;     // G_K -> K'
    GraphMorphism w;      // R -> G_R
    GraphMorphism wp;     // G_R -> R'
};

class StepError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<Adherence> enumerate_adherences(const PbpoRule& rule, const GraphPtr& host,
                                            MorphismClass match_class);

// Throws StepError("not an adherence") when the pullback of tL along alpha has a
// non-iso leg into L.
RewriteStep apply_step(const PbpoRule& rule, const GraphMorphism& alpha);

struct SuccessorSet {
    std::vector<GraphPtr> graphs;  // pairwise non-isomorphic, ids renumbered
    bool truncated = false;
};

SuccessorSet successors(const std::vector<PbpoRule>& rules, const GraphPtr& host,
                        MorphismClass match_class, std::size_t bound = 10000);

}  // namespace tileterm
