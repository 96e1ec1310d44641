#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tileterm/limits.hpp"
#include "tileterm/morphism.hpp"

namespace tileterm {

struct Completion {
    GraphPtr Rp;
    GraphMorphism rp;  // K' -> R'
    GraphMorphism tR;  // R -> R'
};

struct PbpoRule {
    std::string name;
    GraphPtr L, Lp, K, Kp, R;
    GraphMorphism l;   // K -> L
    GraphMorphism r;   // K -> R
    GraphMorphism tL;  // L -> L'
    GraphMorphism tK;  // K -> K'
    GraphMorphism lp;  // K' -> L'
    std::optional<Completion> completion;

    const Completion& done() const;  // throws if the rule is not completed
};

struct RuleDiagnostics {
    std::vector<std::string> errors;    // commutation, pullback, typing
    std::vector<std::string> warnings;  // non-monic type morphisms
    bool tL_monic = false;
    bool tK_monic = false;
    bool ok() const { return errors.empty(); }
};

RuleDiagnostics validate_rule(const PbpoRule& rule);

// Adds (R', r', tR) as the pushout of tK along r. Idempotent.
PbpoRule complete_rule(PbpoRule rule);

struct Classifier {
    GraphPtr TX;
    GraphMorphism eta;  // X -> T(X)
};

// One context vertex per vertex label, and for each ordered pair of vertices of
// T(X) and each edge label one fresh edge.
Classifier partial_map_classifier(const GraphPtr& X, const LabelSet& labels);

struct DpoRule {
    std::string name;
    GraphMorphism l;  // K -> L, monic
    GraphMorphism r;  // K -> R
};

// tK = eta_K, L' the pushout of l along eta_K with tL and l' its injections.
PbpoRule encode_dpo_rule(const DpoRule& rule, const LabelSet& labels);

// l' monic, l not epic, r iso.
bool check_deleting_rule(const PbpoRule& rule);

// Vertex and edge labels occurring anywhere in the rule.
LabelSet rule_labels(const PbpoRule& rule);

}  // namespace tileterm
