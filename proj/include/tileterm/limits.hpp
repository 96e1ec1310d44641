#pragma once

#include "tileterm/morphism.hpp"

namespace tileterm {

struct Pullback {
    GraphPtr object;
    GraphMorphism p1;  // P -> A
    GraphMorphism p2;  // P -> B
};

struct Pushout {
    GraphPtr object;
    GraphMorphism q1;  // B -> Q
    GraphMorphism q2;  // C -> Q
};

struct Factorization {
    GraphMorphism e;  // epi onto the image
    GraphMorphism m;  // inclusion of the image
};

// Cospan f: A -> C <- B :g. Carrier elements are pairs named "(a,b)".
Pullback pullback(const GraphMorphism& f, const GraphMorphism& g);

// The leg P -> B of the pullback of f along g.
GraphMorphism pullback_arrow(const GraphMorphism& f, const GraphMorphism& g);

// Span B <-f- A -g-> C. Merged classes are named by their dot-joined sorted atoms.
Pushout pushout(const GraphMorphism& f, const GraphMorphism& g);

Factorization factorize(const GraphMorphism& f);

// Mediating map X -> P into a pullback built by `pullback`, for a commuting
// span x1: X -> A, x2: X -> B.
GraphMorphism pullback_mediator(const Pullback& pb, const GraphMorphism& x1,
                                const GraphMorphism& x2);

// Mediating map Q -> Y out of a pushout, for a cospan y1: B -> Y, y2: C -> Y
// with y1∘f = y2∘g. Throws if the cospan is not compatible.
GraphMorphism pushout_mediator(const Pushout& po, const GraphMorphism& y1,
                               const GraphMorphism& y2);

// True iff the commuting square (x1: X -> A, x2: X -> B) over f, g is a pullback.
bool is_pullback_square(const GraphMorphism& x1, const GraphMorphism& x2, const GraphMorphism& f,
                        const GraphMorphism& g);

}  // namespace tileterm
