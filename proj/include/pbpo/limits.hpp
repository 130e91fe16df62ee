#pragma once

#include <vector>

#include "pbpo/graph.hpp"

namespace pbpo {

// Pullback of the cospan A -f-> C <-g- B.
struct Pullback {
  GraphPtr object;
  Morphism p1;  // P → A
  Morphism p2;  // P → B
};

// Pushout of the span B <-f- A -g-> C.
struct Pushout {
  GraphPtr object;
  Morphism q1;  // B → Q
  Morphism q2;  // C → Q
};

Pullback pullback(const Morphism& f, const Morphism& g);
Pushout pushout(const Morphism& f, const Morphism& g);

// Unique u: X → P with p1∘u = x and p2∘u = y, where (p1, p2) is claimed to be a pullback of (f, g).
Morphism mediating_into_pullback(const Morphism& f, const Morphism& g, const Morphism& p1,
                                 const Morphism& p2, const Morphism& x, const Morphism& y);
// Unique u: Q → X with u∘q1 = x and u∘q2 = y, where (q1, q2) is claimed to be a pushout of (f, g).
Morphism mediating_from_pushout(const Morphism& f, const Morphism& g, const Morphism& q1,
                                const Morphism& q2, const Morphism& x, const Morphism& y);

bool commutes(const Morphism& f, const Morphism& p1, const Morphism& g, const Morphism& p2);

// f∘p1 = g∘p2 with f: A→C, g: B→C, p1: P→A, p2: P→B.
bool is_pullback_square(const Morphism& f, const Morphism& g, const Morphism& p1, const Morphism& p2);
// q1∘f = q2∘g with f: A→B, g: A→C, q1: B→Q, q2: C→Q.
bool is_pushout_square(const Morphism& f, const Morphism& g, const Morphism& q1, const Morphism& q2);

struct Factorization {
  Morphism epi;   // A ↠ I
  Morphism mono;  // I ↪ B, regular
};
Factorization epi_regmono_factorize(const Morphism& f);

enum class QuotientDedup { CodomainIso, Kernel };

// Surjections out of L with labels joined per class. CodomainIso keeps one epi per
// quotient graph up to iso; Kernel keeps one epi per kernel (partition pair).
std::vector<Morphism> enumerate_quotients(const GraphPtr& L,
                                          QuotientDedup dedup = QuotientDedup::CodomainIso);

}  // namespace pbpo
