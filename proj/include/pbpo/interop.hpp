#pragma once

#include <optional>
#include <vector>

#include "pbpo/graph.hpp"
#include "pbpo/rewrite.hpp"

namespace pbpo {

// L <-l- K -r-> R with l a regular mono.
struct DpoRule {
  GraphPtr L, K, R;
  Morphism l, r;
};

// L <-l- K -r-> R with tK: K ↪ K' a regular mono.
struct AgreeRule {
  GraphPtr L, K, R, Kp;
  Morphism l, r, tK;
};

// Full PBPO diagram; canonical means left square pullback, right square pushout.
struct PbpoRule {
  GraphPtr L, K, R, Lp, Kp, Rp;
  Morphism l, r, tL, tK, tR, lp, rp;
};

DpoRule validate_dpo_rule(const DpoRule& rule);
AgreeRule validate_agree_rule(const AgreeRule& rule);
PbpoRule validate_pbpo_rule(const PbpoRule& rule);

// A PBPO+ rule read as a canonical PBPO rule, with R' the pushout of (tK, r).
PbpoRule pbpo_view(const Rule& rule);

struct DpoStep {
  GraphPtr D, GR;
  Morphism k;  // K → D
  Morphism d;  // D ↪ G
};
std::optional<DpoStep> dpo_step(const DpoRule& rule, const GraphPtr& G, const Morphism& m);

struct AgreeStep {
  GraphPtr GK, GR;
  Morphism adherence;  // ⟨m⟩ : G → T(L)
  Morphism gL, up, u, gR, w;
};
AgreeStep agree_step(const AgreeRule& rule, const GraphPtr& G, const Morphism& m);

struct PbpoStep {
  GraphPtr GK, GR;
  Morphism gL, up, u, gR, w;
};
PbpoStep pbpo_step(const PbpoRule& rule, const GraphPtr& G, const Morphism& m, const Morphism& alpha);

struct PbpoMatch {
  Morphism m, alpha;
};
std::vector<PbpoMatch> find_pbpo_matches(const PbpoRule& rule, const GraphPtr& G,
                                         MorphismClass constraint = MorphismClass::Any);

Rule translate_dpo(const DpoRule& rule);
Rule translate_agree(const AgreeRule& rule);

enum class CompactMode { Full, IsoOnly };
std::vector<Rule> compact_rules(const PbpoRule& rule, CompactMode mode);

}  // namespace pbpo
