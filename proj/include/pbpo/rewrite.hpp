#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pbpo/graph.hpp"

namespace pbpo {

// L <-l- K -r-> R over the typing L' <-lp- K' with tL: L → L', tK: K → K'.
struct Rule {
  GraphPtr L, K, R, Lp, Kp;
  Morphism l, r, tL, tK, lp;
};

// Returns the rule when well typed and the left square is a pullback.
Rule validate_rule(const Rule& candidate);

struct StrongMatch {
  Morphism m;      // L → G_L
  Morphism alpha;  // G_L → L'
};

enum class MatchOrder {
  AdherenceFirst,  // enumerate α, derive m from the pullback
  MatchFirst,      // enumerate m, then search α over the seeded assignment
};

bool is_strong_match(const Rule& rule, const Morphism& m, const Morphism& alpha);

void for_each_strong_match(const Rule& rule, const GraphPtr& GL, MorphismClass constraint,
                           MatchOrder order, const std::function<bool(const StrongMatch&)>& visit);
std::vector<StrongMatch> find_strong_matches(const Rule& rule, const GraphPtr& GL,
                                             MorphismClass constraint = MorphismClass::Any,
                                             MatchOrder order = MatchOrder::AdherenceFirst);

struct StepResult {
  GraphPtr GL, GK, GR;
  Morphism m, alpha, gL, gR, u, up, w;
  // Bottom-right pushout of (tK, r) and the induced w': G_R → R'.
  std::optional<GraphPtr> Rp;
  std::optional<Morphism> rp, tR, wp;
};

struct StepOptions {
  bool bottom_right = false;
  // Rename G_K and G_R after host elements; fresh elements get "po:" ids.
  bool host_ids = true;
};

StepResult apply_step(const Rule& rule, const GraphPtr& GL, const Morphism& m, const Morphism& alpha,
                      const StepOptions& options = {});

struct Certificate {
  std::string name;
  bool ok = false;
};
// The five squares: strong match, middle pullback, right pushout and the two
// pullbacks on u; plus the bottom-right pushout when present.
std::vector<Certificate> certify_step(const Rule& rule, const StepResult& step);

enum class StrategyKind { First, All, Random };

struct Strategy {
  StrategyKind kind = StrategyKind::First;
  std::uint64_t seed = 0;
};

struct TraceEntry {
  std::size_t rule = 0;
  std::size_t match = 0;  // position in the rule's match enumeration
  StepResult step;
};

struct Trace {
  GraphPtr start;
  GraphPtr result;
  std::vector<TraceEntry> steps;
  bool budget_exhausted = false;
};

Trace rewrite_closure(const GraphPtr& G, const std::vector<Rule>& rules, const Strategy& strategy,
                      std::size_t max_steps, MorphismClass constraint = MorphismClass::Any);

struct DeterminismCertificate {
  bool certified = false;
  std::string reason;
  std::optional<Morphism> witness;
};

DeterminismCertificate determinism_certificate(const Rule& rule);

}  // namespace pbpo
