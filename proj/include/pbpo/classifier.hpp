#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pbpo/graph.hpp"

namespace pbpo {

inline constexpr const char* kStarVertex = "_star";

struct ClassifierResult {
  GraphPtr T;
  Morphism eta;  // G ↪ T(G)
  Index star_vertex = 0;
  std::vector<Index> undefined_edges;  // the added ⊤-edges, one per ordered vertex pair

  // The added ⊤-edge from T-vertex u to T-vertex v.
  Index pair_edge(Index u, Index v) const;
};

ClassifierResult classify_object(const GraphPtr& G);

// ⟨m, f⟩ : A → T(B) for a regular mono m: X ↪ A and f: X → B.
Morphism classify_partial(const Morphism& m, const Morphism& f);
Morphism classify_partial(const Morphism& m, const Morphism& f, const ClassifierResult& TB);

// T(f) = ⟨η_A, η_B ∘ f⟩ : T(A) → T(B).
Morphism classifier_map(const Morphism& f);

struct Materialization {
  GraphPtr M;
  Morphism sharp;  // A ↪ M
  Morphism flat;   // M → B
};

Materialization materialize(const Morphism& f);

struct ClassifierCertificate {
  bool is_classifying = false;
  std::optional<Morphism> witness;  // ⟨t_L, id_L⟩ : L' → T(L)
  std::string reason;
};

ClassifierCertificate restricted_classifier_certificate(const Morphism& tL);

}  // namespace pbpo
