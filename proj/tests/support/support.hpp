#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "pbpo/pbpo.hpp"

namespace pbpo::testing {

using Rng = std::mt19937_64;

struct V {
  std::string id;
  std::string label = "_bot";
};
struct E {
  std::string id, src, tgt;
  std::string label = "_bot";
};
GraphPtr make_graph(const LatticePtr& lat, const std::vector<V>& vs, const std::vector<E>& es = {});
// Unlisted elements go to the element with the same id when present; unlisted edges are otherwise inferred.
Morphism arrow(const GraphPtr& dom, const GraphPtr& cod, const std::map<std::string, std::string>& vs = {},
               const std::map<std::string, std::string>& es = {});

// Every label-nondecreasing premorphism A → B, by plain exhaustive search.
std::vector<Morphism> brute_morphisms(const GraphPtr& A, const GraphPtr& B);

// Every graph with at most max_v vertices and max_e edges, one per iso class.
std::vector<GraphPtr> all_graphs(const LatticePtr& lat, std::size_t max_v, std::size_t max_e);

GraphPtr random_graph(Rng& rng, const LatticePtr& lat, std::size_t max_v, std::size_t max_e,
                      std::size_t min_v = 0);

// A uniformly drawn element of the morphism stream, when one exists.
std::optional<Morphism> random_morphism(Rng& rng, const GraphPtr& A, const GraphPtr& B,
                                        MorphismClass constraint = MorphismClass::Any);

struct RuleShape {
  std::size_t max_v = 4;
  std::size_t max_e = 5;
};

// A valid PBPO+ rule: K is the pullback of a random tL against a random lp.
std::optional<Rule> random_rule(Rng& rng, const LatticePtr& lat, const RuleShape& shape = {});

// A host with a strong match built in: the image of tL plus typed context and patch edges.
GraphPtr host_with_match(Rng& rng, const Rule& rule, std::size_t max_v, std::size_t max_e);

// A random canonical PBPO rule whose right square is the pushout of (tK, r).
std::optional<PbpoRule> random_pbpo_rule(Rng& rng, const LatticePtr& lat, std::size_t max_l_vertices,
                                         const RuleShape& shape = {});

// Graphs collected up to isomorphism.
class IsoClassSet {
 public:
  bool insert(const GraphPtr& g);  // true when g was new
  bool contains(const GraphPtr& g) const;
  std::size_t size() const { return members_.size(); }
  const std::vector<GraphPtr>& members() const { return members_; }
  bool operator==(const IsoClassSet& other) const;

 private:
  std::vector<GraphPtr> members_;
  std::vector<std::string> prints_;
};

// Independent constructions, written for clarity rather than speed.
Pullback naive_pullback(const Morphism& f, const Morphism& g);
Pushout naive_pushout(const Morphism& f, const Morphism& g);

// Counts, for every probe cone, the mediators into P; true when each count is exactly one.
// Probes are single vertices of every label and single edges of every label between ⊥ vertices.
bool all_cones_pullback(const Morphism& f, const Morphism& g, const Morphism& p1, const Morphism& p2);

// Compares against naive_pushout: exactly one comparison map exists and it is an iso.
bool oracle_pushout(const Morphism& f, const Morphism& g, const Morphism& q1, const Morphism& q2);

// Morphisms h: X → P with p1∘h = x and p2∘h = y, by exhaustive search.
std::size_t count_mediators(const Morphism& p1, const Morphism& p2, const Morphism& x, const Morphism& y);

}  // namespace pbpo::testing
