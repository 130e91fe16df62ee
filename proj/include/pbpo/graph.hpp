#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pbpo/lattice.hpp"

namespace pbpo {

using Index = std::uint32_t;

struct Vertex {
  std::string id;
  Label label;
};

struct Edge {
  std::string id;
  Index src;
  Index tgt;
  Label label;
};

class Graph {
 public:
  explicit Graph(LatticePtr lattice);

  const LatticePtr& lattice() const { return lattice_; }

  Index add_vertex(std::string id, Label label);
  Index add_edge(std::string id, Index src, Index tgt, Label label);
  // Endpoints given by vertex id.
  Index link(std::string id, std::string_view src, std::string_view tgt, Label label);

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  bool empty() const { return vertices_.empty() && edges_.empty(); }
  const Vertex& vertex(Index v) const { return vertices_[v]; }
  const Edge& edge(Index e) const { return edges_[e]; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  Label vlabel(Index v) const { return vertices_[v].label; }
  Label elabel(Index e) const { return edges_[e].label; }

  std::optional<Index> find_vertex(std::string_view id) const;
  std::optional<Index> find_edge(std::string_view id) const;
  Index vertex_index(std::string_view id) const;  // throws InvalidGraph
  Index edge_index(std::string_view id) const;

  void set_vertex_label(Index v, Label label) { vertices_[v].label = label; }
  void set_edge_label(Index e, Label label) { edges_[e].label = label; }
  // Ids must stay unique; throws InvalidGraph otherwise.
  void set_ids(std::vector<std::string> vertex_ids, std::vector<std::string> edge_ids);

  std::size_t degree(Index v) const;

  // Structural equality including ids and element order.
  bool operator==(const Graph& other) const;
  bool operator!=(const Graph& other) const { return !(*this == other); }

 private:
  LatticePtr lattice_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::unordered_map<std::string, Index> vertex_ids_;
  std::unordered_map<std::string, Index> edge_ids_;
};

using GraphPtr = std::shared_ptr<const Graph>;

GraphPtr share(Graph g);
bool same_graph(const GraphPtr& a, const GraphPtr& b);

class Morphism {
 public:
  // Validates the premorphism equations and label monotonicity; throws InvalidMorphism.
  Morphism(GraphPtr dom, GraphPtr cod, std::vector<Index> vmap, std::vector<Index> emap);
  // Skips validation; for maps produced by constructions known to be correct.
  static Morphism trusted(GraphPtr dom, GraphPtr cod, std::vector<Index> vmap,
                          std::vector<Index> emap);
  // By-id construction. Unlisted edges are inferred when exactly one candidate exists.
  static Morphism from_ids(GraphPtr dom, GraphPtr cod,
                           const std::map<std::string, std::string>& vmap,
                           const std::map<std::string, std::string>& emap);

  const GraphPtr& dom() const { return dom_; }
  const GraphPtr& cod() const { return cod_; }
  Index v(Index x) const { return vmap_[x]; }
  Index e(Index x) const { return emap_[x]; }
  const std::vector<Index>& vmap() const { return vmap_; }
  const std::vector<Index>& emap() const { return emap_; }

  // Same maps, new (structurally equal) endpoints.
  Morphism retarget(GraphPtr dom, GraphPtr cod) const;

  // Empty when the morphism is well formed, else a description of the first violation.
  std::string violation() const;

  bool operator==(const Morphism& other) const;
  bool operator!=(const Morphism& other) const { return !(*this == other); }

 private:
  Morphism() = default;
  GraphPtr dom_, cod_;
  std::vector<Index> vmap_, emap_;
};

Morphism identity(const GraphPtr& g);
// g ∘ f
Morphism compose(const Morphism& g, const Morphism& f);
Morphism initial_morphism(const GraphPtr& empty, const GraphPtr& cod);

bool is_mono(const Morphism& f);
bool is_epi(const Morphism& f);
bool is_iso(const Morphism& f);
bool is_regular_mono(const Morphism& f);
Morphism inverse(const Morphism& iso);

enum class MorphismClass { Any, Mono, RegularMono, Iso };

struct SearchOptions {
  MorphismClass constraint = MorphismClass::Any;
  // Partial assignment; either empty or sized to the domain.
  std::vector<std::optional<Index>> vertex_seed;
  std::vector<std::optional<Index>> edge_seed;
  // Extra filters applied to unseeded domain elements.
  std::function<bool(Index, Index)> vertex_ok;
  std::function<bool(Index, Index)> edge_ok;
  // Codomain elements that may receive at most one preimage.
  std::vector<char> exclusive_vertices;
  std::vector<char> exclusive_edges;
  // Candidate-expansion cap; 0 means enumeration_limit().
  std::uint64_t max_expansions = 0;
};

// Reads PBPO_MAX_ENUM once; defaults to 10^7.
std::uint64_t enumeration_limit();

// Visits every morphism A→B satisfying the options exactly once, in a deterministic order.
// The visitor returns false to stop early.
void for_each_morphism(const GraphPtr& A, const GraphPtr& B, const SearchOptions& options,
                       const std::function<bool(const Morphism&)>& visit);
std::vector<Morphism> enumerate_morphisms(const GraphPtr& A, const GraphPtr& B,
                                          MorphismClass constraint = MorphismClass::Any);
std::vector<Morphism> enumerate_morphisms(const GraphPtr& A, const GraphPtr& B,
                                          const SearchOptions& options);

bool are_isomorphic(const GraphPtr& A, const GraphPtr& B);
std::optional<Morphism> find_isomorphism(const GraphPtr& A, const GraphPtr& B);
// Iso-invariant fingerprint; equal for isomorphic graphs.
std::string iso_fingerprint(const Graph& g);

struct Subgraph {
  GraphPtr graph;
  Morphism inclusion;
};
// Vertices and edges given by index; edges must have both endpoints kept.
Subgraph subgraph(const GraphPtr& g, const std::vector<Index>& vertices,
                  const std::vector<Index>& edges);

struct MatchContext {
  GraphPtr match;    // image of the morphism
  GraphPtr context;  // largest subgraph disjoint from the match
  std::vector<Index> match_vertices, match_edges;
  std::vector<Index> context_vertices, context_edges;
  std::vector<Index> patch_edges;
};
MatchContext patch_decomposition(const Morphism& x);

std::string to_dot(const Graph& g, std::string_view name = "G");

}  // namespace pbpo
