#include "pbpo/classifier.hpp"

#include "pbpo/error.hpp"
#include "pbpo/limits.hpp"

namespace pbpo {

namespace {

void require_heyting(const Graph& g, const char* what) {
  if (!g.lattice()->is_heyting())
    fail(ErrorCode::NonHeytingLattice, std::string(what) + " needs a Heyting lattice");
}

std::string fresh_vertex_id(const Graph& g, std::string id) {
  while (g.find_vertex(id)) id += "'";
  return id;
}

std::string fresh_edge_id(const Graph& g, std::string id) {
  while (g.find_edge(id)) id += "'";
  return id;
}

}  // namespace

Index ClassifierResult::pair_edge(Index u, Index v) const {
  return undefined_edges[u * T->num_vertices() + v];
}

ClassifierResult classify_object(const GraphPtr& G) {
  require_heyting(*G, "the partial map classifier");
  const Lattice& lat = *G->lattice();
  Graph T(G->lattice());
  for (const auto& v : G->vertices()) T.add_vertex(v.id, v.label);
  for (const auto& e : G->edges()) T.add_edge(e.id, e.src, e.tgt, e.label);
  const Index star = T.add_vertex(fresh_vertex_id(T, kStarVertex), lat.top());
  const Index n = static_cast<Index>(T.num_vertices());
  std::vector<Index> added;
  for (Index u = 0; u < n; ++u)
    for (Index v = 0; v < n; ++v) {
      auto id = fresh_edge_id(T, "*(" + T.vertex(u).id + "|" + T.vertex(v).id + ")");
      added.push_back(T.add_edge(id, u, v, lat.top()));
    }
  auto Tp = share(std::move(T));
  auto id = identity(G);
  return ClassifierResult{Tp, Morphism::trusted(G, Tp, id.vmap(), id.emap()), star, std::move(added)};
}

Morphism classify_partial(const Morphism& m, const Morphism& f) {
  return classify_partial(m, f, classify_object(f.cod()));
}

Morphism classify_partial(const Morphism& m, const Morphism& f, const ClassifierResult& TB) {
  require_heyting(*m.dom(), "classify_partial");
  if (!is_regular_mono(m)) fail(ErrorCode::NotRegularMono, "classify_partial needs a regular mono");
  if (!same_graph(m.dom(), f.dom())) fail(ErrorCode::ComposabilityMismatch, "partial map legs need a common domain");
  if (!same_graph(f.cod(), TB.eta.dom())) fail(ErrorCode::ComposabilityMismatch, "classifier built for another object");
  const Graph& A = *m.cod();
  const Index none = static_cast<Index>(-1);
  std::vector<Index> vs(A.num_vertices(), none), es(A.num_edges(), none);
  for (Index x = 0; x < m.vmap().size(); ++x) vs[m.v(x)] = TB.eta.v(f.v(x));
  for (Index x = 0; x < m.emap().size(); ++x) es[m.e(x)] = TB.eta.e(f.e(x));
  for (auto& v : vs)
    if (v == none) v = TB.star_vertex;
  for (Index e = 0; e < A.num_edges(); ++e)
    if (es[e] == none) es[e] = TB.pair_edge(vs[A.edge(e).src], vs[A.edge(e).tgt]);
  auto chi = Morphism::trusted(m.cod(), TB.T, std::move(vs), std::move(es));
  if (!is_pullback_square(chi, TB.eta, m, f))
    fail(ErrorCode::PullbackCertificateFailed, "classifying square is not a pullback");
  return chi;
}

Morphism classifier_map(const Morphism& f) {
  auto TA = classify_object(f.dom());
  auto TB = classify_object(f.cod());
  return classify_partial(TA.eta, f, TB);
}

Materialization materialize(const Morphism& f) {
  require_heyting(*f.dom(), "materialization");
  const Graph& A = *f.dom();
  const Graph& B = *f.cod();
  const Index na = static_cast<Index>(A.num_vertices());
  Graph M(A.lattice());
  std::vector<Index> flat_v, flat_e;
  for (const auto& v : A.vertices()) M.add_vertex("A:" + v.id, v.label);
  for (Index v = 0; v < na; ++v) flat_v.push_back(f.v(v));
  for (const auto& v : B.vertices()) {
    M.add_vertex("B:" + v.id, v.label);
    flat_v.push_back(static_cast<Index>(flat_v.size()) - na);
  }
  for (Index e = 0; e < A.num_edges(); ++e) {
    const auto& ed = A.edge(e);
    M.add_edge("A:" + ed.id, ed.src, ed.tgt, ed.label);
    flat_e.push_back(f.e(e));
  }
  for (Index e = 0; e < B.num_edges(); ++e) {
    const auto& ed = B.edge(e);
    M.add_edge("B:" + ed.id, na + ed.src, na + ed.tgt, ed.label);
    flat_e.push_back(e);
  }
  const Index n = static_cast<Index>(M.num_vertices());
  for (Index x = 0; x < n; ++x)
    for (Index y = 0; y < n; ++y) {
      if (x >= na && y >= na) continue;
      for (Index e = 0; e < B.num_edges(); ++e) {
        const auto& ed = B.edge(e);
        if (ed.src != flat_v[x] || ed.tgt != flat_v[y]) continue;
        M.add_edge("(" + ed.id + "|" + M.vertex(x).id + "|" + M.vertex(y).id + ")", x, y, ed.label);
        flat_e.push_back(e);
      }
    }
  auto Mp = share(std::move(M));
  std::vector<Index> sv(na), se(A.num_edges());
  for (Index v = 0; v < na; ++v) sv[v] = v;
  for (Index e = 0; e < A.num_edges(); ++e) se[e] = e;
  return {Mp, Morphism::trusted(f.dom(), Mp, std::move(sv), std::move(se)),
          Morphism::trusted(Mp, f.cod(), std::move(flat_v), std::move(flat_e))};
}

ClassifierCertificate restricted_classifier_certificate(const Morphism& tL) {
  ClassifierCertificate cert;
  if (!tL.dom()->lattice()->is_heyting()) {
    cert.reason = "NonHeytingLattice";
    return cert;
  }
  if (!is_regular_mono(tL)) {
    cert.reason = "NotRegularMono";
    return cert;
  }
  cert.witness = classify_partial(tL, identity(tL.dom()));
  cert.is_classifying = is_mono(*cert.witness);
  cert.reason = cert.is_classifying ? "classifying" : "NotMonic";
  return cert;
}

}  // namespace pbpo
