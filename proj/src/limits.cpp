#include "pbpo/limits.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "pbpo/error.hpp"

namespace pbpo {

namespace {

constexpr Index kNone = static_cast<Index>(-1);

void require_same_lattice(const Morphism& f, const Morphism& g) {
  if (!same_lattice(f.dom()->lattice(), g.dom()->lattice()))
    fail(ErrorCode::LatticeMismatch, "morphisms are labelled over different lattices");
}

struct UnionFind {
  std::vector<Index> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Index find(Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::string class_id(std::vector<std::string> members) {
  std::sort(members.begin(), members.end());
  std::string out = "[";
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i) out += ",";
    out += members[i];
  }
  return out + "]";
}

}  // namespace

Pullback pullback(const Morphism& f, const Morphism& g) {
  require_same_lattice(f, g);
  if (!same_graph(f.cod(), g.cod())) fail(ErrorCode::ComposabilityMismatch, "pullback needs a common codomain");
  const Graph& A = *f.dom();
  const Graph& B = *g.dom();
  const Graph& C = *f.cod();
  const Lattice& lat = *A.lattice();

  std::vector<std::vector<Index>> b_over(C.num_vertices());
  for (Index b = 0; b < B.num_vertices(); ++b) b_over[g.v(b)].push_back(b);
  std::vector<std::vector<Index>> be_over(C.num_edges());
  for (Index e = 0; e < B.num_edges(); ++e) be_over[g.e(e)].push_back(e);

  Graph P(A.lattice());
  std::vector<Index> p1v, p2v, p1e, p2e;
  std::map<std::pair<Index, Index>, Index> vertex_of;
  for (Index a = 0; a < A.num_vertices(); ++a) {
    for (Index b : b_over[f.v(a)]) {
      Index p = P.add_vertex("(" + A.vertex(a).id + "|" + B.vertex(b).id + ")",
                             lat.meet(A.vlabel(a), B.vlabel(b)));
      vertex_of[{a, b}] = p;
      p1v.push_back(a);
      p2v.push_back(b);
    }
  }
  for (Index ea = 0; ea < A.num_edges(); ++ea) {
    const auto& x = A.edge(ea);
    for (Index eb : be_over[f.e(ea)]) {
      const auto& y = B.edge(eb);
      P.add_edge("(" + x.id + "|" + y.id + ")", vertex_of.at({x.src, y.src}), vertex_of.at({x.tgt, y.tgt}),
                 lat.meet(x.label, y.label));
      p1e.push_back(ea);
      p2e.push_back(eb);
    }
  }
  auto Pp = share(std::move(P));
  return {Pp, Morphism::trusted(Pp, f.dom(), std::move(p1v), std::move(p1e)),
          Morphism::trusted(Pp, g.dom(), std::move(p2v), std::move(p2e))};
}

Pushout pushout(const Morphism& f, const Morphism& g) {
  require_same_lattice(f, g);
  if (!same_graph(f.dom(), g.dom())) fail(ErrorCode::ComposabilityMismatch, "pushout needs a common domain");
  const Graph& A = *f.dom();
  const Graph& B = *f.cod();
  const Graph& C = *g.cod();
  const Lattice& lat = *A.lattice();
  const Index nb = static_cast<Index>(B.num_vertices());
  const Index nbe = static_cast<Index>(B.num_edges());

  UnionFind uv(B.num_vertices() + C.num_vertices());
  for (Index a = 0; a < A.num_vertices(); ++a) uv.unite(f.v(a), nb + g.v(a));
  UnionFind ue(B.num_edges() + C.num_edges());
  for (Index e = 0; e < A.num_edges(); ++e) ue.unite(f.e(e), nbe + g.e(e));

  auto vid = [&](Index x) { return x < nb ? "1:" + B.vertex(x).id : "2:" + C.vertex(x - nb).id; };
  auto vlab = [&](Index x) { return x < nb ? B.vlabel(x) : C.vlabel(x - nb); };
  auto eid = [&](Index x) { return x < nbe ? "1:" + B.edge(x).id : "2:" + C.edge(x - nbe).id; };
  auto elab = [&](Index x) { return x < nbe ? B.elabel(x) : C.elabel(x - nbe); };
  auto esrc = [&](Index x) { return x < nbe ? B.edge(x).src : nb + C.edge(x - nbe).src; };
  auto etgt = [&](Index x) { return x < nbe ? B.edge(x).tgt : nb + C.edge(x - nbe).tgt; };

  // Classes are numbered by their smallest member, which is also their representative.
  const Index nv = static_cast<Index>(uv.parent.size());
  std::vector<Index> vclass(nv, kNone);
  std::vector<std::vector<Index>> vmembers;
  for (Index x = 0; x < nv; ++x) {
    Index r = uv.find(x);
    if (vclass[r] == kNone) {
      vclass[r] = static_cast<Index>(vmembers.size());
      vmembers.emplace_back();
    }
    vclass[x] = vclass[r];
    vmembers[vclass[x]].push_back(x);
  }
  const Index ne = static_cast<Index>(ue.parent.size());
  std::vector<Index> eclass(ne, kNone);
  std::vector<std::vector<Index>> emembers;
  for (Index x = 0; x < ne; ++x) {
    Index r = ue.find(x);
    if (eclass[r] == kNone) {
      eclass[r] = static_cast<Index>(emembers.size());
      emembers.emplace_back();
    }
    eclass[x] = eclass[r];
    emembers[eclass[x]].push_back(x);
  }

  Graph Q(A.lattice());
  for (const auto& members : vmembers) {
    std::vector<std::string> ids;
    Label l = lat.bottom();
    for (Index x : members) {
      ids.push_back(vid(x));
      l = lat.join(l, vlab(x));
    }
    Q.add_vertex(class_id(ids), l);
  }
  for (const auto& members : emembers) {
    std::vector<std::string> ids;
    Label l = lat.bottom();
    for (Index x : members) {
      ids.push_back(eid(x));
      l = lat.join(l, elab(x));
    }
    Q.add_edge(class_id(ids), vclass[esrc(members[0])], vclass[etgt(members[0])], l);
  }
  auto Qp = share(std::move(Q));
  std::vector<Index> q1v(nb), q2v(C.num_vertices()), q1e(nbe), q2e(C.num_edges());
  for (Index x = 0; x < nb; ++x) q1v[x] = vclass[x];
  for (Index x = 0; x < C.num_vertices(); ++x) q2v[x] = vclass[nb + x];
  for (Index x = 0; x < nbe; ++x) q1e[x] = eclass[x];
  for (Index x = 0; x < C.num_edges(); ++x) q2e[x] = eclass[nbe + x];
  return {Qp, Morphism::trusted(f.cod(), Qp, std::move(q1v), std::move(q1e)),
          Morphism::trusted(g.cod(), Qp, std::move(q2v), std::move(q2e))};
}

bool commutes(const Morphism& f, const Morphism& p1, const Morphism& g, const Morphism& p2) {
  if (!same_graph(p1.dom(), p2.dom()) || !same_graph(f.cod(), g.cod()) || !same_graph(p1.cod(), f.dom()) ||
      !same_graph(p2.cod(), g.dom()))
    return false;
  for (Index v = 0; v < p1.vmap().size(); ++v)
    if (f.v(p1.v(v)) != g.v(p2.v(v))) return false;
  for (Index e = 0; e < p1.emap().size(); ++e)
    if (f.e(p1.e(e)) != g.e(p2.e(e))) return false;
  return true;
}

Morphism mediating_into_pullback(const Morphism& f, const Morphism& g, const Morphism& p1,
                                 const Morphism& p2, const Morphism& x, const Morphism& y) {
  if (!same_graph(x.dom(), y.dom()) || !commutes(f, x, g, y))
    fail(ErrorCode::NotACone, "cone does not commute over the cospan");
  const Graph& P = *p1.dom();
  const Graph& X = *x.dom();
  const Lattice& lat = *X.lattice();

  std::map<std::pair<Index, Index>, std::vector<Index>> vpairs, epairs;
  for (Index p = 0; p < P.num_vertices(); ++p) vpairs[{p1.v(p), p2.v(p)}].push_back(p);
  for (Index p = 0; p < P.num_edges(); ++p) epairs[{p1.e(p), p2.e(p)}].push_back(p);

  std::vector<Index> vs(X.num_vertices()), es(X.num_edges());
  for (Index v = 0; v < X.num_vertices(); ++v) {
    auto it = vpairs.find({x.v(v), y.v(v)});
    if (it == vpairs.end() || it->second.size() != 1)
      fail(ErrorCode::NoMediator, "vertex '" + X.vertex(v).id + "' has no unique mediating image");
    vs[v] = it->second[0];
    if (!lat.leq(X.vlabel(v), P.vlabel(vs[v])))
      fail(ErrorCode::NoMediator, "label of vertex '" + X.vertex(v).id + "' blocks the mediator");
  }
  for (Index e = 0; e < X.num_edges(); ++e) {
    auto it = epairs.find({x.e(e), y.e(e)});
    if (it == epairs.end() || it->second.size() != 1)
      fail(ErrorCode::NoMediator, "edge '" + X.edge(e).id + "' has no unique mediating image");
    es[e] = it->second[0];
    const auto& xe = X.edge(e);
    const auto& pe = P.edge(es[e]);
    if (!lat.leq(xe.label, pe.label) || pe.src != vs[xe.src] || pe.tgt != vs[xe.tgt])
      fail(ErrorCode::NoMediator, "edge '" + xe.id + "' cannot be mediated");
  }
  return Morphism::trusted(x.dom(), p1.dom(), std::move(vs), std::move(es));
}

Morphism mediating_from_pushout(const Morphism& f, const Morphism& g, const Morphism& q1,
                                const Morphism& q2, const Morphism& x, const Morphism& y) {
  if (!same_graph(x.cod(), y.cod()) || !commutes(x, f, y, g))
    fail(ErrorCode::NotACone, "cocone does not commute over the span");
  const Graph& Q = *q1.cod();
  const Graph& X = *x.cod();
  const Lattice& lat = *X.lattice();
  std::vector<Index> vs(Q.num_vertices(), kNone), es(Q.num_edges(), kNone);
  auto put = [](std::vector<Index>& slot, Index at, Index value) {
    if (slot[at] != kNone && slot[at] != value)
      fail(ErrorCode::NoMediator, "cocone legs disagree on a pushout element");
    slot[at] = value;
  };
  for (Index b = 0; b < q1.vmap().size(); ++b) put(vs, q1.v(b), x.v(b));
  for (Index c = 0; c < q2.vmap().size(); ++c) put(vs, q2.v(c), y.v(c));
  for (Index b = 0; b < q1.emap().size(); ++b) put(es, q1.e(b), x.e(b));
  for (Index c = 0; c < q2.emap().size(); ++c) put(es, q2.e(c), y.e(c));
  for (Index v = 0; v < Q.num_vertices(); ++v) {
    if (vs[v] == kNone) fail(ErrorCode::NoMediator, "vertex '" + Q.vertex(v).id + "' is not covered by the legs");
    if (!lat.leq(Q.vlabel(v), X.vlabel(vs[v])))
      fail(ErrorCode::NoMediator, "label of vertex '" + Q.vertex(v).id + "' blocks the mediator");
  }
  for (Index e = 0; e < Q.num_edges(); ++e) {
    if (es[e] == kNone) fail(ErrorCode::NoMediator, "edge '" + Q.edge(e).id + "' is not covered by the legs");
    const auto& qe = Q.edge(e);
    const auto& xe = X.edge(es[e]);
    if (!lat.leq(qe.label, xe.label) || xe.src != vs[qe.src] || xe.tgt != vs[qe.tgt])
      fail(ErrorCode::NoMediator, "edge '" + qe.id + "' cannot be mediated");
  }
  return Morphism::trusted(q1.cod(), x.cod(), std::move(vs), std::move(es));
}

bool is_pullback_square(const Morphism& f, const Morphism& g, const Morphism& p1, const Morphism& p2) {
  if (!commutes(f, p1, g, p2)) fail(ErrorCode::NonCommutingSquare, "square does not commute");
  auto canonical = pullback(f, g);
  auto u = mediating_into_pullback(f, g, canonical.p1, canonical.p2, p1, p2);
  return is_iso(u);
}

bool is_pushout_square(const Morphism& f, const Morphism& g, const Morphism& q1, const Morphism& q2) {
  if (!commutes(q1, f, q2, g)) fail(ErrorCode::NonCommutingSquare, "square does not commute");
  auto canonical = pushout(f, g);
  auto u = mediating_from_pushout(f, g, canonical.q1, canonical.q2, q1, q2);
  return is_iso(u);
}

Factorization epi_regmono_factorize(const Morphism& f) {
  if (!f.dom()->lattice()->is_heyting())
    fail(ErrorCode::NonHeytingLattice, "epi/regular-mono factorization needs a Heyting lattice");
  const Graph& B = *f.cod();
  std::vector<char> vin(B.num_vertices(), 0), ein(B.num_edges(), 0);
  for (Index v : f.vmap()) vin[v] = 1;
  for (Index e : f.emap()) ein[e] = 1;
  std::vector<Index> vs, es;
  for (Index v = 0; v < B.num_vertices(); ++v)
    if (vin[v]) vs.push_back(v);
  for (Index e = 0; e < B.num_edges(); ++e)
    if (ein[e]) es.push_back(e);
  auto image = subgraph(f.cod(), vs, es);
  std::vector<Index> vpos(B.num_vertices(), kNone), epos(B.num_edges(), kNone);
  for (Index i = 0; i < vs.size(); ++i) vpos[vs[i]] = i;
  for (Index i = 0; i < es.size(); ++i) epos[es[i]] = i;
  std::vector<Index> ev, ee;
  for (Index v : f.vmap()) ev.push_back(vpos[v]);
  for (Index e : f.emap()) ee.push_back(epos[e]);
  return {Morphism::trusted(f.dom(), image.graph, std::move(ev), std::move(ee)), image.inclusion};
}

namespace {

// Restricted growth strings over n items.
void set_partitions(std::size_t n, const std::function<void(const std::vector<Index>&)>& visit) {
  std::vector<Index> block(n, 0);
  std::function<void(std::size_t, Index)> rec = [&](std::size_t i, Index used) {
    if (i == n) {
      visit(block);
      return;
    }
    for (Index b = 0; b <= used && b < n; ++b) {
      block[i] = b;
      rec(i + 1, b == used ? used + 1 : used);
    }
  };
  rec(0, 0);
}

}  // namespace

std::vector<Morphism> enumerate_quotients(const GraphPtr& L, QuotientDedup dedup) {
  const Graph& G = *L;
  const Lattice& lat = *G.lattice();
  std::vector<Morphism> out;
  std::vector<std::string> fingerprints;

  set_partitions(G.num_vertices(), [&](const std::vector<Index>& vblock) {
    Index nvc = 0;
    for (Index b : vblock) nvc = std::max(nvc, b + 1);
    // Edges may only merge when their endpoint classes agree.
    std::map<std::pair<Index, Index>, std::vector<Index>> groups;
    for (Index e = 0; e < G.num_edges(); ++e)
      groups[{vblock[G.edge(e).src], vblock[G.edge(e).tgt]}].push_back(e);
    std::vector<std::vector<Index>> group_list;
    for (auto& [key, es] : groups) group_list.push_back(es);

    std::vector<Index> eblock(G.num_edges(), 0);
    std::function<void(std::size_t, Index)> rec = [&](std::size_t gi, Index offset) {
      if (gi == group_list.size()) {
        Index nec = offset;
        Graph Q(G.lattice());
        for (Index c = 0; c < nvc; ++c) {
          std::string id;
          Label l = lat.bottom();
          for (Index v = 0; v < G.num_vertices(); ++v)
            if (vblock[v] == c) {
              id += (id.empty() ? "" : "+") + G.vertex(v).id;
              l = lat.join(l, G.vlabel(v));
            }
          Q.add_vertex(id, l);
        }
        // Edge classes are renumbered in order of first member.
        std::vector<Index> renum(nec, kNone);
        Index next = 0;
        for (Index e = 0; e < G.num_edges(); ++e)
          if (renum[eblock[e]] == kNone) renum[eblock[e]] = next++;
        for (Index c = 0; c < nec; ++c) {
          std::string id;
          Label l = lat.bottom();
          Index first = kNone;
          for (Index e = 0; e < G.num_edges(); ++e)
            if (renum[eblock[e]] == c) {
              id += (id.empty() ? "" : "+") + G.edge(e).id;
              l = lat.join(l, G.elabel(e));
              if (first == kNone) first = e;
            }
          Q.add_edge(id, vblock[G.edge(first).src], vblock[G.edge(first).tgt], l);
        }
        std::vector<Index> ev(vblock.begin(), vblock.end()), ee(G.num_edges());
        for (Index e = 0; e < G.num_edges(); ++e) ee[e] = renum[eblock[e]];
        auto Qp = share(std::move(Q));
        if (dedup == QuotientDedup::CodomainIso) {
          auto fp = iso_fingerprint(*Qp);
          for (std::size_t i = 0; i < out.size(); ++i)
            if (fingerprints[i] == fp && are_isomorphic(out[i].cod(), Qp)) return;
          fingerprints.push_back(fp);
        }
        out.push_back(Morphism::trusted(L, Qp, std::move(ev), std::move(ee)));
        return;
      }
      const auto& es = group_list[gi];
      set_partitions(es.size(), [&](const std::vector<Index>& part) {
        Index width = 0;
        for (std::size_t k = 0; k < es.size(); ++k) {
          eblock[es[k]] = offset + part[k];
          width = std::max(width, part[k] + 1);
        }
        rec(gi + 1, offset + width);
      });
    };
    rec(0, 0);
  });
  return out;
}

}  // namespace pbpo
