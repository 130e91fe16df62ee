#include "support.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

namespace pbpo::testing {

namespace {

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

std::size_t between(Rng& rng, std::size_t lo, std::size_t hi) {
  if (hi <= lo) return lo;
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Label random_label(Rng& rng, const Lattice& lat) { return static_cast<Label>(pick(rng, lat.size())); }

// A label x with lo ≤ x ≤ hi, uniformly among those.
Label label_between(Rng& rng, const Lattice& lat, Label lo, Label hi) {
  std::vector<Label> xs;
  for (Label x = 0; x < lat.size(); ++x)
    if (lat.leq(lo, x) && lat.leq(x, hi)) xs.push_back(x);
  return xs[pick(rng, xs.size())];
}

}  // namespace

std::vector<Morphism> brute_morphisms(const GraphPtr& A, const GraphPtr& B) {
  std::vector<Morphism> out;
  const Graph& a = *A;
  const Graph& b = *B;
  const Lattice& lat = *a.lattice();
  const std::size_t nv = a.num_vertices(), ne = a.num_edges();
  if (nv > 0 && b.num_vertices() == 0) return out;
  std::vector<Index> vm(nv, 0);
  while (true) {
    bool vok = true;
    for (std::size_t i = 0; i < nv && vok; ++i) vok = lat.leq(a.vlabel(i), b.vlabel(vm[i]));
    if (vok) {
      std::vector<std::vector<Index>> options(ne);
      bool any = true;
      for (std::size_t i = 0; i < ne; ++i) {
        const Edge& e = a.edge(i);
        for (Index j = 0; j < b.num_edges(); ++j) {
          const Edge& f = b.edge(j);
          if (f.src == vm[e.src] && f.tgt == vm[e.tgt] && lat.leq(e.label, f.label)) options[i].push_back(j);
        }
        if (options[i].empty()) any = false;
      }
      if (any) {
        std::vector<std::size_t> pos(ne, 0);
        while (true) {
          std::vector<Index> em(ne);
          for (std::size_t i = 0; i < ne; ++i) em[i] = options[i][pos[i]];
          out.push_back(Morphism::trusted(A, B, vm, em));
          std::size_t i = 0;
          while (i < ne && ++pos[i] == options[i].size()) pos[i++] = 0;
          if (i == ne) break;
        }
      }
    }
    std::size_t i = 0;
    while (i < nv && ++vm[i] == b.num_vertices()) vm[i++] = 0;
    if (i == nv) break;
  }
  return out;
}

namespace {

GraphPtr single_vertex(const LatticePtr& lat, Label l) {
  Graph g(lat);
  g.add_vertex("p", l);
  return share(std::move(g));
}

GraphPtr single_edge(const LatticePtr& lat, Label l) {
  Graph g(lat);
  g.add_vertex("s", lat->bottom());
  g.add_vertex("t", lat->bottom());
  g.add_edge("e", 0, 1, l);
  return share(std::move(g));
}

}  // namespace

GraphPtr make_graph(const LatticePtr& lat, const std::vector<V>& vs, const std::vector<E>& es) {
  Graph g(lat);
  for (const auto& v : vs) g.add_vertex(v.id, lat->label(v.label));
  for (const auto& e : es) g.link(e.id, e.src, e.tgt, lat->label(e.label));
  return share(std::move(g));
}

Morphism arrow(const GraphPtr& dom, const GraphPtr& cod, const std::map<std::string, std::string>& vs,
               const std::map<std::string, std::string>& es) {
  auto vmap = vs;
  auto emap = es;
  for (const auto& v : dom->vertices())
    if (!vmap.count(v.id) && cod->find_vertex(v.id)) vmap[v.id] = v.id;
  for (const auto& e : dom->edges())
    if (!emap.count(e.id) && cod->find_edge(e.id)) emap[e.id] = e.id;
  return Morphism::from_ids(dom, cod, vmap, emap);
}

std::vector<GraphPtr> all_graphs(const LatticePtr& lat, std::size_t max_v, std::size_t max_e) {
  IsoClassSet seen;
  const std::size_t nl = lat->size();
  for (std::size_t n = 0; n <= max_v; ++n) {
    // Vertex labels as nondecreasing sequences; isomorphism takes care of the rest.
    std::vector<std::vector<Label>> labelings;
    std::vector<Label> cur(n, 0);
    std::function<void(std::size_t, Label)> lab = [&](std::size_t i, Label from) {
      if (i == n) { labelings.push_back(cur); return; }
      for (Label x = from; x < nl; ++x) { cur[i] = x; lab(i + 1, x); }
    };
    lab(0, 0);
    std::vector<std::tuple<Index, Index, Label>> slots;
    for (Index s = 0; s < n; ++s)
      for (Index t = 0; t < n; ++t)
        for (Label x = 0; x < nl; ++x) slots.emplace_back(s, t, x);
    for (const auto& vl : labelings) {
      // Edge multisets as nondecreasing slot sequences.
      std::vector<std::size_t> chosen;
      std::function<void(std::size_t)> edges = [&](std::size_t from) {
        Graph g(lat);
        for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i), vl[i]);
        for (std::size_t k = 0; k < chosen.size(); ++k) {
          auto [s, t, x] = slots[chosen[k]];
          g.add_edge("e" + std::to_string(k), s, t, x);
        }
        seen.insert(share(std::move(g)));
        if (chosen.size() == max_e) return;
        for (std::size_t k = from; k < slots.size(); ++k) {
          chosen.push_back(k);
          edges(k);
          chosen.pop_back();
        }
      };
      edges(0);
    }
  }
  return seen.members();
}

GraphPtr random_graph(Rng& rng, const LatticePtr& lat, std::size_t max_v, std::size_t max_e, std::size_t min_v) {
  Graph g(lat);
  std::size_t n = between(rng, min_v, max_v);
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i), random_label(rng, *lat));
  if (n > 0) {
    std::size_t m = between(rng, 0, max_e);
    for (std::size_t k = 0; k < m; ++k)
      g.add_edge("e" + std::to_string(k), static_cast<Index>(pick(rng, n)), static_cast<Index>(pick(rng, n)),
                 random_label(rng, *lat));
  }
  return share(std::move(g));
}

std::optional<Morphism> random_morphism(Rng& rng, const GraphPtr& A, const GraphPtr& B, MorphismClass constraint) {
  auto all = enumerate_morphisms(A, B, constraint);
  if (all.empty()) return std::nullopt;
  return all[pick(rng, all.size())];
}

namespace {

// r = inclusion ∘ quotient, with label raises and fresh elements on the right.
Morphism random_right_leg(Rng& rng, const GraphPtr& K) {
  const Lattice& lat = *K->lattice();
  auto quotients = enumerate_quotients(K, QuotientDedup::Kernel);
  const Morphism& q = quotients[pick(rng, quotients.size())];
  const Graph& Q = *q.cod();
  Graph R(K->lattice());
  for (const auto& v : Q.vertices()) {
    Label x = pick(rng, 3) == 0 ? label_between(rng, lat, v.label, lat.top()) : v.label;
    R.add_vertex("r" + std::to_string(R.num_vertices()), x);
  }
  std::size_t fresh_v = pick(rng, 3) == 0 ? 1 : 0;
  for (std::size_t i = 0; i < fresh_v; ++i) R.add_vertex("r" + std::to_string(R.num_vertices()), random_label(rng, lat));
  for (const auto& e : Q.edges()) {
    Label x = pick(rng, 3) == 0 ? label_between(rng, lat, e.label, lat.top()) : e.label;
    R.add_edge("f" + std::to_string(R.num_edges()), e.src, e.tgt, x);
  }
  if (R.num_vertices() > 0) {
    std::size_t fresh_e = pick(rng, 3);
    for (std::size_t i = 0; i < fresh_e; ++i)
      R.add_edge("f" + std::to_string(R.num_edges()), static_cast<Index>(pick(rng, R.num_vertices())),
                 static_cast<Index>(pick(rng, R.num_vertices())), random_label(rng, lat));
  }
  return Morphism(K, share(std::move(R)), q.vmap(), q.emap());
}

}  // namespace

std::optional<Rule> random_rule(Rng& rng, const LatticePtr& lat, const RuleShape& shape) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    auto Lp = random_graph(rng, lat, shape.max_v, shape.max_e, 1);
    auto L = random_graph(rng, lat, std::min<std::size_t>(shape.max_v, 3), std::min<std::size_t>(shape.max_e, 3));
    // Mostly monic typings, as in practice; occasionally arbitrary ones.
    auto constraint = pick(rng, 4) == 0 ? MorphismClass::Any : MorphismClass::Mono;
    auto tL = random_morphism(rng, L, Lp, constraint);
    if (!tL) continue;
    auto Kp = random_graph(rng, lat, shape.max_v, shape.max_e);
    auto lp = random_morphism(rng, Kp, Lp);
    if (!lp) continue;
    auto pb = pullback(*tL, *lp);
    if (pb.object->num_vertices() > shape.max_v || pb.object->num_edges() > shape.max_e) continue;
    auto r = random_right_leg(rng, pb.object);
    if (r.cod()->num_vertices() > shape.max_v || r.cod()->num_edges() > shape.max_e) continue;
    Rule rule{L, pb.object, r.cod(), Lp, Kp, pb.p1, r, *tL, pb.p2, *lp};
    return validate_rule(rule);
  }
  return std::nullopt;
}

GraphPtr host_with_match(Rng& rng, const Rule& rule, std::size_t max_v, std::size_t max_e) {
  const Graph& L = *rule.L;
  const Graph& Lp = *rule.Lp;
  const Lattice& lat = *L.lattice();
  const Morphism& tL = rule.tL;
  Graph G(L.lattice());
  std::vector<Index> alpha_v, alpha_e;
  std::map<Index, Index> core_v;
  std::set<Index> image_e;
  for (Index y = 0; y < Lp.num_vertices(); ++y) {
    std::vector<Label> pre;
    for (Index x = 0; x < L.num_vertices(); ++x)
      if (tL.v(x) == y) pre.push_back(L.vlabel(x));
    if (pre.empty()) continue;
    core_v[y] = G.add_vertex("c" + std::to_string(y), label_between(rng, lat, lat.join(pre), Lp.vlabel(y)));
    alpha_v.push_back(y);
  }
  for (Index y = 0; y < Lp.num_edges(); ++y) {
    std::vector<Label> pre;
    for (Index x = 0; x < L.num_edges(); ++x)
      if (tL.e(x) == y) pre.push_back(L.elabel(x));
    if (pre.empty()) continue;
    image_e.insert(y);
    const Edge& e = Lp.edge(y);
    G.add_edge("c" + std::to_string(y), core_v.at(e.src), core_v.at(e.tgt),
               label_between(rng, lat, lat.join(pre), e.label));
    alpha_e.push_back(y);
  }
  std::vector<Index> outside;
  for (Index y = 0; y < Lp.num_vertices(); ++y)
    if (!core_v.count(y)) outside.push_back(y);
  if (!outside.empty() && G.num_vertices() < max_v) {
    std::size_t extra = between(rng, 0, max_v - G.num_vertices());
    for (std::size_t i = 0; i < extra; ++i) {
      Index y = outside[pick(rng, outside.size())];
      G.add_vertex("x" + std::to_string(i), label_between(rng, lat, lat.bottom(), Lp.vlabel(y)));
      alpha_v.push_back(y);
    }
  }
  std::size_t budget = max_e > G.num_edges() ? max_e - G.num_edges() : 0;
  for (std::size_t tries = 0; tries < 3 * budget && G.num_edges() < max_e && G.num_vertices() > 0; ++tries) {
    Index s = static_cast<Index>(pick(rng, G.num_vertices()));
    Index t = static_cast<Index>(pick(rng, G.num_vertices()));
    std::vector<Index> cands;
    for (Index y = 0; y < Lp.num_edges(); ++y)
      if (!image_e.count(y) && Lp.edge(y).src == alpha_v[s] && Lp.edge(y).tgt == alpha_v[t]) cands.push_back(y);
    if (cands.empty()) continue;
    Index y = cands[pick(rng, cands.size())];
    G.add_edge("x" + std::to_string(G.num_edges()), s, t, label_between(rng, lat, lat.bottom(), Lp.elabel(y)));
    alpha_e.push_back(y);
  }
  return share(std::move(G));
}

std::optional<PbpoRule> random_pbpo_rule(Rng& rng, const LatticePtr& lat, std::size_t max_l_vertices,
                                         const RuleShape& shape) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    auto Lp = random_graph(rng, lat, shape.max_v, shape.max_e, 1);
    auto L = random_graph(rng, lat, max_l_vertices, 2);
    auto tL = random_morphism(rng, L, Lp);
    if (!tL) continue;
    auto Kp = random_graph(rng, lat, shape.max_v, shape.max_e);
    auto lp = random_morphism(rng, Kp, Lp);
    if (!lp) continue;
    auto pb = pullback(*tL, *lp);
    if (pb.object->num_vertices() > shape.max_v || pb.object->num_edges() > shape.max_e) continue;
    auto r = random_right_leg(rng, pb.object);
    auto po = pushout(r, pb.p2);
    PbpoRule rule{L, pb.object, r.cod(), Lp, Kp, po.object, pb.p1, r, *tL, pb.p2, po.q1, *lp, po.q2};
    return validate_pbpo_rule(rule);
  }
  return std::nullopt;
}

bool IsoClassSet::insert(const GraphPtr& g) {
  if (contains(g)) return false;
  members_.push_back(g);
  prints_.push_back(iso_fingerprint(*g));
  return true;
}

bool IsoClassSet::contains(const GraphPtr& g) const {
  auto fp = iso_fingerprint(*g);
  for (std::size_t i = 0; i < members_.size(); ++i)
    if (prints_[i] == fp && are_isomorphic(members_[i], g)) return true;
  return false;
}

bool IsoClassSet::operator==(const IsoClassSet& other) const {
  if (size() != other.size()) return false;
  for (const auto& g : members_)
    if (!other.contains(g)) return false;
  return true;
}

Pullback naive_pullback(const Morphism& f, const Morphism& g) {
  const Graph& A = *f.dom();
  const Graph& B = *g.dom();
  const Lattice& lat = *A.lattice();
  Graph P(A.lattice());
  std::vector<Index> p1v, p2v, p1e, p2e;
  std::map<std::pair<Index, Index>, Index> at;
  for (Index a = 0; a < A.num_vertices(); ++a)
    for (Index b = 0; b < B.num_vertices(); ++b)
      if (f.v(a) == g.v(b)) {
        at[{a, b}] = P.add_vertex(A.vertex(a).id + "," + B.vertex(b).id, lat.meet(A.vlabel(a), B.vlabel(b)));
        p1v.push_back(a);
        p2v.push_back(b);
      }
  for (Index a = 0; a < A.num_edges(); ++a)
    for (Index b = 0; b < B.num_edges(); ++b)
      if (f.e(a) == g.e(b)) {
        const Edge& ea = A.edge(a);
        const Edge& eb = B.edge(b);
        P.add_edge(ea.id + "," + eb.id, at.at({ea.src, eb.src}), at.at({ea.tgt, eb.tgt}),
                   lat.meet(ea.label, eb.label));
        p1e.push_back(a);
        p2e.push_back(b);
      }
  auto obj = share(std::move(P));
  return Pullback{obj, Morphism(obj, f.dom(), p1v, p1e), Morphism(obj, g.dom(), p2v, p2e)};
}

Pushout naive_pushout(const Morphism& f, const Morphism& g) {
  const Graph& A = *f.dom();
  const Graph& B = *f.cod();
  const Graph& C = *g.cod();
  const Lattice& lat = *A.lattice();
  // Elements of B ⊔ C start in their own class; classes merge to their least member until stable.
  auto closure = [](std::size_t nb, std::size_t nc, std::size_t na, auto fb, auto gc) {
    std::vector<std::size_t> cls(nb + nc);
    std::iota(cls.begin(), cls.end(), 0);
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t a = 0; a < na; ++a) {
        std::size_t x = fb(a), y = nb + gc(a);
        std::size_t lo = std::min(cls[x], cls[y]);
        for (std::size_t& c : cls)
          if ((c == cls[x] || c == cls[y]) && c != lo) { c = lo; changed = true; }
      }
    }
    return cls;
  };
  auto vcls = closure(B.num_vertices(), C.num_vertices(), A.num_vertices(), [&](std::size_t a) { return f.v(a); },
                      [&](std::size_t a) { return g.v(a); });
  auto ecls = closure(B.num_edges(), C.num_edges(), A.num_edges(), [&](std::size_t a) { return f.e(a); },
                      [&](std::size_t a) { return g.e(a); });
  Graph Q(A.lattice());
  std::map<std::size_t, Index> vidx, eidx;
  auto vlabel = [&](std::size_t i) { return i < B.num_vertices() ? B.vlabel(i) : C.vlabel(i - B.num_vertices()); };
  auto elabel = [&](std::size_t i) { return i < B.num_edges() ? B.elabel(i) : C.elabel(i - B.num_edges()); };
  for (std::size_t i = 0; i < vcls.size(); ++i) {
    if (vcls[i] != i) continue;
    Label x = lat.bottom();
    for (std::size_t j = 0; j < vcls.size(); ++j)
      if (vcls[j] == i) x = lat.join(x, vlabel(j));
    vidx[i] = Q.add_vertex("q" + std::to_string(i), x);
  }
  auto vclass_of_b = [&](Index v) { return vidx.at(vcls[v]); };
  auto vclass_of_c = [&](Index v) { return vidx.at(vcls[B.num_vertices() + v]); };
  for (std::size_t i = 0; i < ecls.size(); ++i) {
    if (ecls[i] != i) continue;
    Label x = lat.bottom();
    for (std::size_t j = 0; j < ecls.size(); ++j)
      if (ecls[j] == i) x = lat.join(x, elabel(j));
    Index s, t;
    if (i < B.num_edges()) {
      s = vclass_of_b(B.edge(i).src);
      t = vclass_of_b(B.edge(i).tgt);
    } else {
      const Edge& e = C.edge(i - B.num_edges());
      s = vclass_of_c(e.src);
      t = vclass_of_c(e.tgt);
    }
    eidx[i] = Q.add_edge("q" + std::to_string(i), s, t, x);
  }
  std::vector<Index> q1v, q1e, q2v, q2e;
  for (Index v = 0; v < B.num_vertices(); ++v) q1v.push_back(vclass_of_b(v));
  for (Index v = 0; v < C.num_vertices(); ++v) q2v.push_back(vclass_of_c(v));
  for (Index e = 0; e < B.num_edges(); ++e) q1e.push_back(eidx.at(ecls[e]));
  for (Index e = 0; e < C.num_edges(); ++e) q2e.push_back(eidx.at(ecls[B.num_edges() + e]));
  auto obj = share(std::move(Q));
  return Pushout{obj, Morphism(f.cod(), obj, q1v, q1e), Morphism(g.cod(), obj, q2v, q2e)};
}

std::size_t count_mediators(const Morphism& p1, const Morphism& p2, const Morphism& x, const Morphism& y) {
  std::size_t n = 0;
  for (const auto& h : brute_morphisms(x.dom(), p1.dom()))
    if (compose(p1, h) == x && compose(p2, h) == y) ++n;
  return n;
}

bool all_cones_pullback(const Morphism& f, const Morphism& g, const Morphism& p1, const Morphism& p2) {
  if (!commutes(f, p1, g, p2)) return false;
  const auto& lat = f.dom()->lattice();
  std::vector<GraphPtr> probes;
  for (Label l = 0; l < lat->size(); ++l) {
    probes.push_back(single_vertex(lat, l));
    probes.push_back(single_edge(lat, l));
  }
  for (const auto& X : probes) {
    auto xs = brute_morphisms(X, f.dom());
    auto ys = brute_morphisms(X, g.dom());
    for (const auto& x : xs)
      for (const auto& y : ys)
        if (compose(f, x) == compose(g, y) && count_mediators(p1, p2, x, y) != 1) return false;
  }
  return true;
}

bool oracle_pushout(const Morphism& f, const Morphism& g, const Morphism& q1, const Morphism& q2) {
  if (compose(q1, f) != compose(q2, g)) return false;
  auto ref = naive_pushout(f, g);
  // Comparison maps ref.object → Q commuting with the injections.
  std::size_t found = 0;
  bool iso = false;
  for (const auto& h : brute_morphisms(ref.object, q1.cod())) {
    if (compose(h, ref.q1) == q1 && compose(h, ref.q2) == q2) {
      ++found;
      iso = is_iso(h);
    }
  }
  return found == 1 && iso;
}

}  // namespace pbpo::testing
