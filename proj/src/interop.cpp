#include "pbpo/interop.hpp"

#include "pbpo/classifier.hpp"
#include "pbpo/error.hpp"
#include "pbpo/limits.hpp"

namespace pbpo {

namespace {

void expect_arrow(const Morphism& f, const GraphPtr& dom, const GraphPtr& cod, const char* name) {
  if (!same_graph(f.dom(), dom) || !same_graph(f.cod(), cod))
    fail(ErrorCode::ComposabilityMismatch, std::string("morphism ") + name + " has the wrong domain or codomain");
  auto why = f.violation();
  if (!why.empty()) fail(ErrorCode::InvalidMorphism, std::string("morphism ") + name + ": " + why);
}

void require_heyting(const GraphPtr& g, const char* what) {
  if (!g->lattice()->is_heyting()) fail(ErrorCode::NonHeytingLattice, std::string(what) + " needs a Heyting lattice");
}

}  // namespace

DpoRule validate_dpo_rule(const DpoRule& rule) {
  expect_arrow(rule.l, rule.K, rule.L, "l");
  expect_arrow(rule.r, rule.K, rule.R, "r");
  if (!is_regular_mono(rule.l)) fail(ErrorCode::NotRegularMono, "DPO rules need a regular mono l");
  return rule;
}

AgreeRule validate_agree_rule(const AgreeRule& rule) {
  expect_arrow(rule.l, rule.K, rule.L, "l");
  expect_arrow(rule.r, rule.K, rule.R, "r");
  expect_arrow(rule.tK, rule.K, rule.Kp, "tK");
  if (!is_regular_mono(rule.tK)) fail(ErrorCode::NotRegularMono, "AGREE rules need a regular mono tK");
  return rule;
}

PbpoRule validate_pbpo_rule(const PbpoRule& rule) {
  expect_arrow(rule.l, rule.K, rule.L, "l");
  expect_arrow(rule.r, rule.K, rule.R, "r");
  expect_arrow(rule.tL, rule.L, rule.Lp, "tL");
  expect_arrow(rule.tK, rule.K, rule.Kp, "tK");
  expect_arrow(rule.tR, rule.R, rule.Rp, "tR");
  expect_arrow(rule.lp, rule.Kp, rule.Lp, "lp");
  expect_arrow(rule.rp, rule.Kp, rule.Rp, "rp");
  if (!commutes(rule.tL, rule.l, rule.lp, rule.tK)) fail(ErrorCode::NonCommuting, "left square does not commute");
  if (!commutes(rule.tR, rule.r, rule.rp, rule.tK)) fail(ErrorCode::NonCommuting, "right square does not commute");
  if (!is_pullback_square(rule.tL, rule.lp, rule.l, rule.tK))
    fail(ErrorCode::NotCanonical, "left square is not a pullback");
  if (!is_pushout_square(rule.r, rule.tK, rule.tR, rule.rp))
    fail(ErrorCode::NotCanonical, "right square is not a pushout");
  return rule;
}

PbpoRule pbpo_view(const Rule& rule) {
  auto po = pushout(rule.r, rule.tK);
  return PbpoRule{rule.L, rule.K, rule.R, rule.Lp, rule.Kp, po.object, rule.l,
                  rule.r, rule.tL, rule.tK, po.q1, rule.lp, po.q2};
}

std::optional<DpoStep> dpo_step(const DpoRule& rule, const GraphPtr& G, const Morphism& m) {
  if (G->lattice()->size() != 1) fail(ErrorCode::LatticeMismatch, "the DPO oracle supports the unit lattice only");
  if (!same_graph(m.dom(), rule.L) || !same_graph(m.cod(), G)) fail(ErrorCode::NotAMatch, "match does not go from L to G");
  if (!is_regular_mono(m)) fail(ErrorCode::NotRegularMono, "DPO matches must be regular monos");
  const Graph& g = *G;
  std::vector<char> del_v(g.num_vertices(), 0), del_e(g.num_edges(), 0);
  for (Index v : m.vmap()) del_v[v] = 1;
  for (Index e : m.emap()) del_e[e] = 1;
  for (Index k = 0; k < rule.K->num_vertices(); ++k) del_v[m.v(rule.l.v(k))] = 0;
  for (Index k = 0; k < rule.K->num_edges(); ++k) del_e[m.e(rule.l.e(k))] = 0;
  std::vector<Index> keep_v, keep_e;
  for (Index v = 0; v < g.num_vertices(); ++v)
    if (!del_v[v]) keep_v.push_back(v);
  for (Index e = 0; e < g.num_edges(); ++e) {
    if (del_e[e]) continue;
    if (del_v[g.edge(e).src] || del_v[g.edge(e).tgt]) return std::nullopt;  // dangling
    keep_e.push_back(e);
  }
  auto D = subgraph(G, keep_v, keep_e);
  std::vector<Index> vpos(g.num_vertices(), 0), epos(g.num_edges(), 0);
  for (Index i = 0; i < keep_v.size(); ++i) vpos[keep_v[i]] = i;
  for (Index i = 0; i < keep_e.size(); ++i) epos[keep_e[i]] = i;
  std::vector<Index> kv, ke;
  for (Index k = 0; k < rule.K->num_vertices(); ++k) kv.push_back(vpos[m.v(rule.l.v(k))]);
  for (Index k = 0; k < rule.K->num_edges(); ++k) ke.push_back(epos[m.e(rule.l.e(k))]);
  auto k = Morphism(rule.K, D.graph, std::move(kv), std::move(ke));
  auto po = pushout(rule.r, k);
  return DpoStep{D.graph, po.object, k, D.inclusion};
}

AgreeStep agree_step(const AgreeRule& rule, const GraphPtr& G, const Morphism& m) {
  require_heyting(G, "AGREE steps");
  if (!same_graph(m.dom(), rule.L) || !same_graph(m.cod(), G)) fail(ErrorCode::NotAMatch, "match does not go from L to G");
  auto TL = classify_object(rule.L);
  auto chi_m = classify_partial(m, identity(rule.L), TL);
  auto chi_k = classify_partial(rule.tK, rule.l, TL);
  auto pb = pullback(chi_m, chi_k);
  auto u = mediating_into_pullback(chi_m, chi_k, pb.p1, pb.p2, compose(m, rule.l), rule.tK);
  auto po = pushout(rule.r, u);
  if (!is_pullback_square(m, pb.p1, rule.l, u))
    fail(ErrorCode::CertificateFailure, "AGREE left square is not a pullback");
  return AgreeStep{pb.object, po.object, chi_m, pb.p1, pb.p2, u, po.q2, po.q1};
}

PbpoStep pbpo_step(const PbpoRule& rule, const GraphPtr& G, const Morphism& m, const Morphism& alpha) {
  if (!same_graph(m.dom(), rule.L) || !same_graph(m.cod(), G) || !same_graph(alpha.dom(), G) ||
      !same_graph(alpha.cod(), rule.Lp) || !commutes(rule.tL, identity(rule.L), alpha, m))
    fail(ErrorCode::NotAMatch, "tL differs from alpha∘m");
  auto pb = pullback(alpha, rule.lp);
  auto u = mediating_into_pullback(alpha, rule.lp, pb.p1, pb.p2, compose(m, rule.l), rule.tK);
  auto po = pushout(rule.r, u);
  return PbpoStep{pb.object, po.object, pb.p1, pb.p2, u, po.q2, po.q1};
}

std::vector<PbpoMatch> find_pbpo_matches(const PbpoRule& rule, const GraphPtr& G, MorphismClass constraint) {
  std::vector<PbpoMatch> out;
  const Graph& L = *rule.L;
  SearchOptions mopt;
  mopt.constraint = constraint;
  for_each_morphism(rule.L, G, mopt, [&](const Morphism& m) {
    SearchOptions aopt;
    aopt.vertex_seed.assign(G->num_vertices(), std::nullopt);
    aopt.edge_seed.assign(G->num_edges(), std::nullopt);
    for (Index x = 0; x < L.num_vertices(); ++x) {
      auto& slot = aopt.vertex_seed[m.v(x)];
      if (slot && *slot != rule.tL.v(x)) return true;
      slot = rule.tL.v(x);
    }
    for (Index x = 0; x < L.num_edges(); ++x) {
      auto& slot = aopt.edge_seed[m.e(x)];
      if (slot && *slot != rule.tL.e(x)) return true;
      slot = rule.tL.e(x);
    }
    for_each_morphism(G, rule.Lp, aopt, [&](const Morphism& alpha) {
      out.push_back({m, alpha});
      return true;
    });
    return true;
  });
  return out;
}

Rule translate_dpo(const DpoRule& rule) {
  require_heyting(rule.L, "DPO translation");
  validate_dpo_rule(rule);
  auto TK = classify_object(rule.K);
  auto po = pushout(rule.l, TK.eta);
  return validate_rule(Rule{rule.L, rule.K, rule.R, po.object, TK.T, rule.l, rule.r, po.q1, TK.eta, po.q2});
}

Rule translate_agree(const AgreeRule& rule) {
  require_heyting(rule.L, "AGREE translation");
  validate_agree_rule(rule);
  auto TL = classify_object(rule.L);
  auto lp = classify_partial(rule.tK, rule.l, TL);
  return validate_rule(Rule{rule.L, rule.K, rule.R, TL.T, rule.Kp, rule.l, rule.r, TL.eta, rule.tK, lp});
}

namespace {

// Every relabelling of e's codomain between the class joins and the labels of f's image.
std::vector<Morphism> label_lifts(const Morphism& e, const Morphism& tL, const std::vector<Index>& fv,
                                  const std::vector<Index>& fe) {
  const Graph& Q = *e.cod();
  const Graph& Lp = *tL.cod();
  const Lattice& lat = *Q.lattice();
  std::vector<std::vector<Label>> vchoice(Q.num_vertices()), echoice(Q.num_edges());
  for (Index v = 0; v < Q.num_vertices(); ++v)
    for (Label c = 0; c < lat.size(); ++c)
      if (lat.leq(Q.vlabel(v), c) && lat.leq(c, Lp.vlabel(fv[v]))) vchoice[v].push_back(c);
  for (Index x = 0; x < Q.num_edges(); ++x)
    for (Label c = 0; c < lat.size(); ++c)
      if (lat.leq(Q.elabel(x), c) && lat.leq(c, Lp.elabel(fe[x]))) echoice[x].push_back(c);

  std::vector<Morphism> out;
  Graph work = Q;
  const std::size_t nv = Q.num_vertices();
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == nv + Q.num_edges()) {
      auto g = share(work);
      out.push_back(Morphism::trusted(e.dom(), g, e.vmap(), e.emap()));
      return;
    }
    const auto& choices = i < nv ? vchoice[i] : echoice[i - nv];
    for (Label c : choices) {
      if (i < nv) work.set_vertex_label(static_cast<Index>(i), c);
      else work.set_edge_label(static_cast<Index>(i - nv), c);
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace

std::vector<Rule> compact_rules(const PbpoRule& input, CompactMode mode) {
  require_heyting(input.L, "compaction");
  const PbpoRule rule = validate_pbpo_rule(input);
  const Graph& L = *rule.L;
  std::vector<Morphism> epis;
  if (mode == CompactMode::IsoOnly) {
    epis.push_back(identity(rule.L));
  } else {
    for (const auto& q : enumerate_quotients(rule.L, QuotientDedup::Kernel)) {
      std::vector<Index> fv(q.cod()->num_vertices()), fe(q.cod()->num_edges());
      bool respects = true;
      std::vector<char> seen_v(fv.size(), 0), seen_e(fe.size(), 0);
      for (Index x = 0; x < L.num_vertices() && respects; ++x) {
        Index c = q.v(x);
        if (seen_v[c] && fv[c] != rule.tL.v(x)) respects = false;
        fv[c] = rule.tL.v(x);
        seen_v[c] = 1;
      }
      for (Index x = 0; x < L.num_edges() && respects; ++x) {
        Index c = q.e(x);
        if (seen_e[c] && fe[c] != rule.tL.e(x)) respects = false;
        fe[c] = rule.tL.e(x);
        seen_e[c] = 1;
      }
      if (!respects) continue;
      for (auto& lifted : label_lifts(q, rule.tL, fv, fe)) epis.push_back(std::move(lifted));
    }
  }

  std::vector<Rule> out;
  for (const auto& e : epis) {
    const Graph& Le = *e.cod();
    std::vector<Index> fv(Le.num_vertices()), fe(Le.num_edges());
    for (Index x = 0; x < L.num_vertices(); ++x) fv[e.v(x)] = rule.tL.v(x);
    for (Index x = 0; x < L.num_edges(); ++x) fe[e.e(x)] = rule.tL.e(x);
    auto f = Morphism(e.cod(), rule.Lp, std::move(fv), std::move(fe));
    auto mat = materialize(f);
    auto mid = pullback(mat.flat, rule.lp);  // M' with legs to M and K'
    auto j = mediating_into_pullback(mat.flat, rule.lp, mid.p1, mid.p2,
                                     compose(mat.sharp, compose(e, rule.l)), rule.tK);
    auto top = pullback(mat.sharp, mid.p1);  // K_e with legs to L_e and M'
    auto k = mediating_into_pullback(mat.sharp, mid.p1, top.p1, top.p2, compose(e, rule.l), j);
    auto right = pushout(k, rule.r);
    out.push_back(validate_rule(
        Rule{e.cod(), top.object, right.object, mat.M, mid.object, top.p1, right.q1, mat.sharp, top.p2, mid.p1}));
  }
  return out;
}

}  // namespace pbpo
