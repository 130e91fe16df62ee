#include "pbpo/rewrite.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_set>

#include "pbpo/classifier.hpp"
#include "pbpo/error.hpp"
#include "pbpo/limits.hpp"

namespace pbpo {

namespace {

constexpr Index kNone = static_cast<Index>(-1);

void expect_arrow(const Morphism& f, const GraphPtr& dom, const GraphPtr& cod, const char* name) {
  if (!same_graph(f.dom(), dom) || !same_graph(f.cod(), cod))
    fail(ErrorCode::ComposabilityMismatch, std::string("morphism ") + name + " has the wrong domain or codomain");
  auto why = f.violation();
  if (!why.empty()) fail(ErrorCode::InvalidMorphism, std::string("morphism ") + name + ": " + why);
}

std::vector<std::string> uniquify(std::vector<std::string> ids) {
  std::unordered_set<std::string> seen;
  for (auto& id : ids) {
    while (!seen.insert(id).second) id += "'";
  }
  return ids;
}

GraphPtr with_ids(const GraphPtr& g, std::vector<std::string> vids, std::vector<std::string> eids) {
  Graph copy = *g;
  copy.set_ids(uniquify(std::move(vids)), uniquify(std::move(eids)));
  return share(std::move(copy));
}

std::string joined(std::vector<std::string> parts) {
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "+") + p;
  return out;
}

// G_K elements are named after their G_L image, qualified by the K' element
// when the image has several preimages.
GraphPtr host_named_gk(const StepResult& s) {
  const Graph& GK = *s.GK;
  const Graph& GL = *s.GL;
  const Graph& Kp = *s.up.cod();
  std::vector<std::size_t> vcount(GL.num_vertices(), 0), ecount(GL.num_edges(), 0);
  for (Index v : s.gL.vmap()) ++vcount[v];
  for (Index e : s.gL.emap()) ++ecount[e];
  std::vector<std::string> vids, eids;
  for (Index v = 0; v < GK.num_vertices(); ++v) {
    const auto& g = GL.vertex(s.gL.v(v)).id;
    vids.push_back(vcount[s.gL.v(v)] == 1 ? g : g + "|" + Kp.vertex(s.up.v(v)).id);
  }
  for (Index e = 0; e < GK.num_edges(); ++e) {
    const auto& g = GL.edge(s.gL.e(e)).id;
    eids.push_back(ecount[s.gL.e(e)] == 1 ? g : g + "|" + Kp.edge(s.up.e(e)).id);
  }
  return with_ids(s.GK, std::move(vids), std::move(eids));
}

GraphPtr host_named_gr(const StepResult& s) {
  const Graph& GR = *s.GR;
  const Graph& GK = *s.GK;
  const Graph& R = *s.w.dom();
  std::vector<std::vector<std::string>> vhost(GR.num_vertices()), vfresh(GR.num_vertices());
  std::vector<std::vector<std::string>> ehost(GR.num_edges()), efresh(GR.num_edges());
  for (Index v = 0; v < GK.num_vertices(); ++v) vhost[s.gR.v(v)].push_back(GK.vertex(v).id);
  for (Index e = 0; e < GK.num_edges(); ++e) ehost[s.gR.e(e)].push_back(GK.edge(e).id);
  for (Index v = 0; v < R.num_vertices(); ++v) vfresh[s.w.v(v)].push_back(R.vertex(v).id);
  for (Index e = 0; e < R.num_edges(); ++e) efresh[s.w.e(e)].push_back(R.edge(e).id);
  std::vector<std::string> vids, eids;
  for (Index v = 0; v < GR.num_vertices(); ++v)
    vids.push_back(vhost[v].empty() ? "po:" + joined(vfresh[v]) : joined(vhost[v]));
  for (Index e = 0; e < GR.num_edges(); ++e)
    eids.push_back(ehost[e].empty() ? "po:" + joined(efresh[e]) : joined(ehost[e]));
  return with_ids(s.GR, std::move(vids), std::move(eids));
}

}  // namespace

Rule validate_rule(const Rule& c) {
  for (const auto* g : {&c.K, &c.R, &c.Lp, &c.Kp})
    if (!same_lattice(c.L->lattice(), (*g)->lattice()))
      fail(ErrorCode::LatticeMismatch, "rule graphs use different lattices");
  expect_arrow(c.l, c.K, c.L, "l");
  expect_arrow(c.r, c.K, c.R, "r");
  expect_arrow(c.tL, c.L, c.Lp, "tL");
  expect_arrow(c.tK, c.K, c.Kp, "tK");
  expect_arrow(c.lp, c.Kp, c.Lp, "lp");
  if (!commutes(c.tL, c.l, c.lp, c.tK)) fail(ErrorCode::NonCommuting, "tL∘l differs from lp∘tK");
  if (!is_pullback_square(c.tL, c.lp, c.l, c.tK))
    fail(ErrorCode::NotAPullback, "the square (l, tK) is not a pullback of (tL, lp)");
  return c;
}

bool is_strong_match(const Rule& rule, const Morphism& m, const Morphism& alpha) {
  if (!same_graph(m.dom(), rule.L) || !same_graph(alpha.cod(), rule.Lp) || !same_graph(m.cod(), alpha.dom()))
    return false;
  auto idL = identity(rule.L);
  if (!commutes(rule.tL, idL, alpha, m)) return false;
  return is_pullback_square(rule.tL, alpha, idL, m);
}

namespace {

bool matches_constraint(const Morphism& m, MorphismClass c) {
  switch (c) {
    case MorphismClass::Any: return true;
    case MorphismClass::Mono: return is_mono(m);
    case MorphismClass::RegularMono: return is_regular_mono(m);
    case MorphismClass::Iso: return is_iso(m);
  }
  return false;
}

// α-first: every element of tL(L) must have exactly one preimage; m is then forced.
void adherence_first(const Rule& rule, const GraphPtr& GL, MorphismClass constraint,
                     const std::function<bool(const StrongMatch&)>& visit) {
  const Graph& L = *rule.L;
  const Graph& Lp = *rule.Lp;
  const Morphism& tL = rule.tL;
  SearchOptions opt;
  opt.exclusive_vertices.assign(Lp.num_vertices(), 0);
  opt.exclusive_edges.assign(Lp.num_edges(), 0);
  for (Index v : tL.vmap()) opt.exclusive_vertices[v] = 1;
  for (Index e : tL.emap()) opt.exclusive_edges[e] = 1;
  auto idL = identity(rule.L);
  bool go = true;
  for_each_morphism(GL, rule.Lp, opt, [&](const Morphism& alpha) {
    std::vector<Index> vpre(Lp.num_vertices(), kNone), epre(Lp.num_edges(), kNone);
    for (Index g = 0; g < alpha.vmap().size(); ++g) vpre[alpha.v(g)] = g;
    for (Index g = 0; g < alpha.emap().size(); ++g) epre[alpha.e(g)] = g;
    std::vector<Index> mv(L.num_vertices()), me(L.num_edges());
    for (Index x = 0; x < L.num_vertices(); ++x) {
      mv[x] = vpre[tL.v(x)];
      if (mv[x] == kNone) return true;
    }
    for (Index x = 0; x < L.num_edges(); ++x) {
      me[x] = epre[tL.e(x)];
      if (me[x] == kNone) return true;
    }
    // The pullback of (tL, α) decides; its first projection must be an iso.
    auto pb = pullback(tL, alpha);
    if (!is_iso(pb.p1)) return true;
    auto m = compose(pb.p2, inverse(pb.p1));
    if (!matches_constraint(m, constraint)) return true;
    go = visit({m, alpha});
    return go;
  });
}

void match_first(const Rule& rule, const GraphPtr& GL, MorphismClass constraint,
                 const std::function<bool(const StrongMatch&)>& visit) {
  const Graph& L = *rule.L;
  const Graph& Lp = *rule.Lp;
  const Morphism& tL = rule.tL;
  std::vector<char> in_image_v(Lp.num_vertices(), 0), in_image_e(Lp.num_edges(), 0);
  for (Index v : tL.vmap()) in_image_v[v] = 1;
  for (Index e : tL.emap()) in_image_e[e] = 1;
  SearchOptions mopt;
  mopt.constraint = constraint == MorphismClass::Iso ? MorphismClass::Iso : constraint;
  bool go = true;
  for_each_morphism(rule.L, GL, mopt, [&](const Morphism& m) {
    SearchOptions aopt;
    aopt.vertex_seed.assign(GL->num_vertices(), std::nullopt);
    aopt.edge_seed.assign(GL->num_edges(), std::nullopt);
    for (Index x = 0; x < L.num_vertices(); ++x) {
      auto& slot = aopt.vertex_seed[m.v(x)];
      if (slot && *slot != tL.v(x)) return true;
      slot = tL.v(x);
    }
    for (Index x = 0; x < L.num_edges(); ++x) {
      auto& slot = aopt.edge_seed[m.e(x)];
      if (slot && *slot != tL.e(x)) return true;
      slot = tL.e(x);
    }
    aopt.vertex_ok = [&](Index, Index y) { return !in_image_v[y]; };
    aopt.edge_ok = [&](Index, Index y) { return !in_image_e[y]; };
    for_each_morphism(GL, rule.Lp, aopt, [&](const Morphism& alpha) {
      if (!is_strong_match(rule, m, alpha)) return true;
      go = visit({m, alpha});
      return go;
    });
    return go;
  });
}

}  // namespace

void for_each_strong_match(const Rule& rule, const GraphPtr& GL, MorphismClass constraint, MatchOrder order,
                           const std::function<bool(const StrongMatch&)>& visit) {
  if (!same_lattice(rule.L->lattice(), GL->lattice()))
    fail(ErrorCode::LatticeMismatch, "host and rule use different lattices");
  if (order == MatchOrder::AdherenceFirst) adherence_first(rule, GL, constraint, visit);
  else match_first(rule, GL, constraint, visit);
}

std::vector<StrongMatch> find_strong_matches(const Rule& rule, const GraphPtr& GL, MorphismClass constraint,
                                             MatchOrder order) {
  std::vector<StrongMatch> out;
  for_each_strong_match(rule, GL, constraint, order, [&](const StrongMatch& sm) {
    out.push_back(sm);
    return true;
  });
  return out;
}

StepResult apply_step(const Rule& rule, const GraphPtr& GL, const Morphism& m, const Morphism& alpha,
                      const StepOptions& options) {
  if (!same_graph(m.cod(), GL) || !same_graph(alpha.dom(), GL) || !is_strong_match(rule, m, alpha))
    fail(ErrorCode::NotAStrongMatch, "(m, alpha) is not a strong match for this rule and host");
  auto middle = pullback(alpha, rule.lp);
  auto u = mediating_into_pullback(alpha, rule.lp, middle.p1, middle.p2, compose(m, rule.l), rule.tK);
  auto right = pushout(rule.r, u);
  StepResult s{GL,       middle.object, right.object, m, alpha, middle.p1, right.q2, u, middle.p2,
               right.q1, std::nullopt,  std::nullopt, std::nullopt, std::nullopt};

  if (options.host_ids) {
    auto GK = host_named_gk(s);
    s.GK = GK;
    auto GR = host_named_gr(s);
    s.gL = s.gL.retarget(GK, s.GL);
    s.up = s.up.retarget(GK, s.up.cod());
    s.u = s.u.retarget(rule.K, GK);
    s.gR = s.gR.retarget(GK, GR);
    s.w = s.w.retarget(rule.R, GR);
    s.GR = GR;
  }

  if (options.bottom_right) {
    auto br = pushout(rule.tK, rule.r);
    s.Rp = br.object;
    s.rp = br.q1;
    s.tR = br.q2;
    s.wp = mediating_from_pushout(rule.r, s.u, s.w, s.gR, br.q2, compose(br.q1, s.up));
  }

  for (const auto& c : certify_step(rule, s))
    if (!c.ok) fail(ErrorCode::CertificateFailure, "step certificate failed: " + c.name);
  return s;
}

std::vector<Certificate> certify_step(const Rule& rule, const StepResult& s) {
  std::vector<Certificate> out;
  auto check = [&](const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    try {
      ok = body();
    } catch (const Error&) {
      ok = false;
    }
    out.push_back({name, ok});
  };
  auto idL = identity(rule.L);
  auto idK = identity(rule.K);
  check("strong-match-pullback", [&] { return is_pullback_square(rule.tL, s.alpha, idL, s.m); });
  check("middle-pullback", [&] { return is_pullback_square(s.alpha, rule.lp, s.gL, s.up); });
  check("right-pushout", [&] { return is_pushout_square(rule.r, s.u, s.w, s.gR); });
  check("u-left-pullback", [&] { return is_pullback_square(s.m, s.gL, rule.l, s.u); });
  check("u-typing-pullback", [&] { return is_pullback_square(rule.tK, s.up, idK, s.u); });
  if (s.Rp && s.rp && s.tR && s.wp) {
    check("bottom-right-pushout", [&] { return is_pushout_square(s.up, s.gR, *s.rp, *s.wp); });
    check("tR-factors", [&] { return compose(*s.wp, s.w) == *s.tR; });
  }
  return out;
}

Trace rewrite_closure(const GraphPtr& G, const std::vector<Rule>& rules, const Strategy& strategy,
                      std::size_t max_steps, MorphismClass constraint) {
  Trace trace;
  trace.start = G;
  trace.result = G;
  std::mt19937_64 rng(strategy.seed);
  std::size_t next_rule = 0;
  while (true) {
    if (trace.steps.size() >= max_steps) {
      trace.budget_exhausted = true;
      break;
    }
    std::optional<TraceEntry> chosen;
    if (strategy.kind == StrategyKind::Random) {
      std::vector<std::pair<std::size_t, std::size_t>> where;
      std::vector<StrongMatch> all;
      for (std::size_t i = 0; i < rules.size(); ++i) {
        auto ms = find_strong_matches(rules[i], trace.result, constraint);
        for (std::size_t k = 0; k < ms.size(); ++k) {
          where.emplace_back(i, k);
          all.push_back(ms[k]);
        }
      }
      if (!all.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
        std::size_t c = pick(rng);
        auto& rule = rules[where[c].first];
        chosen = TraceEntry{where[c].first, where[c].second,
                            apply_step(rule, trace.result, all[c].m, all[c].alpha)};
      }
    } else {
      // First restarts at rule 0; All continues round-robin after the last rule applied.
      std::size_t start = strategy.kind == StrategyKind::All ? next_rule : 0;
      for (std::size_t k = 0; k < rules.size() && !chosen; ++k) {
        std::size_t i = (start + k) % rules.size();
        std::optional<StrongMatch> first;
        for_each_strong_match(rules[i], trace.result, constraint, MatchOrder::AdherenceFirst,
                              [&](const StrongMatch& sm) {
                                first = sm;
                                return false;
                              });
        if (first) {
          chosen = TraceEntry{i, 0, apply_step(rules[i], trace.result, first->m, first->alpha)};
          next_rule = (i + 1) % rules.size();
        }
      }
    }
    if (!chosen) break;
    trace.result = chosen->step.GR;
    trace.steps.push_back(std::move(*chosen));
  }
  return trace;
}

DeterminismCertificate determinism_certificate(const Rule& rule) {
  if (!rule.L->lattice()->is_heyting())
    fail(ErrorCode::NonHeytingLattice, "determinism certificates need a Heyting lattice");
  auto cert = restricted_classifier_certificate(rule.tL);
  return {cert.is_classifying, cert.reason, cert.witness};
}

}  // namespace pbpo
