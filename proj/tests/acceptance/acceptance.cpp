// One PASS/FAIL line per acceptance criterion. Optional arguments select criteria by number.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"

using namespace pbpo;
using namespace pbpo::testing;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool certified_ok(const std::vector<Certificate>& certs, std::string& failed) {
  for (const auto& c : certs)
    if (!c.ok) {
      failed = c.name;
      return false;
    }
  return certs.size() >= 5;
}

// 1. Every step of 200 random rules passes the square certificates.
Outcome step_certificates() {
  Rng rng(1001);
  std::vector<LatticePtr> lats{Lattice::unit(), Lattice::chain(3), Lattice::powerset({"1", "2"}),
                               Lattice::flat({"a", "b"})};
  std::size_t rules = 0, steps = 0, failures = 0, hosts = 0;
  std::string first;
  for (const auto& lat : lats) {
    std::size_t made = 0;
    while (made < 50) {
      auto rule = random_rule(rng, lat, RuleShape{4, 5});
      if (!rule) continue;
      ++made;
      ++rules;
      std::vector<GraphPtr> gs;
      for (int i = 0; i < 3; ++i) gs.push_back(host_with_match(rng, *rule, 5, 7));
      gs.push_back(random_graph(rng, lat, 5, 6));
      for (const auto& G : gs) {
        ++hosts;
        for (const auto& sm : find_strong_matches(*rule, G)) {
          auto step = apply_step(*rule, G, sm.m, sm.alpha);
          std::string failed;
          ++steps;
          if (!certified_ok(certify_step(*rule, step), failed)) {
            ++failures;
            if (first.empty()) first = failed;
          }
        }
      }
    }
  }
  Outcome o;
  o.pass = failures == 0 && steps > 0;
  o.detail = fmt("%zu rules, %zu hosts, %zu steps, %zu certificate failures", rules, hosts, steps, failures);
  if (!first.empty()) o.detail += "; first failing square: " + first;
  return o;
}

// 2. Classifying squares are pullbacks and unique; the edge-count law holds.
Outcome classifier_suite() {
  auto lat = Lattice::chain(2);
  auto graphs = all_graphs(lat, 3, 3);
  std::size_t law_bad = 0;
  for (const auto& G : graphs) {
    auto T = classify_object(G);
    auto n = G->num_vertices() + 1;
    if (T.T->num_edges() != G->num_edges() + n * n) ++law_bad;
  }
  // Codomains: every graph with at most one vertex and one edge, plus X itself and A itself.
  auto small = all_graphs(lat, 1, 1);
  std::size_t instances = 0, not_pb = 0, not_unique = 0;
  auto check = [&](const Morphism& m, const Morphism& f) {
    auto TB = classify_object(f.cod());
    auto phi = classify_partial(m, f, TB);
    ++instances;
    if (!is_pullback_square(phi, TB.eta, m, f)) ++not_pb;
    SearchOptions opts;
    std::size_t good = 0;
    for_each_morphism(m.cod(), TB.T, opts, [&](const Morphism& h) {
      if (commutes(h, m, TB.eta, f) && is_pullback_square(h, TB.eta, m, f)) ++good;
      return true;
    });
    if (good != 1) ++not_unique;
  };
  for (const auto& A : graphs) {
    // Regular subobjects of A, one per subgraph.
    std::vector<std::pair<std::vector<Index>, std::vector<Index>>> subs;
    const std::size_t nv = A->num_vertices(), ne = A->num_edges();
    for (std::size_t vm = 0; vm < (1u << nv); ++vm) {
      std::vector<Index> vs;
      for (Index v = 0; v < nv; ++v)
        if (vm >> v & 1) vs.push_back(v);
      std::vector<Index> allowed;
      for (Index e = 0; e < ne; ++e)
        if ((vm >> A->edge(e).src & 1) && (vm >> A->edge(e).tgt & 1)) allowed.push_back(e);
      for (std::size_t em = 0; em < (1u << allowed.size()); ++em) {
        std::vector<Index> es;
        for (std::size_t k = 0; k < allowed.size(); ++k)
          if (em >> k & 1) es.push_back(allowed[k]);
        subs.emplace_back(vs, es);
      }
    }
    for (const auto& [vs, es] : subs) {
      auto sub = subgraph(A, vs, es);
      const auto& m = sub.inclusion;
      check(m, identity(sub.graph));
      check(m, m);
      for (const auto& B : small)
        for (const auto& f : enumerate_morphisms(sub.graph, B)) check(m, f);
    }
  }
  Outcome o;
  o.pass = law_bad == 0 && not_pb == 0 && not_unique == 0;
  o.detail = fmt("%zu graphs, edge law violations %zu; %zu partial maps, %zu non-pullback, %zu non-unique", graphs.size(),
                 law_bad, instances, not_pb, not_unique);
  return o;
}

IsoClassSet plus_results(const Rule& rule, const GraphPtr& G, MorphismClass c) {
  IsoClassSet out;
  for (const auto& sm : find_strong_matches(rule, G, c)) out.insert(apply_step(rule, G, sm.m, sm.alpha).GR);
  return out;
}

// 3. DPO steps coincide with steps of the translated rule.
Outcome dpo_subsumption() {
  auto lat = Lattice::unit();
  auto parts = all_graphs(lat, 2, 2);
  auto hosts = all_graphs(lat, 3, 3);
  std::size_t rules = 0, comparisons = 0, bad = 0, steps = 0;
  for (const auto& K : parts)
    for (const auto& L : parts)
      for (const auto& l : enumerate_morphisms(K, L, MorphismClass::RegularMono))
        for (const auto& R : parts)
          for (const auto& r : enumerate_morphisms(K, R)) {
            DpoRule rule{L, K, R, l, r};
            auto tr = translate_dpo(rule);
            ++rules;
            for (const auto& G : hosts) {
              IsoClassSet ref;
              for (const auto& m : enumerate_morphisms(L, G, MorphismClass::RegularMono))
                if (auto s = dpo_step(rule, G, m)) {
                  ref.insert(s->GR);
                  ++steps;
                }
              ++comparisons;
              if (!(ref == plus_results(tr, G, MorphismClass::RegularMono))) ++bad;
            }
          }
  Outcome o;
  o.pass = bad == 0;
  o.detail = fmt("%zu rules x %zu hosts = %zu comparisons, %zu DPO steps, %zu discrepancies", rules, hosts.size(),
                 comparisons, steps, bad);
  return o;
}

// 4. AGREE steps coincide with steps of the translated rule; one adherence per match.
Outcome agree_subsumption() {
  auto lat = Lattice::chain(2);
  auto parts = all_graphs(lat, 2, 2);
  auto tiny = all_graphs(lat, 1, 1);
  auto hosts = all_graphs(lat, 3, 3);
  std::size_t rules = 0, comparisons = 0, bad = 0, adherence_bad = 0, matches = 0;
  auto run_rule = [&](const AgreeRule& rule) {
    auto tr = translate_agree(rule);
    ++rules;
    for (const auto& G : hosts) {
      IsoClassSet ref, got;
      std::map<std::pair<std::vector<Index>, std::vector<Index>>, std::size_t> alphas;
      for (const auto& m : enumerate_morphisms(rule.L, G, MorphismClass::RegularMono)) {
        ref.insert(agree_step(rule, G, m).GR);
        alphas[{m.vmap(), m.emap()}] = 0;
      }
      // tL = η_L is a restricted classifier, so the match-first order applies.
      for (const auto& sm : find_strong_matches(tr, G, MorphismClass::RegularMono, MatchOrder::MatchFirst)) {
        got.insert(apply_step(tr, G, sm.m, sm.alpha).GR);
        alphas[{sm.m.vmap(), sm.m.emap()}]++;
      }
      for (const auto& [k, n] : alphas) {
        ++matches;
        if (n != 1) ++adherence_bad;
      }
      ++comparisons;
      if (!(ref == got)) ++bad;
    }
  };
  // Left-hand sides and interfaces range over all graphs up to two vertices and two edges;
  // right-hand sides and K' over one vertex and one edge beyond K.
  for (const auto& K : parts)
    for (const auto& L : parts) {
      auto ls = enumerate_morphisms(K, L);
      if (ls.empty()) continue;
      const auto& l = ls.front();
      // Right-hand side: K itself, or K plus one fresh vertex of each label.
      std::vector<Morphism> rs{identity(K)};
      for (const auto& X : tiny) {
        if (X->num_vertices() != 1 || X->num_edges() != 0) continue;
        Graph R(lat);
        for (const auto& v : K->vertices()) R.add_vertex(v.id, v.label);
        for (const auto& e : K->edges()) R.add_edge(e.id, e.src, e.tgt, e.label);
        R.add_vertex("fresh", X->vlabel(0));
        auto RP = share(std::move(R));
        std::vector<Index> vm(K->num_vertices()), em(K->num_edges());
        for (Index i = 0; i < vm.size(); ++i) vm[i] = i;
        for (Index i = 0; i < em.size(); ++i) em[i] = i;
        rs.emplace_back(K, RP, vm, em);
      }
      // Context type: K itself, or the classifier of K.
      auto TK = classify_object(K);
      std::vector<Morphism> tks{identity(K), TK.eta};
      for (const auto& r : rs)
        for (const auto& tK : tks) run_rule(AgreeRule{L, K, r.cod(), tK.cod(), l, r, tK});
    }
  Outcome o;
  o.pass = bad == 0 && adherence_bad == 0;
  o.detail = fmt("%zu rules x %zu hosts = %zu comparisons, %zu discrepancies; %zu regular-mono matches, %zu without "
                 "exactly one adherence",
                 rules, hosts.size(), comparisons, bad, matches, adherence_bad);
  return o;
}

// 5. The compacted family simulates a PBPO rule.
Outcome pbpo_subsumption() {
  Rng rng(5005);
  std::vector<LatticePtr> lats{Lattice::unit(), Lattice::chain(2)};
  std::map<const Lattice*, std::vector<GraphPtr>> hosts;
  hosts[lats[0].get()] = all_graphs(lats[0], 3, 3);
  hosts[lats[1].get()] = all_graphs(lats[1], 3, 2);
  std::size_t rules = 0, compacted = 0, comparisons = 0, bad = 0, steps = 0;
  while (rules < 50) {
    const auto& lat = lats[rules % 2];
    auto rule = random_pbpo_rule(rng, lat, 2, RuleShape{3, 3});
    if (!rule) continue;
    ++rules;
    auto family = compact_rules(*rule, CompactMode::Full);
    compacted += family.size();
    for (const auto& G : hosts[lat.get()]) {
      IsoClassSet ref, got;
      for (const auto& pm : find_pbpo_matches(*rule, G)) {
        ref.insert(pbpo_step(*rule, G, pm.m, pm.alpha).GR);
        ++steps;
      }
      for (const auto& r : family) {
        auto part = plus_results(r, G, MorphismClass::Any);
        for (const auto& g : part.members()) got.insert(g);
      }
      ++comparisons;
      if (!(ref == got)) ++bad;
    }
  }
  Outcome o;
  o.pass = bad == 0;
  o.detail = fmt("%zu rules (%zu compacted), %zu rule-host comparisons, %zu PBPO steps, %zu discrepancies", rules,
                 compacted, comparisons, steps, bad);
  return o;
}

// 6. Counterexample fixtures with exact counts.
Outcome counterexamples() {
  std::vector<std::string> problems;
  // (a) the PBPO fold deletes both loops; PBPO+ has no strong match.
  auto ex14 = fixture("example14");
  const auto& two = ex14.hosts[1];
  auto fold = pbpo_step(*ex14.pbpo, two, ex14.match->m, ex14.match->alpha);
  std::size_t plus = find_strong_matches(*ex14.rule, two).size();
  if (fold.GR->num_edges() != 0 || fold.GR->num_vertices() != 1) problems.push_back("(a) fold step result");
  if (plus != 0) problems.push_back("(a) strong matches on the two-loop host");
  // (b) vertex deletion matches exactly the edgeless hosts.
  auto p36 = fixture("prop36");
  std::size_t hosts = 0, matched = 0, edgeless = 0, mismatched = 0;
  for (const auto& G : all_graphs(Lattice::unit(), 3, 3)) {
    ++hosts;
    auto n = find_strong_matches(*p36.rule, G).size();
    bool expect = G->num_edges() == 0 && G->num_vertices() > 0;
    edgeless += expect;
    matched += n > 0;
    if ((n > 0) != expect || (expect && n != G->num_vertices())) ++mismatched;
  }
  if (mismatched) problems.push_back("(b) match/edgeless mismatch");
  // (c) four candidate v, one mediator.
  auto ru = fixture("remark-u");
  auto s = pbpo_step(*ru.pbpo, ru.hosts[0], ru.match->m, ru.match->alpha);
  std::size_t typed = 0, mediating = 0;
  for (const auto& v : enumerate_morphisms(ru.pbpo->K, s.GK)) {
    if (compose(s.up, v) != ru.pbpo->tK) continue;
    ++typed;
    if (compose(s.gL, v) == compose(ru.match->m, ru.pbpo->l)) ++mediating;
  }
  if (typed != 4 || mediating != 1) problems.push_back("(c) candidate counts");
  Outcome o;
  o.pass = problems.empty();
  o.detail = fmt("(a) PBPO fold leaves %zu edges, PBPO+ matches %zu; (b) %zu/%zu hosts matched, %zu edgeless nonempty; "
                 "(c) %zu typed v, %zu mediator",
                 fold.GR->num_edges(), plus, matched, hosts, edgeless, typed, mediating);
  for (const auto& p : problems) o.detail += "; " + p;
  return o;
}

// 7. Certified rules have one adherence per match.
Outcome determinism() {
  auto lat = Lattice::unit();
  auto hosts = all_graphs(lat, 4, 4);
  std::vector<std::pair<std::string, Rule>> rules;
  for (const auto& name : fixture_names()) {
    auto f = fixture(name);
    if (f.rule && f.rule->L->lattice()->is_heyting() && determinism_certificate(*f.rule).certified)
      rules.emplace_back(name, *f.rule);
  }
  bool ex4 = determinism_certificate(*fixture("example4").rule).certified;
  Rng rng(7007);
  std::size_t random_certified = 0;
  for (int i = 0; i < 400 && random_certified < 20; ++i) {
    auto r = random_rule(rng, lat, RuleShape{3, 4});
    if (r && determinism_certificate(*r).certified) {
      rules.emplace_back("random", *r);
      ++random_certified;
    }
  }
  std::size_t matches = 0, groups = 0, bad = 0;
  for (const auto& [name, rule] : rules)
    for (const auto& G : hosts) {
      std::map<std::pair<std::vector<Index>, std::vector<Index>>, std::size_t> by_m;
      for (const auto& sm : find_strong_matches(rule, G)) {
        ++matches;
        by_m[{sm.m.vmap(), sm.m.emap()}]++;
      }
      for (const auto& [k, n] : by_m) {
        ++groups;
        if (n != 1) ++bad;
      }
    }
  Outcome o;
  o.pass = ex4 && bad == 0 && matches > 0;
  o.detail = fmt("example4 %s; %zu certified rules (%zu random) x %zu hosts, %zu matches, %zu groups of size != 1",
                 ex4 ? "certified" : "NOT certified", rules.size(), random_certified, hosts.size(), matches, bad);
  (void)groups;
  return o;
}

// 8. Relabeling and term-variable fixtures.
Outcome section6_fixtures() {
  std::vector<std::string> problems;
  auto rl = fixture("relabel");
  const auto& lat = rl.rule->L->lattice();
  auto step = apply_step(*rl.rule, rl.hosts[0], rl.match->m, rl.match->alpha);
  const Graph& R = *step.GR;
  std::string got;
  if (R.num_vertices() == 2 && R.num_edges() == 1) {
    const Edge& e = R.edge(0);
    got = R.vertex(e.src).id + "^" + lat->name(R.vlabel(e.src)) + " -> " + R.vertex(e.tgt).id + "^" +
          lat->name(R.vlabel(e.tgt));
  }
  if (got != "x^c -> z^b") problems.push_back("relabel result '" + got + "'");

  auto var = fixture("variables");
  auto trace = rewrite_closure(var.hosts[0], {*var.rule}, Strategy{}, 10);
  const Graph& T = *trace.result;
  const auto& tl = T.lattice();
  std::map<std::string, int> labels;
  for (const auto& v : T.vertices()) labels[tl->name(v.label)]++;
  // h(g(x), g(y), x) with x = p(q) and y = b: the subtree x appears twice.
  std::size_t hv = 0;
  for (Index v = 0; v < T.num_vertices(); ++v)
    if (tl->name(T.vlabel(v)) == "h") hv = v;
  std::map<std::string, int> root_args;
  for (const auto& e : T.edges())
    if (e.src == hv) root_args[tl->name(e.label) + ":" + tl->name(T.vlabel(e.tgt))]++;
  bool shape = trace.steps.size() == 1 && !trace.budget_exhausted && T.num_vertices() == 8 && T.num_edges() == 7 &&
               labels["h"] == 1 && labels["g"] == 2 && labels["p"] == 2 && labels["q"] == 2 && labels["b"] == 1 &&
               root_args["1:g"] == 1 && root_args["2:g"] == 1 && root_args["3:p"] == 1;
  if (!shape) problems.push_back("variables shape");
  Outcome o;
  o.pass = problems.empty();
  o.detail = fmt("relabel gives %s; variables: %zu step(s), %zu vertices, %zu edges", got.c_str(), trace.steps.size(),
                 T.num_vertices(), T.num_edges());
  for (const auto& p : problems) o.detail += "; " + p;
  return o;
}

// 9. Quasitopos laws on chain(2) and the flat-lattice Heyting check.
Outcome quasitopos_laws() {
  Rng rng(9009);
  auto lat = Lattice::chain(2);
  std::size_t lemma = 0, lemma_bad = 0, pb_stable = 0, pb_bad = 0, po_stable = 0, po_bad = 0;
  while (lemma < 500) {
    auto B = random_graph(rng, lat, 4, 4, 1);
    auto A = random_graph(rng, lat, 3, 3);
    auto m = random_morphism(rng, A, B, MorphismClass::RegularMono);
    auto C = random_graph(rng, lat, 3, 4, 1);
    auto g = random_morphism(rng, A, C);
    if (!m || !g) continue;
    ++lemma;
    auto po = pushout(*m, *g);
    if (!is_pullback_square(po.q1, po.q2, *m, *g)) ++lemma_bad;
    ++po_stable;
    if (!is_regular_mono(po.q2)) ++po_bad;
  }
  while (pb_stable < 500) {
    auto C = random_graph(rng, lat, 4, 4, 1);
    auto A = random_graph(rng, lat, 3, 3);
    auto B = random_graph(rng, lat, 3, 4);
    auto m = random_morphism(rng, A, C, MorphismClass::RegularMono);
    auto f = random_morphism(rng, B, C);
    if (!m || !f) continue;
    ++pb_stable;
    auto pb = pullback(*m, *f);
    if (!is_regular_mono(pb.p2)) ++pb_bad;
  }
  bool flat_ab = Lattice::flat({"a", "b"})->is_heyting();
  bool flat_abc = Lattice::flat({"a", "b", "c"})->is_heyting();
  bool laws = lemma_bad == 0 && pb_bad == 0 && po_bad == 0;
  Outcome o;
  o.pass = laws && !flat_ab && !flat_abc;
  o.detail = fmt("pushouts along regular monos are pullbacks %zu/%zu; regular monos stable under pullback %zu/%zu and "
                 "pushout %zu/%zu; is_heyting(flat{a,b}) = %s, is_heyting(flat{a,b,c}) = %s",
                 lemma - lemma_bad, lemma, pb_stable - pb_bad, pb_stable, po_stable - po_bad, po_stable,
                 flat_ab ? "true" : "false", flat_abc ? "true" : "false");
  if (laws && flat_ab && !flat_abc)
    o.detail += ". Expected false for flat{a,b}, but ⊥ < a,b < ⊤ with a, b incomparable is the four-element Boolean "
                "algebra, which is distributive; the check is left failing rather than forced";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"step certificates on random rules", step_certificates},
      {"classifier pullback, uniqueness and edge law", classifier_suite},
      {"DPO steps equal translated PBPO+ steps", dpo_subsumption},
      {"AGREE steps equal translated PBPO+ steps", agree_subsumption},
      {"PBPO steps equal compacted PBPO+ steps", pbpo_subsumption},
      {"counterexample fixtures", counterexamples},
      {"determinism of certified rules", determinism},
      {"relabeling and variables fixtures", section6_fixtures},
      {"quasitopos laws and Heyting check", quasitopos_laws},
  };
  std::set<std::size_t> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoul(argv[i]));
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!only.empty() && !only.count(i + 1)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && o.pass;
    std::printf("[%s] %zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
