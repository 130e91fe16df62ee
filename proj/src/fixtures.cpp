#include "pbpo/fixtures.hpp"

#include <functional>
#include <map>

#include "pbpo/error.hpp"

namespace pbpo {

namespace {

struct V {
  std::string id;
  std::string label = "_bot";
};

struct E {
  std::string id, src, tgt;
  std::string label = "_bot";
};

GraphPtr graph(const LatticePtr& lat, const std::vector<V>& vs, const std::vector<E>& es = {}) {
  Graph g(lat);
  for (const auto& v : vs) g.add_vertex(v.id, lat->label(v.label));
  for (const auto& e : es) g.link(e.id, e.src, e.tgt, lat->label(e.label));
  return share(std::move(g));
}

using IdMap = std::map<std::string, std::string>;

// Unlisted elements keep their id when the codomain has it; other edges are inferred.
Morphism arrow(const GraphPtr& dom, const GraphPtr& cod, IdMap vs = {}, IdMap es = {}) {
  for (const auto& v : dom->vertices())
    if (!vs.count(v.id) && cod->find_vertex(v.id)) vs[v.id] = v.id;
  for (const auto& e : dom->edges())
    if (!es.count(e.id) && cod->find_edge(e.id)) es[e.id] = e.id;
  return Morphism::from_ids(dom, cod, vs, es);
}

Rule pbpo_plus(const GraphPtr& L, const GraphPtr& K, const GraphPtr& R, const GraphPtr& Lp, const GraphPtr& Kp,
               const Morphism& l, const Morphism& r, const Morphism& lp) {
  return validate_rule(Rule{L, K, R, Lp, Kp, l, r, arrow(L, Lp), arrow(K, Kp), lp});
}

Fixture example4_base(const std::string& name) {
  auto lat = Lattice::unit();
  auto L = graph(lat, {{"x12"}, {"y"}}, {{"e", "x12", "y"}});
  auto K = graph(lat, {{"x1"}, {"x2"}, {"y"}});
  auto R = graph(lat, {{"x1y"}, {"x2"}, {"u"}}, {{"loop", "x2", "x2"}});
  auto Lp = graph(lat, {{"x12"}, {"y"}, {"z"}},
                  {{"e", "x12", "y"}, {"yx", "y", "x12"}, {"zx", "z", "x12"}, {"zz", "z", "z"}, {"yz", "y", "z"}});
  auto Kp = graph(lat, {{"x1"}, {"x2"}, {"y"}, {"z"}},
                  {{"yx2a", "y", "x2"}, {"yx2b", "y", "x2"}, {"zz", "z", "z"}, {"zx1", "z", "x1"}});
  IdMap fold{{"x1", "x12"}, {"x2", "x12"}};
  auto l = arrow(K, L, fold);
  auto r = arrow(K, R, {{"x1", "x1y"}, {"y", "x1y"}});
  auto lp = arrow(Kp, Lp, fold, {{"yx2a", "yx"}, {"yx2b", "yx"}, {"zx1", "zx"}});

  auto GL = graph(lat, {{"x12"}, {"y"}, {"z1"}, {"z2"}, {"z3"}},
                  {{"e", "x12", "y"},
                   {"z1x", "z1", "x12"},
                   {"z2z1", "z2", "z1"},
                   {"z2x", "z2", "x12"},
                   {"z1z2", "z1", "z2"},
                   {"yxa", "y", "x12"},
                   {"yxb", "y", "x12"},
                   {"yz2", "y", "z2"}});
  Fixture f;
  f.name = name;
  f.format = "pbpo+";
  f.rule = pbpo_plus(L, K, R, Lp, Kp, l, r, lp);
  f.hosts = {GL};
  f.match = StrongMatch{arrow(L, GL), arrow(GL, Lp, {{"z1", "z"}, {"z2", "z"}, {"z3", "z"}})};
  return f;
}

Fixture example4() {
  auto f = example4_base("example4");
  f.summary = "fold-and-merge rule over unlabeled graphs with a typed context";
  return f;
}

Fixture example6() {
  auto f = example4_base("example6");
  f.summary = "the fold-and-merge rule applied to a host with three context vertices";
  return f;
}

Fixture example14() {
  auto lat = Lattice::unit();
  auto L = graph(lat, {{"x"}}, {{"loop", "x", "x"}});
  auto K = graph(lat, {{"x"}});
  auto R = graph(lat, {{"x"}});
  auto Lp = graph(lat, {{"x"}, {"y"}}, {{"loop", "x", "x"}, {"yloop", "y", "y"}});
  auto Kp = graph(lat, {{"x"}, {"y"}}, {{"yloop", "y", "y"}});
  Fixture f;
  f.name = "example14";
  f.summary = "remove the loop of an isolated vertex that has exactly one loop";
  f.format = "pbpo+";
  f.rule = pbpo_plus(L, K, R, Lp, Kp, arrow(K, L), arrow(K, R), arrow(Kp, Lp));
  f.pbpo = pbpo_view(*f.rule);
  f.hosts = {graph(lat, {{"a"}}, {{"aa", "a", "a"}}),
             graph(lat, {{"a"}}, {{"aa1", "a", "a"}, {"aa2", "a", "a"}}),
             graph(lat, {{"a"}, {"b"}}, {{"aa", "a", "a"}, {"bb", "b", "b"}}),
             graph(lat, {{"a"}, {"b"}, {"c"}}, {{"aa", "a", "a"}, {"bc", "b", "c"}, {"cb", "c", "b"}})};
  // The non-strong fold of the two-loop vertex that a PBPO match may use.
  const auto& G = f.hosts[1];
  f.match = StrongMatch{arrow(L, G, {{"x", "a"}}, {{"loop", "aa1"}}),
                        arrow(G, Lp, {{"a", "x"}}, {{"aa1", "loop"}, {"aa2", "loop"}})};
  return f;
}

Fixture example15() {
  auto lat = Lattice::unit();
  auto L = graph(lat, {{"x"}, {"y"}}, {{"xy", "x", "y"}, {"yx", "y", "x"}});
  auto K = graph(lat, {{"x"}, {"y"}, {"xp"}}, {{"xy", "x", "y"}, {"yx", "y", "x"}, {"xpy", "xp", "y"}});
  auto R = graph(lat, {{"x"}, {"yxp"}}, {{"xy", "x", "yxp"}, {"yx", "yxp", "x"}, {"loop", "yxp", "yxp"}});
  auto Lp = graph(lat, {{"x"}, {"y"}}, {{"xy", "x", "y"}, {"yx", "y", "x"}});
  auto Kp = graph(lat, {{"x"}, {"y"}, {"xp"}}, {{"xy", "x", "y"}, {"yx", "y", "x"}, {"xpy", "xp", "y"}});
  auto l = arrow(K, L, {{"xp", "x"}}, {{"xpy", "xy"}});
  auto r = arrow(K, R, {{"y", "yxp"}, {"xp", "yxp"}}, {{"xpy", "loop"}});
  auto lp = arrow(Kp, Lp, {{"xp", "x"}}, {{"xpy", "xy"}});
  auto GL = graph(lat, {{"x"}, {"y"}, {"x1"}, {"y1"}, {"x2"}},
                  {{"xy", "x", "y"}, {"yx", "y", "x"}, {"yx1", "y", "x1"}, {"x1y1", "x1", "y1"}, {"y1x2", "y1", "x2"}});
  Fixture f;
  f.name = "example15";
  f.summary = "a host spiralled over the pattern; the pullback duplicates every element over x";
  f.format = "pbpo";
  f.rule = pbpo_plus(L, K, R, Lp, Kp, l, r, lp);
  f.pbpo = pbpo_view(*f.rule);
  f.hosts = {GL};
  f.match = StrongMatch{arrow(L, GL), arrow(GL, Lp, {{"x1", "x"}, {"y1", "y"}, {"x2", "x"}},
                                           {{"yx1", "yx"}, {"x1y1", "xy"}, {"y1x2", "yx"}})};
  return f;
}

Fixture relabel() {
  auto lat = Lattice::flat({"a", "b", "c"});
  auto L = graph(lat, {{"x"}});
  auto K = graph(lat, {{"x"}});
  auto R = graph(lat, {{"x", "c"}});
  std::vector<E> ctx{{"xx", "x", "x", "_top"}, {"zz", "z", "z", "_top"}, {"xz", "x", "z", "_top"}, {"zx", "z", "x", "_top"}};
  auto Lp = graph(lat, {{"x", "_top"}, {"z", "_top"}}, ctx);
  auto Kp = graph(lat, {{"x"}, {"z", "_top"}}, ctx);
  Fixture f;
  f.name = "relabel";
  f.summary = "overwrite the label of an arbitrary vertex with c, in any context";
  f.format = "pbpo+";
  f.rule = pbpo_plus(L, K, R, Lp, Kp, arrow(K, L), arrow(K, R), arrow(Kp, Lp));
  auto G = graph(lat, {{"x", "a"}, {"z", "b"}}, {{"e", "x", "z"}});
  f.hosts = {G};
  f.match = StrongMatch{arrow(L, G), arrow(G, Lp, {}, {{"e", "xz"}})};
  return f;
}

LatticePtr sorts_lattice() {
  return Lattice::explicit_order(
      {"bot", "p1", "p2", "d1", "d2", "P", "D", "|>", "@", "top"},
      {{"bot", "p1"}, {"bot", "p2"}, {"bot", "d1"}, {"bot", "d2"}, {"bot", "|>"}, {"bot", "@"}, {"p1", "P"},
       {"p2", "P"}, {"d1", "D"}, {"d2", "D"}, {"P", "top"}, {"D", "top"}, {"|>", "top"}, {"@", "top"}});
}

Fixture sorts() {
  auto lat = sorts_lattice();
  auto L = graph(lat, {{"x12"}, {"y"}}, {{"e", "x12", "y", "|>"}});
  auto K = graph(lat, {{"x1"}, {"y"}, {"x2"}});
  auto R = graph(lat, {{"x1y"}, {"x2"}}, {{"at", "x2", "x1y", "@"}});
  auto Lp = graph(lat, {{"x12", "D"}, {"y", "P"}, {"z", "top"}},
                  {{"e", "x12", "y", "|>"},
                   {"zz", "z", "z", "top"},
                   {"zx", "z", "x12", "top"},
                   {"zy", "z", "y", "top"},
                   {"yz", "y", "z", "top"}});
  auto Kp = graph(lat, {{"x1"}, {"y", "P"}, {"z", "top"}, {"x2", "D"}},
                  {{"zz", "z", "z", "top"}, {"zx1", "z", "x1", "top"}, {"zy", "z", "y", "top"}, {"yz", "y", "z", "top"}});
  IdMap fold{{"x1", "x12"}, {"x2", "x12"}};
  auto l = arrow(K, L, fold);
  auto r = arrow(K, R, {{"x1", "x1y"}, {"y", "x1y"}});
  auto lp = arrow(Kp, Lp, fold, {{"zx1", "zx"}});
  // Process p1 sends datum d1 to process p2.
  auto G = graph(lat, {{"a", "p1"}, {"b", "d1"}, {"c", "p2"}}, {{"ab", "a", "b", "|>"}, {"bc", "b", "c", "|>"}});
  Fixture f;
  f.name = "sorts";
  f.summary = "receive the last datum of a FIFO channel and store it locally";
  f.format = "pbpo+";
  f.rule = pbpo_plus(L, K, R, Lp, Kp, l, r, lp);
  f.hosts = {G};
  f.match = StrongMatch{arrow(L, G, {{"x12", "b"}, {"y", "c"}}, {{"e", "bc"}}),
                        arrow(G, Lp, {{"a", "z"}, {"b", "x12"}, {"c", "y"}}, {{"ab", "zx"}, {"bc", "e"}})};
  return f;
}

LatticePtr term_lattice() { return Lattice::flat({"f", "g", "h", "p", "q", "b", "1", "2", "3"}); }

Fixture variables() {
  auto lat = term_lattice();
  auto L = graph(lat, {{"v", "f"}, {"w", "g"}, {"y"}, {"x12"}},
                 {{"e1", "v", "w", "1"}, {"e2", "w", "x12", "1"}, {"e3", "v", "y", "2"}});
  auto K = graph(lat, {{"v"}, {"y"}, {"x1"}, {"x2"}});
  auto R = graph(lat, {{"v", "h"}, {"z1", "g"}, {"z2", "g"}, {"x1"}, {"x2"}, {"y"}},
                 {{"r1", "v", "z1", "1"}, {"r2", "v", "z2", "2"}, {"r3", "v", "x2", "3"}, {"r4", "z1", "x1", "1"},
                  {"r5", "z2", "y", "1"}});
  auto Lp = graph(lat,
                  {{"u", "_top"}, {"v", "f"}, {"w", "g"}, {"y", "_top"}, {"x12", "_top"}, {"x12p", "_top"}, {"yp", "_top"}},
                  {{"uu", "u", "u", "_top"},
                   {"uv", "u", "v", "_top"},
                   {"e1", "v", "w", "1"},
                   {"e2", "w", "x12", "1"},
                   {"e3", "v", "y", "2"},
                   {"xx", "x12", "x12p", "_top"},
                   {"xpl", "x12p", "x12p", "_top"},
                   {"yy", "y", "yp", "_top"},
                   {"ypl", "yp", "yp", "_top"}});
  auto Kp = graph(lat,
                  {{"u", "_top"},
                   {"v"},
                   {"y", "_top"},
                   {"yp", "_top"},
                   {"x1", "_top"},
                   {"x2", "_top"},
                   {"x1p", "_top"},
                   {"x2p", "_top"}},
                  {{"uu", "u", "u", "_top"},
                   {"uv", "u", "v", "_top"},
                   {"yy", "y", "yp", "_top"},
                   {"ypl", "yp", "yp", "_top"},
                   {"x1x", "x1", "x1p", "_top"},
                   {"x1pl", "x1p", "x1p", "_top"},
                   {"x2x", "x2", "x2p", "_top"},
                   {"x2pl", "x2p", "x2p", "_top"}});
  auto l = arrow(K, L, {{"x1", "x12"}, {"x2", "x12"}});
  auto r = arrow(K, R);
  auto lp = arrow(Kp, Lp, {{"x1", "x12"}, {"x2", "x12"}, {"x1p", "x12p"}, {"x2p", "x12p"}},
                  {{"x1x", "xx"}, {"x2x", "xx"}, {"x1pl", "xpl"}, {"x2pl", "xpl"}});
  // f(g(p(q)), b)
  auto G = graph(lat, {{"n1", "f"}, {"n2", "g"}, {"n3", "p"}, {"n4", "q"}, {"n5", "b"}},
                 {{"a1", "n1", "n2", "1"}, {"a2", "n2", "n3", "1"}, {"a3", "n3", "n4", "1"}, {"a4", "n1", "n5", "2"}});
  Fixture f;
  f.name = "variables";
  f.summary = "the term rule f(g(x),y) -> h(g(x),g(y),x) on tree encodings";
  f.format = "pbpo+";
  f.rule = pbpo_plus(L, K, R, Lp, Kp, l, r, lp);
  f.hosts = {G};
  f.match = StrongMatch{
      arrow(L, G, {{"v", "n1"}, {"w", "n2"}, {"x12", "n3"}, {"y", "n5"}}, {{"e1", "a1"}, {"e2", "a2"}, {"e3", "a4"}}),
      arrow(G, Lp, {{"n1", "v"}, {"n2", "w"}, {"n3", "x12"}, {"n4", "x12p"}, {"n5", "y"}},
            {{"a1", "e1"}, {"a2", "e2"}, {"a3", "xx"}, {"a4", "e3"}})};
  return f;
}

Fixture prop36() {
  auto lat = Lattice::unit();
  auto L = graph(lat, {{"x"}});
  auto K = graph(lat, {});
  auto R = graph(lat, {});
  auto Lp = graph(lat, {{"x"}, {"y"}});
  auto Kp = graph(lat, {{"y"}});
  Fixture f;
  f.name = "prop36";
  f.summary = "delete a single vertex of a host graph that has no edges";
  f.format = "pbpo+";
  f.rule = pbpo_plus(L, K, R, Lp, Kp, arrow(K, L), arrow(K, R), arrow(Kp, Lp));
  f.hosts = {graph(lat, {{"a"}, {"b"}}), graph(lat, {{"a"}, {"b"}}, {{"ab", "a", "b"}})};
  return f;
}

Fixture agree_not_pbpo() {
  auto lat = Lattice::unit();
  auto L = graph(lat, {{"x"}});
  auto K = graph(lat, {});
  auto R = graph(lat, {});
  auto Kp = graph(lat, {{"y"}}, {{"yy", "y", "y"}});
  Fixture f;
  f.name = "agree-not-pbpo";
  f.summary = "AGREE deletion of one vertex with its incident edges, context preserved";
  f.format = "agree";
  f.agree = validate_agree_rule(AgreeRule{L, K, R, Kp, arrow(K, L), arrow(K, R), arrow(K, Kp)});
  auto G = graph(lat, {{"x"}, {"y"}});
  f.hosts = {G};
  return f;
}

Fixture remark_u() {
  auto lat = Lattice::unit();
  auto L = graph(lat, {{"x"}});
  auto K = graph(lat, {{"x1"}, {"x2"}});
  auto R = graph(lat, {{"x1"}, {"x2"}});
  auto Lp = graph(lat, {{"x"}});
  auto Kp = graph(lat, {{"x1"}, {"x2"}});
  IdMap fold{{"x1", "x"}, {"x2", "x"}};
  auto G = graph(lat, {{"a"}, {"b"}});
  Fixture f;
  f.name = "remark-u";
  f.summary = "PBPO step where several v: K -> G_K satisfy u'v = tK but one mediates";
  f.format = "pbpo";
  f.rule = pbpo_plus(L, K, R, Lp, Kp, arrow(K, L, fold), arrow(K, R), arrow(Kp, Lp, fold));
  f.pbpo = pbpo_view(*f.rule);
  f.hosts = {G};
  f.match = StrongMatch{arrow(L, G, {{"x", "a"}}), arrow(G, Lp, {{"a", "x"}, {"b", "x"}})};
  return f;
}

const std::map<std::string, std::function<Fixture()>>& registry() {
  static const std::map<std::string, std::function<Fixture()>> r{
      {"example4", example4}, {"example6", example6},   {"example14", example14},
      {"example15", example15}, {"relabel", relabel},   {"sorts", sorts},
      {"variables", variables}, {"prop36", prop36},     {"agree-not-pbpo", agree_not_pbpo},
      {"remark-u", remark_u}};
  return r;
}

}  // namespace

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"example4", "example6", "example14", "example15", "relabel",
                                              "sorts",    "variables", "prop36",   "agree-not-pbpo", "remark-u"};
  return names;
}

Fixture fixture(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end()) fail(ErrorCode::UnknownFixture, "unknown fixture '" + name + "'");
  return it->second();
}

json fixture_to_json(const Fixture& f) {
  json j;
  j["name"] = f.name;
  j["summary"] = f.summary;
  if (f.format == "agree") j["rule"] = agree_rule_to_json(*f.agree);
  else if (f.format == "pbpo") j["rule"] = pbpo_rule_to_json(*f.pbpo);
  else j["rule"] = rule_to_json(*f.rule);
  json hosts = json::array();
  for (const auto& g : f.hosts) hosts.push_back(graph_to_json(*g, true));
  j["hosts"] = hosts;
  if (f.match) j["match"] = match_to_json(*f.match);
  return j;
}

}  // namespace pbpo
