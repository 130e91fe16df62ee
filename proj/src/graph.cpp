#include "pbpo/graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "pbpo/error.hpp"

namespace pbpo {

namespace {

constexpr Index kNone = static_cast<Index>(-1);

}  // namespace

Graph::Graph(LatticePtr lattice) : lattice_(std::move(lattice)) {
  if (!lattice_) fail(ErrorCode::InvalidGraph, "graph needs a lattice");
}

Index Graph::add_vertex(std::string id, Label label) {
  if (!lattice_->contains(label)) fail(ErrorCode::UnknownLabel, "vertex '" + id + "' has a label outside the lattice");
  auto idx = static_cast<Index>(vertices_.size());
  if (!vertex_ids_.emplace(id, idx).second) fail(ErrorCode::InvalidGraph, "duplicate vertex id '" + id + "'");
  vertices_.push_back({std::move(id), label});
  return idx;
}

Index Graph::add_edge(std::string id, Index src, Index tgt, Label label) {
  if (src >= vertices_.size() || tgt >= vertices_.size())
    fail(ErrorCode::InvalidGraph, "edge '" + id + "' has a dangling endpoint");
  if (!lattice_->contains(label)) fail(ErrorCode::UnknownLabel, "edge '" + id + "' has a label outside the lattice");
  auto idx = static_cast<Index>(edges_.size());
  if (!edge_ids_.emplace(id, idx).second) fail(ErrorCode::InvalidGraph, "duplicate edge id '" + id + "'");
  edges_.push_back({std::move(id), src, tgt, label});
  return idx;
}

Index Graph::link(std::string id, std::string_view src, std::string_view tgt, Label label) {
  return add_edge(std::move(id), vertex_index(src), vertex_index(tgt), label);
}

std::optional<Index> Graph::find_vertex(std::string_view id) const {
  auto it = vertex_ids_.find(std::string(id));
  if (it == vertex_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<Index> Graph::find_edge(std::string_view id) const {
  auto it = edge_ids_.find(std::string(id));
  if (it == edge_ids_.end()) return std::nullopt;
  return it->second;
}

Index Graph::vertex_index(std::string_view id) const {
  auto v = find_vertex(id);
  if (!v) fail(ErrorCode::InvalidGraph, "unknown vertex '" + std::string(id) + "'");
  return *v;
}

Index Graph::edge_index(std::string_view id) const {
  auto e = find_edge(id);
  if (!e) fail(ErrorCode::InvalidGraph, "unknown edge '" + std::string(id) + "'");
  return *e;
}

void Graph::set_ids(std::vector<std::string> vertex_ids, std::vector<std::string> edge_ids) {
  if (vertex_ids.size() != vertices_.size() || edge_ids.size() != edges_.size())
    fail(ErrorCode::InvalidGraph, "id list size mismatch");
  std::unordered_map<std::string, Index> vids, eids;
  for (Index i = 0; i < vertex_ids.size(); ++i)
    if (!vids.emplace(vertex_ids[i], i).second)
      fail(ErrorCode::InvalidGraph, "duplicate vertex id '" + vertex_ids[i] + "'");
  for (Index i = 0; i < edge_ids.size(); ++i)
    if (!eids.emplace(edge_ids[i], i).second)
      fail(ErrorCode::InvalidGraph, "duplicate edge id '" + edge_ids[i] + "'");
  for (Index i = 0; i < vertex_ids.size(); ++i) vertices_[i].id = std::move(vertex_ids[i]);
  for (Index i = 0; i < edge_ids.size(); ++i) edges_[i].id = std::move(edge_ids[i]);
  vertex_ids_ = std::move(vids);
  edge_ids_ = std::move(eids);
}

std::size_t Graph::degree(Index v) const {
  std::size_t d = 0;
  for (const auto& e : edges_) d += (e.src == v) + (e.tgt == v);
  return d;
}

bool Graph::operator==(const Graph& other) const {
  if (this == &other) return true;
  if (!same_lattice(lattice_, other.lattice_)) return false;
  if (vertices_.size() != other.vertices_.size() || edges_.size() != other.edges_.size()) return false;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].id != other.vertices_[i].id || vertices_[i].label != other.vertices_[i].label)
      return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto &a = edges_[i], &b = other.edges_[i];
    if (a.id != b.id || a.src != b.src || a.tgt != b.tgt || a.label != b.label) return false;
  }
  return true;
}

GraphPtr share(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

bool same_graph(const GraphPtr& a, const GraphPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

Morphism::Morphism(GraphPtr dom, GraphPtr cod, std::vector<Index> vmap, std::vector<Index> emap)
    : dom_(std::move(dom)), cod_(std::move(cod)), vmap_(std::move(vmap)), emap_(std::move(emap)) {
  auto why = violation();
  if (!why.empty()) fail(ErrorCode::InvalidMorphism, why);
}

Morphism Morphism::trusted(GraphPtr dom, GraphPtr cod, std::vector<Index> vmap,
                           std::vector<Index> emap) {
  Morphism m;
  m.dom_ = std::move(dom);
  m.cod_ = std::move(cod);
  m.vmap_ = std::move(vmap);
  m.emap_ = std::move(emap);
  return m;
}

Morphism Morphism::from_ids(GraphPtr dom, GraphPtr cod,
                            const std::map<std::string, std::string>& vmap,
                            const std::map<std::string, std::string>& emap) {
  if (!dom || !cod) fail(ErrorCode::InvalidMorphism, "morphism needs a domain and a codomain");
  std::vector<Index> vs(dom->num_vertices(), kNone), es(dom->num_edges(), kNone);
  for (const auto& [a, b] : vmap) {
    auto x = dom->find_vertex(a);
    auto y = cod->find_vertex(b);
    if (!x || !y) fail(ErrorCode::InvalidMorphism, "vertex mapping " + a + " -> " + b + " names an unknown vertex");
    vs[*x] = *y;
  }
  for (Index i = 0; i < vs.size(); ++i)
    if (vs[i] == kNone) fail(ErrorCode::InvalidMorphism, "vertex '" + dom->vertex(i).id + "' is unmapped");
  for (const auto& [a, b] : emap) {
    auto x = dom->find_edge(a);
    auto y = cod->find_edge(b);
    if (!x || !y) fail(ErrorCode::InvalidMorphism, "edge mapping " + a + " -> " + b + " names an unknown edge");
    es[*x] = *y;
  }
  const auto& lat = *dom->lattice();
  for (Index i = 0; i < es.size(); ++i) {
    if (es[i] != kNone) continue;
    const auto& e = dom->edge(i);
    Index found = kNone;
    std::size_t count = 0;
    for (Index j = 0; j < cod->num_edges(); ++j) {
      const auto& f = cod->edge(j);
      if (f.src == vs[e.src] && f.tgt == vs[e.tgt] && lat.leq(e.label, f.label)) {
        found = j;
        ++count;
      }
    }
    if (count != 1)
      fail(ErrorCode::InvalidMorphism, "edge '" + e.id + "' is unmapped and cannot be inferred (" +
                                           std::to_string(count) + " candidates)");
    es[i] = found;
  }
  return Morphism(std::move(dom), std::move(cod), std::move(vs), std::move(es));
}

Morphism Morphism::retarget(GraphPtr dom, GraphPtr cod) const {
  return trusted(std::move(dom), std::move(cod), vmap_, emap_);
}

std::string Morphism::violation() const {
  if (!dom_ || !cod_) return "morphism needs a domain and a codomain";
  if (!same_lattice(dom_->lattice(), cod_->lattice())) return "domain and codomain use different lattices";
  if (vmap_.size() != dom_->num_vertices() || emap_.size() != dom_->num_edges())
    return "map sizes do not match the domain";
  const auto& lat = *dom_->lattice();
  for (Index v = 0; v < vmap_.size(); ++v) {
    if (vmap_[v] >= cod_->num_vertices()) return "vertex '" + dom_->vertex(v).id + "' maps outside the codomain";
    if (!lat.leq(dom_->vlabel(v), cod_->vlabel(vmap_[v])))
      return "vertex '" + dom_->vertex(v).id + "' is mapped to a lower label";
  }
  for (Index e = 0; e < emap_.size(); ++e) {
    if (emap_[e] >= cod_->num_edges()) return "edge '" + dom_->edge(e).id + "' maps outside the codomain";
    const auto& a = dom_->edge(e);
    const auto& b = cod_->edge(emap_[e]);
    if (vmap_[a.src] != b.src || vmap_[a.tgt] != b.tgt)
      return "edge '" + a.id + "' breaks source/target commutation";
    if (!lat.leq(a.label, b.label)) return "edge '" + a.id + "' is mapped to a lower label";
  }
  return {};
}

bool Morphism::operator==(const Morphism& other) const {
  return vmap_ == other.vmap_ && emap_ == other.emap_ && same_graph(dom_, other.dom_) &&
         same_graph(cod_, other.cod_);
}

Morphism identity(const GraphPtr& g) {
  std::vector<Index> vs(g->num_vertices()), es(g->num_edges());
  std::iota(vs.begin(), vs.end(), 0);
  std::iota(es.begin(), es.end(), 0);
  return Morphism::trusted(g, g, std::move(vs), std::move(es));
}

Morphism compose(const Morphism& g, const Morphism& f) {
  if (!same_graph(f.cod(), g.dom()))
    fail(ErrorCode::ComposabilityMismatch, "codomain of the first morphism is not the domain of the second");
  std::vector<Index> vs(f.vmap().size()), es(f.emap().size());
  for (Index i = 0; i < vs.size(); ++i) vs[i] = g.v(f.v(i));
  for (Index i = 0; i < es.size(); ++i) es[i] = g.e(f.e(i));
  return Morphism::trusted(f.dom(), g.cod(), std::move(vs), std::move(es));
}

Morphism initial_morphism(const GraphPtr& empty, const GraphPtr& cod) {
  if (!empty->empty()) fail(ErrorCode::InvalidMorphism, "initial morphism needs an empty domain");
  return Morphism(empty, cod, {}, {});
}

namespace {

bool injective(const std::vector<Index>& map, std::size_t cod_size) {
  std::vector<char> hit(cod_size, 0);
  for (Index x : map) {
    if (hit[x]) return false;
    hit[x] = 1;
  }
  return true;
}

bool surjective(const std::vector<Index>& map, std::size_t cod_size) {
  std::vector<char> hit(cod_size, 0);
  for (Index x : map) hit[x] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

bool label_preserving(const Morphism& f) {
  for (Index v = 0; v < f.vmap().size(); ++v)
    if (f.dom()->vlabel(v) != f.cod()->vlabel(f.v(v))) return false;
  for (Index e = 0; e < f.emap().size(); ++e)
    if (f.dom()->elabel(e) != f.cod()->elabel(f.e(e))) return false;
  return true;
}

}  // namespace

bool is_mono(const Morphism& f) {
  return injective(f.vmap(), f.cod()->num_vertices()) && injective(f.emap(), f.cod()->num_edges());
}

bool is_epi(const Morphism& f) {
  return surjective(f.vmap(), f.cod()->num_vertices()) && surjective(f.emap(), f.cod()->num_edges());
}

bool is_iso(const Morphism& f) { return is_mono(f) && is_epi(f) && label_preserving(f); }

bool is_regular_mono(const Morphism& f) { return is_mono(f) && label_preserving(f); }

Morphism inverse(const Morphism& iso) {
  if (!is_iso(iso)) fail(ErrorCode::InvalidMorphism, "only isomorphisms have inverses");
  std::vector<Index> vs(iso.vmap().size()), es(iso.emap().size());
  for (Index i = 0; i < vs.size(); ++i) vs[iso.v(i)] = i;
  for (Index i = 0; i < es.size(); ++i) es[iso.e(i)] = i;
  return Morphism::trusted(iso.cod(), iso.dom(), std::move(vs), std::move(es));
}

std::uint64_t enumeration_limit() {
  static const std::uint64_t limit = [] {
    const char* env = std::getenv("PBPO_MAX_ENUM");
    if (env != nullptr) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{10'000'000};
  }();
  return limit;
}

namespace {

class Search {
 public:
  Search(const GraphPtr& A, const GraphPtr& B, const SearchOptions& opt,
         const std::function<bool(const Morphism&)>& visit)
      : A_(A), B_(B), a_(*A), b_(*B), lat_(*A->lattice()), opt_(opt), visit_(visit) {
    limit_ = opt.max_expansions != 0 ? opt.max_expansions : enumeration_limit();
    injective_ = opt.constraint != MorphismClass::Any;
    exact_labels_ = opt.constraint == MorphismClass::RegularMono || opt.constraint == MorphismClass::Iso;
  }

  void run() {
    if (!same_lattice(a_.lattice(), b_.lattice()))
      fail(ErrorCode::LatticeMismatch, "morphism search across different lattices");
    if (opt_.constraint == MorphismClass::Iso &&
        (a_.num_vertices() != b_.num_vertices() || a_.num_edges() != b_.num_edges()))
      return;
    if (injective_ && (a_.num_vertices() > b_.num_vertices() || a_.num_edges() > b_.num_edges()))
      return;

    const std::size_t nb = b_.num_vertices();
    buckets_.assign(nb * nb, {});
    for (Index e = 0; e < b_.num_edges(); ++e)
      buckets_[b_.edge(e).src * nb + b_.edge(e).tgt].push_back(e);

    std::vector<Index> order(a_.num_vertices());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> deg(a_.num_vertices(), 0);
    for (const auto& e : a_.edges()) {
      ++deg[e.src];
      ++deg[e.tgt];
    }
    auto seeded = [&](Index v) { return !opt_.vertex_seed.empty() && opt_.vertex_seed[v].has_value(); };
    std::stable_sort(order.begin(), order.end(), [&](Index x, Index y) {
      if (seeded(x) != seeded(y)) return seeded(x);
      return deg[x] > deg[y];
    });
    std::vector<std::size_t> pos(a_.num_vertices());
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    std::vector<std::vector<Index>> triggered(order.size());
    for (Index e = 0; e < a_.num_edges(); ++e)
      triggered[std::max(pos[a_.edge(e).src], pos[a_.edge(e).tgt])].push_back(e);
    for (std::size_t i = 0; i < order.size(); ++i) {
      vars_.push_back({false, order[i]});
      for (Index e : triggered[i]) vars_.push_back({true, e});
    }

    vmap_.assign(a_.num_vertices(), kNone);
    emap_.assign(a_.num_edges(), kNone);
    vhits_.assign(b_.num_vertices(), 0);
    ehits_.assign(b_.num_edges(), 0);
    step(0);
  }

 private:
  struct Var {
    bool is_edge;
    Index index;
  };

  bool label_ok(Label a, Label b) const { return exact_labels_ ? a == b : lat_.leq(a, b); }

  bool vertex_target_ok(Index a, Index b, bool from_seed) const {
    if (!label_ok(a_.vlabel(a), b_.vlabel(b))) return false;
    if (vhits_[b] > 0 && (injective_ || exclusive(opt_.exclusive_vertices, b))) return false;
    if (!from_seed && opt_.vertex_ok && !opt_.vertex_ok(a, b)) return false;
    return true;
  }

  bool edge_target_ok(Index a, Index b, bool from_seed) const {
    if (!label_ok(a_.elabel(a), b_.elabel(b))) return false;
    if (ehits_[b] > 0 && (injective_ || exclusive(opt_.exclusive_edges, b))) return false;
    if (!from_seed && opt_.edge_ok && !opt_.edge_ok(a, b)) return false;
    return true;
  }

  static bool exclusive(const std::vector<char>& flags, Index b) { return !flags.empty() && flags[b] != 0; }

  void expand() {
    if (++expansions_ > limit_)
      fail(ErrorCode::EnumerationLimitExceeded,
           "morphism enumeration exceeded " + std::to_string(limit_) + " candidate expansions");
  }

  void step(std::size_t i) {
    if (stopped_) return;
    if (i == vars_.size()) {
      if (!visit_(Morphism::trusted(A_, B_, vmap_, emap_))) stopped_ = true;
      return;
    }
    const Var var = vars_[i];
    if (!var.is_edge) {
      const Index a = var.index;
      if (!opt_.vertex_seed.empty() && opt_.vertex_seed[a]) {
        const Index b = *opt_.vertex_seed[a];
        expand();
        if (b < b_.num_vertices() && vertex_target_ok(a, b, true)) assign_vertex(i, a, b);
        return;
      }
      for (Index b = 0; b < b_.num_vertices() && !stopped_; ++b) {
        expand();
        if (vertex_target_ok(a, b, false)) assign_vertex(i, a, b);
      }
      return;
    }
    const Index a = var.index;
    const auto& e = a_.edge(a);
    const auto& bucket = buckets_[vmap_[e.src] * b_.num_vertices() + vmap_[e.tgt]];
    if (!opt_.edge_seed.empty() && opt_.edge_seed[a]) {
      const Index b = *opt_.edge_seed[a];
      expand();
      if (std::find(bucket.begin(), bucket.end(), b) != bucket.end() && edge_target_ok(a, b, true))
        assign_edge(i, a, b);
      return;
    }
    for (Index b : bucket) {
      if (stopped_) return;
      expand();
      if (edge_target_ok(a, b, false)) assign_edge(i, a, b);
    }
  }

  void assign_vertex(std::size_t i, Index a, Index b) {
    vmap_[a] = b;
    ++vhits_[b];
    step(i + 1);
    --vhits_[b];
    vmap_[a] = kNone;
  }

  void assign_edge(std::size_t i, Index a, Index b) {
    emap_[a] = b;
    ++ehits_[b];
    step(i + 1);
    --ehits_[b];
    emap_[a] = kNone;
  }

  const GraphPtr& A_;
  const GraphPtr& B_;
  const Graph& a_;
  const Graph& b_;
  const Lattice& lat_;
  const SearchOptions& opt_;
  const std::function<bool(const Morphism&)>& visit_;
  std::uint64_t limit_ = 0;
  std::uint64_t expansions_ = 0;
  bool injective_ = false;
  bool exact_labels_ = false;
  bool stopped_ = false;
  std::vector<std::vector<Index>> buckets_;
  std::vector<Var> vars_;
  std::vector<Index> vmap_, emap_;
  std::vector<std::uint32_t> vhits_, ehits_;
};

}  // namespace

void for_each_morphism(const GraphPtr& A, const GraphPtr& B, const SearchOptions& options,
                       const std::function<bool(const Morphism&)>& visit) {
  if (!options.vertex_seed.empty() && options.vertex_seed.size() != A->num_vertices())
    fail(ErrorCode::InvalidMorphism, "vertex seed size does not match the domain");
  if (!options.edge_seed.empty() && options.edge_seed.size() != A->num_edges())
    fail(ErrorCode::InvalidMorphism, "edge seed size does not match the domain");
  Search(A, B, options, visit).run();
}

std::vector<Morphism> enumerate_morphisms(const GraphPtr& A, const GraphPtr& B, MorphismClass constraint) {
  SearchOptions opt;
  opt.constraint = constraint;
  return enumerate_morphisms(A, B, opt);
}

std::vector<Morphism> enumerate_morphisms(const GraphPtr& A, const GraphPtr& B, const SearchOptions& options) {
  std::vector<Morphism> out;
  for_each_morphism(A, B, options, [&](const Morphism& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::string iso_fingerprint(const Graph& g) {
  std::vector<std::tuple<Label, std::size_t, std::size_t, std::size_t>> vs;
  for (Index v = 0; v < g.num_vertices(); ++v) {
    std::size_t out = 0, in = 0, loops = 0;
    for (const auto& e : g.edges()) {
      if (e.src == v && e.tgt == v) ++loops;
      else if (e.src == v) ++out;
      else if (e.tgt == v) ++in;
    }
    vs.emplace_back(g.vlabel(v), out, in, loops);
  }
  std::vector<std::tuple<Label, Label, Label, bool>> es;
  for (const auto& e : g.edges()) es.emplace_back(e.label, g.vlabel(e.src), g.vlabel(e.tgt), e.src == e.tgt);
  std::sort(vs.begin(), vs.end());
  std::sort(es.begin(), es.end());
  std::ostringstream os;
  os << g.num_vertices() << ':' << g.num_edges() << '|';
  for (const auto& [l, o, i, lp] : vs) os << l << ',' << o << ',' << i << ',' << lp << ';';
  os << '|';
  for (const auto& [l, s, t, lp] : es) os << l << ',' << s << ',' << t << ',' << lp << ';';
  return os.str();
}

std::optional<Morphism> find_isomorphism(const GraphPtr& A, const GraphPtr& B) {
  if (!same_lattice(A->lattice(), B->lattice())) return std::nullopt;
  if (iso_fingerprint(*A) != iso_fingerprint(*B)) return std::nullopt;
  std::optional<Morphism> found;
  SearchOptions opt;
  opt.constraint = MorphismClass::Iso;
  for_each_morphism(A, B, opt, [&](const Morphism& m) {
    found = m;
    return false;
  });
  return found;
}

bool are_isomorphic(const GraphPtr& A, const GraphPtr& B) { return find_isomorphism(A, B).has_value(); }

Subgraph subgraph(const GraphPtr& g, const std::vector<Index>& vertices, const std::vector<Index>& edges) {
  Graph h(g->lattice());
  std::vector<Index> where(g->num_vertices(), kNone);
  std::vector<Index> vs, es;
  for (Index v : vertices) {
    where[v] = h.add_vertex(g->vertex(v).id, g->vlabel(v));
    vs.push_back(v);
  }
  for (Index e : edges) {
    const auto& ed = g->edge(e);
    if (where[ed.src] == kNone || where[ed.tgt] == kNone)
      fail(ErrorCode::InvalidGraph, "subgraph edge '" + ed.id + "' lost an endpoint");
    h.add_edge(ed.id, where[ed.src], where[ed.tgt], ed.label);
    es.push_back(e);
  }
  auto hp = share(std::move(h));
  return {hp, Morphism::trusted(hp, g, std::move(vs), std::move(es))};
}

MatchContext patch_decomposition(const Morphism& x) {
  const Graph& g = *x.cod();
  std::vector<char> in_mv(g.num_vertices(), 0), in_me(g.num_edges(), 0);
  for (Index v : x.vmap()) in_mv[v] = 1;
  for (Index e : x.emap()) in_me[e] = 1;
  MatchContext ctx;
  for (Index v = 0; v < g.num_vertices(); ++v)
    (in_mv[v] ? ctx.match_vertices : ctx.context_vertices).push_back(v);
  for (Index e = 0; e < g.num_edges(); ++e) {
    const auto& ed = g.edge(e);
    if (in_me[e]) ctx.match_edges.push_back(e);
    else if (!in_mv[ed.src] && !in_mv[ed.tgt]) ctx.context_edges.push_back(e);
    else ctx.patch_edges.push_back(e);
  }
  ctx.match = subgraph(x.cod(), ctx.match_vertices, ctx.match_edges).graph;
  ctx.context = subgraph(x.cod(), ctx.context_vertices, ctx.context_edges).graph;
  return ctx;
}

namespace {

std::string dot_label(const Lattice& lat, Label l) {
  if (l == lat.bottom()) return "_bot";
  if (l == lat.top()) return "_top";
  return lat.name(l);
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_dot(const Graph& g, std::string_view name) {
  const auto& lat = *g.lattice();
  const bool labelled = lat.size() > 1;
  std::ostringstream os;
  os << "digraph " << quoted(std::string(name)) << " {\n";
  for (const auto& v : g.vertices()) {
    std::string text = labelled ? v.id + "^" + dot_label(lat, v.label) : v.id;
    os << "  " << quoted(v.id) << " [label=" << quoted(text) << "];\n";
  }
  for (const auto& e : g.edges()) {
    os << "  " << quoted(g.vertex(e.src).id) << " -> " << quoted(g.vertex(e.tgt).id);
    if (labelled) os << " [label=" << quoted(dot_label(lat, e.label)) << "]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace pbpo
