#include "pbpo/io.hpp"

#include "pbpo/error.hpp"
#include "pbpo/limits.hpp"

namespace pbpo {

namespace {

[[noreturn]] void format_error(const std::string& what) { fail(ErrorCode::FormatError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object()) format_error(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) format_error(std::string("missing field '") + key + "'");
  return *it;
}

std::string string_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_string()) format_error(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) format_error(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) format_error(std::string(what) + " must be an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

template <typename F>
auto guarded(F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const json::exception& e) {
    format_error(e.what());
  }
}

std::map<std::string, std::string> id_map(const json& j, const char* key) {
  std::map<std::string, std::string> out;
  if (!j.contains(key)) return out;
  const json& m = j.at(key);
  if (!m.is_object()) format_error(std::string("morphism field '") + key + "' must map ids to ids");
  for (auto it = m.begin(); it != m.end(); ++it) {
    if (!it.value().is_string()) format_error("morphism targets must be ids");
    out[it.key()] = it.value().get<std::string>();
  }
  return out;
}

struct Document {
  LatticePtr lattice;
  std::map<std::string, GraphPtr> graphs;
  const json* morphisms = nullptr;

  GraphPtr graph(const std::string& name) const {
    auto it = graphs.find(name);
    if (it == graphs.end()) format_error("rule document lacks graph '" + name + "'");
    return it->second;
  }
  Morphism arrow(const std::string& name, const std::string& dom, const std::string& cod) const {
    return morphism_from_json(field(*morphisms, name.c_str()), graph(dom), graph(cod));
  }
  bool has_arrow(const std::string& name) const { return morphisms->contains(name); }
};

const json& unwrap_bundle(const json& j) {
  if (j.is_object() && j.contains("rule") && !j.contains("graphs")) return j.at("rule");
  return j;
}

Document read_document(const json& raw, const std::string& expected_format) {
  const json& j = unwrap_bundle(raw);
  Document d;
  if (j.contains("format")) {
    auto format = string_field(j, "format");
    if (format != expected_format)
      format_error("expected a '" + expected_format + "' rule document, found '" + format + "'");
  }
  d.lattice = lattice_from_json(field(j, "lattice"));
  const json& gs = field(j, "graphs");
  if (!gs.is_object()) format_error("'graphs' must be an object");
  for (auto it = gs.begin(); it != gs.end(); ++it) d.graphs[it.key()] = graph_from_json(it.value(), d.lattice);
  d.morphisms = &field(j, "morphisms");
  if (!d.morphisms->is_object()) format_error("'morphisms' must be an object");
  return d;
}

json document(const char* format, const LatticePtr& lat,
              const std::vector<std::pair<const char*, const GraphPtr*>>& graphs,
              const std::vector<std::pair<const char*, const Morphism*>>& arrows) {
  json j;
  j["format"] = format;
  j["lattice"] = lattice_to_json(*lat);
  json gs = json::object();
  for (const auto& [name, g] : graphs) gs[name] = graph_to_json(**g, false);
  j["graphs"] = gs;
  json ms = json::object();
  for (const auto& [name, f] : arrows) ms[name] = morphism_to_json(*f);
  j["morphisms"] = ms;
  return j;
}

}  // namespace

json lattice_to_json(const Lattice& lat) {
  json j;
  switch (lat.kind()) {
    case LatticeKind::Unit: j["kind"] = "unit"; break;
    case LatticeKind::Flat:
      j["kind"] = "flat";
      j["base"] = lat.parameters();
      break;
    case LatticeKind::Chain:
      j["kind"] = "chain";
      j["n"] = lat.size();
      break;
    case LatticeKind::Powerset:
      j["kind"] = "powerset";
      j["universe"] = lat.parameters();
      break;
    case LatticeKind::Explicit: {
      j["kind"] = "explicit";
      std::vector<std::string> names;
      for (Label x = 0; x < lat.size(); ++x) names.push_back(lat.name(x));
      j["elements"] = names;
      json covers = json::array();
      for (const auto& [a, b] : lat.covers()) covers.push_back({a, b});
      j["covers"] = covers;
      break;
    }
  }
  return j;
}

LatticePtr lattice_from_json(const json& j) {
  return guarded([&] {
    auto kind = string_field(j, "kind");
    if (kind == "unit") return Lattice::unit();
    if (kind == "flat") return Lattice::flat(string_list(field(j, "base"), "'base'"));
    if (kind == "chain") {
      const json& n = field(j, "n");
      if (!n.is_number_integer() || n.get<long long>() < 0) format_error("'n' must be a non-negative integer");
      return Lattice::chain(n.get<std::size_t>());
    }
    if (kind == "powerset") return Lattice::powerset(string_list(field(j, "universe"), "'universe'"));
    if (kind == "explicit") {
      auto elements = string_list(field(j, "elements"), "'elements'");
      std::vector<std::pair<std::string, std::string>> covers;
      const json& cs = field(j, "covers");
      if (!cs.is_array()) format_error("'covers' must be an array of pairs");
      for (const auto& c : cs) {
        auto pair = string_list(c, "a cover");
        if (pair.size() != 2) format_error("each cover must be a pair [lower, upper]");
        covers.emplace_back(pair[0], pair[1]);
      }
      return Lattice::explicit_order(elements, covers);
    }
    format_error("unknown lattice kind '" + kind + "'");
  });
}

namespace {
GraphPtr read_graph(const json& raw, const LatticePtr& inherited);
}  // namespace

json graph_to_json(const Graph& g, bool with_lattice) {
  json j;
  const Lattice& lat = *g.lattice();
  if (with_lattice) j["lattice"] = lattice_to_json(lat);
  json vs = json::array();
  for (const auto& v : g.vertices()) vs.push_back({{"id", v.id}, {"label", lat.name(v.label)}});
  json es = json::array();
  for (const auto& e : g.edges())
    es.push_back({{"id", e.id}, {"src", g.vertex(e.src).id}, {"tgt", g.vertex(e.tgt).id}, {"label", lat.name(e.label)}});
  j["vertices"] = vs;
  j["edges"] = es;
  return j;
}

GraphPtr graph_from_json(const json& raw, const LatticePtr& inherited) {
  try {
    return read_graph(raw, inherited);
  } catch (const Error& e) {
    // Malformed element lists are input errors rather than domain errors.
    if (e.code() == ErrorCode::InvalidGraph || e.code() == ErrorCode::UnknownLabel) format_error(e.what());
    throw;
  }
}

namespace {

GraphPtr read_graph(const json& raw, const LatticePtr& inherited) {
  return guarded([&] {
    const json* jp = &raw;
    if (raw.is_object() && !raw.contains("vertices") && raw.contains("hosts")) {
      const json& hosts = raw.at("hosts");
      if (!hosts.is_array() || hosts.empty()) format_error("bundle has no host graph");
      jp = &hosts.at(0);
    }
    const json& j = *jp;
    if (!j.is_object()) format_error("a graph must be an object");
    LatticePtr lat = j.contains("lattice") ? lattice_from_json(j.at("lattice")) : inherited;
    if (!lat) format_error("graph has no lattice");
    Graph g(lat);
    auto read_label = [&](const json& x) {
      if (!x.contains("label")) return lat->bottom();
      return lat->label(string_field(x, "label"));
    };
    const json& vs = field(j, "vertices");
    if (!vs.is_array()) format_error("'vertices' must be an array");
    for (const auto& v : vs) g.add_vertex(string_field(v, "id"), read_label(v));
    if (j.contains("edges")) {
      const json& es = j.at("edges");
      if (!es.is_array()) format_error("'edges' must be an array");
      for (const auto& e : es) {
        auto src = g.find_vertex(string_field(e, "src"));
        auto tgt = g.find_vertex(string_field(e, "tgt"));
        if (!src || !tgt) format_error("edge '" + string_field(e, "id") + "' names an unknown endpoint");
        g.add_edge(string_field(e, "id"), *src, *tgt, read_label(e));
      }
    }
    return share(std::move(g));
  });
}

}  // namespace

json morphism_to_json(const Morphism& f) {
  json vs = json::object(), es = json::object();
  for (Index v = 0; v < f.vmap().size(); ++v) vs[f.dom()->vertex(v).id] = f.cod()->vertex(f.v(v)).id;
  for (Index e = 0; e < f.emap().size(); ++e) es[f.dom()->edge(e).id] = f.cod()->edge(f.e(e)).id;
  return {{"vertices", vs}, {"edges", es}};
}

Morphism morphism_from_json(const json& j, const GraphPtr& dom, const GraphPtr& cod) {
  return guarded([&] {
    if (!j.is_object()) format_error("a morphism must be an object");
    return Morphism::from_ids(dom, cod, id_map(j, "vertices"), id_map(j, "edges"));
  });
}

json rule_to_json(const Rule& r) {
  return document("pbpo+", r.L->lattice(),
                  {{"L", &r.L}, {"K", &r.K}, {"R", &r.R}, {"Lp", &r.Lp}, {"Kp", &r.Kp}},
                  {{"l", &r.l}, {"r", &r.r}, {"tL", &r.tL}, {"tK", &r.tK}, {"lp", &r.lp}});
}

Rule rule_from_json(const json& j) {
  return guarded([&] {
    auto d = read_document(j, "pbpo+");
    Rule rule = validate_rule(Rule{d.graph("L"), d.graph("K"), d.graph("R"), d.graph("Lp"), d.graph("Kp"),
                                   d.arrow("l", "K", "L"), d.arrow("r", "K", "R"), d.arrow("tL", "L", "Lp"),
                                   d.arrow("tK", "K", "Kp"), d.arrow("lp", "Kp", "Lp")});
    // Optional bottom-right data must agree with the recomputed pushout.
    if (d.graphs.count("Rp") && d.has_arrow("rp") && d.has_arrow("tR")) {
      auto rp = d.arrow("rp", "Kp", "Rp");
      auto tR = d.arrow("tR", "R", "Rp");
      if (!is_pushout_square(rule.r, rule.tK, tR, rp))
        fail(ErrorCode::NotCanonical, "supplied R' is not the pushout of (tK, r)");
    }
    return rule;
  });
}

json dpo_rule_to_json(const DpoRule& r) {
  return document("dpo", r.L->lattice(), {{"L", &r.L}, {"K", &r.K}, {"R", &r.R}}, {{"l", &r.l}, {"r", &r.r}});
}

DpoRule dpo_rule_from_json(const json& j) {
  return guarded([&] {
    auto d = read_document(j, "dpo");
    return validate_dpo_rule(
        DpoRule{d.graph("L"), d.graph("K"), d.graph("R"), d.arrow("l", "K", "L"), d.arrow("r", "K", "R")});
  });
}

json agree_rule_to_json(const AgreeRule& r) {
  return document("agree", r.L->lattice(), {{"L", &r.L}, {"K", &r.K}, {"R", &r.R}, {"Kp", &r.Kp}},
                  {{"l", &r.l}, {"r", &r.r}, {"tK", &r.tK}});
}

AgreeRule agree_rule_from_json(const json& j) {
  return guarded([&] {
    auto d = read_document(j, "agree");
    return validate_agree_rule(AgreeRule{d.graph("L"), d.graph("K"), d.graph("R"), d.graph("Kp"),
                                         d.arrow("l", "K", "L"), d.arrow("r", "K", "R"), d.arrow("tK", "K", "Kp")});
  });
}

json pbpo_rule_to_json(const PbpoRule& r) {
  return document("pbpo", r.L->lattice(),
                  {{"L", &r.L}, {"K", &r.K}, {"R", &r.R}, {"Lp", &r.Lp}, {"Kp", &r.Kp}, {"Rp", &r.Rp}},
                  {{"l", &r.l}, {"r", &r.r}, {"tL", &r.tL}, {"tK", &r.tK}, {"tR", &r.tR}, {"lp", &r.lp}, {"rp", &r.rp}});
}

PbpoRule pbpo_rule_from_json(const json& j) {
  return guarded([&] {
    auto d = read_document(j, "pbpo");
    return validate_pbpo_rule(PbpoRule{d.graph("L"), d.graph("K"), d.graph("R"), d.graph("Lp"), d.graph("Kp"),
                                       d.graph("Rp"), d.arrow("l", "K", "L"), d.arrow("r", "K", "R"),
                                       d.arrow("tL", "L", "Lp"), d.arrow("tK", "K", "Kp"), d.arrow("tR", "R", "Rp"),
                                       d.arrow("lp", "Kp", "Lp"), d.arrow("rp", "Kp", "Rp")});
  });
}

json match_to_json(const StrongMatch& match) {
  return {{"m", morphism_to_json(match.m)}, {"alpha", morphism_to_json(match.alpha)}};
}

json step_to_json(const StepResult& s, const std::vector<Certificate>& certificates) {
  json j;
  j["lattice"] = lattice_to_json(*s.GL->lattice());
  // Pushout labels are joins of merged classes either way; flag lattices where that lacks the usual guarantees.
  if (!s.GL->lattice()->is_heyting()) j["non_heyting"] = true;
  j["GL"] = graph_to_json(*s.GL, false);
  j["GK"] = graph_to_json(*s.GK, false);
  j["GR"] = graph_to_json(*s.GR, false);
  j["m"] = morphism_to_json(s.m);
  j["alpha"] = morphism_to_json(s.alpha);
  j["gL"] = morphism_to_json(s.gL);
  j["gR"] = morphism_to_json(s.gR);
  j["u"] = morphism_to_json(s.u);
  j["up"] = morphism_to_json(s.up);
  j["w"] = morphism_to_json(s.w);
  if (s.Rp) {
    j["Rp"] = graph_to_json(**s.Rp, false);
    j["rp"] = morphism_to_json(*s.rp);
    j["tR"] = morphism_to_json(*s.tR);
    j["wp"] = morphism_to_json(*s.wp);
  }
  if (!certificates.empty()) {
    json cs = json::array();
    for (const auto& c : certificates) cs.push_back({{"name", c.name}, {"ok", c.ok}});
    j["certificates"] = cs;
  }
  return j;
}

json trace_to_json(const Trace& t) {
  json j;
  j["lattice"] = lattice_to_json(*t.start->lattice());
  j["start"] = graph_to_json(*t.start, false);
  json steps = json::array();
  for (const auto& e : t.steps) {
    json s = step_to_json(e.step);
    s.erase("lattice");
    steps.push_back({{"rule", e.rule}, {"match", e.match}, {"step", s}});
  }
  j["steps"] = steps;
  j["result"] = graph_to_json(*t.result, false);
  j["budget_exhausted"] = t.budget_exhausted;
  return j;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    format_error(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace pbpo
