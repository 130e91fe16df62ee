#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pbpo/pbpo.hpp"

namespace py = pybind11;
using namespace pbpo;

namespace {

// Documents cross the boundary as JSON text; the package wrapper converts to dicts.
json parse(const std::string& text) { return parse_json(text); }
std::string dump(const json& j) { return j.dump(); }

MorphismClass parse_constraint(const std::string& s) {
  if (s == "any") return MorphismClass::Any;
  if (s == "mono") return MorphismClass::Mono;
  if (s == "regular-mono") return MorphismClass::RegularMono;
  if (s == "iso") return MorphismClass::Iso;
  fail(ErrorCode::FormatError, "unknown constraint '" + s + "'");
}

MatchOrder parse_order(const std::string& s) {
  if (s == "adherence") return MatchOrder::AdherenceFirst;
  if (s == "match") return MatchOrder::MatchFirst;
  fail(ErrorCode::FormatError, "unknown match order '" + s + "'");
}

StrategyKind parse_strategy(const std::string& s) {
  if (s == "first") return StrategyKind::First;
  if (s == "random") return StrategyKind::Random;
  if (s == "all") return StrategyKind::All;
  fail(ErrorCode::FormatError, "unknown strategy '" + s + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "PBPO+ graph rewriting over lattice-labeled graphs";

  // The exception type lives as long as the interpreter; its instances carry the error code name.
  static py::handle exc_type = py::exception<Error>(m, "PbpoError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      std::string code(error_code_name(e.code()));
      py::object err = exc_type(code + ": " + e.what());
      err.attr("code") = code;
      PyErr_SetObject(exc_type.ptr(), err.ptr());
    }
  });

  m.def("fixture_names", [] { return fixture_names(); });
  m.def("fixture", [](const std::string& name) { return dump(fixture_to_json(fixture(name))); }, py::arg("name"));

  m.def("is_heyting", [](const std::string& lat) { return lattice_from_json(parse(lat))->is_heyting(); },
        py::arg("lattice"));
  m.def("meet", [](const std::string& lat, const std::string& a, const std::string& b) {
        auto L = lattice_from_json(parse(lat));
        return L->meet(std::vector<std::string>{a, b});
      }, py::arg("lattice"), py::arg("a"), py::arg("b"));
  m.def("join", [](const std::string& lat, const std::string& a, const std::string& b) {
        auto L = lattice_from_json(parse(lat));
        return L->join(std::vector<std::string>{a, b});
      }, py::arg("lattice"), py::arg("a"), py::arg("b"));

  m.def("validate", [](const std::string& rule) {
        auto r = rule_from_json(parse(rule));
        return is_mono(r.tL);
      }, py::arg("rule"), "Validates a PBPO+ rule; returns whether tL is monic");

  m.def("match", [](const std::string& rule, const std::string& host, const std::string& constraint,
                    const std::string& order) {
        auto r = rule_from_json(parse(rule));
        auto G = graph_from_json(parse(host));
        json list = json::array();
        for (const auto& sm : find_strong_matches(r, G, parse_constraint(constraint), parse_order(order)))
          list.push_back(match_to_json(sm));
        return dump(list);
      }, py::arg("rule"), py::arg("host"), py::arg("constraint") = "any", py::arg("order") = "adherence");

  m.def("apply", [](const std::string& rule, const std::string& host, std::size_t match_index,
                    const std::string& constraint, bool bottom_right) {
        auto r = rule_from_json(parse(rule));
        auto G = graph_from_json(parse(host));
        auto ms = find_strong_matches(r, G, parse_constraint(constraint));
        if (match_index >= ms.size())
          fail(ErrorCode::NoSuchMatch, "match index " + std::to_string(match_index) + " out of range (" +
                                           std::to_string(ms.size()) + " matches)");
        auto step = apply_step(r, G, ms[match_index].m, ms[match_index].alpha, StepOptions{bottom_right, true});
        return dump(step_to_json(step, certify_step(r, step)));
      }, py::arg("rule"), py::arg("host"), py::arg("match_index") = 0, py::arg("constraint") = "any",
        py::arg("bottom_right") = false);

  m.def("normalize", [](const std::vector<std::string>& rules, const std::string& host,
                        const std::string& strategy, std::uint64_t seed, std::size_t max_steps,
                        const std::string& constraint) {
        std::vector<Rule> rs;
        for (const auto& r : rules) rs.push_back(rule_from_json(parse(r)));
        auto G = graph_from_json(parse(host));
        return dump(trace_to_json(
            rewrite_closure(G, rs, Strategy{parse_strategy(strategy), seed}, max_steps, parse_constraint(constraint))));
      }, py::arg("rules"), py::arg("host"), py::arg("strategy") = "first", py::arg("seed") = 0,
        py::arg("max_steps") = 1000, py::arg("constraint") = "any");

  m.def("check_determinism", [](const std::string& rule) {
        auto cert = determinism_certificate(rule_from_json(parse(rule)));
        return py::make_tuple(cert.certified, cert.reason);
      }, py::arg("rule"));

  m.def("classifier", [](const std::string& graph) {
        auto T = classify_object(graph_from_json(parse(graph)));
        return dump({{"T", graph_to_json(*T.T)},
                     {"eta", morphism_to_json(T.eta)},
                     {"star", T.T->vertex(T.star_vertex).id}});
      }, py::arg("graph"));

  m.def("translate", [](const std::string& from, const std::string& rule) {
        auto j = parse(rule);
        json out = json::array();
        if (from == "dpo") out.push_back(rule_to_json(translate_dpo(dpo_rule_from_json(j))));
        else if (from == "agree") out.push_back(rule_to_json(translate_agree(agree_rule_from_json(j))));
        else if (from == "pbpo")
          for (const auto& r : compact_rules(pbpo_rule_from_json(j), CompactMode::Full)) out.push_back(rule_to_json(r));
        else fail(ErrorCode::FormatError, "unknown rule format '" + from + "'");
        return dump(out);
      }, py::arg("source_format"), py::arg("rule"));
}
