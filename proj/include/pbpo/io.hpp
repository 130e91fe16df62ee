#pragma once

#include <string>

#include <json.hpp>

#include "pbpo/graph.hpp"
#include "pbpo/interop.hpp"
#include "pbpo/rewrite.hpp"

namespace pbpo {

using json = nlohmann::ordered_json;

json lattice_to_json(const Lattice& lat);
LatticePtr lattice_from_json(const json& j);

// Graphs embed their lattice unless written inside a rule document.
json graph_to_json(const Graph& g, bool with_lattice = true);
GraphPtr graph_from_json(const json& j, const LatticePtr& inherited = nullptr);

json morphism_to_json(const Morphism& f);
Morphism morphism_from_json(const json& j, const GraphPtr& dom, const GraphPtr& cod);

json rule_to_json(const Rule& rule);
Rule rule_from_json(const json& j);
json dpo_rule_to_json(const DpoRule& rule);
DpoRule dpo_rule_from_json(const json& j);
json agree_rule_to_json(const AgreeRule& rule);
AgreeRule agree_rule_from_json(const json& j);
json pbpo_rule_to_json(const PbpoRule& rule);
PbpoRule pbpo_rule_from_json(const json& j);

json match_to_json(const StrongMatch& match);
json step_to_json(const StepResult& step, const std::vector<Certificate>& certificates = {});
json trace_to_json(const Trace& trace);

// Parses text, mapping syntax and schema problems to FormatError.
json parse_json(const std::string& text);

}  // namespace pbpo
