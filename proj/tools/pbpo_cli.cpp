#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pbpo/pbpo.hpp"

using namespace pbpo;

namespace {

constexpr int kDomainError = 1;
constexpr int kFormatError = 2;

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::FormatError, "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

MorphismClass parse_constraint(const std::string& s) {
  if (s == "any") return MorphismClass::Any;
  if (s == "mono") return MorphismClass::Mono;
  if (s == "regular-mono") return MorphismClass::RegularMono;
  return MorphismClass::Iso;
}

// Rule documents carry an optional "format"; bundles wrap them under "rule".
std::string rule_format(const json& j) {
  const json& doc = j.contains("rule") && !j.contains("graphs") ? j.at("rule") : j;
  if (doc.is_object() && doc.contains("format") && doc.at("format").is_string())
    return doc.at("format").get<std::string>();
  return "pbpo+";
}

template <typename T>
const T& pick(const std::vector<T>& xs, std::size_t index) {
  if (index >= xs.size())
    fail(ErrorCode::NoSuchMatch, "match index " + std::to_string(index) + " out of range (" +
                                     std::to_string(xs.size()) + " matches)");
  return xs[index];
}

json morphism_bundle(const Morphism& f) {
  json j;
  j["lattice"] = lattice_to_json(*f.dom()->lattice());
  j["dom"] = graph_to_json(*f.dom(), false);
  j["cod"] = graph_to_json(*f.cod(), false);
  j["map"] = morphism_to_json(f);
  return j;
}

// {"lattice", "dom", "cod", "map"}
Morphism read_arrow(const json& j) {
  auto lat = lattice_from_json(j.at("lattice"));
  auto dom = graph_from_json(j.at("dom"), lat);
  auto cod = graph_from_json(j.at("cod"), lat);
  return morphism_from_json(j.at("map"), dom, cod);
}

struct SquareFile {
  std::string kind;
  Morphism f, g, x, y;
};

SquareFile read_square(const json& j) {
  auto kind = j.at("kind").get<std::string>();
  if (kind != "pullback" && kind != "pushout")
    fail(ErrorCode::FormatError, "square kind must be 'pullback' or 'pushout'");
  auto lat = lattice_from_json(j.at("lattice"));
  std::map<std::string, GraphPtr> graphs;
  for (auto it = j.at("graphs").begin(); it != j.at("graphs").end(); ++it)
    graphs[it.key()] = graph_from_json(it.value(), lat);
  auto arrow = [&](const char* name) {
    const json& m = j.at("morphisms").at(name);
    auto find = [&](const char* end) {
      auto it = graphs.find(m.at(end).get<std::string>());
      if (it == graphs.end()) fail(ErrorCode::FormatError, std::string("morphism ") + name + " names an unknown graph");
      return it->second;
    };
    return morphism_from_json(m, find("dom"), find("cod"));
  };
  if (kind == "pullback") return {kind, arrow("f"), arrow("g"), arrow("p1"), arrow("p2")};
  return {kind, arrow("f"), arrow("g"), arrow("q1"), arrow("q2")};
}

StrongMatch read_match_spec(const json& raw, const Rule& rule, const GraphPtr& G) {
  const json& j = raw.contains("match") ? raw.at("match") : raw;
  return StrongMatch{morphism_from_json(j.at("m"), rule.L, G), morphism_from_json(j.at("alpha"), G, rule.Lp)};
}

void print_dot(const std::vector<std::pair<std::string, GraphPtr>>& graphs) {
  for (const auto& [name, g] : graphs) std::cout << to_dot(*g, name);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PBPO+ graph rewriting over lattice-labeled multigraphs"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  bool dot = false;

  std::string rule_file, graph_file, square_file, match_file, arrow_file, from, engine, mode = "full";
  std::string constraint = "any", order = "adherence", strategy = "first";
  std::vector<std::string> rule_files;
  std::size_t match_index = 0, max_steps = 100;
  bool bottom_right = false, raw_ids = false, rule_only = false;
  std::optional<std::size_t> host_opt;
  std::string fixture_name;

  const std::vector<std::string> constraints{"any", "mono", "regular-mono", "iso"};

  auto* validate = app.add_subcommand("validate", "Check a rule document (pbpo+, dpo, agree or pbpo)");
  validate->add_option("rule", rule_file)->required();

  auto* match = app.add_subcommand("match", "List the strong matches of a rule in a host graph");
  match->add_option("rule", rule_file)->required();
  match->add_option("graph", graph_file)->required();
  match->add_option("--constraint", constraint)->check(CLI::IsMember(constraints));
  match->add_option("--order", order)->check(CLI::IsMember({"adherence", "match"}));

  auto* apply = app.add_subcommand("apply", "Apply one rewrite step and certify it");
  apply->add_option("rule", rule_file)->required();
  apply->add_option("graph", graph_file)->required();
  apply->add_option("--match-index", match_index);
  apply->add_option("--match", match_file, "JSON file holding {m, alpha}");
  apply->add_option("--constraint", constraint)->check(CLI::IsMember(constraints));
  apply->add_flag("--bottom-right", bottom_right, "Also build R' and w'");
  apply->add_flag("--raw-ids", raw_ids, "Keep construction ids instead of host-derived names");
  apply->add_flag("--dot", dot);

  auto* normalize = app.add_subcommand("normalize", "Rewrite until no rule matches or the budget runs out");
  normalize->add_option("rules", rule_files)->required();
  normalize->add_option("-g,--graph", graph_file)->required();
  normalize->add_option("--strategy", strategy)->check(CLI::IsMember({"first", "all", "random"}));
  normalize->add_option("--max-steps", max_steps);
  normalize->add_option("--constraint", constraint)->check(CLI::IsMember(constraints));
  normalize->add_option("--seed", seed, "Seed for the random strategy")->default_val(0);
  normalize->add_flag("--dot", dot);

  auto* translate = app.add_subcommand("translate", "Translate a DPO, AGREE or PBPO rule into PBPO+");
  translate->add_option("--from", from)->required()->check(CLI::IsMember({"dpo", "agree", "pbpo"}));
  translate->add_option("rule", rule_file)->required();
  translate->add_option("--mode", mode, "Compaction mode for --from pbpo")->check(CLI::IsMember({"full", "iso"}));

  auto* determinism = app.add_subcommand("check-determinism", "Certify that a rule's tL is a restricted classifier");
  determinism->add_option("rule", rule_file)->required();

  auto* classifier = app.add_subcommand("classifier", "Build the partial map classifier T(G)");
  classifier->add_option("graph", graph_file)->required();
  classifier->add_flag("--dot", dot);

  auto* materialize_cmd = app.add_subcommand("materialize", "Materialize a morphism f into (M, sharp, flat)");
  materialize_cmd->add_option("morphism", arrow_file)->required();
  materialize_cmd->add_flag("--dot", dot);

  auto* square = app.add_subcommand("check-square", "Decide whether a square is a pullback or pushout");
  square->add_option("square", square_file)->required();

  auto* fixtures = app.add_subcommand("fixtures", "Emit a built-in worked example");
  fixtures->add_option("name", fixture_name);
  fixtures->add_flag("--rule", rule_only, "Emit only the rule document");
  fixtures->add_option("--host", host_opt, "Emit only the given host graph");
  fixtures->add_flag("--dot", dot);

  auto* oracle = app.add_subcommand("oracle-step", "Run a single step with a reference engine");
  oracle->add_option("--engine", engine)->required()->check(CLI::IsMember({"dpo", "agree", "pbpo"}));
  oracle->add_option("rule", rule_file)->required();
  oracle->add_option("graph", graph_file)->required();
  oracle->add_option("--match-index", match_index);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kFormatError;
  }

  try {
    if (*validate) {
      auto j = read_file(rule_file);
      auto format = rule_format(j);
      json report{{"valid", true}, {"format", format}};
      if (format == "dpo") dpo_rule_from_json(j);
      else if (format == "agree") agree_rule_from_json(j);
      else if (format == "pbpo") pbpo_rule_from_json(j);
      else {
        auto rule = rule_from_json(j);
        report["sizes"] = {{"L", {rule.L->num_vertices(), rule.L->num_edges()}},
                           {"K", {rule.K->num_vertices(), rule.K->num_edges()}},
                           {"R", {rule.R->num_vertices(), rule.R->num_edges()}},
                           {"Lp", {rule.Lp->num_vertices(), rule.Lp->num_edges()}},
                           {"Kp", {rule.Kp->num_vertices(), rule.Kp->num_edges()}}};
        report["tL_monic"] = is_mono(rule.tL);
      }
      emit(report);
    } else if (*match) {
      auto rule = rule_from_json(read_file(rule_file));
      auto G = graph_from_json(read_file(graph_file));
      auto ms = find_strong_matches(rule, G, parse_constraint(constraint),
                                    order == "match" ? MatchOrder::MatchFirst : MatchOrder::AdherenceFirst);
      json list = json::array();
      for (const auto& m : ms) list.push_back(match_to_json(m));
      emit({{"count", ms.size()}, {"matches", list}});
    } else if (*apply) {
      auto rule = rule_from_json(read_file(rule_file));
      auto G = graph_from_json(read_file(graph_file));
      StrongMatch chosen = [&] {
        if (!match_file.empty()) return read_match_spec(read_file(match_file), rule, G);
        auto ms = find_strong_matches(rule, G, parse_constraint(constraint));
        return pick(ms, match_index);
      }();
      auto step = apply_step(rule, G, chosen.m, chosen.alpha, StepOptions{bottom_right, !raw_ids});
      if (dot) print_dot({{"GL", step.GL}, {"GK", step.GK}, {"GR", step.GR}});
      else emit(step_to_json(step, certify_step(rule, step)));
    } else if (*normalize) {
      std::vector<Rule> rules;
      for (const auto& f : rule_files) rules.push_back(rule_from_json(read_file(f)));
      auto G = graph_from_json(read_file(graph_file));
      StrategyKind kind = strategy == "all" ? StrategyKind::All
                          : strategy == "random" ? StrategyKind::Random
                                                 : StrategyKind::First;
      auto trace = rewrite_closure(G, rules, Strategy{kind, seed}, max_steps, parse_constraint(constraint));
      if (dot) print_dot({{"result", trace.result}});
      else emit(trace_to_json(trace));
    } else if (*translate) {
      auto j = read_file(rule_file);
      if (from == "dpo") emit(rule_to_json(translate_dpo(dpo_rule_from_json(j))));
      else if (from == "agree") emit(rule_to_json(translate_agree(agree_rule_from_json(j))));
      else {
        auto rules = compact_rules(pbpo_rule_from_json(j), mode == "iso" ? CompactMode::IsoOnly : CompactMode::Full);
        json list = json::array();
        for (const auto& r : rules) list.push_back(rule_to_json(r));
        emit({{"count", rules.size()}, {"rules", list}});
      }
    } else if (*determinism) {
      auto rule = rule_from_json(read_file(rule_file));
      auto cert = determinism_certificate(rule);
      json out{{"certified", cert.certified}, {"reason", cert.reason}};
      if (cert.witness) out["witness"] = morphism_bundle(*cert.witness);
      emit(out);
    } else if (*classifier) {
      auto G = graph_from_json(read_file(graph_file));
      auto T = classify_object(G);
      if (dot) print_dot({{"T", T.T}});
      else emit({{"T", graph_to_json(*T.T)}, {"eta", morphism_to_json(T.eta)}, {"star", T.T->vertex(T.star_vertex).id}});
    } else if (*materialize_cmd) {
      auto f = read_arrow(read_file(arrow_file));
      auto mat = materialize(f);
      if (dot) print_dot({{"M", mat.M}});
      else
        emit({{"lattice", lattice_to_json(*mat.M->lattice())},
              {"M", graph_to_json(*mat.M, false)},
              {"sharp", morphism_to_json(mat.sharp)},
              {"flat", morphism_to_json(mat.flat)}});
    } else if (*square) {
      auto sq = read_square(read_file(square_file));
      bool commuting = sq.kind == "pullback" ? commutes(sq.f, sq.x, sq.g, sq.y) : commutes(sq.x, sq.f, sq.y, sq.g);
      bool universal = false;
      if (commuting)
        universal = sq.kind == "pullback" ? is_pullback_square(sq.f, sq.g, sq.x, sq.y)
                                          : is_pushout_square(sq.f, sq.g, sq.x, sq.y);
      emit({{"kind", sq.kind}, {"commutes", commuting}, {"holds", universal}});
      return universal ? 0 : kDomainError;
    } else if (*fixtures) {
      if (fixture_name.empty()) {
        json names = json::array();
        for (const auto& n : fixture_names()) names.push_back(n);
        emit({{"fixtures", names}});
        return 0;
      }
      auto fx = fixture(fixture_name);
      if (host_opt) {
        std::size_t h = *host_opt;
        if (h >= fx.hosts.size()) fail(ErrorCode::UnknownFixture, "fixture has no host " + std::to_string(h));
        if (dot) print_dot({{"G", fx.hosts[h]}});
        else emit(graph_to_json(*fx.hosts[h]));
      } else if (rule_only) {
        emit(fixture_to_json(fx).at("rule"));
      } else {
        emit(fixture_to_json(fx));
      }
    } else if (*oracle) {
      auto j = read_file(rule_file);
      auto G = graph_from_json(read_file(graph_file));
      if (engine == "dpo") {
        auto rule = dpo_rule_from_json(j);
        auto ms = enumerate_morphisms(rule.L, G, MorphismClass::RegularMono);
        auto step = dpo_step(rule, G, pick(ms, match_index));
        if (!step) emit({{"defined", false}});
        else emit({{"defined", true}, {"D", graph_to_json(*step->D)}, {"GR", graph_to_json(*step->GR)}});
      } else if (engine == "agree") {
        auto rule = agree_rule_from_json(j);
        auto ms = enumerate_morphisms(rule.L, G, MorphismClass::RegularMono);
        auto step = agree_step(rule, G, pick(ms, match_index));
        emit({{"defined", true},
              {"adherence", morphism_to_json(step.adherence)},
              {"GK", graph_to_json(*step.GK)},
              {"GR", graph_to_json(*step.GR)}});
      } else {
        auto rule = pbpo_rule_from_json(j);
        auto ms = find_pbpo_matches(rule, G, MorphismClass::Any);
        const auto& mm = pick(ms, match_index);
        auto step = pbpo_step(rule, G, mm.m, mm.alpha);
        emit({{"defined", true},
              {"m", morphism_to_json(mm.m)},
              {"alpha", morphism_to_json(mm.alpha)},
              {"GK", graph_to_json(*step.GK)},
              {"GR", graph_to_json(*step.GR)}});
      }
    }
  } catch (const Error& e) {
    json err{{"error", std::string(error_code_name(e.code()))}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return e.code() == ErrorCode::FormatError ? kFormatError : kDomainError;
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "FormatError"}, {"message", e.what()}}.dump() << "\n";
    return kFormatError;
  }
  return 0;
}
