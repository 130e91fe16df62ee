#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pbpo/interop.hpp"
#include "pbpo/io.hpp"
#include "pbpo/rewrite.hpp"

namespace pbpo {

// A built-in worked example: a rule in its native format plus sample hosts.
struct Fixture {
  std::string name;
  std::string summary;
  std::string format;  // "pbpo+", "pbpo" or "agree"
  std::optional<Rule> rule;
  std::optional<PbpoRule> pbpo;
  std::optional<AgreeRule> agree;
  std::vector<GraphPtr> hosts;
  // A distinguished (m, alpha) on hosts[0]; not necessarily a strong match.
  std::optional<StrongMatch> match;
};

const std::vector<std::string>& fixture_names();
Fixture fixture(const std::string& name);  // throws UnknownFixture

// {"name", "summary", "rule": <rule document>, "hosts": [...], "match"?}
json fixture_to_json(const Fixture& f);

}  // namespace pbpo
