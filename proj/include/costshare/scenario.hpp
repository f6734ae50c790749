// Copyright 2026 The costshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COSTSHARE_SCENARIO_HPP
#define COSTSHARE_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "costshare/mechanisms.hpp"

namespace costshare {

/// A scenario file, validated. Agents are listed in priority order.
struct Scenario {
  Instance instance;
  MechanismKind mechanism = MechanismKind::Capacitated;

  std::vector<int> agents;
  bool agents_as_count = false;  // written as a count, ids 1..N

  std::optional<std::vector<int>> disruptors;  // nullopt = "auto"

  std::optional<double> probability;   // one p for everyone
  std::vector<double> probabilities;   // or one per agent

  std::uint64_t seed = 0;
  int samples = 1000;
  std::optional<int> n;

  /// 1-based machine per agent, in `agents` order (for `shares`).
  std::optional<std::vector<int>> profile;
};

struct SchemaIssue {
  std::string path;
  std::string message;
};

/// All schema problems found in a JSON document; empty when valid.
/// Throws Error(ParseError) on malformed JSON.
std::vector<SchemaIssue> validate_scenario(std::string_view text);

/// Throws ParseError or SchemaError; the SchemaError message lists every
/// issue as "path: message".
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);

/// Canonical JSON form. parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

bool operator==(const Scenario& a, const Scenario& b);

/// Probabilities aligned with `agents` (empty if none were given), and the
/// disruptor set: explicit, or for "auto" the first two agents under the
/// two-disruptor mechanisms and select_disruptors() for stochastic ones.
AgentUniverse make_universe(const Scenario& scenario);

}  // namespace costshare

#endif  // COSTSHARE_SCENARIO_HPP
