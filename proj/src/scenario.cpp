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

#include "costshare/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "costshare/error.hpp"

namespace costshare {

namespace {

using nlohmann::json;

const std::set<std::string> kTopFields = {"machines", "mechanism", "agents", "disruptors", "probabilities",
                                          "seed",     "samples",   "n",      "profile"};

class Reader {
 public:
  std::vector<SchemaIssue> issues;

  void fail(const std::string& path, const std::string& message) { issues.push_back({path, message}); }

  void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.contains(key)) fail(path + "." + key, "unknown field");
    }
  }

  std::optional<int> integer(const json& v, const std::string& path, long long lo, long long hi) {
    if (!v.is_number_integer()) {
      fail(path, "expected an integer");
      return std::nullopt;
    }
    const auto x = v.get<long long>();
    if (x < lo || x > hi) {
      fail(path, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      return std::nullopt;
    }
    return static_cast<int>(x);
  }

  std::optional<double> probability(const json& v, const std::string& path) {
    if (!v.is_number()) {
      fail(path, "expected a number");
      return std::nullopt;
    }
    const double p = v.get<double>();
    if (!(p >= 0.0 && p <= 1.0)) {
      fail(path, "probability must lie in [0, 1]");
      return std::nullopt;
    }
    return p;
  }

  std::optional<Rational> rational(const json& v, const std::string& path) {
    std::string text;
    if (v.is_string()) {
      text = v.get<std::string>();
    } else if (v.is_number()) {
      text = v.dump();
    } else {
      fail(path, "expected a rational string such as \"3/2\"");
      return std::nullopt;
    }
    try {
      return parse_rational(text);
    } catch (const Error& e) {
      fail(path, e.what());
      return std::nullopt;
    }
  }

  std::optional<StepCostFunction> machine(const json& v, const std::string& path) {
    if (!v.is_object()) {
      fail(path, "expected an object");
      return std::nullopt;
    }
    reject_unknown(v, {"segments", "tail"}, path);
    if (v.contains("tail") && v["tail"] != "infinite") fail(path + ".tail", "only \"infinite\" is supported");
    if (!v.contains("segments") || !v["segments"].is_array() || v["segments"].empty()) {
      fail(path + ".segments", "expected a non-empty array");
      return std::nullopt;
    }
    std::vector<Segment> segments;
    bool ok = true;
    for (std::size_t k = 0; k < v["segments"].size(); ++k) {
      const json& s = v["segments"][k];
      const std::string sp = path + ".segments[" + std::to_string(k) + "]";
      if (!s.is_object()) {
        fail(sp, "expected an object");
        ok = false;
        continue;
      }
      reject_unknown(s, {"len", "cost"}, sp);
      std::optional<int> len;
      std::optional<Rational> cost;
      if (s.contains("len")) {
        len = integer(s["len"], sp + ".len", 1, 1'000'000);
      } else {
        fail(sp + ".len", "missing");
      }
      if (s.contains("cost")) {
        cost = rational(s["cost"], sp + ".cost");
        if (cost && *cost <= 0) {
          fail(sp + ".cost", "must be positive");
          cost.reset();
        }
      } else {
        fail(sp + ".cost", "missing");
      }
      if (!len || !cost) {
        ok = false;
        continue;
      }
      if (!segments.empty() && *cost < segments.back().cost) {
        fail(sp + ".cost", "costs must be non-decreasing");
        ok = false;
      }
      segments.push_back({*len, *cost});
    }
    if (!ok) return std::nullopt;
    return StepCostFunction(std::move(segments));
  }

  std::optional<std::vector<int>> id_list(const json& v, const std::string& path) {
    if (!v.is_array()) {
      fail(path, "expected an array of agent ids");
      return std::nullopt;
    }
    std::vector<int> ids;
    std::set<int> seen;
    bool ok = true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string ip = path + "[" + std::to_string(i) + "]";
      auto id = integer(v[i], ip, 0, 1'000'000'000);
      if (!id) {
        ok = false;
        continue;
      }
      if (!seen.insert(*id).second) {
        fail(ip, "duplicate agent " + std::to_string(*id));
        ok = false;
      }
      ids.push_back(*id);
    }
    if (!ok) return std::nullopt;
    return ids;
  }
};

std::optional<Scenario> read(const json& doc, Reader& rd) {
  if (!doc.is_object()) {
    rd.fail("$", "expected an object");
    return std::nullopt;
  }
  for (const auto& [key, value] : doc.items()) {
    if (!kTopFields.contains(key)) rd.fail("$." + key, "unknown field");
  }
  Scenario sc;
  bool ok = true;

  std::vector<StepCostFunction> machines;
  if (!doc.contains("machines") || !doc["machines"].is_array() || doc["machines"].empty()) {
    rd.fail("$.machines", "expected a non-empty array");
    ok = false;
  } else {
    for (std::size_t j = 0; j < doc["machines"].size(); ++j) {
      auto f = rd.machine(doc["machines"][j], "$.machines[" + std::to_string(j) + "]");
      if (f) {
        machines.push_back(std::move(*f));
      } else {
        ok = false;
      }
    }
  }
  sc.instance = Instance(machines);

  if (!doc.contains("mechanism")) {
    rd.fail("$.mechanism", "missing");
    ok = false;
  } else if (!doc["mechanism"].is_string()) {
    rd.fail("$.mechanism", "expected \"cap2\", \"step2\" or \"stochastic\"");
    ok = false;
  } else {
    try {
      sc.mechanism = parse_mechanism_kind(doc["mechanism"].get<std::string>());
    } catch (const Error&) {
      rd.fail("$.mechanism", "expected \"cap2\", \"step2\" or \"stochastic\"");
      ok = false;
    }
  }
  if (ok && sc.mechanism == MechanismKind::Capacitated) {
    for (std::size_t j = 0; j < machines.size(); ++j) {
      if (machines[j].segment_count() != 1) {
        rd.fail("$.machines[" + std::to_string(j) + "].segments", "cap2 requires exactly one segment per machine");
        ok = false;
      }
    }
  }

  if (!doc.contains("agents")) {
    rd.fail("$.agents", "missing");
    ok = false;
  } else if (doc["agents"].is_number()) {
    auto count = rd.integer(doc["agents"], "$.agents", 0, 1'000'000);
    if (count) {
      sc.agents_as_count = true;
      for (int i = 1; i <= *count; ++i) sc.agents.push_back(i);
    } else {
      ok = false;
    }
  } else if (auto ids = rd.id_list(doc["agents"], "$.agents")) {
    sc.agents = std::move(*ids);
  } else {
    ok = false;
  }
  const std::set<int> known(sc.agents.begin(), sc.agents.end());

  if (doc.contains("disruptors") && doc["disruptors"] != "auto") {
    if (auto ids = rd.id_list(doc["disruptors"], "$.disruptors")) {
      for (std::size_t i = 0; i < ids->size(); ++i) {
        if (!known.contains((*ids)[i])) {
          rd.fail("$.disruptors[" + std::to_string(i) + "]", "agent " + std::to_string((*ids)[i]) + " is not listed");
          ok = false;
        }
      }
      if (ok && sc.mechanism != MechanismKind::Stochastic && ids->size() != 2) {
        rd.fail("$.disruptors", "cap2 and step2 take exactly two disruptors");
        ok = false;
      }
      sc.disruptors = std::move(*ids);
    } else {
      ok = false;
    }
  }
  if (ok && sc.mechanism != MechanismKind::Stochastic && !sc.disruptors && sc.agents.size() < 2) {
    rd.fail("$.agents", "cap2 and step2 need at least two agents for the disruptor pair");
    ok = false;
  }

  if (doc.contains("probabilities")) {
    const json& p = doc["probabilities"];
    if (p.is_array()) {
      if (p.size() != sc.agents.size()) {
        rd.fail("$.probabilities", "expected one probability per agent");
        ok = false;
      }
      for (std::size_t i = 0; i < p.size(); ++i) {
        auto v = rd.probability(p[i], "$.probabilities[" + std::to_string(i) + "]");
        if (v) {
          sc.probabilities.push_back(*v);
        } else {
          ok = false;
        }
      }
    } else if (auto v = rd.probability(p, "$.probabilities")) {
      sc.probability = *v;
    } else {
      ok = false;
    }
  } else if (sc.mechanism == MechanismKind::Stochastic) {
    rd.fail("$.probabilities", "required by the stochastic mechanism");
    ok = false;
  }

  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (s.is_number_unsigned()) {
      sc.seed = s.get<std::uint64_t>();
    } else {
      rd.fail("$.seed", "expected a non-negative integer");
      ok = false;
    }
  }
  if (doc.contains("samples")) {
    if (auto v = rd.integer(doc["samples"], "$.samples", 1, 100'000'000)) {
      sc.samples = *v;
    } else {
      ok = false;
    }
  }
  if (doc.contains("n")) {
    if (auto v = rd.integer(doc["n"], "$.n", 0, 1'000'000)) {
      sc.n = *v;
    } else {
      ok = false;
    }
  }
  if (doc.contains("profile")) {
    const json& p = doc["profile"];
    if (!p.is_array() || p.size() != sc.agents.size()) {
      rd.fail("$.profile", "expected one machine per agent");
      ok = false;
    } else {
      std::vector<int> profile;
      for (std::size_t i = 0; i < p.size(); ++i) {
        auto v = rd.integer(p[i], "$.profile[" + std::to_string(i) + "]", 1, static_cast<long long>(machines.size()));
        if (v) {
          profile.push_back(*v);
        } else {
          ok = false;
        }
      }
      sc.profile = std::move(profile);
    }
  }
  if (!ok || !rd.issues.empty()) return std::nullopt;
  return sc;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace

std::vector<SchemaIssue> validate_scenario(std::string_view text) {
  const json doc = parse_json(text);
  Reader rd;
  read(doc, rd);
  return rd.issues;
}

Scenario parse_scenario(std::string_view text) {
  const json doc = parse_json(text);
  Reader rd;
  auto sc = read(doc, rd);
  if (!sc) {
    std::string msg;
    for (const auto& issue : rd.issues) {
      if (!msg.empty()) msg += "; ";
      msg += issue.path + ": " + issue.message;
    }
    throw Error(ErrorCode::SchemaError, msg);
  }
  return *sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& sc) {
  json doc;
  json machines = json::array();
  for (const auto& f : sc.instance.machines()) {
    json segs = json::array();
    for (const auto& s : f.segments()) segs.push_back({{"len", s.length}, {"cost", to_string(s.cost)}});
    machines.push_back({{"segments", segs}, {"tail", "infinite"}});
  }
  doc["machines"] = machines;
  doc["mechanism"] = std::string(to_string(sc.mechanism));
  if (sc.agents_as_count) {
    doc["agents"] = sc.agents.size();
  } else {
    doc["agents"] = sc.agents;
  }
  if (sc.disruptors) {
    doc["disruptors"] = *sc.disruptors;
  } else {
    doc["disruptors"] = "auto";
  }
  if (sc.probability) {
    doc["probabilities"] = *sc.probability;
  } else if (!sc.probabilities.empty()) {
    doc["probabilities"] = sc.probabilities;
  }
  doc["seed"] = sc.seed;
  doc["samples"] = sc.samples;
  if (sc.n) doc["n"] = *sc.n;
  if (sc.profile) doc["profile"] = *sc.profile;
  return doc.dump(2) + "\n";
}

bool operator==(const Scenario& a, const Scenario& b) {
  return a.instance == b.instance && a.mechanism == b.mechanism && a.agents == b.agents &&
         a.agents_as_count == b.agents_as_count && a.disruptors == b.disruptors && a.probability == b.probability &&
         a.probabilities == b.probabilities && a.seed == b.seed && a.samples == b.samples && a.n == b.n &&
         a.profile == b.profile;
}

AgentUniverse make_universe(const Scenario& sc) {
  AgentUniverse u;
  u.agents = sc.agents;
  if (sc.probability) {
    u.probabilities.assign(sc.agents.size(), *sc.probability);
  } else {
    u.probabilities = sc.probabilities;
  }
  if (sc.disruptors) {
    u.disruptors = *sc.disruptors;
  } else if (sc.mechanism == MechanismKind::Stochastic) {
    u.disruptors = select_disruptors(u);
  } else {
    u.disruptors.assign(sc.agents.begin(), sc.agents.begin() + std::min<std::size_t>(2, sc.agents.size()));
  }
  return u;
}

}  // namespace costshare
