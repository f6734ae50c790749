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

#include "costshare/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <random>

#include "costshare/error.hpp"

namespace costshare {

std::string instance_digest(const Instance& inst) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
  };
  for (const auto& f : inst.machines()) {
    mix("|");
    for (const Segment& s : f.segments()) mix(std::to_string(s.length) + ":" + to_string(s.cost) + ";");
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

PoAReport poa(const Game& game, const EnumerateOptions& options) {
  const Mechanism& mech = game.mechanism();
  PoAReport rep;
  rep.digest = instance_digest(mech.instance());
  rep.kind = mech.kind();
  rep.agents = game.agent_count();
  rep.disruptors = game.present_disruptors();
  rep.online_loads = mech.online_loads(rep.agents);
  rep.opt_cost = OptOracle(mech.instance()).cost(rep.agents).value();

  const std::vector<Profile> pne = enumerate_pne(game, options);
  rep.pne_count = pne.size();
  if (pne.empty()) throw Error(ErrorCode::NoEquilibrium, "game has no pure Nash equilibrium");
  bool first = true;
  for (const Profile& p : pne) {
    if (loads_of(game, p) != rep.online_loads) rep.online_loads_only = false;
    const Charged c = total_charged(game, p);
    if (first || rep.worst_charged < c.macro || (rep.worst_charged == c.macro && rep.worst_micro < c.micro)) {
      rep.worst_charged = c.macro;
      rep.worst_micro = c.micro;
      first = false;
    }
  }
  if (rep.agents == 0) {
    rep.poa = ExtendedCost(1);
  } else if (rep.worst_charged.is_infinite()) {
    rep.poa = ExtendedCost::infinite();
  } else {
    rep.poa = ExtendedCost(rep.worst_charged.value() / rep.opt_cost);
  }
  return rep;
}

SweepReport competitive_sweep(const Instance& inst, int n_max) {
  if (n_max > inst.total_capacity()) {
    throw Error(ErrorCode::InfeasibleDemand,
                std::to_string(n_max) + " jobs exceed total capacity " + std::to_string(inst.total_capacity()));
  }
  DelayedOpt run(inst);
  const OptOracle oracle(inst);
  SweepReport rep;
  for (int n = 1; n <= n_max; ++n) {
    ratio_bounds(run, n);
    SweepRow row;
    row.n = n;
    row.online_cost = social_cost(inst, run.loads(n)).value();
    row.opt_cost = oracle.cost(n).value();
    row.ratio = row.online_cost / row.opt_cost;
    if (!(row.ratio < 4)) rep.all_below_four = false;
    if (rep.max_ratio < row.ratio) {
      rep.max_ratio = row.ratio;
      rep.argmax = n;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

BoundCheck equilibrium_bounds(const Game& game, const EnumerateOptions& options) {
  const Mechanism& mech = game.mechanism();
  BoundCheck out;
  out.disruptors = game.present_disruptors();
  out.regulars = game.regular_count();
  const int n = game.agent_count();
  const LoadVector online = mech.online_loads(n);
  out.online_cost = social_cost(mech.instance(), online).value();
  const int factor = out.disruptors >= 3 ? out.disruptors + 3 : n;
  out.limit = out.online_cost * factor;
  const std::vector<Profile> pne = enumerate_pne(game, options);
  out.pne_count = pne.size();
  for (const Profile& p : pne) {
    const Charged c = total_charged(game, p);
    if (c.macro.is_infinite()) {
      out.bound_holds = false;
      continue;
    }
    out.worst_charged = std::max(out.worst_charged, c.macro.value());
    if (out.limit < c.macro.value()) out.bound_holds = false;
    if (out.disruptors >= 3 && loads_of(game, p) != online) out.loads_match = false;
  }
  return out;
}

namespace {

struct SampleValue {
  double poa = 1.0;
  bool exact = true;
};

SampleValue evaluate_counts(const std::shared_ptr<const Mechanism>& mech, int d, int r, const OptOracle& oracle,
                            const EnumerateOptions& options) {
  const Game game = Game::from_counts(mech, d, r);
  const int n = d + r;
  const Rational opt = oracle.cost(n).value();
  try {
    const PoAReport rep = poa(game, options);
    if (rep.poa.is_infinite()) throw Error(ErrorCode::InvariantViolated, "equilibrium with infinite charge");
    return {to_double(rep.poa.value()), true};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooLarge) throw;
  }
  // Upper envelope from the equilibrium cost bounds.
  const Rational online = social_cost(mech->instance(), mech->online_loads(n)).value();
  const int factor = d >= 3 ? d + 3 : n;
  return {to_double(online * factor / opt), false};
}

struct Moments {
  double sum = 0.0;
  double sum_sq = 0.0;
  int count = 0;

  void add(double x) {
    sum += x;
    sum_sq += x * x;
    ++count;
  }
  double mean() const { return count ? sum / count : 0.0; }
  double std_error() const {
    if (count < 2) return 0.0;
    const double m = mean();
    const double var = std::max(0.0, (sum_sq - count * m * m) / (count - 1));
    return std::sqrt(var / count);
  }
};

}  // namespace

ExpectedPoAReport expected_poa(std::shared_ptr<const Mechanism> mechanism, const AgentUniverse& universe,
                               int samples, std::uint64_t seed, const ExpectedPoAOptions& options) {
  if (!mechanism) throw Error(ErrorCode::InvalidArgument, "missing mechanism");
  if (mechanism->kind() != MechanismKind::Stochastic) {
    throw Error(ErrorCode::WrongMechanism, "expected PoA needs the stochastic mechanism");
  }
  if (universe.probabilities.size() != universe.agents.size()) {
    throw Error(ErrorCode::MissingProbabilities, "every agent needs an arrival probability");
  }
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "need at least one sample");

  ExpectedPoAReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.expected_agents = std::accumulate(universe.probabilities.begin(), universe.probabilities.end(), 0.0);
  rep.disruptor_set = static_cast<int>(universe.disruptors.size());
  rep.bound = 3.0 * std::log(rep.expected_agents) + 18.0;

  std::vector<char> dis(universe.agents.size());
  for (std::size_t i = 0; i < universe.agents.size(); ++i) dis[i] = universe.is_disruptor(universe.agents[i]) ? 1 : 0;

  const OptOracle oracle(mechanism->instance());
  std::map<std::pair<int, int>, SampleValue> memo;
  Moments all, low, high, small_d;
  rep.rows.reserve(static_cast<std::size_t>(samples));
  for (int s = 0; s < samples; ++s) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(s)};
    std::mt19937_64 gen(seq);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    int d = 0, r = 0;
    for (std::size_t i = 0; i < universe.agents.size(); ++i) {
      if (coin(gen) < universe.probabilities[i]) (dis[i] ? d : r) += 1;
    }
    SampleRow row;
    row.index = s;
    row.agents = d + r;
    row.disruptors = d;
    small_d.add(d <= 2 ? static_cast<double>(d + r) : 0.0);
    if (d + r == 0) {
      row.empty = true;
      ++rep.empty_samples;
      rep.rows.push_back(row);
      if (options.skip_empty) continue;
    } else {
      auto it = memo.find({d, r});
      if (it == memo.end()) it = memo.emplace(std::make_pair(d, r), evaluate_counts(mechanism, d, r, oracle, options.enumerate)).first;
      row.poa = it->second.poa;
      row.exact = it->second.exact;
      ++(row.exact ? rep.exact_samples : rep.structural_samples);
      rep.rows.push_back(row);
    }
    all.add(row.poa);
    (d <= 2 ? low : high).add(row.poa);
  }
  rep.mean_poa = all.count ? all.mean() : 1.0;
  rep.std_error = all.std_error();
  rep.low_count = low.count;
  rep.low_mean_poa = low.mean();
  rep.high_count = high.count;
  rep.high_mean_poa = high.mean();
  rep.low_quantity = small_d.mean();
  rep.low_quantity_error = small_d.std_error();
  return rep;
}

DiagnosticReport capacity_diagnostic(const Instance& inst, int max_agents, const EnumerateOptions& options) {
  MechanismOptions bypass;
  bypass.bypass_validation = true;
  auto mech = std::make_shared<const Mechanism>(MechanismKind::Capacitated, inst, bypass);
  DiagnosticReport rep;
  const int top = std::min(max_agents, inst.total_capacity());
  for (int d : {2, 1}) {
    for (int n = d; n <= top; ++n) {
      const Game game = Game::from_counts(mech, d, n - d);
      DiagnosticCase c{n, d, enumerate_pne(game, options).size()};
      if (c.pne_count == 0) rep.any_empty = true;
      rep.cases.push_back(c);
    }
  }
  return rep;
}

}  // namespace costshare
