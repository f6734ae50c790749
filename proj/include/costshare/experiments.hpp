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

#ifndef COSTSHARE_EXPERIMENTS_HPP
#define COSTSHARE_EXPERIMENTS_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "costshare/game_engine.hpp"

namespace costshare {

/// Short stable hash of an instance's segments, for report rows.
std::string instance_digest(const Instance& inst);

struct PoAReport {
  std::string digest;
  MechanismKind kind = MechanismKind::Capacitated;
  int agents = 0;
  int disruptors = 0;
  ExtendedCost worst_charged;  // macro part of the worst equilibrium
  std::int64_t worst_micro = 0;
  Rational opt_cost;
  ExtendedCost poa;
  std::size_t pne_count = 0;
  /// Every equilibrium has the Delayed-OPT load vector. Only meaningful
  /// for the two-disruptor mechanisms (always checked, reported for all).
  bool online_loads_only = true;
  LoadVector online_loads;
};

/// Worst equilibrium by charged macro cost over OPT(|S|); an empty game
/// has poa 1. Throws NoEquilibrium when the game has none, TooLarge when
/// enumeration is out of reach.
PoAReport poa(const Game& game, const EnumerateOptions& options = {});

struct SweepRow {
  int n = 0;
  Rational online_cost;
  Rational opt_cost;
  Rational ratio;
};
struct SweepReport {
  std::vector<SweepRow> rows;
  Rational max_ratio{0};
  int argmax = 0;
  bool all_below_four = true;
};
/// Competitive ratio of Delayed-OPT for n = 1..n_max, in original cost units.
SweepReport competitive_sweep(const Instance& inst, int n_max);

/// Checks of the equilibrium cost bounds for the stochastic mechanism:
/// with d >= 3 every equilibrium has the online loads and charges at most
/// (d + 3) C(A); with d <= 2 it charges at most |S| C(A).
struct BoundCheck {
  int disruptors = 0;
  int regulars = 0;
  Rational online_cost;
  std::size_t pne_count = 0;
  Rational worst_charged{0};
  Rational limit{0};
  bool bound_holds = true;
  bool loads_match = true;
};
BoundCheck equilibrium_bounds(const Game& game, const EnumerateOptions& options = {});

struct ExpectedPoAOptions {
  EnumerateOptions enumerate;
  /// Leave empty realizations out of the mean instead of counting them as 1.
  bool skip_empty = false;
};

struct SampleRow {
  int index = 0;
  int agents = 0;
  int disruptors = 0;
  double poa = 1.0;
  bool exact = true;
  bool empty = false;
};

struct ExpectedPoAReport {
  int samples = 0;
  std::uint64_t seed = 0;
  double expected_agents = 0.0;  // sum of p_i
  int disruptor_set = 0;          // |D|
  double mean_poa = 0.0;
  double std_error = 0.0;
  double bound = 0.0;             // 3 ln(expected_agents) + 18
  double low_quantity = 0.0;      // mean of |S| * [d <= 2]
  double low_quantity_error = 0.0;
  int low_count = 0;
  double low_mean_poa = 0.0;
  int high_count = 0;
  double high_mean_poa = 0.0;
  int exact_samples = 0;
  int structural_samples = 0;
  int empty_samples = 0;
  std::vector<SampleRow> rows;
};

/// Monte Carlo estimate of the expected price of anarchy under the
/// stochastic mechanism. Sample i draws presence with a generator seeded
/// from (seed, i), so results do not depend on evaluation order.
ExpectedPoAReport expected_poa(std::shared_ptr<const Mechanism> mechanism, const AgentUniverse& universe,
                               int samples, std::uint64_t seed, const ExpectedPoAOptions& options = {});

struct DiagnosticCase {
  int agents = 0;
  int disruptors = 0;
  std::size_t pne_count = 0;
};
struct DiagnosticReport {
  std::vector<DiagnosticCase> cases;
  bool any_empty = false;
};
/// Capacitated rules applied with validation bypassed, for every game size
/// up to max_agents with two disruptors and with a single one.
DiagnosticReport capacity_diagnostic(const Instance& inst, int max_agents, const EnumerateOptions& options = {});

}  // namespace costshare

#endif  // COSTSHARE_EXPERIMENTS_HPP
