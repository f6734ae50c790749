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

#ifndef COSTSHARE_MECHANISMS_HPP
#define COSTSHARE_MECHANISMS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "costshare/shares.hpp"

namespace costshare {

enum class MechanismKind {
  Capacitated,  // "cap2"
  Step,         // "step2"
  Stochastic,   // "stochastic"
};

std::string_view to_string(MechanismKind kind);
/// Throws InvalidArgument on an unknown name.
MechanismKind parse_mechanism_kind(std::string_view name);

/// The agent universe. `agents` is listed in priority order (first = highest).
/// `probabilities` is either empty or aligned with `agents`.
struct AgentUniverse {
  std::vector<int> agents;
  std::vector<int> disruptors;
  std::vector<double> probabilities;

  /// Index of an agent in the priority order; throws InvalidArgument.
  std::size_t position(int agent) const;
  bool is_disruptor(int agent) const;
};

/// Disruptor set for stochastic arrivals, returned in priority order.
/// Identical probabilities use 3 + floor(3 ln(pN) / -ln(1 - p)) clamped to
/// [3, N]; otherwise the top two plus the shortest further prefix (by
/// decreasing probability) whose mass reaches 3 ln(sum p).
std::vector<int> select_disruptors(const AgentUniverse& universe);

struct MechanismOptions {
  /// Skip the segment-length checks (used by the capacity diagnostic).
  bool bypass_validation = false;
};

/// A cost-sharing protocol bound to an instance. Everything the share
/// rules need (segment order, Phi, epsilon ranks, first two machines) is
/// computed once here; the object is immutable afterwards.
///
/// Shares are exposed through small integer keys whose order matches the
/// order of the ShareValues they stand for, so equilibrium searches can
/// compare shares without touching rationals.
class Mechanism {
 public:
  using Key = std::int32_t;

  Mechanism(MechanismKind kind, const Instance& inst, MechanismOptions options = {});

  MechanismKind kind() const noexcept { return kind_; }
  const MechanismOptions& options() const noexcept { return options_; }
  /// Instance after merging equal-cost neighbours; original cost units.
  const Instance& instance() const noexcept { return inst_; }
  std::size_t machine_count() const noexcept { return inst_.size(); }
  const SegmentOrder& order() const noexcept { return order_; }
  const CumulativeCosts& cumulative() const noexcept { return phi_; }
  /// Delayed-OPT trace to full capacity.
  const std::vector<int>& trace() const noexcept { return trace_; }
  /// Delayed-OPT loads for n jobs (prefix of the full trace).
  LoadVector online_loads(int n) const;
  const FirstMachines& first_machines() const noexcept { return first_; }

  Rational phi(int machine, int segment) const { return phi_.of({machine, segment}); }
  ShareValue epsilon(int machine, int segment) const { return phi_.epsilon({machine, segment}); }

  /// Share of one agent on `machine`, where the machine carries `load`
  /// agents of which `disruptors_on` are disruptors and `regulars_on`
  /// regulars (the agent included). `rank` is the agent's 1-based position
  /// among agents of its own kind on the machine; values above 3 behave
  /// like 3. `present_disruptors` counts the disruptors in the game.
  Key share_key(int machine, int load, int disruptors_on, int regulars_on, bool disruptor, int rank,
                int present_disruptors) const;
  const ShareValue& value(Key key) const { return values_[static_cast<std::size_t>(key)]; }
  Key zero_key() const noexcept { return zero_; }
  Key infinite_key() const noexcept { return infinite_; }

 private:
  struct LoadInfo {
    int lambda = 0;
    int excess = 0;
    int segment_length = 0;
    Key cost = 0;
    Key phi = 0;
    Key eps = 0;
    Key eps_prev = -1;
  };

  Key key_of(const ShareValue& v) const;
  Key capacitated_key(int machine, int load, int d_on, int r_on, bool disruptor, int rank, int present) const;
  Key step_key(int machine, int load, int d_on, int r_on, bool disruptor, int rank, int present) const;
  Key regular_step_key(const LoadInfo& info, int d_on, int rank) const;

  MechanismKind kind_;
  MechanismOptions options_;
  Instance inst_;
  std::vector<int> trace_;
  SegmentOrder order_;
  CumulativeCosts phi_;
  FirstMachines first_;
  std::vector<ShareValue> values_;
  Key zero_ = 0;
  Key infinite_ = 0;
  std::vector<std::vector<LoadInfo>> info_;  // [machine][load - 1]
};

/// Shares of all agents of a profile. Agents are given in priority order:
/// machine_of[i] is the machine of the i-th highest-priority present agent.
std::vector<ShareValue> evaluate_shares(const Mechanism& mech, std::span<const int> machine_of,
                                        std::span<const char> is_disruptor);

/// Kind-checked entry points; throw WrongMechanism on a mismatch.
std::vector<ShareValue> shares_capacitated(const Mechanism& mech, std::span<const int> machine_of,
                                           std::span<const char> is_disruptor);
std::vector<ShareValue> shares_step(const Mechanism& mech, std::span<const int> machine_of,
                                    std::span<const char> is_disruptor);
std::vector<ShareValue> shares_stochastic(const Mechanism& mech, std::span<const int> machine_of,
                                          std::span<const char> is_disruptor);

}  // namespace costshare

#endif  // COSTSHARE_MECHANISMS_HPP
