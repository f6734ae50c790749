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

#ifndef COSTSHARE_GAME_ENGINE_HPP
#define COSTSHARE_GAME_ENGINE_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "costshare/mechanisms.hpp"

namespace costshare {

/// Machine (0-based) of each present agent, agents in priority order.
using Profile = std::vector<int>;

/// A scheduling game: a mechanism plus the set of present agents.
/// Present agents are re-indexed 0..n-1 by priority; agent_id() maps back.
class Game {
 public:
  Game(std::shared_ptr<const Mechanism> mechanism, const AgentUniverse& universe, std::vector<int> present);

  /// `disruptors` of `agents` anonymous agents: the first `disruptors`
  /// get ids 1..d, regulars follow. Only relative order within each kind
  /// matters to the share rules, so this stands in for any game with the
  /// same counts.
  static Game from_counts(std::shared_ptr<const Mechanism> mechanism, int disruptors, int regulars);

  const Mechanism& mechanism() const noexcept { return *mech_; }
  std::shared_ptr<const Mechanism> mechanism_ptr() const noexcept { return mech_; }
  int agent_count() const noexcept { return static_cast<int>(ids_.size()); }
  int machine_count() const noexcept { return static_cast<int>(mech_->machine_count()); }
  int agent_id(int index) const { return ids_.at(static_cast<std::size_t>(index)); }
  bool is_disruptor(int index) const { return flags_.at(static_cast<std::size_t>(index)) != 0; }
  const std::vector<char>& disruptor_flags() const noexcept { return flags_; }
  int present_disruptors() const noexcept { return disruptors_; }
  int regular_count() const noexcept { return agent_count() - disruptors_; }

 private:
  Game() = default;

  std::shared_ptr<const Mechanism> mech_;
  std::vector<int> ids_;
  std::vector<char> flags_;
  int disruptors_ = 0;
};

LoadVector loads_of(const Game& game, const Profile& profile);
ExtendedCost social_cost(const Game& game, const Profile& profile);

struct Charged {
  ExtendedCost macro;
  std::int64_t micro = 0;
};
Charged total_charged(const Game& game, const Profile& profile);

std::vector<ShareValue> profile_shares(const Game& game, const Profile& profile);

struct BestResponse {
  int machine = 0;
  ShareValue share;
};
/// Cheapest machine for `agent` with everyone else fixed. Ties keep the
/// current machine, otherwise the lowest index wins.
BestResponse best_response(const Game& game, const Profile& profile, int agent);

struct Deviation {
  int agent = 0;
  int machine = 0;
  ShareValue current;
  ShareValue improved;
};
struct NashCheck {
  bool stable = true;
  std::optional<Deviation> witness;
};
NashCheck is_nash(const Game& game, const Profile& profile);

struct EnumerateOptions {
  std::uint64_t limit = 10'000'000;
  int workers = 1;
};
/// All pure Nash equilibria in lexicographic profile order (agent 0 is the
/// most significant digit). Throws TooLarge when m^n exceeds the limit.
std::vector<Profile> enumerate_pne(const Game& game, const EnumerateOptions& options = {});

struct DynamicsResult {
  enum class Outcome { Converged, Cycled, Exhausted };
  Outcome outcome = Outcome::Exhausted;
  Profile profile;
  int rounds = 0;
  /// Round-start profiles forming the cycle (Cycled only).
  std::vector<Profile> cycle;
};
/// Round-robin best responses in priority order.
DynamicsResult br_dynamics(const Game& game, const Profile& start, int max_rounds);

/// Builds an equilibrium from the Delayed-OPT allocation following the
/// stability arguments for each mechanism. Throws MissingDisruptors when a
/// two-disruptor mechanism lacks its pair, and ConstructionNotStable if
/// the result is not an equilibrium.
Profile construct_stable_profile(const Game& game);

}  // namespace costshare

#endif  // COSTSHARE_GAME_ENGINE_HPP
