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

#include "costshare/game_engine.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <thread>

#include "costshare/error.hpp"

namespace costshare {

Game::Game(std::shared_ptr<const Mechanism> mechanism, const AgentUniverse& universe, std::vector<int> present)
    : mech_(std::move(mechanism)) {
  if (!mech_) throw Error(ErrorCode::InvalidArgument, "game needs a mechanism");
  std::vector<std::pair<std::size_t, int>> ranked;
  ranked.reserve(present.size());
  for (int id : present) ranked.emplace_back(universe.position(id), id);
  std::sort(ranked.begin(), ranked.end());
  for (std::size_t i = 1; i < ranked.size(); ++i) {
    if (ranked[i].second == ranked[i - 1].second) {
      throw Error(ErrorCode::InvalidArgument, "agent " + std::to_string(ranked[i].second) + " listed twice");
    }
  }
  for (const auto& [pos, id] : ranked) {
    ids_.push_back(id);
    const bool dis = universe.is_disruptor(id);
    flags_.push_back(dis ? 1 : 0);
    disruptors_ += dis ? 1 : 0;
  }
  if (mech_->kind() != MechanismKind::Stochastic) {
    if (!mech_->options().bypass_validation && universe.disruptors.size() != 2) {
      throw Error(ErrorCode::InvalidArgument, "two-disruptor mechanisms need exactly two disruptors");
    }
    if (static_cast<std::size_t>(disruptors_) != universe.disruptors.size()) {
      throw Error(ErrorCode::MissingDisruptors, "every disruptor must be present");
    }
  }
}

Game Game::from_counts(std::shared_ptr<const Mechanism> mechanism, int disruptors, int regulars) {
  if (disruptors < 0 || regulars < 0) throw Error(ErrorCode::InvalidArgument, "negative agent count");
  if (mechanism && mechanism->kind() != MechanismKind::Stochastic && !mechanism->options().bypass_validation &&
      disruptors != 2) {
    throw Error(ErrorCode::InvalidArgument, "two-disruptor mechanisms need exactly two disruptors");
  }
  Game g;
  g.mech_ = std::move(mechanism);
  for (int i = 0; i < disruptors + regulars; ++i) {
    g.ids_.push_back(i + 1);
    g.flags_.push_back(i < disruptors ? 1 : 0);
  }
  g.disruptors_ = disruptors;
  return g;
}

namespace {

struct Summary {
  int load = 0;
  int d = 0;
  int r = 0;
  int top_d[2] = {-1, -1};
  int top_r[2] = {-1, -1};
};

void check_profile(const Game& game, const Profile& profile) {
  if (static_cast<int>(profile.size()) != game.agent_count()) {
    throw Error(ErrorCode::InvalidArgument, "profile has " + std::to_string(profile.size()) + " entries for " +
                                                std::to_string(game.agent_count()) + " agents");
  }
  for (int j : profile) {
    if (j < 0 || j >= game.machine_count()) throw Error(ErrorCode::InvalidArgument, "machine index out of range");
  }
}

void summarize(const Game& game, const Profile& profile, std::vector<Summary>& out) {
  out.assign(static_cast<std::size_t>(game.machine_count()), Summary{});
  const auto& flags = game.disruptor_flags();
  for (std::size_t i = 0; i < profile.size(); ++i) {
    Summary& s = out[static_cast<std::size_t>(profile[i])];
    ++s.load;
    int* top = flags[i] ? s.top_d : s.top_r;
    int& count = flags[i] ? s.d : s.r;
    if (count < 2) top[count] = static_cast<int>(i);
    ++count;
  }
}

int own_rank(const int* top, int agent) {
  if (top[0] == agent) return 1;
  if (top[1] == agent) return 2;
  return 3;
}

int joining_rank(const int* top, int agent) {
  return 1 + (top[0] >= 0 && top[0] < agent ? 1 : 0) + (top[1] >= 0 && top[1] < agent ? 1 : 0);
}

Mechanism::Key current_key(const Game& game, const std::vector<Summary>& sums, const Profile& profile, int agent) {
  const int j = profile[static_cast<std::size_t>(agent)];
  const Summary& s = sums[static_cast<std::size_t>(j)];
  const bool dis = game.is_disruptor(agent);
  return game.mechanism().share_key(j, s.load, s.d, s.r, dis, own_rank(dis ? s.top_d : s.top_r, agent),
                                    game.present_disruptors());
}

Mechanism::Key moved_key(const Game& game, const std::vector<Summary>& sums, int agent, int target) {
  const Summary& s = sums[static_cast<std::size_t>(target)];
  const bool dis = game.is_disruptor(agent);
  return game.mechanism().share_key(target, s.load + 1, s.d + (dis ? 1 : 0), s.r + (dis ? 0 : 1), dis,
                                    joining_rank(dis ? s.top_d : s.top_r, agent), game.present_disruptors());
}

// First profitable deviation, scanning agents in priority order.
std::optional<std::pair<int, int>> find_deviation(const Game& game, const Profile& profile,
                                                   const std::vector<Summary>& sums) {
  const int m = game.machine_count();
  for (int i = 0; i < game.agent_count(); ++i) {
    const Mechanism::Key cur = current_key(game, sums, profile, i);
    if (cur == game.mechanism().zero_key()) continue;
    const int own = profile[static_cast<std::size_t>(i)];
    for (int j = 0; j < m; ++j) {
      if (j != own && moved_key(game, sums, i, j) < cur) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

}  // namespace

LoadVector loads_of(const Game& game, const Profile& profile) {
  check_profile(game, profile);
  LoadVector loads(static_cast<std::size_t>(game.machine_count()), 0);
  for (int j : profile) ++loads[static_cast<std::size_t>(j)];
  return loads;
}

ExtendedCost social_cost(const Game& game, const Profile& profile) {
  return social_cost(game.mechanism().instance(), loads_of(game, profile));
}

std::vector<ShareValue> profile_shares(const Game& game, const Profile& profile) {
  check_profile(game, profile);
  return evaluate_shares(game.mechanism(), profile, game.disruptor_flags());
}

Charged total_charged(const Game& game, const Profile& profile) {
  Charged out;
  for (const ShareValue& s : profile_shares(game, profile)) {
    if (s.is_infinite()) {
      out.macro = ExtendedCost::infinite();
      continue;
    }
    out.macro += ExtendedCost(s.macro());
    out.micro += s.micro();
  }
  return out;
}

BestResponse best_response(const Game& game, const Profile& profile, int agent) {
  check_profile(game, profile);
  if (agent < 0 || agent >= game.agent_count()) throw Error(ErrorCode::InvalidArgument, "agent index out of range");
  std::vector<Summary> sums;
  summarize(game, profile, sums);
  const int own = profile[static_cast<std::size_t>(agent)];
  Mechanism::Key best = current_key(game, sums, profile, agent);
  int best_machine = own;
  for (int j = 0; j < game.machine_count(); ++j) {
    if (j == own) continue;
    const Mechanism::Key k = moved_key(game, sums, agent, j);
    if (k < best) {
      best = k;
      best_machine = j;
    }
  }
  return {best_machine, game.mechanism().value(best)};
}

NashCheck is_nash(const Game& game, const Profile& profile) {
  check_profile(game, profile);
  std::vector<Summary> sums;
  summarize(game, profile, sums);
  NashCheck out;
  if (auto dev = find_deviation(game, profile, sums)) {
    out.stable = false;
    const auto [agent, machine] = *dev;
    out.witness = Deviation{agent, machine, game.mechanism().value(current_key(game, sums, profile, agent)),
                            game.mechanism().value(moved_key(game, sums, agent, machine))};
  }
  return out;
}

namespace {

std::uint64_t profile_space(int machines, int agents, std::uint64_t limit) {
  std::uint64_t total = 1;
  for (int i = 0; i < agents; ++i) {
    if (total > limit / static_cast<std::uint64_t>(machines)) {
      throw Error(ErrorCode::TooLarge, std::to_string(machines) + "^" + std::to_string(agents) +
                                           " profiles exceed the enumeration limit");
    }
    total *= static_cast<std::uint64_t>(machines);
  }
  if (total > limit) throw Error(ErrorCode::TooLarge, "profile space exceeds the enumeration limit");
  return total;
}

void scan_range(const Game& game, std::uint64_t begin, std::uint64_t end, std::vector<Profile>& found) {
  const int n = game.agent_count();
  const int m = game.machine_count();
  Profile profile(static_cast<std::size_t>(n), 0);
  std::uint64_t rest = begin;
  for (int i = n - 1; i >= 0; --i) {
    profile[static_cast<std::size_t>(i)] = static_cast<int>(rest % static_cast<std::uint64_t>(m));
    rest /= static_cast<std::uint64_t>(m);
  }
  std::vector<Summary> sums;
  for (std::uint64_t index = begin; index < end; ++index) {
    summarize(game, profile, sums);
    if (!find_deviation(game, profile, sums)) found.push_back(profile);
    for (int i = n - 1; i >= 0; --i) {
      int& digit = profile[static_cast<std::size_t>(i)];
      if (++digit < m) break;
      digit = 0;
    }
  }
}

}  // namespace

std::vector<Profile> enumerate_pne(const Game& game, const EnumerateOptions& options) {
  const std::uint64_t total = profile_space(game.machine_count(), game.agent_count(), options.limit);
  const auto workers = static_cast<std::uint64_t>(std::max(1, options.workers));
  if (workers == 1 || total < 4096) {
    std::vector<Profile> found;
    scan_range(game, 0, total, found);
    return found;
  }
  // Contiguous index blocks keep every worker's output sorted, so
  // concatenating in block order preserves lexicographic order.
  std::vector<std::vector<Profile>> parts(workers);
  std::vector<std::thread> threads;
  const std::uint64_t block = (total + workers - 1) / workers;
  for (std::uint64_t w = 0; w < workers; ++w) {
    const std::uint64_t begin = std::min(total, w * block);
    const std::uint64_t end = std::min(total, begin + block);
    threads.emplace_back([&game, &parts, w, begin, end] { scan_range(game, begin, end, parts[w]); });
  }
  for (auto& t : threads) t.join();
  std::vector<Profile> found;
  for (auto& part : parts) {
    for (auto& p : part) found.push_back(std::move(p));
  }
  return found;
}

DynamicsResult br_dynamics(const Game& game, const Profile& start, int max_rounds) {
  check_profile(game, start);
  DynamicsResult out;
  Profile profile = start;
  std::map<Profile, int> seen;
  std::vector<Profile> history;
  for (int round = 1; round <= max_rounds; ++round) {
    auto [it, inserted] = seen.emplace(profile, static_cast<int>(history.size()));
    if (!inserted) {
      out.outcome = DynamicsResult::Outcome::Cycled;
      out.profile = profile;
      out.rounds = round - 1;
      out.cycle.assign(history.begin() + it->second, history.end());
      return out;
    }
    history.push_back(profile);
    bool changed = false;
    for (int i = 0; i < game.agent_count(); ++i) {
      const BestResponse br = best_response(game, profile, i);
      if (br.machine != profile[static_cast<std::size_t>(i)]) {
        profile[static_cast<std::size_t>(i)] = br.machine;
        changed = true;
      }
    }
    if (!changed) {
      out.outcome = DynamicsResult::Outcome::Converged;
      out.profile = profile;
      out.rounds = round;
      return out;
    }
  }
  out.outcome = DynamicsResult::Outcome::Exhausted;
  out.profile = profile;
  out.rounds = max_rounds;
  return out;
}

}  // namespace costshare
