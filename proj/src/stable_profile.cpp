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

#include <algorithm>
#include <string>

#include "costshare/error.hpp"
#include "costshare/game_engine.hpp"

namespace costshare {

namespace {

struct Plan {
  LoadVector spots;                      // final load of every machine
  std::vector<std::vector<int>> hosted;  // disruptors per machine, priority order
  int designated = 0;                    // receives the lowest-priority payers
};

// Regular agents with non-zero shares on machine j under the final plan.
int payer_count(const Mechanism& mech, int machine, int load, int regular_spots) {
  if (regular_spots <= 0) return 0;
  if (mech.kind() == MechanismKind::Capacitated) return 1;
  const int w = excess(mech.instance().machine(static_cast<std::size_t>(machine)), load);
  return w == 1 ? std::min(2, regular_spots) : 1;
}

// Payers are the highest-priority regulars; the lowest of them go to the
// designated machine, the rest follow `order`. Zero payers fill what is left.
Profile realize(const Game& game, const Plan& plan, const std::vector<int>& order) {
  const Mechanism& mech = game.mechanism();
  const auto m = static_cast<std::size_t>(game.machine_count());
  Profile profile(static_cast<std::size_t>(game.agent_count()), -1);
  std::vector<int> room(m, 0), payers(m, 0);
  int total_payers = 0;
  for (std::size_t j = 0; j < m; ++j) {
    for (int agent : plan.hosted[j]) profile[static_cast<std::size_t>(agent)] = static_cast<int>(j);
    room[j] = plan.spots[j] - static_cast<int>(plan.hosted[j].size());
    if (room[j] < 0) throw Error(ErrorCode::InvariantViolated, "more disruptors than spots on a machine");
    payers[j] = payer_count(mech, static_cast<int>(j), plan.spots[j], room[j]);
    total_payers += payers[j];
  }
  std::vector<int> regulars;
  for (int i = 0; i < game.agent_count(); ++i) {
    if (!game.is_disruptor(i)) regulars.push_back(i);
  }
  auto put = [&](int agent, int machine) {
    profile[static_cast<std::size_t>(agent)] = machine;
    --room[static_cast<std::size_t>(machine)];
  };
  const auto t = static_cast<std::size_t>(plan.designated);
  int next = 0;
  for (int j : order) {
    if (static_cast<std::size_t>(j) == t) continue;
    for (int k = 0; k < payers[static_cast<std::size_t>(j)]; ++k) put(regulars[static_cast<std::size_t>(next++)], j);
  }
  for (int k = 0; k < payers[t]; ++k) put(regulars[static_cast<std::size_t>(next++)], plan.designated);
  if (next != total_payers) throw Error(ErrorCode::InvariantViolated, "payer bookkeeping mismatch");
  for (int j : order) {
    while (room[static_cast<std::size_t>(j)] > 0) {
      if (next >= static_cast<int>(regulars.size())) throw Error(ErrorCode::InvariantViolated, "ran out of regular agents");
      put(regulars[static_cast<std::size_t>(next++)], j);
    }
  }
  if (next != static_cast<int>(regulars.size())) throw Error(ErrorCode::InvariantViolated, "regular agents left over");
  return profile;
}

class Builder {
 public:
  explicit Builder(const Game& game)
      : game_(game), mech_(game.mechanism()), n_(game.agent_count()), loads_(mech_.online_loads(n_)) {
    for (int j = 0; j < game.machine_count(); ++j) {
      if (loads_[static_cast<std::size_t>(j)] > 0) used_.push_back(j);
    }
    std::sort(used_.begin(), used_.end(), [&](int a, int b) { return last_rank(a) < last_rank(b); });
    for (int i = 0; i < n_; ++i) {
      if (game.is_disruptor(i)) disruptors_.push_back(i);
    }
    plan_.spots = loads_;
    plan_.hosted.assign(static_cast<std::size_t>(game.machine_count()), {});
  }

  Profile build() {
    if (n_ == 0) return {};
    if (used_.size() == 1) {
      return Profile(static_cast<std::size_t>(n_), used_.front());
    }
    r_ = used_.back();
    plan_.designated = r_;
    switch (mech_.kind()) {
      case MechanismKind::Capacitated:
        capacitated();
        break;
      case MechanismKind::Step:
        step();
        break;
      case MechanismKind::Stochastic:
        stochastic();
        break;
    }
    return realize(game_, plan_, used_);
  }

 private:
  int last_rank(int j) const {
    const StepCostFunction& f = mech_.instance().machine(static_cast<std::size_t>(j));
    return mech_.order().rank(j, last_segment(f, loads_[static_cast<std::size_t>(j)]));
  }
  int load(int j) const { return loads_[static_cast<std::size_t>(j)]; }
  int excess_of(int j) const { return excess(mech_.instance().machine(static_cast<std::size_t>(j)), load(j)); }
  int segment_length(int j) const {
    const StepCostFunction& f = mech_.instance().machine(static_cast<std::size_t>(j));
    return f.segment(last_segment(f, load(j))).length;
  }
  // Machine used just before r in Delayed-OPT order.
  int previous() const { return used_[used_.size() - 2]; }

  void host(int machine, int agent) { plan_.hosted[static_cast<std::size_t>(machine)].push_back(agent); }
  void host_all(int machine) {
    for (int agent : disruptors_) host(machine, agent);
  }
  int room(int machine) const {
    return plan_.spots[static_cast<std::size_t>(machine)] -
           static_cast<int>(plan_.hosted[static_cast<std::size_t>(machine)].size());
  }

  void capacitated() { host_all(load(r_) <= 2 ? previous() : r_); }

  void step() {
    const bool on_last = excess_of(r_) != 1 && load(r_) > 2;
    host_all(on_last ? r_ : previous());
  }

  // f: one of the first two machines, not r, with a full last segment.
  int rest_machine() const {
    const FirstMachines& fm = mech_.first_machines();
    for (const auto& cand : {fm.first, fm.second}) {
      if (cand && *cand != r_ && load(*cand) > 0) return *cand;
    }
    throw Error(ErrorCode::InvariantViolated, "no rest machine among the first two machines");
  }

  bool is_rest_machine(int j) const {
    const FirstMachines& fm = mech_.first_machines();
    return (fm.first && *fm.first == j) || (fm.second && *fm.second == j);
  }

  // Would a lone disruptor joining j sit on a rest point?
  bool rest_after_join(int j) const {
    const StepCostFunction& f = mech_.instance().machine(static_cast<std::size_t>(j));
    const int after = load(j) + 1;
    if (after > f.capacity()) return false;
    const int w = excess(f, after);
    return w == 0 || w == f.segment(last_segment(f, after)).length - 1;
  }

  // Highest machine cost under A; ties go to r.
  int costliest() const {
    int best = r_;
    Rational best_cost = eval_cost(mech_.instance().machine(static_cast<std::size_t>(r_)), load(r_)).value();
    for (int j : used_) {
      const Rational c = eval_cost(mech_.instance().machine(static_cast<std::size_t>(j)), load(j)).value();
      if (best_cost < c) {
        best = j;
        best_cost = c;
      }
    }
    return best;
  }

  void move_one_to_r(int from) {
    plan_.designated = from;
    if (from == r_) return;
    --plan_.spots[static_cast<std::size_t>(from)];
    ++plan_.spots[static_cast<std::size_t>(r_)];
  }

  void stochastic() {
    const int d = static_cast<int>(disruptors_.size());
    const bool almost_full = excess_of(r_) == segment_length(r_) - 1;
    if (d == 0) {
      if (almost_full) move_one_to_r(costliest());
      return;
    }
    const int f = rest_machine();
    if (d == 1) {
      host(f, disruptors_.front());
      if (almost_full) {
        int j = costliest();
        const Rational& c = eval_cost(mech_.instance().machine(static_cast<std::size_t>(j)), load(j)).value();
        const StepCostFunction& ff = mech_.instance().machine(static_cast<std::size_t>(f));
        if (c < mech_.phi(f, last_segment(ff, load(f)))) j = f;
        move_one_to_r(j);
      }
      return;
    }
    pairs(d, f);
  }

  void pairs(int d, int f) {
    const int w_r = excess_of(r_);
    const bool r_first = w_r != 1 && load(r_) > 2;
    const bool short_r = load(r_) <= 2;
    const bool odd = d % 2 == 1;

    // Only the first two machines are used and r is the second one with two
    // jobs. A pair on f would leave r open as a rest point for either of
    // them, so one disruptor takes f and the other sits on r.
    if (d == 2 && short_r && load(r_) == 2 && is_rest_machine(r_) && rest_after_join(r_)) {
      host(r_, disruptors_[0]);
      host(f, disruptors_[1]);
      return;
    }

    // Machines by increasing epsilon of the last used segment: r first.
    std::vector<int> queue(used_.rbegin(), used_.rend());
    queue.erase(std::remove_if(queue.begin(), queue.end(),
                               [&](int j) { return (odd && j == f) || (!r_first && j == r_); }),
                queue.end());

    std::size_t next = 0;
    const std::size_t reserve = odd ? 1 : 0;
    std::vector<int> paired;
    for (int j : queue) {
      if (disruptors_.size() - next < 2 + reserve) break;
      if (room(j) < 2) continue;
      paired.push_back(j);
      host(j, disruptors_[next++]);
      host(j, disruptors_[next++]);
    }
    if (odd) host(f, disruptors_[next++]);

    const std::size_t left = disruptors_.size() - next;
    if (short_r) {
      const std::size_t want = load(r_) == 2 ? 2 : 1;
      if (left >= want) {
        for (std::size_t k = 0; k < want; ++k) host(r_, disruptors_[next++]);
      }
    } else if (!r_first && left >= 2) {
      // The pair on r must be the highest-priority pair: shift the others.
      std::vector<int> ordered;
      ordered.push_back(r_);
      ordered.insert(ordered.end(), paired.begin(), paired.end());
      for (int j : paired) plan_.hosted[static_cast<std::size_t>(j)].clear();
      for (std::size_t p = 0; p < ordered.size(); ++p) {
        host(ordered[p], disruptors_[2 * p]);
        host(ordered[p], disruptors_[2 * p + 1]);
      }
      if (odd) {
        plan_.hosted[static_cast<std::size_t>(f)].clear();
        host(f, disruptors_[2 * ordered.size()]);
      }
      next += 2;
    }
    if (next < disruptors_.size() && plan_.hosted[static_cast<std::size_t>(f)].size() == 1 && room(f) > 0) {
      host(f, disruptors_[next++]);
    }
    for (int j : std::vector<int>(used_.rbegin(), used_.rend())) {
      while (next < disruptors_.size() && room(j) > 0) host(j, disruptors_[next++]);
    }
    if (next != disruptors_.size()) throw Error(ErrorCode::InvariantViolated, "disruptors left unplaced");
  }

  const Game& game_;
  const Mechanism& mech_;
  int n_;
  LoadVector loads_;
  std::vector<int> used_;
  std::vector<int> disruptors_;
  Plan plan_;
  int r_ = 0;
};

}  // namespace

Profile construct_stable_profile(const Game& game) {
  const Mechanism& mech = game.mechanism();
  if (mech.kind() != MechanismKind::Stochastic && game.present_disruptors() == 0) {
    throw Error(ErrorCode::MissingDisruptors, "two-disruptor mechanisms need both disruptors present");
  }
  Profile profile = Builder(game).build();
  const NashCheck check = is_nash(game, profile);
  if (!check.stable) {
    const Deviation& dev = *check.witness;
    throw Error(ErrorCode::ConstructionNotStable,
                "agent " + std::to_string(game.agent_id(dev.agent)) + " gains by moving to machine " +
                    std::to_string(dev.machine + 1) + " (" + to_string(dev.current) + " -> " +
                    to_string(dev.improved) + ")");
  }
  return profile;
}

}  // namespace costshare
