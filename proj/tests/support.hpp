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

// Generators and independent reference implementations shared by the unit
// tests and the acceptance runner. Nothing here calls the code it checks
// for the quantity being checked.

#ifndef COSTSHARE_TESTS_SUPPORT_HPP
#define COSTSHARE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "costshare/experiments.hpp"

namespace costshare::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

struct FunctionShape {
  int min_segments = 1;
  int max_segments = 3;
  int min_length = 1;
  int max_length = 4;
  int max_cost = 64;
  double repeat_cost = 0.0;  // chance that a segment keeps the previous cost
};

inline StepCostFunction random_function(Rng& rng, const FunctionShape& s) {
  const int count = uniform(rng, s.min_segments, s.max_segments);
  std::vector<Segment> segs;
  int cost = 0;
  for (int k = 0; k < count; ++k) {
    const int room = s.max_cost - cost;
    if (k > 0 && (room <= 0 || coin(rng, s.repeat_cost))) {
      segs.push_back({uniform(rng, s.min_length, s.max_length), Rational(cost)});
      continue;
    }
    // Leave headroom so later segments can still grow.
    cost += uniform(rng, 1, std::max(1, room / std::max(1, count - k)));
    segs.push_back({uniform(rng, s.min_length, s.max_length), Rational(cost)});
  }
  return StepCostFunction(std::move(segs));
}

inline Instance random_instance(Rng& rng, int min_machines, int max_machines, const FunctionShape& s) {
  std::vector<StepCostFunction> fs;
  const int m = uniform(rng, min_machines, max_machines);
  for (int j = 0; j < m; ++j) fs.push_back(random_function(rng, s));
  return Instance(std::move(fs));
}

inline Instance random_capacitated(Rng& rng, int min_machines, int max_machines, int min_cap, int max_cap,
                                   int max_cost) {
  std::vector<StepCostFunction> fs;
  const int m = uniform(rng, min_machines, max_machines);
  for (int j = 0; j < m; ++j) {
    fs.push_back(StepCostFunction::capacitated(uniform(rng, min_cap, max_cap), Rational(uniform(rng, 1, max_cost))));
  }
  return Instance(std::move(fs));
}

// Three and five capacitated machines used as worked examples.
inline Instance three_machine_example() {
  return Instance({StepCostFunction::capacitated(1, Rational(1)), StepCostFunction::capacitated(3, Rational(2)),
                   StepCostFunction::capacitated(6, Rational(15))});
}
inline Instance five_machine_example() {
  return Instance({StepCostFunction::capacitated(1, Rational(1)), StepCostFunction::capacitated(2, Rational(2)),
                   StepCostFunction::capacitated(2, Rational(2)), StepCostFunction::capacitated(2, Rational(2)),
                   StepCostFunction::capacitated(8, Rational(7))});
}

/// Calls visit(loads) for every load vector with the given total that
/// respects each machine's capacity.
inline void for_each_load_vector(const Instance& inst, int total, const std::function<void(const LoadVector&)>& visit) {
  LoadVector loads(inst.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t j, int left) {
    if (j + 1 == inst.size()) {
      if (left <= inst.machine(j).capacity()) {
        loads[j] = left;
        visit(loads);
      }
      return;
    }
    for (int x = 0; x <= std::min(left, inst.machine(j).capacity()); ++x) {
      loads[j] = x;
      rec(j + 1, left - x);
    }
  };
  if (inst.size() > 0) rec(0, total);
}

/// Direct evaluation of a step function by walking its segments.
inline ExtendedCost walk_cost(const StepCostFunction& f, int load) {
  if (load == 0) return ExtendedCost(0);
  int end = 0;
  for (const auto& s : f.segments()) {
    end += s.length;
    if (load <= end) return ExtendedCost(s.cost);
  }
  return ExtendedCost::infinite();
}

struct BruteOpt {
  ExtendedCost cost = ExtendedCost::infinite();
  LoadVector lexmax;  // lexicographically greatest optimal vector
  bool feasible = false;
};

inline BruteOpt brute_force_opt(const Instance& inst, int q) {
  BruteOpt best;
  for_each_load_vector(inst, q, [&](const LoadVector& loads) {
    ExtendedCost c(0);
    for (std::size_t j = 0; j < loads.size(); ++j) c += walk_cost(inst.machine(j), loads[j]);
    if (!best.feasible || c < best.cost || (c == best.cost && best.lexmax < loads)) {
      best.cost = c;
      best.lexmax = loads;
      best.feasible = true;
    }
  });
  return best;
}

/// Share rules written out branch by branch from the protocol text, using
/// the direct Phi definition and an epsilon rank computed here. Agents are
/// indexed by priority; machine_of[i] is agent i's machine.
class ShareOracle {
 public:
  explicit ShareOracle(const Mechanism& mech) : mech_(mech), inst_(mech.instance()) {
    const int cap = inst_.total_capacity();
    order_ = segment_order(inst_, cap);
    const AssignmentTrace full = delayed_opt_assign(inst_, cap);
    for (int j : full.per_job) {
      if (std::find(first_two_.begin(), first_two_.end(), j) == first_two_.end() && first_two_.size() < 2) {
        first_two_.push_back(j);
      }
    }
  }

  ShareValue phi(int j, int k) const { return ShareValue::cost(cumulative_cost(inst_, order_, {j, k})); }
  ShareValue eps(int j, int k) const {
    return ShareValue::epsilon(static_cast<std::int64_t>(order_.count()) + 1 - order_.rank(j, k));
  }

  std::vector<ShareValue> shares(const std::vector<int>& machine_of, const std::vector<char>& is_dis) const {
    const std::size_t n = machine_of.size();
    const int present = static_cast<int>(std::count(is_dis.begin(), is_dis.end(), 1));
    std::vector<ShareValue> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int j = machine_of[i];
      std::vector<int> dis_on, reg_on;
      for (std::size_t a = 0; a < n; ++a) {
        if (machine_of[a] != j) continue;
        (is_dis[a] ? dis_on : reg_on).push_back(static_cast<int>(a));
      }
      const Context c{j, static_cast<int>(dis_on.size() + reg_on.size()), dis_on, reg_on, present,
                      static_cast<int>(i)};
      switch (mech_.kind()) {
        case MechanismKind::Capacitated:
          out[i] = is_dis[i] ? cap_disruptor(c) : cap_regular(c);
          break;
        case MechanismKind::Step:
          out[i] = over(c) ? ShareValue::infinite() : is_dis[i] ? step_disruptor(c) : step_regular(c);
          break;
        case MechanismKind::Stochastic:
          out[i] = over(c) ? ShareValue::infinite() : is_dis[i] ? stochastic_disruptor(c) : step_regular(c);
          break;
      }
    }
    return out;
  }

 private:
  struct Context {
    int j;
    int load;
    std::vector<int> dis_on;
    std::vector<int> reg_on;
    int present;
    int self;
  };

  const StepCostFunction& f(const Context& c) const { return inst_.machine(static_cast<std::size_t>(c.j)); }
  bool over(const Context& c) const { return c.load > f(c).capacity(); }
  int lambda(const Context& c) const {
    int end = 0;
    for (int k = 1; k <= f(c).segment_count(); ++k) {
      end += f(c).segment(k).length;
      if (c.load <= end) return k;
    }
    return f(c).segment_count();
  }
  int w(const Context& c) const {
    int end = 0;
    for (int k = 1; k <= lambda(c); ++k) end += f(c).segment(k).length;
    return c.load == end ? 0 : c.load - (end - f(c).segment(lambda(c)).length);
  }
  bool is_h(const Context& c, int which) const {
    return static_cast<int>(c.reg_on.size()) >= which && c.reg_on[static_cast<std::size_t>(which - 1)] == c.self;
  }
  ShareValue cost(const Context& c) const { return ShareValue::cost(walk_cost(f(c), c.load).value()); }
  bool all_disruptors_with_regular(const Context& c) const {
    return static_cast<int>(c.dis_on.size()) == c.present && !c.reg_on.empty();
  }

  ShareValue cap_disruptor(const Context& c) const {
    const int beta = f(c).capacity();
    if (c.load <= beta && all_disruptors_with_regular(c)) return eps(c.j, 1);
    if (c.load > beta && c.dis_on.size() == 1) return eps(c.j, 1);
    return phi(c.j, 1);
  }
  ShareValue cap_regular(const Context& c) const {
    const int beta = f(c).capacity();
    const bool h1 = is_h(c, 1);
    if (c.load <= beta && !h1) return ShareValue::zero();
    if (c.load == beta && c.dis_on.empty() && h1) return cost(c);
    if (c.load == beta && !c.dis_on.empty() && h1) return phi(c.j, 1);
    if (c.load < beta && h1) return phi(c.j, 1);
    return ShareValue::infinite();
  }

  ShareValue step_disruptor(const Context& c) const {
    const int l = lambda(c);
    if (w(c) != 1 && all_disruptors_with_regular(c)) return eps(c.j, l);
    if (w(c) == 1 && c.dis_on.size() == 1 && l > 1) return eps(c.j, l - 1);
    return phi(c.j, l);
  }
  ShareValue step_regular(const Context& c) const {
    const int l = lambda(c);
    const bool h1 = is_h(c, 1), h2 = is_h(c, 2);
    if (w(c) == 0 && c.dis_on.empty() && h1) return cost(c);
    if ((w(c) == 0 && !c.dis_on.empty() && h1) || (w(c) == 1 && (h1 || h2)) || (w(c) > 1 && h1)) return phi(c.j, l);
    return ShareValue::zero();
  }
  ShareValue stochastic_disruptor(const Context& c) const {
    const int l = lambda(c);
    const bool rest = std::find(first_two_.begin(), first_two_.end(), c.j) != first_two_.end();
    const int beta_l = f(c).segment(l).length;
    if (rest && (w(c) == 0 || w(c) == beta_l - 1) && c.dis_on.size() == 1) return ShareValue::zero();
    const bool top_two = c.dis_on[0] == c.self || (c.dis_on.size() >= 2 && c.dis_on[1] == c.self);
    if (w(c) != 1 && c.dis_on.size() >= 2 && !c.reg_on.empty() && top_two) return eps(c.j, l);
    if (w(c) == 1 && c.dis_on.size() == 1 && l > 1) return eps(c.j, l - 1);
    return phi(c.j, l);
  }

  const Mechanism& mech_;
  const Instance& inst_;
  SegmentOrder order_;
  std::vector<int> first_two_;
};

/// Profiles of n agents on m machines in odometer order.
inline void for_each_profile(int n, int m, const std::function<void(const Profile&)>& visit) {
  Profile p(static_cast<std::size_t>(n), 0);
  while (true) {
    visit(p);
    int i = n - 1;
    while (i >= 0 && ++p[static_cast<std::size_t>(i)] == m) p[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
  }
}

/// Equilibria by trying every unilateral move with oracle shares.
inline std::vector<Profile> brute_force_pne(const Game& game) {
  const ShareOracle oracle(game.mechanism());
  const auto& flags = game.disruptor_flags();
  std::vector<Profile> out;
  for_each_profile(game.agent_count(), game.machine_count(), [&](const Profile& p) {
    const auto base = oracle.shares(p, flags);
    for (int i = 0; i < game.agent_count(); ++i) {
      Profile q = p;
      for (int j = 0; j < game.machine_count(); ++j) {
        if (j == p[static_cast<std::size_t>(i)]) continue;
        q[static_cast<std::size_t>(i)] = j;
        if (oracle.shares(q, flags)[static_cast<std::size_t>(i)] < base[static_cast<std::size_t>(i)]) return;
      }
    }
    out.push_back(p);
  });
  return out;
}

/// Small instances that pass the 4-step validation of the given mechanism.
inline Instance random_valid_instance(Rng& rng, MechanismKind kind, int max_machines, int max_segments) {
  if (kind == MechanismKind::Capacitated) return random_capacitated(rng, 1, max_machines, 4, 8, 40);
  FunctionShape s;
  s.max_segments = max_segments;
  s.min_length = 4;
  s.max_length = 8;
  s.max_cost = 40;
  s.repeat_cost = 0.15;
  return random_instance(rng, 1, max_machines, s);
}

}  // namespace costshare::testing

#endif  // COSTSHARE_TESTS_SUPPORT_HPP
