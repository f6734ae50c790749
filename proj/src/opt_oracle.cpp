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

#include "costshare/opt_oracle.hpp"

#include <string>

#include "costshare/error.hpp"

namespace costshare {

namespace {

void check_demand(int q, int capacity) {
  if (q < 0) throw Error(ErrorCode::InvalidArgument, "negative job count");
  if (q > capacity) {
    throw Error(ErrorCode::InfeasibleDemand,
                std::to_string(q) + " jobs exceed total capacity " + std::to_string(capacity));
  }
}

}  // namespace

ExtendedCost social_cost(const Instance& inst, std::span<const int> loads) {
  if (loads.size() != inst.size()) throw Error(ErrorCode::InvalidArgument, "load vector length mismatch");
  ExtendedCost total;
  for (std::size_t j = 0; j < loads.size(); ++j) total += eval_cost(inst.machine(j), loads[j]);
  return total;
}

OptOracle::OptOracle(const Instance& inst) : inst_(inst), capacity_(inst.total_capacity()) {
  const std::size_t m = inst.size();
  best_.assign(m + 1, std::vector<ExtendedCost>(static_cast<std::size_t>(capacity_) + 1, ExtendedCost::infinite()));
  best_[m][0] = ExtendedCost(0);
  int suffix_capacity = 0;
  for (std::size_t j = m; j-- > 0;) {
    const StepCostFunction& f = inst.machine(j);
    const int cap = f.capacity();
    suffix_capacity += cap;
    std::vector<ExtendedCost> own(static_cast<std::size_t>(cap) + 1);
    for (int x = 0; x <= cap; ++x) own[static_cast<std::size_t>(x)] = eval_cost(f, x);
    for (int q = 0; q <= suffix_capacity; ++q) {
      ExtendedCost best = ExtendedCost::infinite();
      for (int x = 0; x <= std::min(q, cap); ++x) {
        const ExtendedCost& rest = best_[j + 1][static_cast<std::size_t>(q - x)];
        if (rest.is_infinite()) continue;
        ExtendedCost c = own[static_cast<std::size_t>(x)] + rest;
        if (c < best) best = c;
      }
      best_[j][static_cast<std::size_t>(q)] = best;
    }
  }
}

const ExtendedCost& OptOracle::cost(int q) const {
  check_demand(q, capacity_);
  return best_[0][static_cast<std::size_t>(q)];
}

LoadVector OptOracle::loads(int q) const {
  check_demand(q, capacity_);
  const std::size_t m = inst_.size();
  LoadVector out(m, 0);
  int remaining = q;
  for (std::size_t j = 0; j < m; ++j) {
    const StepCostFunction& f = inst_.machine(j);
    const ExtendedCost& target = best_[j][static_cast<std::size_t>(remaining)];
    // Largest feasible x first gives the lexicographically greatest optimum.
    for (int x = std::min(remaining, f.capacity()); x >= 0; --x) {
      const ExtendedCost& rest = best_[j + 1][static_cast<std::size_t>(remaining - x)];
      if (rest.is_infinite()) continue;
      if (eval_cost(f, x) + rest == target) {
        out[j] = x;
        remaining -= x;
        break;
      }
    }
  }
  if (remaining != 0) throw Error(ErrorCode::InvariantViolated, "optimal allocation reconstruction failed");
  return out;
}

Allocation opt_allocation(const Instance& inst, int q) {
  check_demand(q, inst.total_capacity());
  return OptOracle(inst).allocation(q);
}

ThresholdTable thresholds(const Instance& inst, int n) {
  Normalized norm = normalize(inst);
  check_demand(n, norm.instance.total_capacity());
  const OptOracle oracle(norm.instance);
  ThresholdTable table;
  table.scale = norm.scale;
  int a = 0;
  for (int k = 0;; ++k) {
    const ExtendedCost limit(pow2(k));
    while (a < oracle.capacity() && oracle.cost(a + 1) < limit) ++a;
    if (k == 0 && a != 0) throw Error(ErrorCode::InvariantViolated, "a_0 must be 0 on a normalized instance");
    table.entries.push_back({k, a, oracle.loads(a)});
    if (a >= n) break;
  }
  return table;
}

}  // namespace costshare
