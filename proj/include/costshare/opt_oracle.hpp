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

#ifndef COSTSHARE_OPT_ORACLE_HPP
#define COSTSHARE_OPT_ORACLE_HPP

#include <span>
#include <vector>

#include "costshare/cost_model.hpp"

namespace costshare {

using LoadVector = std::vector<int>;

/// Sum of machine costs at the given loads.
ExtendedCost social_cost(const Instance& inst, std::span<const int> loads);

struct Allocation {
  LoadVector loads;
  ExtendedCost cost;
};

/// Minimum-cost allocations of q identical jobs for every q up to the
/// instance capacity. Built once by a suffix DP over machines; queries are
/// cheap afterwards. Among optimal allocations the lexicographically
/// greatest load vector is returned.
class OptOracle {
 public:
  explicit OptOracle(const Instance& inst);

  int capacity() const noexcept { return capacity_; }

  /// Throws InfeasibleDemand if q > capacity().
  const ExtendedCost& cost(int q) const;
  LoadVector loads(int q) const;
  Allocation allocation(int q) const { return {loads(q), cost(q)}; }

 private:
  Instance inst_;
  int capacity_ = 0;
  // best_[j][q]: cheapest way to place q jobs on machines j..m-1.
  std::vector<std::vector<ExtendedCost>> best_;
};

Allocation opt_allocation(const Instance& inst, int q);

struct ThresholdEntry {
  int k = 0;
  int a = 0;
  LoadVector targets;
};

struct ThresholdTable {
  std::vector<ThresholdEntry> entries;
  /// Factor that was applied to the input costs before computing a_k.
  Rational scale;
};

/// a_k = max{q : C(OPT(q)) < 2^k} on the normalized instance, for
/// k = 0, 1, ... up to the first k with a_k >= n.
ThresholdTable thresholds(const Instance& inst, int n);

}  // namespace costshare

#endif  // COSTSHARE_OPT_ORACLE_HPP
