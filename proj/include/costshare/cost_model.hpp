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

#ifndef COSTSHARE_COST_MODEL_HPP
#define COSTSHARE_COST_MODEL_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "costshare/rational.hpp"

namespace costshare {

/// One step of a machine cost function: `length` load units at `cost`.
struct Segment {
  int length = 0;
  Rational cost;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Non-decreasing step cost with c(0) = 0 and an infinite tail past the
/// last segment. Segment indices are 1-based throughout the library.
///
/// Construction validates positive lengths, positive costs and
/// non-decreasing costs. Strictly increasing costs are not required here;
/// see merge_equal_segments().
class StepCostFunction {
 public:
  StepCostFunction() = default;
  explicit StepCostFunction(std::vector<Segment> segments);

  /// Single segment of `capacity` units at `cost`.
  static StepCostFunction capacitated(int capacity, const Rational& cost);

  const std::vector<Segment>& segments() const noexcept { return segments_; }
  int segment_count() const noexcept { return static_cast<int>(segments_.size()); }
  const Segment& segment(int k) const;

  /// Total of all segment lengths; loads above it cost Infinite.
  int capacity() const noexcept { return ends_.empty() ? 0 : ends_.back(); }

  /// Load at which segment k ends (k in 1..count); end(0) = 0.
  int end(int k) const;

  /// Segment containing position `load` (1 <= load <= capacity).
  int segment_at(int load) const;

  bool four_step_valid() const noexcept;
  bool strictly_increasing() const noexcept;
  bool is_capacitated_constant() const noexcept { return segments_.size() == 1; }

  friend bool operator==(const StepCostFunction& a, const StepCostFunction& b) {
    return a.segments_ == b.segments_;
  }

 private:
  std::vector<Segment> segments_;
  std::vector<int> ends_;
};

ExtendedCost eval_cost(const StepCostFunction& f, int load);

/// Coalesces adjacent equal-cost segments. Throws DecreasingCost.
StepCostFunction merge_equal_segments(const StepCostFunction& f);

/// Machines in their fixed index order.
class Instance {
 public:
  Instance() = default;
  explicit Instance(std::vector<StepCostFunction> machines) : machines_(std::move(machines)) {}

  std::size_t size() const noexcept { return machines_.size(); }
  const StepCostFunction& machine(std::size_t j) const { return machines_.at(j); }
  const std::vector<StepCostFunction>& machines() const noexcept { return machines_; }

  int total_capacity() const noexcept;
  int total_segments() const noexcept;
  bool four_step_valid() const noexcept;
  bool all_capacitated_constant() const noexcept;

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::vector<StepCostFunction> machines_;
};

/// Every machine passed through merge_equal_segments().
Instance merged(const Instance& inst);

struct Normalized {
  Instance instance;
  /// Multiply original costs by `scale` to get normalized ones.
  Rational scale;
};

/// Scales all step costs so that the minimum is exactly 1. Throws NoFiniteCost.
Normalized normalize(const Instance& inst);

/// 4-step upper approximation of a tabulated non-decreasing function.
/// samples[i] holds c'(i + 1); samples.size() is the horizon (a positive
/// multiple of 4). Each block [4k-3, 4k] is charged c'(4k).
StepCostFunction approximate_bounded(std::span<const Rational> samples);

/// max c(l+1)/c(l) over consecutive samples; 1 for fewer than two samples.
Rational max_jump_ratio(std::span<const Rational> samples);

}  // namespace costshare

#endif  // COSTSHARE_COST_MODEL_HPP
