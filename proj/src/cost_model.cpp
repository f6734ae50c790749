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

#include "costshare/cost_model.hpp"

#include <algorithm>
#include <string>

#include "costshare/error.hpp"

namespace costshare {

StepCostFunction::StepCostFunction(std::vector<Segment> segments) : segments_(std::move(segments)) {
  int running = 0;
  ends_.reserve(segments_.size());
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    const Segment& s = segments_[k];
    if (s.length <= 0) {
      throw Error(ErrorCode::InvalidSegment, "segment " + std::to_string(k + 1) + " has non-positive length");
    }
    if (s.cost <= 0) {
      throw Error(ErrorCode::ZeroCostSegment, "segment " + std::to_string(k + 1) + " has non-positive cost");
    }
    if (k > 0 && s.cost < segments_[k - 1].cost) {
      throw Error(ErrorCode::DecreasingCost, "segment " + std::to_string(k + 1) + " is cheaper than its predecessor");
    }
    running += s.length;
    ends_.push_back(running);
  }
}

StepCostFunction StepCostFunction::capacitated(int capacity, const Rational& cost) {
  return StepCostFunction({Segment{capacity, cost}});
}

const Segment& StepCostFunction::segment(int k) const {
  if (k < 1 || k > segment_count()) {
    throw Error(ErrorCode::InvalidArgument, "segment index " + std::to_string(k) + " out of range");
  }
  return segments_[static_cast<std::size_t>(k - 1)];
}

int StepCostFunction::end(int k) const {
  if (k == 0) return 0;
  if (k < 0 || k > segment_count()) {
    throw Error(ErrorCode::InvalidArgument, "segment index " + std::to_string(k) + " out of range");
  }
  return ends_[static_cast<std::size_t>(k - 1)];
}

int StepCostFunction::segment_at(int load) const {
  if (load < 1 || load > capacity()) {
    throw Error(ErrorCode::OverCapacity, "load " + std::to_string(load) + " outside 1.." + std::to_string(capacity()));
  }
  auto it = std::lower_bound(ends_.begin(), ends_.end(), load);
  return static_cast<int>(it - ends_.begin()) + 1;
}

bool StepCostFunction::four_step_valid() const noexcept {
  return std::all_of(segments_.begin(), segments_.end(), [](const Segment& s) { return s.length >= 4; });
}

bool StepCostFunction::strictly_increasing() const noexcept {
  for (std::size_t k = 1; k < segments_.size(); ++k) {
    if (!(segments_[k - 1].cost < segments_[k].cost)) return false;
  }
  return true;
}

ExtendedCost eval_cost(const StepCostFunction& f, int load) {
  if (load < 0) throw Error(ErrorCode::InvalidArgument, "negative load");
  if (load == 0) return ExtendedCost(0);
  if (load > f.capacity()) return ExtendedCost::infinite();
  return ExtendedCost(f.segment(f.segment_at(load)).cost);
}

StepCostFunction merge_equal_segments(const StepCostFunction& f) {
  std::vector<Segment> out;
  for (const Segment& s : f.segments()) {
    if (!out.empty() && s.cost < out.back().cost) {
      throw Error(ErrorCode::DecreasingCost, "segment costs decrease");
    }
    if (!out.empty() && out.back().cost == s.cost) {
      out.back().length += s.length;
    } else {
      out.push_back(s);
    }
  }
  return StepCostFunction(std::move(out));
}

int Instance::total_capacity() const noexcept {
  int total = 0;
  for (const auto& m : machines_) total += m.capacity();
  return total;
}

int Instance::total_segments() const noexcept {
  int total = 0;
  for (const auto& m : machines_) total += m.segment_count();
  return total;
}

bool Instance::four_step_valid() const noexcept {
  return std::all_of(machines_.begin(), machines_.end(), [](const auto& m) { return m.four_step_valid(); });
}

bool Instance::all_capacitated_constant() const noexcept {
  return std::all_of(machines_.begin(), machines_.end(), [](const auto& m) { return m.is_capacitated_constant(); });
}

Instance merged(const Instance& inst) {
  std::vector<StepCostFunction> machines;
  machines.reserve(inst.size());
  for (const auto& m : inst.machines()) machines.push_back(merge_equal_segments(m));
  return Instance(std::move(machines));
}

Normalized normalize(const Instance& inst) {
  bool found = false;
  Rational minimum;
  for (const auto& m : inst.machines()) {
    for (const Segment& s : m.segments()) {
      if (!found || s.cost < minimum) minimum = s.cost;
      found = true;
    }
  }
  if (!found) throw Error(ErrorCode::NoFiniteCost, "instance has no finite positive step cost");
  const Rational scale = Rational(1) / minimum;
  std::vector<StepCostFunction> machines;
  machines.reserve(inst.size());
  for (const auto& m : inst.machines()) {
    std::vector<Segment> segs = m.segments();
    for (Segment& s : segs) s.cost *= scale;
    machines.emplace_back(std::move(segs));
  }
  return {Instance(std::move(machines)), scale};
}

StepCostFunction approximate_bounded(std::span<const Rational> samples) {
  const std::size_t horizon = samples.size();
  if (horizon < 4 || horizon % 4 != 0) {
    throw Error(ErrorCode::InvalidArgument, "horizon must be a positive multiple of 4");
  }
  for (std::size_t i = 0; i < horizon; ++i) {
    if (samples[i] <= 0) throw Error(ErrorCode::ZeroCostSegment, "samples must be positive");
    if (i > 0 && samples[i] < samples[i - 1]) {
      throw Error(ErrorCode::NotNondecreasing, "samples decrease at load " + std::to_string(i + 1));
    }
  }
  std::vector<Segment> segs;
  for (std::size_t block_end = 4; block_end <= horizon; block_end += 4) {
    segs.push_back(Segment{4, samples[block_end - 1]});
  }
  return merge_equal_segments(StepCostFunction(std::move(segs)));
}

Rational max_jump_ratio(std::span<const Rational> samples) {
  Rational best(1);
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    if (samples[i] <= 0) throw Error(ErrorCode::InvalidArgument, "samples must be positive");
    best = std::max(best, samples[i + 1] / samples[i]);
  }
  return best;
}

}  // namespace costshare
