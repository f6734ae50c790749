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

#ifndef COSTSHARE_DELAYED_OPT_HPP
#define COSTSHARE_DELAYED_OPT_HPP

#include <optional>
#include <span>
#include <vector>

#include "costshare/opt_oracle.hpp"

namespace costshare {

struct AssignmentTrace {
  /// Machine (0-based) receiving job q + 1.
  std::vector<int> per_job;
  LoadVector final_loads;
};

/// Incremental Delayed-OPT run. Jobs are added one at a time, so the trace
/// for n jobs is always a prefix of the trace for n + 1. Threshold targets
/// are computed only when the loop first needs them.
///
/// Every step checks that k never exceeds min{k' : q <= a_k'} and that each
/// segment is filled contiguously; a violation throws InvariantViolated.
class DelayedOpt {
 public:
  explicit DelayedOpt(const Instance& inst);

  const Instance& normalized() const noexcept { return inst_; }
  const Rational& scale() const noexcept { return scale_; }
  int capacity() const noexcept { return oracle_.capacity(); }
  const OptOracle& oracle() const noexcept { return oracle_; }

  /// Runs until n jobs are placed. Throws InfeasibleDemand past capacity.
  void extend(int n);

  /// Trace of the first n jobs (extends as needed).
  AssignmentTrace trace(int n);
  LoadVector loads(int n);

  /// k used for job q (1-based).
  int k_of_job(int q);

  /// a_k and its targets; computed on demand.
  int threshold(int k);
  const LoadVector& targets(int k);

 private:
  explicit DelayedOpt(Normalized norm);
  void ensure_k(int k);

  Instance inst_;
  Rational scale_;
  OptOracle oracle_;
  std::vector<int> a_;
  std::vector<LoadVector> targets_;
  std::vector<int> per_job_;
  std::vector<int> job_k_;
  LoadVector loads_;
  int k_ = 0;
};

AssignmentTrace delayed_opt_assign(const Instance& inst, int n);

struct SegmentRef {
  int machine = 0;  // 0-based
  int segment = 1;  // 1-based

  friend bool operator==(const SegmentRef&, const SegmentRef&) = default;
};

/// Rank of every segment by the time Delayed-OPT first puts a job into it.
/// The simulation runs to full capacity so that every segment is ranked.
class SegmentOrder {
 public:
  SegmentOrder() = default;
  SegmentOrder(const Instance& inst, std::span<const int> per_job);

  int count() const noexcept { return static_cast<int>(refs_.size()); }
  /// 1-based rank; throws UnrankedSegment.
  int rank(const SegmentRef& ref) const;
  int rank(int machine, int segment) const { return rank(SegmentRef{machine, segment}); }
  const SegmentRef& at(int rank) const;

 private:
  std::vector<std::vector<int>> rank_;
  std::vector<SegmentRef> refs_;
};

SegmentOrder segment_order(const Instance& inst, int horizon);

/// First and second distinct machines used by the full-capacity trace.
struct FirstMachines {
  std::optional<int> first;
  std::optional<int> second;
};
FirstMachines first_two_machines(std::span<const int> per_job);

/// Quantities of the competitive-ratio argument for n jobs, in normalized
/// units: k = min{k : n <= a_k}, C(ONL(n)) < 2^(k+1), C(OPT(n)) >= 2^(k-1).
struct RatioBounds {
  int n = 0;
  int k = 0;
  Rational online_cost;
  Rational opt_cost;
  Rational online_limit;
  Rational opt_floor;
};

/// Throws InvariantViolated if either inequality fails.
RatioBounds ratio_bounds(DelayedOpt& run, int n);

/// max over n of C(ONL(n)) / C(OPT(n)); n must be >= 1.
Rational competitive_ratio(const Instance& inst, std::span<const int> n_range);

}  // namespace costshare

#endif  // COSTSHARE_DELAYED_OPT_HPP
