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

#include "costshare/delayed_opt.hpp"

#include <algorithm>
#include <string>

#include "costshare/error.hpp"

namespace costshare {

DelayedOpt::DelayedOpt(const Instance& inst) : DelayedOpt(normalize(inst)) {}

DelayedOpt::DelayedOpt(Normalized norm)
    : inst_(std::move(norm.instance)), scale_(norm.scale), oracle_(inst_), loads_(inst_.size(), 0) {}

void DelayedOpt::ensure_k(int k) {
  while (static_cast<int>(a_.size()) <= k) {
    const int next = static_cast<int>(a_.size());
    int a = a_.empty() ? 0 : a_.back();
    const ExtendedCost limit(pow2(next));
    while (a < oracle_.capacity() && oracle_.cost(a + 1) < limit) ++a;
    if (next == 0 && a != 0) throw Error(ErrorCode::InvariantViolated, "a_0 must be 0 on a normalized instance");
    a_.push_back(a);
    targets_.push_back(oracle_.loads(a));
  }
}

int DelayedOpt::threshold(int k) {
  ensure_k(k);
  return a_[static_cast<std::size_t>(k)];
}

const LoadVector& DelayedOpt::targets(int k) {
  ensure_k(k);
  return targets_[static_cast<std::size_t>(k)];
}

void DelayedOpt::extend(int n) {
  if (n > oracle_.capacity()) {
    throw Error(ErrorCode::InfeasibleDemand,
                std::to_string(n) + " jobs exceed total capacity " + std::to_string(oracle_.capacity()));
  }
  const int m = static_cast<int>(inst_.size());
  while (static_cast<int>(per_job_.size()) < n) {
    const int q = static_cast<int>(per_job_.size()) + 1;
    int chosen = -1;
    // k never decreases: loads only grow, so levels below k_ stay exhausted.
    for (;; ++k_) {
      const LoadVector& target = targets(k_);
      for (int j = 0; j < m; ++j) {
        if (loads_[static_cast<std::size_t>(j)] < target[static_cast<std::size_t>(j)]) {
          chosen = j;
          break;
        }
      }
      if (chosen >= 0) break;
    }
    int bound = 0;
    while (threshold(bound) < q) ++bound;
    if (k_ > bound) {
      throw Error(ErrorCode::InvariantViolated, "job " + std::to_string(q) + " used k above its threshold level");
    }
    if (!per_job_.empty()) {
      const int prev = per_job_.back();
      const int prev_load = loads_[static_cast<std::size_t>(prev)];
      const StepCostFunction& f = inst_.machine(static_cast<std::size_t>(prev));
      if (prev_load < f.end(f.segment_at(prev_load)) && chosen != prev) {
        throw Error(ErrorCode::InvariantViolated, "segment of machine " + std::to_string(prev + 1) +
                                                      " left partially filled at job " + std::to_string(q));
      }
    }
    ++loads_[static_cast<std::size_t>(chosen)];
    per_job_.push_back(chosen);
    job_k_.push_back(k_);
  }
}

AssignmentTrace DelayedOpt::trace(int n) {
  extend(n);
  AssignmentTrace t;
  t.per_job.assign(per_job_.begin(), per_job_.begin() + n);
  t.final_loads.assign(inst_.size(), 0);
  for (int j : t.per_job) ++t.final_loads[static_cast<std::size_t>(j)];
  return t;
}

LoadVector DelayedOpt::loads(int n) { return trace(n).final_loads; }

int DelayedOpt::k_of_job(int q) {
  if (q < 1) throw Error(ErrorCode::InvalidArgument, "jobs are numbered from 1");
  extend(q);
  return job_k_[static_cast<std::size_t>(q - 1)];
}

AssignmentTrace delayed_opt_assign(const Instance& inst, int n) {
  if (n < 0) throw Error(ErrorCode::InvalidArgument, "negative job count");
  DelayedOpt run(inst);
  AssignmentTrace t = run.trace(n);
  if (n > 0) ratio_bounds(run, n);
  return t;
}

SegmentOrder::SegmentOrder(const Instance& inst, std::span<const int> per_job) {
  rank_.resize(inst.size());
  for (std::size_t j = 0; j < inst.size(); ++j) rank_[j].assign(static_cast<std::size_t>(inst.machine(j).segment_count()), 0);
  LoadVector loads(inst.size(), 0);
  for (int j : per_job) {
    const int load = ++loads[static_cast<std::size_t>(j)];
    const int k = inst.machine(static_cast<std::size_t>(j)).segment_at(load);
    int& slot = rank_[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - 1)];
    if (slot == 0) {
      refs_.push_back({j, k});
      slot = static_cast<int>(refs_.size());
    }
  }
}

int SegmentOrder::rank(const SegmentRef& ref) const {
  if (ref.machine < 0 || ref.machine >= static_cast<int>(rank_.size()) || ref.segment < 1 ||
      ref.segment > static_cast<int>(rank_[static_cast<std::size_t>(ref.machine)].size())) {
    throw Error(ErrorCode::UnrankedSegment, "segment reference out of range");
  }
  const int r = rank_[static_cast<std::size_t>(ref.machine)][static_cast<std::size_t>(ref.segment - 1)];
  if (r == 0) {
    throw Error(ErrorCode::UnrankedSegment, "segment " + std::to_string(ref.segment) + " of machine " +
                                                std::to_string(ref.machine + 1) + " is not ranked");
  }
  return r;
}

const SegmentRef& SegmentOrder::at(int rank) const {
  if (rank < 1 || rank > count()) throw Error(ErrorCode::UnrankedSegment, "rank out of range");
  return refs_[static_cast<std::size_t>(rank - 1)];
}

SegmentOrder segment_order(const Instance& inst, int horizon) {
  DelayedOpt run(inst);
  if (horizon < 0) throw Error(ErrorCode::InvalidArgument, "negative horizon");
  run.extend(horizon);
  return SegmentOrder(inst, run.trace(run.capacity()).per_job);
}

FirstMachines first_two_machines(std::span<const int> per_job) {
  FirstMachines out;
  for (int j : per_job) {
    if (!out.first) {
      out.first = j;
    } else if (j != *out.first) {
      out.second = j;
      break;
    }
  }
  return out;
}

RatioBounds ratio_bounds(DelayedOpt& run, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "ratio bounds need n >= 1");
  RatioBounds b;
  b.n = n;
  while (run.threshold(b.k) < n) ++b.k;
  const LoadVector loads = run.loads(n);
  b.online_cost = social_cost(run.normalized(), loads).value();
  b.opt_cost = run.oracle().cost(n).value();
  b.online_limit = pow2(b.k + 1);
  b.opt_floor = b.k >= 1 ? pow2(b.k - 1) : Rational(0);
  if (!(b.online_cost < b.online_limit) || b.opt_cost < b.opt_floor) {
    throw Error(ErrorCode::InvariantViolated, "competitive bound violated at n = " + std::to_string(n));
  }
  return b;
}

Rational competitive_ratio(const Instance& inst, std::span<const int> n_range) {
  DelayedOpt run(inst);
  Rational worst(0);
  for (int n : n_range) {
    const RatioBounds b = ratio_bounds(run, n);
    worst = std::max(worst, b.online_cost / b.opt_cost);
  }
  return worst;
}

}  // namespace costshare
