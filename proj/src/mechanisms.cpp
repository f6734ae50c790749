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

#include "costshare/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "costshare/error.hpp"

namespace costshare {

std::string_view to_string(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::Capacitated:
      return "cap2";
    case MechanismKind::Step:
      return "step2";
    case MechanismKind::Stochastic:
      return "stochastic";
  }
  return "unknown";
}

MechanismKind parse_mechanism_kind(std::string_view name) {
  if (name == "cap2") return MechanismKind::Capacitated;
  if (name == "step2") return MechanismKind::Step;
  if (name == "stochastic") return MechanismKind::Stochastic;
  throw Error(ErrorCode::InvalidArgument, "unknown mechanism '" + std::string(name) + "'");
}

std::size_t AgentUniverse::position(int agent) const {
  auto it = std::find(agents.begin(), agents.end(), agent);
  if (it == agents.end()) throw Error(ErrorCode::InvalidArgument, "unknown agent " + std::to_string(agent));
  return static_cast<std::size_t>(it - agents.begin());
}

bool AgentUniverse::is_disruptor(int agent) const {
  return std::find(disruptors.begin(), disruptors.end(), agent) != disruptors.end();
}

std::vector<int> select_disruptors(const AgentUniverse& universe) {
  const std::size_t n = universe.agents.size();
  if (universe.probabilities.size() != n || n == 0) {
    throw Error(ErrorCode::MissingProbabilities, "every agent needs an arrival probability");
  }
  for (double p : universe.probabilities) {
    if (!(p > 0.0)) throw Error(ErrorCode::ZeroProbability, "arrival probabilities must be positive");
    if (p > 1.0) throw Error(ErrorCode::InvalidArgument, "arrival probability above 1");
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return universe.probabilities[a] > universe.probabilities[b];
  });

  const bool identical = std::all_of(universe.probabilities.begin(), universe.probabilities.end(),
                                     [&](double p) { return p == universe.probabilities.front(); });
  std::size_t size = 0;
  if (identical) {
    const double p = universe.probabilities.front();
    long extra = 0;
    if (p < 1.0) {
      const double term = 3.0 * std::log(p * static_cast<double>(n)) / -std::log1p(-p);
      extra = static_cast<long>(std::floor(term));
    }
    const long wanted = std::clamp(3L + extra, 3L, static_cast<long>(n));
    size = static_cast<std::size_t>(std::min<long>(wanted, static_cast<long>(n)));
  } else {
    const double expected = std::accumulate(universe.probabilities.begin(), universe.probabilities.end(), 0.0);
    if (expected <= 1.0) {
      size = std::min<std::size_t>(3, n);
    } else {
      const double target = 3.0 * std::log(expected);
      size = std::min<std::size_t>(2, n);
      double mass = 0.0;
      while (size < n && mass < target) {
        mass += universe.probabilities[idx[size]];
        ++size;
      }
    }
  }
  std::vector<std::size_t> chosen(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(size));
  std::sort(chosen.begin(), chosen.end());
  std::vector<int> out;
  out.reserve(size);
  for (std::size_t i : chosen) out.push_back(universe.agents[i]);
  return out;
}

Mechanism::Mechanism(MechanismKind kind, const Instance& inst, MechanismOptions options)
    : kind_(kind), options_(options), inst_(merged(inst)) {
  if (inst_.size() == 0) throw Error(ErrorCode::InvalidInstance, "instance has no machines");
  for (std::size_t j = 0; j < inst_.size(); ++j) {
    const StepCostFunction& f = inst_.machine(j);
    const std::string where = "machine " + std::to_string(j + 1);
    if (f.segment_count() == 0) throw Error(ErrorCode::InvalidInstance, where + " has no segments");
    if (kind_ == MechanismKind::Capacitated && !f.is_capacitated_constant()) {
      throw Error(ErrorCode::InvalidInstance, where + " is not capacitated constant");
    }
    if (!options.bypass_validation && !f.four_step_valid()) {
      throw Error(ErrorCode::InvalidInstance, where + " has a segment shorter than 4");
    }
  }

  DelayedOpt run(inst_);
  trace_ = run.trace(run.capacity()).per_job;
  order_ = SegmentOrder(inst_, trace_);
  phi_ = CumulativeCosts(inst_, order_);
  first_ = first_two_machines(trace_);

  values_.push_back(ShareValue::zero());
  values_.push_back(ShareValue::infinite());
  for (std::size_t j = 0; j < inst_.size(); ++j) {
    const StepCostFunction& f = inst_.machine(j);
    for (int k = 1; k <= f.segment_count(); ++k) {
      values_.push_back(ShareValue::cost(f.segment(k).cost));
      values_.push_back(ShareValue::cost(phi(static_cast<int>(j), k)));
      values_.push_back(epsilon(static_cast<int>(j), k));
    }
  }
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  zero_ = key_of(ShareValue::zero());
  infinite_ = key_of(ShareValue::infinite());

  info_.resize(inst_.size());
  for (std::size_t j = 0; j < inst_.size(); ++j) {
    const StepCostFunction& f = inst_.machine(j);
    const int m = static_cast<int>(j);
    for (int load = 1; load <= f.capacity(); ++load) {
      LoadInfo li;
      li.lambda = last_segment(f, load);
      li.excess = excess(f, load);
      li.segment_length = f.segment(li.lambda).length;
      li.cost = key_of(ShareValue::cost(f.segment(li.lambda).cost));
      li.phi = key_of(ShareValue::cost(phi(m, li.lambda)));
      li.eps = key_of(epsilon(m, li.lambda));
      if (li.lambda > 1) li.eps_prev = key_of(epsilon(m, li.lambda - 1));
      info_[j].push_back(li);
    }
  }
}

LoadVector Mechanism::online_loads(int n) const {
  if (n < 0 || n > static_cast<int>(trace_.size())) {
    throw Error(ErrorCode::InfeasibleDemand,
                std::to_string(n) + " jobs exceed total capacity " + std::to_string(trace_.size()));
  }
  LoadVector loads(inst_.size(), 0);
  for (int q = 0; q < n; ++q) ++loads[static_cast<std::size_t>(trace_[static_cast<std::size_t>(q)])];
  return loads;
}

Mechanism::Key Mechanism::key_of(const ShareValue& v) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), v);
  if (it == values_.end() || *it != v) throw Error(ErrorCode::InvariantViolated, "share value outside the table");
  return static_cast<Key>(it - values_.begin());
}

Mechanism::Key Mechanism::share_key(int machine, int load, int disruptors_on, int regulars_on, bool disruptor,
                                    int rank, int present_disruptors) const {
  if (kind_ == MechanismKind::Capacitated) {
    return capacitated_key(machine, load, disruptors_on, regulars_on, disruptor, rank, present_disruptors);
  }
  return step_key(machine, load, disruptors_on, regulars_on, disruptor, rank, present_disruptors);
}

Mechanism::Key Mechanism::capacitated_key(int machine, int load, int d_on, int r_on, bool disruptor, int rank,
                                          int present) const {
  const auto& infos = info_[static_cast<std::size_t>(machine)];
  const int beta = static_cast<int>(infos.size());
  // One segment: cost, Phi and epsilon are the same at every load.
  const LoadInfo& li = infos.front();
  if (disruptor) {
    if (load <= beta && d_on == present && r_on >= 1) return li.eps;
    if (load > beta && d_on == 1) return li.eps;
    return li.phi;
  }
  if (load <= beta && rank >= 2) return zero_;
  if (rank == 1) {
    if (load == beta) return d_on == 0 ? li.cost : li.phi;
    if (load < beta) return li.phi;
  }
  return infinite_;
}

Mechanism::Key Mechanism::regular_step_key(const LoadInfo& li, int d_on, int rank) const {
  if (li.excess == 0) {
    if (rank == 1) return d_on == 0 ? li.cost : li.phi;
    return zero_;
  }
  if (li.excess == 1) return rank <= 2 ? li.phi : zero_;
  return rank == 1 ? li.phi : zero_;
}

Mechanism::Key Mechanism::step_key(int machine, int load, int d_on, int r_on, bool disruptor, int rank,
                                   int present) const {
  const auto& infos = info_[static_cast<std::size_t>(machine)];
  // Loads past the last segment have infinite cost and every user pays it.
  if (load > static_cast<int>(infos.size())) return infinite_;
  const LoadInfo& li = infos[static_cast<std::size_t>(load - 1)];
  if (!disruptor) return regular_step_key(li, d_on, rank);

  if (kind_ == MechanismKind::Step) {
    if (li.excess != 1 && d_on == present && r_on >= 1) return li.eps;
    if (li.excess == 1 && d_on == 1 && li.lambda > 1) return li.eps_prev;
    return li.phi;
  }
  const bool rest_machine = (first_.first && *first_.first == machine) || (first_.second && *first_.second == machine);
  if (rest_machine && d_on == 1 && (li.excess == 0 || li.excess == li.segment_length - 1)) return zero_;
  if (li.excess != 1 && d_on >= 2 && r_on >= 1 && rank <= 2) return li.eps;
  if (li.excess == 1 && d_on == 1 && li.lambda > 1) return li.eps_prev;
  return li.phi;
}

std::vector<ShareValue> evaluate_shares(const Mechanism& mech, std::span<const int> machine_of,
                                        std::span<const char> is_disruptor) {
  if (machine_of.size() != is_disruptor.size()) throw Error(ErrorCode::InvalidArgument, "profile size mismatch");
  const std::size_t m = mech.machine_count();
  std::vector<int> load(m, 0), d_on(m, 0), r_on(m, 0);
  int present = 0;
  for (std::size_t i = 0; i < machine_of.size(); ++i) {
    const int j = machine_of[i];
    if (j < 0 || static_cast<std::size_t>(j) >= m) throw Error(ErrorCode::InvalidArgument, "machine index out of range");
    ++load[static_cast<std::size_t>(j)];
    if (is_disruptor[i]) {
      ++d_on[static_cast<std::size_t>(j)];
      ++present;
    } else {
      ++r_on[static_cast<std::size_t>(j)];
    }
  }
  std::vector<int> seen_d(m, 0), seen_r(m, 0);
  std::vector<ShareValue> out;
  out.reserve(machine_of.size());
  for (std::size_t i = 0; i < machine_of.size(); ++i) {
    const auto j = static_cast<std::size_t>(machine_of[i]);
    const bool dis = is_disruptor[i] != 0;
    const int rank = dis ? ++seen_d[j] : ++seen_r[j];
    out.push_back(mech.value(mech.share_key(static_cast<int>(j), load[j], d_on[j], r_on[j], dis, std::min(rank, 3), present)));
  }
  return out;
}

namespace {

void require_kind(const Mechanism& mech, MechanismKind kind) {
  if (mech.kind() != kind) {
    throw Error(ErrorCode::WrongMechanism,
                "expected " + std::string(to_string(kind)) + ", got " + std::string(to_string(mech.kind())));
  }
}

}  // namespace

std::vector<ShareValue> shares_capacitated(const Mechanism& mech, std::span<const int> machine_of,
                                           std::span<const char> is_disruptor) {
  require_kind(mech, MechanismKind::Capacitated);
  return evaluate_shares(mech, machine_of, is_disruptor);
}

std::vector<ShareValue> shares_step(const Mechanism& mech, std::span<const int> machine_of,
                                    std::span<const char> is_disruptor) {
  require_kind(mech, MechanismKind::Step);
  return evaluate_shares(mech, machine_of, is_disruptor);
}

std::vector<ShareValue> shares_stochastic(const Mechanism& mech, std::span<const int> machine_of,
                                          std::span<const char> is_disruptor) {
  require_kind(mech, MechanismKind::Stochastic);
  return evaluate_shares(mech, machine_of, is_disruptor);
}

}  // namespace costshare
