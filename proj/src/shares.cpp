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

#include "costshare/shares.hpp"

#include <algorithm>
#include <unordered_map>

#include "costshare/error.hpp"

namespace costshare {

bool operator==(const ShareValue& a, const ShareValue& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.macro_ == b.macro_ && a.micro_ == b.micro_;
}

std::strong_ordering operator<=>(const ShareValue& a, const ShareValue& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
  if (a.macro_ < b.macro_) return std::strong_ordering::less;
  if (b.macro_ < a.macro_) return std::strong_ordering::greater;
  return a.micro_ <=> b.micro_;
}

std::string to_string(const ShareValue& s) {
  if (s.is_infinite()) return "inf";
  std::string out = to_string(s.macro());
  if (s.micro() != 0) out += "+eps" + std::to_string(s.micro());
  return out;
}

int last_segment(const StepCostFunction& f, int load) { return f.segment_at(load); }

int excess(const StepCostFunction& f, int load) {
  const int k = f.segment_at(load);
  return load == f.end(k) ? 0 : load - f.end(k - 1);
}

CumulativeCosts::CumulativeCosts(const Instance& inst, const SegmentOrder& order) : order_(order) {
  std::vector<Rational> current(inst.size(), Rational(0));
  Rational total(0);
  phi_.reserve(static_cast<std::size_t>(order.count()));
  for (int rank = 1; rank <= order.count(); ++rank) {
    const SegmentRef& ref = order.at(rank);
    const Rational& c = inst.machine(static_cast<std::size_t>(ref.machine)).segment(ref.segment).cost;
    Rational& slot = current[static_cast<std::size_t>(ref.machine)];
    // Ranks are monotone within a machine, so the newest segment is the max.
    total += c - slot;
    slot = c;
    if (!phi_.empty() && !(phi_.back() < total)) {
      throw Error(ErrorCode::InvariantViolated, "cumulative costs are not strictly increasing at rank " + std::to_string(rank));
    }
    phi_.push_back(total);
  }
}

const Rational& CumulativeCosts::at_rank(int rank) const {
  if (rank < 1 || rank > count()) throw Error(ErrorCode::UnrankedSegment, "rank out of range");
  return phi_[static_cast<std::size_t>(rank - 1)];
}

ShareValue CumulativeCosts::epsilon(const SegmentRef& ref) const { return epsilon_at_rank(order_.rank(ref)); }

ShareValue CumulativeCosts::epsilon_at_rank(int rank) const {
  if (rank < 1 || rank > count()) throw Error(ErrorCode::UnrankedSegment, "rank out of range");
  return ShareValue::epsilon(count() + 1 - rank);
}

Rational cumulative_cost(const Instance& inst, const SegmentOrder& order, const SegmentRef& ref) {
  const int limit = order.rank(ref);
  Rational total(0);
  for (std::size_t j = 0; j < inst.size(); ++j) {
    const StepCostFunction& f = inst.machine(j);
    Rational best(0);
    for (int k = 1; k <= f.segment_count(); ++k) {
      if (order.rank(static_cast<int>(j), k) <= limit) best = std::max(best, f.segment(k).cost);
    }
    total += best;
  }
  return total;
}

int priority_agent(std::span<const int> set, int i, std::span<const int> pi) {
  if (i < 1) throw Error(ErrorCode::InvalidArgument, "priority index starts at 1");
  if (static_cast<int>(set.size()) < i) {
    throw Error(ErrorCode::TooFew, "set has " + std::to_string(set.size()) + " agents, asked for #" + std::to_string(i));
  }
  std::unordered_map<int, std::size_t> position;
  for (std::size_t p = 0; p < pi.size(); ++p) position.emplace(pi[p], p);
  std::vector<std::pair<std::size_t, int>> ranked;
  ranked.reserve(set.size());
  for (int agent : set) {
    auto it = position.find(agent);
    if (it == position.end()) throw Error(ErrorCode::InvalidArgument, "agent " + std::to_string(agent) + " not in ordering");
    ranked.emplace_back(it->second, agent);
  }
  std::nth_element(ranked.begin(), ranked.begin() + (i - 1), ranked.end());
  return ranked[static_cast<std::size_t>(i - 1)].second;
}

}  // namespace costshare
