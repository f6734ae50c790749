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

#ifndef COSTSHARE_SHARES_HPP
#define COSTSHARE_SHARES_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "costshare/delayed_opt.hpp"

namespace costshare {

/// A cost share: Infinite, or a pair (macro, micro) ordered
/// lexicographically. Micro-only values model charges that are positive
/// but smaller than any positive macro amount.
class ShareValue {
 public:
  ShareValue() = default;

  static ShareValue zero() { return ShareValue(); }
  static ShareValue infinite() {
    ShareValue s;
    s.infinite_ = true;
    return s;
  }
  static ShareValue cost(const Rational& macro) {
    ShareValue s;
    s.macro_ = macro;
    return s;
  }
  static ShareValue epsilon(std::int64_t micro) {
    ShareValue s;
    s.micro_ = micro;
    return s;
  }

  bool is_infinite() const noexcept { return infinite_; }
  const Rational& macro() const noexcept { return macro_; }
  std::int64_t micro() const noexcept { return micro_; }

  friend bool operator==(const ShareValue& a, const ShareValue& b);
  friend std::strong_ordering operator<=>(const ShareValue& a, const ShareValue& b);

 private:
  bool infinite_ = false;
  Rational macro_{0};
  std::int64_t micro_ = 0;
};

/// "inf", "p/q" or "p/q+eps<k>".
std::string to_string(const ShareValue& s);

/// Last used segment at the given load (1 <= load <= capacity).
int last_segment(const StepCostFunction& f, int load);

/// Jobs in the last used segment, or 0 when it is full.
int excess(const StepCostFunction& f, int load);

/// Phi values for every rank of a segment order, plus epsilon encoding.
class CumulativeCosts {
 public:
  CumulativeCosts() = default;
  /// Throws InvariantViolated unless values strictly increase along the order.
  CumulativeCosts(const Instance& inst, const SegmentOrder& order);

  int count() const noexcept { return static_cast<int>(phi_.size()); }
  const Rational& at_rank(int rank) const;
  const Rational& of(const SegmentRef& ref) const { return at_rank(order_.rank(ref)); }

  /// epsilon for a segment: micro = count + 1 - rank.
  ShareValue epsilon(const SegmentRef& ref) const;
  ShareValue epsilon_at_rank(int rank) const;

 private:
  SegmentOrder order_;
  std::vector<Rational> phi_;
};

/// Phi for a single segment, computed directly from the definition.
Rational cumulative_cost(const Instance& inst, const SegmentOrder& order, const SegmentRef& ref);

/// The i-th (1-based) member of `set` under the ordering `pi`.
int priority_agent(std::span<const int> set, int i, std::span<const int> pi);

}  // namespace costshare

#endif  // COSTSHARE_SHARES_HPP
