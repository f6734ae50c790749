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

#ifndef COSTSHARE_RATIONAL_HPP
#define COSTSHARE_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <compare>
#include <string>
#include <string_view>

namespace costshare {

// All costs and shares are exact. The 128-bit checked backend throws
// std::overflow_error instead of wrapping.
using Integer = boost::multiprecision::checked_int128_t;
using Rational = boost::rational<Integer>;

/// Parses "7", "-3", "5/2" or a decimal such as "1.25". Throws Error(ParseError).
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print as "p/1".
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// 2^k for k >= 0.
Rational pow2(int k);

/// A nonnegative exact cost or the absorbing value Infinite.
class ExtendedCost {
 public:
  ExtendedCost() = default;
  ExtendedCost(const Rational& value);  // NOLINT: implicit by intent
  ExtendedCost(int value) : ExtendedCost(Rational(value)) {}  // NOLINT

  static ExtendedCost infinite() {
    ExtendedCost c;
    c.infinite_ = true;
    return c;
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }

  /// Precondition: is_finite().
  const Rational& value() const;

  ExtendedCost& operator+=(const ExtendedCost& rhs);
  friend ExtendedCost operator+(ExtendedCost lhs, const ExtendedCost& rhs) { return lhs += rhs; }

  friend bool operator==(const ExtendedCost& a, const ExtendedCost& b);
  friend std::strong_ordering operator<=>(const ExtendedCost& a, const ExtendedCost& b);

 private:
  bool infinite_ = false;
  Rational value_{0};
};

/// "p/q" or "inf".
std::string to_string(const ExtendedCost& cost);

}  // namespace costshare

#endif  // COSTSHARE_RATIONAL_HPP
