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

#include "costshare/rational.hpp"

#include <cctype>
#include <sstream>

#include "costshare/error.hpp"

namespace costshare {
namespace {

Integer parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(whole) + "'");
  }
  Integer value = 0;
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (ch - '0');
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  Rational result;
  try {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      Integer num = parse_integer(text.substr(0, slash), whole);
      Integer den = parse_integer(text.substr(slash + 1), whole);
      if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(whole) + "'");
      result = Rational(num, den);
    } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
      std::string_view int_part = text.substr(0, dot);
      std::string_view frac_part = text.substr(dot + 1);
      Integer num = int_part.empty() ? Integer(0) : parse_integer(int_part, whole);
      Integer den = 1;
      Integer frac = frac_part.empty() ? Integer(0) : parse_integer(frac_part, whole);
      for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
      if (int_part.empty() && frac_part.empty()) {
        throw Error(ErrorCode::ParseError, "malformed rational '" + std::string(whole) + "'");
      }
      result = Rational(num * den + frac, den);
    } else {
      result = Rational(parse_integer(text, whole));
    }
  } catch (const std::overflow_error&) {
    throw Error(ErrorCode::ParseError, "rational out of range '" + std::string(whole) + "'");
  }
  return negative ? -result : result;
}

std::string to_string(const Rational& value) {
  std::ostringstream os;
  os << value.numerator() << '/' << value.denominator();
  return os.str();
}

double to_double(const Rational& value) {
  return value.numerator().convert_to<double>() / value.denominator().convert_to<double>();
}

Rational pow2(int k) {
  if (k < 0 || k > 120) throw Error(ErrorCode::InvalidArgument, "pow2 exponent out of range");
  return Rational(Integer(1) << k);
}

ExtendedCost::ExtendedCost(const Rational& value) : value_(value) {}

const Rational& ExtendedCost::value() const {
  if (infinite_) throw Error(ErrorCode::InvalidArgument, "value() of an infinite cost");
  return value_;
}

ExtendedCost& ExtendedCost::operator+=(const ExtendedCost& rhs) {
  if (infinite_ || rhs.infinite_) {
    infinite_ = true;
    value_ = 0;
  } else {
    value_ += rhs.value_;
  }
  return *this;
}

bool operator==(const ExtendedCost& a, const ExtendedCost& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtendedCost& a, const ExtendedCost& b) {
  if (a.infinite_ || b.infinite_) {
    return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
  }
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string to_string(const ExtendedCost& cost) {
  return cost.is_infinite() ? std::string("inf") : to_string(cost.value());
}

}  // namespace costshare
