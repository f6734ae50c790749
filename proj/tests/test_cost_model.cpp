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

#include <doctest.h>

#include "costshare/error.hpp"
#include "support.hpp"

using namespace costshare;
using namespace costshare::testing;

namespace {

Rational R(int p, int q = 1) { return Rational(p, q); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvariantViolated;
}

}  // namespace

TEST_SUITE("cost_model") {

TEST_CASE("construction rejects malformed segments") {
  CHECK(code_of([] { StepCostFunction({{0, R(1)}}); }) == ErrorCode::InvalidSegment);
  CHECK(code_of([] { StepCostFunction({{2, R(0)}}); }) == ErrorCode::ZeroCostSegment);
  CHECK(code_of([] { StepCostFunction({{2, R(3)}, {2, R(2)}}); }) == ErrorCode::DecreasingCost);
  CHECK_NOTHROW(StepCostFunction({{2, R(3)}, {2, R(3)}}));
}

TEST_CASE("evaluation at boundaries") {
  const StepCostFunction f({{2, R(1)}, {3, R(5, 2)}});
  CHECK(eval_cost(f, 0) == ExtendedCost(0));
  CHECK(eval_cost(f, 1) == ExtendedCost(R(1)));
  CHECK(eval_cost(f, 2) == ExtendedCost(R(1)));
  CHECK(eval_cost(f, 3) == ExtendedCost(R(5, 2)));
  CHECK(eval_cost(f, 5) == ExtendedCost(R(5, 2)));
  CHECK(eval_cost(f, 6).is_infinite());
  CHECK(f.capacity() == 5);
  CHECK(f.end(1) == 2);
  CHECK(f.segment_at(3) == 2);
  CHECK(code_of([&] { (void)f.segment_at(6); }) == ErrorCode::OverCapacity);
  CHECK(to_string(eval_cost(f, 9)) == "inf");
}

TEST_CASE("capacitated constant") {
  const auto f = StepCostFunction::capacitated(4, R(7));
  CHECK(f.is_capacitated_constant());
  CHECK(f.four_step_valid());
  CHECK(eval_cost(f, 4) == ExtendedCost(R(7)));
  CHECK(eval_cost(f, 5).is_infinite());
  CHECK_FALSE(StepCostFunction::capacitated(3, R(7)).four_step_valid());
}

TEST_CASE("property: evaluation is non-decreasing and matches a segment walk") {
  Rng rng(11);
  FunctionShape s;
  s.max_segments = 5;
  s.repeat_cost = 0.3;
  for (int t = 0; t < 500; ++t) {
    const auto f = random_function(rng, s);
    ExtendedCost prev(0);
    for (int l = 0; l <= f.capacity() + 2; ++l) {
      const ExtendedCost c = eval_cost(f, l);
      CHECK(c == walk_cost(f, l));
      CHECK(prev <= c);
      prev = c;
    }
  }
}

TEST_CASE("property: merging equal neighbours keeps the function") {
  Rng rng(12);
  FunctionShape s;
  s.max_segments = 6;
  s.repeat_cost = 0.5;
  for (int t = 0; t < 500; ++t) {
    const auto f = random_function(rng, s);
    const auto g = merge_equal_segments(f);
    CHECK(g.strictly_increasing());
    CHECK(g.capacity() == f.capacity());
    for (int l = 0; l <= f.capacity() + 1; ++l) CHECK(eval_cost(f, l) == eval_cost(g, l));
    CHECK(merge_equal_segments(g) == g);
  }
}

TEST_CASE("merging two equal segments of length 2 gives one of length 4") {
  const auto g = merge_equal_segments(StepCostFunction({{2, R(3)}, {2, R(3)}, {1, R(4)}}));
  REQUIRE(g.segment_count() == 2);
  CHECK(g.segment(1) == Segment{4, R(3)});
  CHECK(g.four_step_valid() == false);
}

TEST_CASE("property: normalization sets the minimum to one and is idempotent") {
  Rng rng(13);
  FunctionShape s;
  s.max_cost = 500;
  for (int t = 0; t < 300; ++t) {
    const Instance inst = random_instance(rng, 1, 4, s);
    const Normalized n1 = normalize(inst);
    Rational lo = n1.instance.machine(0).segment(1).cost;
    for (const auto& f : n1.instance.machines()) lo = std::min(lo, f.segment(1).cost);
    CHECK(lo == R(1));
    const Normalized n2 = normalize(n1.instance);
    CHECK(n2.scale == R(1));
    CHECK(n2.instance == n1.instance);
    for (std::size_t j = 0; j < inst.size(); ++j) {
      for (int k = 1; k <= inst.machine(j).segment_count(); ++k) {
        CHECK(inst.machine(j).segment(k).cost * n1.scale == n1.instance.machine(j).segment(k).cost);
      }
    }
  }
}

TEST_CASE("normalizing an empty instance fails") {
  CHECK(code_of([] { (void)normalize(Instance{}); }) == ErrorCode::NoFiniteCost);
}

TEST_CASE("bounded approximation covers the samples") {
  const std::vector<Rational> samples = {R(1), R(1), R(2), R(3), R(3), R(4), R(4), R(6)};
  const auto f = approximate_bounded(samples);
  CHECK(f.four_step_valid());
  CHECK(f.capacity() == 8);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto c = eval_cost(f, static_cast<int>(i) + 1);
    CHECK(samples[i] <= c.value());
    // Within a block, the charge is the block end's value.
    CHECK(c.value() == samples[(i / 4) * 4 + 3]);
  }
  const std::vector<Rational> down = {R(2), R(1), R(3), R(4)};
  CHECK(code_of([&] { (void)approximate_bounded(down); }) == ErrorCode::NotNondecreasing);
  const std::vector<Rational> three = {R(1), R(2), R(3)};
  CHECK(code_of([&] { (void)approximate_bounded(three); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("largest consecutive jump") {
  const std::vector<Rational> s = {R(1), R(3), R(4), R(8)};
  CHECK(max_jump_ratio(s) == R(3));
  const std::vector<Rational> one = {R(5)};
  CHECK(max_jump_ratio(one) == R(1));
}

TEST_CASE("instance aggregates") {
  const Instance inst({StepCostFunction::capacitated(4, R(1)), StepCostFunction({{4, R(2)}, {5, R(3)}})});
  CHECK(inst.total_capacity() == 13);
  CHECK(inst.total_segments() == 3);
  CHECK(inst.four_step_valid());
  CHECK_FALSE(inst.all_capacitated_constant());
}

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("5/2") == R(5, 2));
  CHECK(parse_rational("1.25") == R(5, 4));
  CHECK(parse_rational("-3") == R(-3));
  CHECK(to_string(R(4, 2)) == "2/1");
  CHECK(code_of([] { (void)parse_rational("1/0"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { (void)parse_rational("x"); }) == ErrorCode::ParseError);
  CHECK(pow2(5) == R(32));
  CHECK(ExtendedCost::infinite() + ExtendedCost(R(1)) == ExtendedCost::infinite());
  CHECK(ExtendedCost(R(10)) < ExtendedCost::infinite());
}

}  // TEST_SUITE
