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

TEST_SUITE("shares") {

TEST_CASE("share values order lexicographically") {
  const ShareValue z = ShareValue::zero();
  const ShareValue e1 = ShareValue::epsilon(1), e2 = ShareValue::epsilon(2);
  const ShareValue tiny = ShareValue::cost(Rational(1, 1000));
  const ShareValue inf = ShareValue::infinite();
  CHECK(z < e1);
  CHECK(e1 < e2);
  CHECK(e2 < tiny);
  CHECK(tiny < inf);
  CHECK(ShareValue::epsilon(0) == z);
  CHECK(to_string(inf) == "inf");
  CHECK(to_string(tiny) == "1/1000");
  CHECK(to_string(e2) == "0/1+eps2");
}

TEST_CASE("last segment and excess") {
  const StepCostFunction f({{4, Rational(1)}, {5, Rational(3)}});
  CHECK(last_segment(f, 1) == 1);
  CHECK(last_segment(f, 4) == 1);
  CHECK(last_segment(f, 5) == 2);
  CHECK(excess(f, 4) == 0);
  CHECK(excess(f, 5) == 1);
  CHECK(excess(f, 7) == 3);
  CHECK(excess(f, 9) == 0);
}

TEST_CASE("cumulative costs on the five-machine example") {
  const Instance inst = five_machine_example();
  const SegmentOrder order = segment_order(inst, 15);
  const CumulativeCosts phi(inst, order);
  std::vector<Rational> by_rank;
  for (int r = 1; r <= phi.count(); ++r) by_rank.push_back(phi.at_rank(r));
  CHECK(by_rank == std::vector<Rational>{Rational(1), Rational(3), Rational(10), Rational(12), Rational(14)});
  CHECK(phi.of({4, 1}) == Rational(10));
  CHECK(phi.epsilon({0, 1}) == ShareValue::epsilon(5));
  CHECK(phi.epsilon({3, 1}) == ShareValue::epsilon(1));
}

TEST_CASE("property: incremental cumulative costs equal the direct definition") {
  Rng rng(41);
  FunctionShape s;
  s.max_segments = 4;
  s.max_cost = 100;
  for (int t = 0; t < 300; ++t) {
    const Instance inst = merged(random_instance(rng, 1, 5, s));
    const SegmentOrder order = segment_order(inst, inst.total_capacity());
    const CumulativeCosts phi(inst, order);
    for (int r = 1; r <= order.count(); ++r) {
      CHECK(phi.at_rank(r) == cumulative_cost(inst, order, order.at(r)));
      if (r > 1) {
        // Earlier segments: smaller Phi, larger epsilon.
        CHECK(phi.at_rank(r - 1) < phi.at_rank(r));
        CHECK(phi.epsilon_at_rank(r) < phi.epsilon_at_rank(r - 1));
      }
    }
  }
}

TEST_CASE("priority agent follows the global order") {
  const std::vector<int> pi = {9, 4, 7, 1};
  const std::vector<int> set = {1, 7, 4};
  CHECK(priority_agent(set, 1, pi) == 4);
  CHECK(priority_agent(set, 2, pi) == 7);
  CHECK(priority_agent(set, 3, pi) == 1);
  try {
    (void)priority_agent(set, 4, pi);
    FAIL("expected TooFew");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooFew);
  }
}

}  // TEST_SUITE
