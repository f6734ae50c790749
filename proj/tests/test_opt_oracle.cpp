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

#include <numeric>

#include "costshare/error.hpp"
#include "support.hpp"

using namespace costshare;
using namespace costshare::testing;

TEST_SUITE("opt_oracle") {

TEST_CASE("four jobs on the three-machine example") {
  const Allocation a = opt_allocation(three_machine_example(), 4);
  CHECK(a.loads == LoadVector{1, 3, 0});
  CHECK(a.cost == Rational(3));
}

TEST_CASE("zero jobs cost nothing") {
  const Allocation a = opt_allocation(three_machine_example(), 0);
  CHECK(a.loads == LoadVector{0, 0, 0});
  CHECK(a.cost == Rational(0));
}

TEST_CASE("demand above capacity is infeasible") {
  try {
    (void)opt_allocation(three_machine_example(), 11);
    FAIL("expected InfeasibleDemand");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfeasibleDemand);
  }
}

TEST_CASE("social cost sums machine costs") {
  const Instance inst = three_machine_example();
  CHECK(social_cost(inst, LoadVector{1, 3, 1}) == ExtendedCost(Rational(18)));
  CHECK(social_cost(inst, LoadVector{2, 0, 0}).is_infinite());
}

TEST_CASE("property: oracle agrees with exhaustive search") {
  Rng rng(21);
  FunctionShape s;
  s.max_segments = 3;
  s.max_length = 4;
  s.repeat_cost = 0.2;
  for (int t = 0; t < 1500; ++t) {
    const Instance inst = random_instance(rng, 1, 4, s);
    const OptOracle oracle(inst);
    const int n = std::min(12, inst.total_capacity());
    for (int q = 0; q <= n; ++q) {
      const BruteOpt b = brute_force_opt(inst, q);
      const Allocation a = oracle.allocation(q);
      REQUIRE(b.feasible);
      CHECK(ExtendedCost(a.cost) == b.cost);
      CHECK(a.loads == b.lexmax);
      CHECK(social_cost(inst, a.loads) == ExtendedCost(a.cost));
    }
  }
}

TEST_CASE("property: optimal cost is non-decreasing in the demand") {
  Rng rng(22);
  FunctionShape s;
  for (int t = 0; t < 300; ++t) {
    const Instance inst = random_instance(rng, 1, 5, s);
    const OptOracle oracle(inst);
    for (int q = 1; q <= oracle.capacity(); ++q) CHECK(oracle.cost(q - 1) <= oracle.cost(q));
  }
}

TEST_CASE("thresholds of the worked examples") {
  auto as = [](const ThresholdTable& t) {
    std::vector<int> a;
    for (const auto& e : t.entries) a.push_back(e.a);
    return a;
  };
  CHECK(as(thresholds(three_machine_example(), 10)) == std::vector<int>{0, 1, 4, 4, 6, 10});
  CHECK(as(thresholds(five_machine_example(), 15)) == std::vector<int>{0, 1, 3, 8, 15});
  const ThresholdTable t = thresholds(three_machine_example(), 10);
  CHECK(t.entries[2].targets == LoadVector{1, 3, 0});
  CHECK(t.entries[4].targets == LoadVector{0, 0, 6});
}

TEST_CASE("property: thresholds are the largest demand under each power of two") {
  Rng rng(23);
  FunctionShape s;
  s.max_cost = 200;
  for (int t = 0; t < 200; ++t) {
    const Instance inst = random_instance(rng, 1, 4, s);
    const Normalized norm = normalize(inst);
    const OptOracle oracle(norm.instance);
    const ThresholdTable table = thresholds(inst, inst.total_capacity());
    CHECK(table.scale == norm.scale);
    for (const auto& e : table.entries) {
      const Rational bound = pow2(e.k);
      CHECK(oracle.cost(e.a) < bound);
      if (e.a < oracle.capacity()) CHECK_FALSE(oracle.cost(e.a + 1) < bound);
      CHECK(std::accumulate(e.targets.begin(), e.targets.end(), 0) == e.a);
    }
    CHECK(table.entries.back().a >= inst.total_capacity());
  }
}

}  // TEST_SUITE
