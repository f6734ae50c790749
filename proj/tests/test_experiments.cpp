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

Instance three_level() {
  return Instance({StepCostFunction({{4, Rational(1)}, {4, Rational(3)}, {4, Rational(6)}}),
                   StepCostFunction({{4, Rational(2)}, {4, Rational(4)}, {4, Rational(8)}}),
                   StepCostFunction({{6, Rational(5)}, {6, Rational(9)}})});
}

AgentUniverse iid(int n, double p) {
  AgentUniverse u;
  for (int i = 1; i <= n; ++i) u.agents.push_back(i);
  u.probabilities.assign(static_cast<std::size_t>(n), p);
  u.disruptors = select_disruptors(u);
  return u;
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("price of anarchy on the two-machine capacitated game") {
  const auto mech = std::make_shared<const Mechanism>(
      MechanismKind::Capacitated,
      Instance({StepCostFunction::capacitated(4, Rational(2)), StepCostFunction::capacitated(5, Rational(3))}));
  const PoAReport r = poa(Game::from_counts(mech, 2, 5));
  CHECK(r.opt_cost == Rational(5));
  CHECK(r.worst_charged == ExtendedCost(Rational(8)));
  CHECK(r.poa == ExtendedCost(Rational(8, 5)));
  CHECK(r.pne_count == 6);
  CHECK(r.online_loads_only);
  CHECK(r.online_loads == LoadVector{2, 5});
}

TEST_CASE("no equilibrium is reported as an error") {
  const Instance inst({StepCostFunction::capacitated(4, Rational(9)), StepCostFunction::capacitated(5, Rational(2))});
  const auto loose = std::make_shared<const Mechanism>(MechanismKind::Capacitated, inst, MechanismOptions{true});
  try {
    (void)poa(Game::from_counts(loose, 1, 5));
    FAIL("expected NoEquilibrium");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoEquilibrium);
  }
}

TEST_CASE("competitive sweep") {
  const SweepReport r = competitive_sweep(three_machine_example(), 10);
  REQUIRE(r.rows.size() == 10);
  CHECK(r.rows[4].ratio == Rational(6, 5));
  CHECK(r.all_below_four);
  Rational best(0);
  for (const auto& row : r.rows) {
    CHECK(row.ratio == row.online_cost / row.opt_cost);
    best = std::max(best, row.ratio);
  }
  CHECK(r.max_ratio == best);
  CHECK(r.rows[static_cast<std::size_t>(r.argmax - 1)].ratio == best);
}

TEST_CASE("property: equilibrium cost bounds for the stochastic mechanism") {
  Rng rng(71);
  for (int t = 0; t < 60; ++t) {
    const Instance inst = random_valid_instance(rng, MechanismKind::Stochastic, 3, 2);
    const auto mech = std::make_shared<const Mechanism>(MechanismKind::Stochastic, inst);
    const int d = uniform(rng, 0, 5);
    const int r = uniform(rng, 0, std::min(7 - d, inst.total_capacity() - d));
    const BoundCheck c = equilibrium_bounds(Game::from_counts(mech, d, std::max(0, r)));
    CHECK(c.bound_holds);
    CHECK(c.worst_charged <= c.limit);
    if (d >= 3) CHECK(c.loads_match);
  }
}

TEST_CASE("expected PoA is reproducible and independent of the worker count") {
  const auto mech = std::make_shared<const Mechanism>(MechanismKind::Stochastic, three_level());
  const AgentUniverse u = iid(8, 0.4);
  ExpectedPoAOptions one, four;
  four.enumerate.workers = 4;
  const auto a = expected_poa(mech, u, 300, 99, one);
  const auto b = expected_poa(mech, u, 300, 99, four);
  CHECK(a.mean_poa == b.mean_poa);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].agents == b.rows[i].agents);
    CHECK(a.rows[i].poa == b.rows[i].poa);
  }
  const auto c = expected_poa(mech, u, 300, 100, one);
  CHECK(c.mean_poa != a.mean_poa);
  CHECK(a.samples == 300);
  CHECK(a.disruptor_set == static_cast<int>(u.disruptors.size()));
  CHECK(a.expected_agents == doctest::Approx(3.2));
  CHECK(a.exact_samples + a.structural_samples + a.empty_samples == a.samples);
  for (const auto& row : a.rows) {
    CHECK(row.agents <= 8);
    CHECK(row.poa >= 1.0);
  }
}

TEST_CASE("expected PoA needs the stochastic mechanism and probabilities") {
  const auto cap = std::make_shared<const Mechanism>(MechanismKind::Capacitated,
                                                     Instance({StepCostFunction::capacitated(4, Rational(1))}));
  try {
    (void)expected_poa(cap, iid(4, 0.5), 10, 1);
    FAIL("expected WrongMechanism");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::WrongMechanism);
  }
}

TEST_CASE("capacity diagnostic") {
  const Instance small({StepCostFunction::capacitated(3, Rational(3)), StepCostFunction::capacitated(3, Rational(5)),
                        StepCostFunction::capacitated(4, Rational(5))});
  const DiagnosticReport r = capacity_diagnostic(small, 6);
  CHECK(r.any_empty);
  const Instance valid({StepCostFunction::capacitated(4, Rational(3)), StepCostFunction::capacitated(5, Rational(5))});
  for (const auto& c : capacity_diagnostic(valid, 6).cases) {
    if (c.disruptors == 2) CHECK(c.pne_count > 0);
  }
}

TEST_CASE("instance digests") {
  CHECK(instance_digest(three_level()) == instance_digest(three_level()));
  CHECK(instance_digest(three_level()) != instance_digest(three_machine_example()));
  CHECK(instance_digest(three_level()).size() == 16);
}

}  // TEST_SUITE
