// Copyright 2026 The catl-decomp Authors
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

#include <vector>

#include "core/errors.hpp"
#include "core/semantics.hpp"
#include "doctest.h"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace catl {
namespace {

using semantics::robustness;
using semantics::satisfies;

// Two states; A labels q only.
Environment two_state_env() {
  return Environment({"q", "r"}, {{"q", "r", 1}, {"r", "q", 1}}, {{"q", {"A"}}},
                     {"A", "B"}, {"c1", "c2"});
}

TEST_CASE("task robustness is the excess over the demand") {
  const Environment env = two_state_env();
  const Formula f = parse_formula("T(2, A, {c1:1})");
  std::vector<Agent> two{{"R1", 0, CapabilitySet(1)}, {"R2", 0, CapabilitySet(1)}};
  TeamTrajectory team{2, {stationary_trajectory(two[0], 2), stationary_trajectory(two[1], 2)}};
  CHECK(robustness(env, two, team, 0, f) == ExtInt(1));
  CHECK(satisfies(env, two, team, f));

  std::vector<Agent> one{two[0]};
  TeamTrajectory solo{2, {stationary_trajectory(one[0], 2)}};
  CHECK(robustness(env, one, solo, 0, f) == ExtInt(0));
  CHECK(satisfies(env, one, solo, f));
}

TEST_CASE("leaving the region inside an always window") {
  const Environment env = two_state_env();
  const Formula f = parse_formula("G[0,2] T(1, A, {c1:1})");
  std::vector<Agent> agents{{"R1", 0, CapabilitySet(1)}};
  Trajectory tr{"R1", {Occupancy::at(0), Occupancy::at(1), Occupancy::at(1),
                       Occupancy::at(1)}};
  TeamTrajectory team{3, {tr}};
  CHECK(robustness(env, agents, team, 0, f) == ExtInt(-1));
  CHECK_FALSE(satisfies(env, agents, team, f));
}

TEST_CASE("an unlabeled proposition is vacuously satisfied") {
  const Environment env = two_state_env();
  const Formula f = parse_formula("T(1, B, {c1:5})");
  std::vector<Agent> agents{{"R1", 0, CapabilitySet(1)}};
  TeamTrajectory team{1, {stationary_trajectory(agents[0], 1)}};
  CHECK(robustness(env, agents, team, 0, f).is_pos_inf());
  CHECK(satisfies(env, agents, team, f));
}

TEST_CASE("horizon overflow is a domain error") {
  const Environment env = two_state_env();
  std::vector<Agent> agents{{"R1", 0, CapabilitySet(1)}};
  TeamTrajectory team{2, {stationary_trajectory(agents[0], 2)}};
  CHECK_THROWS_AS(robustness(env, agents, team, 0, parse_formula("F[0,3] T(1, A, {c1:1})")),
                  DomainError);
  CHECK_THROWS_AS(robustness(env, agents, team, 2, parse_formula("T(1, A, {c1:1})")),
                  DomainError);
  CHECK_THROWS_AS(satisfies(env, agents, team, parse_formula("T(4, A, {c1:1})")),
                  DomainError);
}

TEST_CASE("until takes the best release time") {
  const Environment env = two_state_env();
  // R1 holds A for c1 until t=1, then leaves; R2 (c2) reaches A at t=2.
  std::vector<Agent> agents{{"R1", 0, CapabilitySet(1)}, {"R2", 1, CapabilitySet(2)}};
  Trajectory r1{"R1", {Occupancy::at(0), Occupancy::at(0), Occupancy::at(1), Occupancy::at(1)}};
  Trajectory r2{"R2", {Occupancy::at(1), Occupancy::at(1), Occupancy::at(0), Occupancy::at(0)}};
  TeamTrajectory team{3, {r1, r2}};
  const Formula f = parse_formula("T(1, A, {c1:1}) U[0,2] T(1, A, {c2:1})");
  CHECK(robustness(env, agents, team, 0, f) == ExtInt(-1));
  // Waiting is not needed when the release already holds.
  Trajectory r2b{"R2", {Occupancy::at(1), Occupancy::at(0), Occupancy::at(0), Occupancy::at(0)}};
  TeamTrajectory team_b{3, {r1, r2b}};
  CHECK(robustness(env, agents, team_b, 0, f) == ExtInt(0));
}

TEST_CASE("breakdown lists every subformula") {
  const Environment env = two_state_env();
  std::vector<Agent> agents{{"R1", 0, CapabilitySet(3)}};
  TeamTrajectory team{2, {stationary_trajectory(agents[0], 2)}};
  const Formula f = parse_formula("F[0,1] T(1, A, {c1:1}) && G[0,1] T(1, A, {c2:2})");
  const auto rows = semantics::breakdown(env, agents, team, f);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].value == ExtInt(-1));
  CHECK(rows[1].value == ExtInt(0));
  CHECK(rows[3].value == ExtInt(-1));
}

TEST_CASE("recursion matches the literal evaluator and the boolean path") {
  testing::Rng rng(2024);
  testing::EnvParams ep;
  ep.max_states = 4;
  ep.max_weight = 2;
  ep.empty_region_prob = 0.1;
  testing::FormulaParams fp;
  fp.max_horizon = 7;
  int positive = 0;
  for (int i = 0; i < 1500; ++i) {
    const Environment env = testing::random_environment(rng, ep);
    const auto agents = testing::random_agents(rng, env, testing::uniform(rng, 1, 4));
    const Formula f = testing::random_formula(rng, env, fp);
    const int H = horizon(f) + testing::uniform(rng, 0, 2);
    const auto team = testing::random_team(rng, env, agents, H);
    const int t = testing::uniform(rng, 0, H - horizon(f));
    const ExtInt rho = robustness(env, agents, team, t, f);
    REQUIRE(rho == testing::literal_robustness(env, agents, team, t, f));
    const ExtInt rho0 = robustness(env, agents, team, 0, f);
    CHECK(satisfies(env, agents, team, f) == (rho0 >= ExtInt(0)));
    positive += rho0 >= ExtInt(0);
  }
  // Both verdicts must actually occur for the equivalence to mean anything.
  CHECK(positive > 100);
  CHECK(positive < 1400);
}

TEST_CASE("adding an agent never lowers robustness") {
  testing::Rng rng(99);
  testing::EnvParams ep;
  testing::FormulaParams fp;
  fp.max_horizon = 6;
  for (int i = 0; i < 500; ++i) {
    const Environment env = testing::random_environment(rng, ep);
    auto agents = testing::random_agents(rng, env, 3);
    const Formula f = testing::random_formula(rng, env, fp);
    const int H = horizon(f);
    auto team = testing::random_team(rng, env, agents, H);
    const ExtInt before = robustness(env, agents, team, 0, f);
    Agent extra = testing::random_agents(rng, env, 1).front();
    extra.id = "X";
    agents.push_back(extra);
    team.trajectories.push_back(testing::random_trajectory(rng, env, extra, H));
    CHECK(robustness(env, agents, team, 0, f) >= before);
  }
}

}  // namespace
}  // namespace catl
