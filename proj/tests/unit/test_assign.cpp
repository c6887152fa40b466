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

#include <algorithm>
#include <vector>

#include "core/assign.hpp"
#include "core/errors.hpp"
#include "core/synth.hpp"
#include "doctest.h"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/worked_example.hpp"

namespace catl {
namespace {

using assign::Assignment;
using assign::ExcessVector;

ExcessVector ev(std::initializer_list<std::int64_t> xs) {
  ExcessVector v;
  for (auto x : xs) v.push_back(ExtInt(x));
  return v;
}

struct Worked {
  SyntaxTree tree{parse_formula(testing::kWorkedFormula)};
  std::vector<Agent> agents = testing::worked_team();
  std::vector<std::string> caps = testing::worked_capabilities();
  assign::Team team{agents, caps};
  Assignment a = testing::worked_assignment(tree);
  int leaf(int k) const { return tree.leaves()[k]; }
};

TEST_CASE("capability excess of the example assignment") {
  Worked w;
  const auto ex = assign::capability_excess_all(w.tree, w.team, w.a);
  CHECK(ex[w.leaf(0)] == ev({1, 0}));
  CHECK(ex[w.leaf(1)] == ev({0, 0}));
  CHECK(ex[w.leaf(2)] == ev({0, 0}));
  CHECK(ex[w.leaf(3)] == ev({1, 1}));
  CHECK(ex[w.leaf(4)] == ev({0, 0}));
  CHECK(ex[w.tree.node(0).children[0]] == ev({1, 0}));
  CHECK(ex[w.tree.node(0).children[1]] == ev({0, 0}));
  CHECK(ex[w.tree.node(w.leaf(3)).parent] == ev({0, 0}));
  CHECK(ex[0] == ev({0, 0}));
  CHECK(assign::is_eligible(w.tree, w.team, w.a));
}

TEST_CASE("an empty leaf shows its full deficit") {
  const SyntaxTree tree(parse_formula("T(1, A, {c1:2})"));
  const std::vector<Agent> agents;
  const std::vector<std::string> caps{"c1", "c2"};
  const Assignment empty;
  CHECK(assign::capability_excess(tree, {agents, caps}, empty, 0) == ev({-2, 0}));
  CHECK_FALSE(assign::is_eligible(tree, {agents, caps}, empty));
}

TEST_CASE("removing the only c2 agent from T3 breaks eligibility") {
  Worked w;
  w.a.leaf_map[w.leaf(2)].clear();
  const auto ex = assign::capability_excess_all(w.tree, w.team, w.a);
  CHECK(ex[w.leaf(2)] == ev({0, -1}));
  CHECK(ex[0] == ev({0, -1}));
  CHECK_FALSE(assign::is_eligible(w.tree, w.team, w.a));
}

TEST_CASE("independence of the example nodes") {
  Worked w;
  const int until = w.tree.node(0).children[1];
  const int inner = w.tree.node(w.leaf(3)).parent;
  CHECK(assign::independence(w.tree, w.a, inner));
  CHECK(assign::independence(w.tree, w.a, until));
  CHECK(assign::independence(w.tree, w.a, 0));
  CHECK(assign::root_pair_independence(w.tree, w.a, 0, 1));
  CHECK_THROWS_AS(assign::independence(w.tree, w.a, w.leaf(0)), DomainError);
  CHECK_THROWS_AS(assign::independence(w.tree, w.a, w.tree.node(0).children[0]),
                  DomainError);
  w.a.leaf_map[w.leaf(4)] = {6, 8, 9};  // A7 now also serves T5
  CHECK_FALSE(assign::independence(w.tree, w.a, inner));
  CHECK(assign::independence(w.tree, w.a, until));
  w.a.leaf_map[w.leaf(2)] = {5, 6};  // and T3
  CHECK_FALSE(assign::independence(w.tree, w.a, until));
}

TEST_CASE("node map follows the chosen disjunct") {
  Worked w;
  const auto nm = assign::node_map(w.tree, w.a);
  CHECK(nm[w.tree.node(0).children[0]] == assign::AgentSet{0, 1, 2});
  CHECK(nm[0].size() == 8);  // A4, A5 sit on the unchosen branch
  w.a.choice_map[w.tree.node(0).children[0]] = 1;
  CHECK(assign::node_map(w.tree, w.a)[w.tree.node(0).children[0]] == assign::AgentSet{3, 4});
}

TEST_CASE("library flags and cost agree with the oracle on random assignments") {
  testing::Rng rng(5);
  testing::EnvParams ep;
  ep.num_props = 3;
  testing::FormulaParams fp;
  fp.max_depth = 4;
  fp.max_horizon = 10;
  for (int i = 0; i < 500; ++i) {
    const Environment env = testing::random_environment(rng, ep);
    const auto agents = testing::random_agents(rng, env, testing::uniform(rng, 0, 6));
    const Formula f = testing::random_formula(rng, env, fp);
    const SyntaxTree tree(f);
    Assignment a;
    for (int leaf : tree.leaves()) {
      for (int j = 0; j < static_cast<int>(agents.size()); ++j) {
        if (testing::coin(rng, 0.3)) a.leaf_map[leaf].push_back(j);
      }
    }
    for (const auto& n : tree.nodes()) {
      if (n.op == Op::disj) {
        a.choice_map[n.id] = testing::uniform(rng, 0, static_cast<int>(n.children.size()) - 1);
      }
    }
    const assign::Team team{agents, env.capabilities()};
    const auto oracle = testing::oracle_flags(f, agents, env.capabilities(), a.leaf_map,
                                              a.choice_map);
    const auto ex = assign::capability_excess_all(tree, team, a);
    for (int id = 0; id < tree.size(); ++id) REQUIRE(ex[id] == oracle.excess[id]);
    const auto flags = assign::compute_flags(tree, team, a);
    CHECK(flags.independent == oracle.independent);
    CHECK(flags.root_pairwise == oracle.root_pairwise);
    CHECK(assign::is_eligible(tree, team, a) == oracle.eligible);
    CHECK(assign::assignment_cost(tree, flags) == oracle.cost);
  }
}

TEST_CASE("the solver matches the example assignment's cost") {
  Worked w;
  const auto flags = assign::compute_flags(w.tree, w.team, w.a);
  const std::int64_t reference = assign::assignment_cost(w.tree, flags);
  const auto sol = assign::solve_assignment(w.tree, w.team);
  REQUIRE(sol.has_assignment);
  CHECK(sol.status == assign::Status::optimal);
  CHECK(sol.cost == reference);
  CHECK(assign::is_eligible(w.tree, w.team, sol.assignment));
}

TEST_CASE("a single task gets enough agents") {
  const SyntaxTree tree(parse_formula("T(1, A, {c1:2})"));
  const std::vector<std::string> caps{"c1"};
  const std::vector<Agent> three{{"R1", 0, CapabilitySet(1)}, {"R2", 0, CapabilitySet(1)},
                                 {"R3", 0, CapabilitySet(1)}};
  const auto sol = assign::solve_assignment(tree, {three, caps});
  REQUIRE(sol.has_assignment);
  CHECK(sol.assignment.leaf(0).size() >= 2);
  CHECK(sol.flags.eligible[0]);

  const std::vector<Agent> one{three[0]};
  const auto none = assign::solve_assignment(tree, {one, caps});
  CHECK_FALSE(none.has_assignment);
  CHECK(none.status == assign::Status::infeasible);
  CHECK_FALSE(none.diagnostic.empty());
}

TEST_CASE("without spare distribution the solver leaves agents idle") {
  const SyntaxTree tree(parse_formula("T(1, A, {c1:1})"));
  const std::vector<std::string> caps{"c1"};
  const std::vector<Agent> three{{"R1", 0, CapabilitySet(1)}, {"R2", 0, CapabilitySet(1)},
                                 {"R3", 0, CapabilitySet(1)}};
  assign::Options opt;
  opt.distribute_spares = false;
  const auto lean = assign::solve_assignment(tree, {three, caps}, opt);
  CHECK(lean.assignment.leaf(0) == assign::AgentSet{0});
  const auto full = assign::solve_assignment(tree, {three, caps});
  CHECK(full.assignment.leaf(0) == assign::AgentSet{0, 1, 2});
}

// Random instance with at most three tasks.
struct Tiny {
  Environment env;
  std::vector<Agent> agents;
  Formula f;
};

Tiny tiny_instance(testing::Rng& rng, int max_agents) {
  testing::EnvParams ep;
  ep.num_props = 3;
  ep.min_states = 1;
  ep.max_states = 2;
  testing::FormulaParams fp;
  fp.max_depth = 3;
  fp.max_horizon = 8;
  for (;;) {
    Tiny t;
    t.env = testing::random_environment(rng, ep);
    t.f = testing::random_formula(rng, t.env, fp);
    if (tasks_of(t.f).size() > 3) continue;
    t.agents = testing::random_agents(rng, t.env, testing::uniform(rng, 1, max_agents));
    return t;
  }
}

void check_solution(const SyntaxTree& tree, const assign::Team& team,
                    const assign::Solution& sol) {
  REQUIRE(sol.has_assignment);
  const auto flags = assign::compute_flags(tree, team, sol.assignment);
  CHECK(flags.independent == sol.flags.independent);
  CHECK(flags.eligible == sol.flags.eligible);
  CHECK(flags.root_pairwise == sol.flags.root_pairwise);
  CHECK(sol.flags.eligible[tree.root()]);
  CHECK(assign::assignment_cost(tree, flags) == sol.cost);
  CHECK(assign::capability_excess_all(tree, team, sol.assignment) == sol.excess);
  // Every chosen disjunct on the active part of the tree carries
  // non-negative excess.
  std::vector<int> stack{tree.root()};
  while (!stack.empty()) {
    const auto& n = tree.node(stack.back());
    stack.pop_back();
    if (n.op == Op::disj) {
      const int chosen = sol.assignment.chosen_child(tree, n.id);
      for (ExtInt x : sol.excess[chosen]) CHECK(x >= ExtInt(0));
      stack.push_back(chosen);
    } else {
      stack.insert(stack.end(), n.children.begin(), n.children.end());
    }
  }
}

TEST_CASE("optimal cost equals exhaustive enumeration on tiny instances") {
  testing::Rng rng(31337);
  int feasible = 0;
  for (int i = 0; i < 150; ++i) {
    const Tiny t = tiny_instance(rng, 6);
    const SyntaxTree tree(t.f);
    const assign::Team team{t.agents, t.env.capabilities()};
    const auto brute = testing::brute_force_min_cost(t.f, t.agents, t.env.capabilities(), false);
    const auto sol = assign::solve_assignment(tree, team);
    REQUIRE_MESSAGE(sol.has_assignment == brute.has_value(), format_formula(t.f));
    if (!brute) {
      CHECK(sol.status == assign::Status::infeasible);
      continue;
    }
    ++feasible;
    CHECK(sol.status == assign::Status::optimal);
    CHECK_MESSAGE(sol.cost == *brute, format_formula(t.f));
    check_solution(tree, team, sol);
  }
  CHECK(feasible > 40);
}

TEST_CASE("overlap mode is exact and never worse than disjoint mode") {
  testing::Rng rng(4242);
  for (int i = 0; i < 60; ++i) {
    const Tiny t = tiny_instance(rng, 4);
    const SyntaxTree tree(t.f);
    const assign::Team team{t.agents, t.env.capabilities()};
    assign::Options opt;
    opt.allow_overlap = true;
    const auto brute = testing::brute_force_min_cost(t.f, t.agents, t.env.capabilities(), true);
    const auto sol = assign::solve_assignment(tree, team, opt);
    REQUIRE_MESSAGE(sol.has_assignment == brute.has_value(), format_formula(t.f));
    if (!brute) continue;
    CHECK_MESSAGE(sol.cost == *brute, format_formula(t.f));
    check_solution(tree, team, sol);
    const auto disjoint = assign::solve_assignment(tree, team);
    if (disjoint.has_assignment) CHECK(sol.cost <= disjoint.cost);
  }
}

TEST_CASE("overlap lets a shared agent serve two tasks") {
  const SyntaxTree tree(parse_formula("T(1, A, {c1:1}) && T(1, B, {c1:1})"));
  const std::vector<std::string> caps{"c1"};
  const std::vector<Agent> one{{"R1", 0, CapabilitySet(1)}};
  CHECK_FALSE(assign::solve_assignment(tree, {one, caps}).has_assignment);
  assign::Options opt;
  opt.allow_overlap = true;
  const auto sol = assign::solve_assignment(tree, {one, caps}, opt);
  REQUIRE(sol.has_assignment);
  CHECK_FALSE(sol.flags.independent[0]);
}

TEST_CASE("the solver is deterministic") {
  testing::Rng rng(77);
  for (int i = 0; i < 30; ++i) {
    const Tiny t = tiny_instance(rng, 6);
    const SyntaxTree tree(t.f);
    const assign::Team team{t.agents, t.env.capabilities()};
    const auto a = assign::solve_assignment(tree, team);
    const auto b = assign::solve_assignment(tree, team);
    CHECK(a.assignment == b.assignment);
    CHECK(a.cost == b.cost);
  }
}

TEST_CASE("a zero budget is reported as a timeout, not infeasibility") {
  Worked w;
  assign::Options opt;
  opt.timeout_s = 0.0;
  const auto sol = assign::solve_assignment(w.tree, w.team, opt);
  CHECK(sol.status != assign::Status::infeasible);
}

TEST_CASE("induced assignment reads agents off a trajectory") {
  const Environment env({"a", "b"}, {{"a", "b", 1}, {"b", "a", 1}}, {{"a", {"A"}}},
                        {"A"}, {"c1"});
  const std::vector<Agent> agents{{"R1", 0, CapabilitySet(1)}, {"R2", 1, CapabilitySet(1)}};
  TeamTrajectory team{2, {stationary_trajectory(agents[0], 2),
                          stationary_trajectory(agents[1], 2)}};
  const SyntaxTree tree(parse_formula("F[0,1] T(1, A, {c1:1})"));
  const auto a = assign::induced_assignment(env, agents, team, tree);
  CHECK(a.leaf(1) == assign::AgentSet{0});
}

TEST_CASE("plans that satisfy a formula induce eligible assignments") {
  testing::Rng rng(8);
  testing::EnvParams ep;
  ep.max_states = 4;
  ep.empty_region_prob = 0.0;
  testing::FormulaParams fp;
  fp.max_horizon = 5;
  int satisfied = 0;
  for (int i = 0; i < 400; ++i) {
    const Environment env = testing::random_environment(rng, ep);
    const auto agents = testing::random_agents(rng, env, testing::uniform(rng, 1, 4));
    const Formula f = testing::random_formula(rng, env, fp);
    synth::Options so;
    so.mode = synth::Mode::feasible;
    so.timeout_s = 10;
    const auto plan = synth::synthesize(env, agents, f, so);
    if (!plan.has_trajectory || plan.robustness < ExtInt(0)) continue;
    ++satisfied;
    const SyntaxTree tree(f);
    const auto a = assign::induced_assignment(env, agents, plan.team, tree);
    CHECK_MESSAGE(assign::is_eligible(tree, {agents, env.capabilities()}, a),
                  format_formula(f));
  }
  CHECK(satisfied >= 100);
}

}  // namespace
}  // namespace catl
