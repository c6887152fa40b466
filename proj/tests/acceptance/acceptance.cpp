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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails that was not explicitly tolerated with --allow-fail.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "core/assign.hpp"
#include "core/bench.hpp"
#include "core/mission.hpp"
#include "core/semantics.hpp"
#include "core/synth.hpp"
#include "core/transform.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/worked_example.hpp"

namespace catl {
namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

// Every satisfying plan seen during the run is checked for an eligible
// induced assignment. A task over an empty region holds vacuously with no
// agents, so plans for such formulas are tallied apart: eligibility cannot
// be necessary there.
struct EligibilityLedger {
  long checked = 0;
  long counterexamples = 0;
  long vacuous_checked = 0;
  long vacuous_ineligible = 0;
  std::string first_counterexample;

  void record(const Environment& env, std::span<const Agent> agents,
              const TeamTrajectory& team, const Formula& f) {
    if (!semantics::satisfies(env, agents, team, f)) return;
    bool vacuous = false;
    for (const Task* t : tasks_of(f)) {
      vacuous |= env.region(*env.find_proposition(t->proposition)).empty();
    }
    const SyntaxTree tree(f);
    const auto a = assign::induced_assignment(env, agents, team, tree);
    const bool eligible = assign::is_eligible(tree, {agents, env.capabilities()}, a);
    if (vacuous) {
      ++vacuous_checked;
      vacuous_ineligible += !eligible;
      return;
    }
    ++checked;
    if (!eligible && counterexamples++ == 0) first_counterexample = format_formula(f);
  }
};

EligibilityLedger g_ledger;

std::vector<Agent> subteam(const std::vector<Agent>& agents,
                           const std::vector<AgentIndex>& ids) {
  std::vector<Agent> out;
  for (AgentIndex j : ids) out.push_back(agents[j]);
  return out;
}

// Worked example capability excess labels.
Outcome criterion1() {
  const auto start = Clock::now();
  const SyntaxTree tree(parse_formula(testing::kWorkedFormula));
  const auto agents = testing::worked_team();
  const auto caps = testing::worked_capabilities();
  const auto a = testing::worked_assignment(tree);
  const auto ex = assign::capability_excess_all(tree, {agents, caps}, a);
  const auto& leaves = tree.leaves();
  const int disj = tree.node(0).children[0];
  const int until = tree.node(0).children[1];
  const int inner = tree.node(leaves[3]).parent;
  const std::vector<std::pair<std::string, int>> nodes = {
      {"T1", leaves[0]}, {"T2", leaves[1]}, {"T3", leaves[2]},
      {"T4", leaves[3]}, {"T5", leaves[4]}, {"or", disj},
      {"inner and", inner}, {"U", until}, {"root", 0}};
  const std::vector<std::vector<int>> expected = {
      {1, 0}, {0, 0}, {0, 0}, {1, 1}, {0, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 0}};
  std::string mismatches;
  for (size_t k = 0; k < nodes.size(); ++k) {
    assign::ExcessVector want;
    for (int x : expected[k]) want.push_back(ExtInt(x));
    if (ex[nodes[k].second] != want) mismatches += " " + nodes[k].first;
  }
  const double t = seconds_since(start);
  if (!mismatches.empty()) return {false, "label mismatch at" + mismatches};
  return {t < 1.0, fmt("9/9 node labels exact in %.4f s", t)};
}

// Worked example decomposition into four subproblems.
Outcome criterion2() {
  const auto start = Clock::now();
  const SyntaxTree tree(parse_formula(testing::kWorkedFormula));
  const auto agents = testing::worked_team();
  const auto d = transform::decompose(tree, testing::worked_assignment(tree),
                                      static_cast<int>(agents.size()));
  const double t = seconds_since(start);
  using Part = std::pair<Formula, std::set<std::string>>;
  const std::vector<Part> expected = {
      {parse_formula("T(1, A, {c1:2})"), {"A1", "A2", "A3"}},
      {parse_formula("G[0,6] T(1, C, {c2:1})"), {"A6"}},
      {parse_formula("G[2,6] T(1, D, {c1:1, c2:1})"), {"A7", "A8"}},
      {parse_formula("G[2,6] T(1, E, {c1:1, c2:1})"), {"A9", "A10"}}};
  std::vector<Part> got;
  for (const auto& p : d.parts) {
    std::set<std::string> ids;
    for (AgentIndex j : p.agents) ids.insert(agents[j].id);
    got.push_back({p.formula, ids});
  }
  bool match = got.size() == expected.size();
  for (const auto& want : expected) {
    match = match && std::find(got.begin(), got.end(), want) != got.end();
  }
  if (!match) {
    std::string parts;
    for (const auto& p : d.parts) parts += " [" + format_formula(p.formula) + "]";
    return {false, fmt("%zu parts:", d.parts.size()) + parts};
  }
  return {t < 1.0, fmt("4 subproblems match exactly in %.4f s", t)};
}

// Soundness of decomposition over desk-scale scenarios.
Outcome criterion3() {
  const auto start = Clock::now();
  testing::Rng rng(2603);
  testing::FormulaParams fp;
  fp.max_horizon = 10;
  fp.max_depth = 4;
  fp.max_count = 1;
  int qualifying = 0;
  int sound = 0;
  int attempts = 0;
  while (qualifying < 150 && attempts < 3000) {
    ++attempts;
    const int grid = testing::uniform(rng, 3, 5);
    const int n = testing::uniform(rng, 3, 20);
    Scenario s;
    if (attempts % 2 == 0) {
      s = testing::random_grid_scenario(rng, grid, n, fp);
    } else {
      bench::BenchConfig cfg;
      cfg.grid = grid;
      cfg.seed = rng();
      s = bench::generate_scenario(cfg, std::max(n, 6), 0);
    }
    mission::Config mc;
    mc.mode = attempts % 3 == 0 ? synth::Mode::robust : synth::Mode::feasible;
    mc.timeout_s = 20;
    const auto r = mission::plan_mission(s, mc);
    bool qualifies = r.decomposition.has_value() && r.has_trajectory && !r.parts.empty();
    for (const auto& p : r.parts) {
      qualifies = qualifies && p.plan.has_trajectory && p.plan.robustness >= ExtInt(0);
    }
    if (!qualifies) continue;
    ++qualifying;
    sound += semantics::satisfies(s.env, s.agents, r.merged, s.formula);
    g_ledger.record(s.env, s.agents, r.merged, s.formula);
    for (const auto& p : r.parts) {
      const auto team = subteam(s.agents, p.agents);
      g_ledger.record(s.env, team, p.plan.team, p.formula);
    }
  }
  const double t = seconds_since(start);
  return {qualifying >= 100 && sound == qualifying && t <= 600.0,
          fmt("%d/%d merged plans satisfy the original formula "
              "(%d scenarios tried) in %.1f s",
              sound, qualifying, attempts, t)};
}

// Dedicated sample of synthesized plans for the eligibility check; the
// verdict covers every satisfying plan recorded anywhere in this run.
Outcome criterion4() {
  testing::Rng rng(4104);
  testing::EnvParams ep;
  ep.max_states = 4;
  ep.empty_region_prob = 0.0;
  testing::FormulaParams fp;
  fp.max_horizon = 6;
  for (int i = 0; i < 600; ++i) {
    const Environment env = testing::random_environment(rng, ep);
    const auto agents = testing::random_agents(rng, env, testing::uniform(rng, 1, 5));
    const Formula f = testing::random_formula(rng, env, fp);
    synth::Options so;
    so.mode = i % 2 ? synth::Mode::robust : synth::Mode::feasible;
    so.timeout_s = 10;
    const auto plan = synth::synthesize(env, agents, f, so);
    if (plan.has_trajectory) g_ledger.record(env, agents, plan.team, f);
  }
  std::string detail = fmt(
      "%ld satisfying plans checked, %ld counterexamples; separately %ld with a "
      "vacuous empty-region task, %ld of them ineligible",
      g_ledger.checked, g_ledger.counterexamples, g_ledger.vacuous_checked,
      g_ledger.vacuous_ineligible);
  if (g_ledger.counterexamples > 0) {
    detail += " (first: " + g_ledger.first_counterexample + ")";
  }
  return {g_ledger.counterexamples == 0 && g_ledger.checked > 0, detail};
}

// Semantics against the literal evaluator.
Outcome criterion5() {
  testing::Rng rng(5005);
  testing::EnvParams ep;
  ep.max_states = 4;
  ep.max_weight = 2;
  ep.empty_region_prob = 0.1;
  testing::FormulaParams fp;
  fp.max_horizon = 7;
  const int pairs = 2000;
  int agree = 0;
  int boolean_agree = 0;
  int satisfied = 0;
  for (int i = 0; i < pairs; ++i) {
    const Environment env = testing::random_environment(rng, ep);
    const auto agents = testing::random_agents(rng, env, testing::uniform(rng, 1, 4));
    const Formula f = testing::random_formula(rng, env, fp);
    const int H = horizon(f) + testing::uniform(rng, 0, 2);
    const auto team = testing::random_team(rng, env, agents, H);
    const int t = testing::uniform(rng, 0, H - horizon(f));
    agree += semantics::robustness(env, agents, team, t, f) ==
             testing::literal_robustness(env, agents, team, t, f);
    const ExtInt rho0 = semantics::robustness(env, agents, team, 0, f);
    const bool sat = semantics::satisfies(env, agents, team, f);
    boolean_agree += sat == (rho0 >= ExtInt(0));
    satisfied += sat;
    g_ledger.record(env, agents, team, f);
  }
  return {agree == pairs && boolean_agree == pairs,
          fmt("robustness %d/%d, satisfies<=>rho>=0 %d/%d (%d satisfied)", agree,
              pairs, boolean_agree, pairs, satisfied)};
}

// Robust synthesis against exhaustive enumeration.
Outcome criterion6() {
  testing::Rng rng(6006);
  testing::EnvParams ep;
  ep.min_states = 2;
  ep.max_states = 4;
  ep.max_weight = 2;
  ep.empty_region_prob = 0.0;
  testing::FormulaParams fp;
  fp.max_horizon = 6;
  fp.max_count = 2;
  const int instances = 250;
  int exact = 0;
  int nonnegative = 0;
  std::string first_miss;
  for (int i = 0; i < instances; ++i) {
    const Environment env = testing::random_environment(rng, ep);
    const auto agents = testing::random_agents(rng, env, testing::uniform(rng, 1, 3));
    const Formula f = testing::random_formula(rng, env, fp);
    synth::Options so;
    so.mode = synth::Mode::robust;
    so.timeout_s = 60;
    const auto plan = synth::synthesize(env, agents, f, so);
    const auto brute = synth::brute_force_synthesize(env, agents, f, synth::Mode::robust);
    if (plan.robustness == brute.robustness) {
      ++exact;
    } else if (first_miss.empty()) {
      first_miss = format_formula(f);
    }
    nonnegative += brute.robustness >= ExtInt(0);
    if (plan.has_trajectory) g_ledger.record(env, agents, plan.team, f);
    if (brute.has_trajectory) g_ledger.record(env, agents, brute.team, f);
  }
  std::string detail = fmt("%d/%d optimal robustness values equal (%d with rho>=0)",
                           exact, instances, nonnegative);
  if (!first_miss.empty()) detail += "; first miss: " + first_miss;
  return {exact == instances, detail};
}

// Assignment cost against exhaustive enumeration.
Outcome criterion7() {
  testing::Rng rng(7007);
  testing::EnvParams ep;
  ep.num_props = 3;
  ep.min_states = 1;
  ep.max_states = 2;
  testing::FormulaParams fp;
  fp.max_depth = 3;
  fp.max_horizon = 8;
  int instances = 0;
  int exact = 0;
  int feasible = 0;
  while (instances < 300) {
    const Environment env = testing::random_environment(rng, ep);
    const Formula f = testing::random_formula(rng, env, fp);
    if (tasks_of(f).size() > 3) continue;
    const auto agents = testing::random_agents(rng, env, testing::uniform(rng, 1, 6));
    ++instances;
    const SyntaxTree tree(f);
    const auto sol = assign::solve_assignment(tree, {agents, env.capabilities()});
    const auto brute = testing::brute_force_min_cost(f, agents, env.capabilities(), false);
    if (brute) {
      ++feasible;
      exact += sol.status == assign::Status::optimal && sol.cost == *brute;
    } else {
      exact += sol.status == assign::Status::infeasible;
    }
  }
  const SyntaxTree tree(parse_formula(testing::kWorkedFormula));
  const auto agents = testing::worked_team();
  const auto caps = testing::worked_capabilities();
  const assign::Team team{agents, caps};
  const auto reference = assign::assignment_cost(
      tree, assign::compute_flags(tree, team, testing::worked_assignment(tree)));
  const auto worked = assign::solve_assignment(tree, team);
  const bool worked_ok = worked.has_assignment && worked.cost == reference;
  return {exact == instances && worked_ok,
          fmt("%d/%d tiny instances exact (%d feasible); example cost %lld vs %lld",
              exact, instances, feasible, static_cast<long long>(worked.cost),
              static_cast<long long>(reference))};
}

double mean_total(const std::vector<bench::Row>& rows, bench::Method m) {
  double sum = 0;
  int n = 0;
  for (const auto& r : rows) {
    if (r.method != m) continue;
    sum += r.total_time_s;
    ++n;
  }
  return n ? sum / n : 0.0;
}

// Runtime trend and robust-mode robustness at the largest desk-scale size.
Outcome criterion8() {
  bench::BenchConfig cfg;
  cfg.grid = 5;
  cfg.agent_counts = {30};
  cfg.trials = 20;
  cfg.timeout_s = 120;
  cfg.seed = 8008;
  cfg.modes = {synth::Mode::feasible};
  const auto feasible = bench::run_benchmark(cfg);
  const double central = mean_total(feasible, bench::Method::centralized);
  const double decomposed = mean_total(feasible, bench::Method::decomposed);

  cfg.modes = {synth::Mode::robust};
  cfg.methods = {bench::Method::decomposed};
  const auto robust = bench::run_benchmark(cfg);
  int solved = 0;
  int zero = 0;
  for (const auto& r : robust) {
    if (!r.robustness || *r.robustness < ExtInt(0)) continue;
    ++solved;
    zero += *r.robustness == ExtInt(0);
  }
  const bool faster = decomposed < central;
  const bool frequently_zero = solved > 0 && 2 * zero >= solved;
  return {faster && frequently_zero,
          fmt("feasible mode, 30 agents, 20 trials: mean total decomposed %.6f s vs "
              "centralized %.6f s (%s); robust decomposed rho=0 in %d/%d solved (%s)",
              decomposed, central, faster ? "faster" : "not faster", zero, solved,
              frequently_zero ? "frequent" : "not frequent")};
}

std::string strip_time_columns(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cols.push_back(cell);
    for (size_t k = 0; k < cols.size(); ++k) {
      if (k >= 4 && k <= 7) continue;  // assign, decomp, synth, total times
      out += cols[k] + ",";
    }
    out += "\n";
  }
  return out;
}

bool same_result(const mission::MissionResult& a, const mission::MissionResult& b) {
  if (a.status != b.status || a.merged != b.merged || a.overall != b.overall ||
      a.idle != b.idle || a.parts.size() != b.parts.size()) {
    return false;
  }
  for (size_t k = 0; k < a.parts.size(); ++k) {
    if (a.parts[k].formula != b.parts[k].formula || a.parts[k].agents != b.parts[k].agents ||
        a.parts[k].plan.team != b.parts[k].plan.team) {
      return false;
    }
  }
  return true;
}

// Determinism of plans and of benchmark output.
Outcome criterion9() {
  std::vector<Scenario> scenarios{testing::worked_scenario()};
  bench::BenchConfig gen;
  gen.seed = 99;
  for (int trial = 0; trial < 6; ++trial) {
    scenarios.push_back(bench::generate_scenario(gen, 10 + 2 * trial, trial));
  }
  testing::Rng rng(9009);
  testing::FormulaParams fp;
  fp.max_count = 1;
  for (int k = 0; k < 8; ++k) {
    scenarios.push_back(testing::random_grid_scenario(rng, 4, testing::uniform(rng, 3, 12), fp));
  }
  int runs = 0;
  int identical = 0;
  for (const auto& s : scenarios) {
    for (auto mode : {synth::Mode::feasible, synth::Mode::robust}) {
      for (bool decompose : {true, false}) {
        mission::Config mc;
        mc.mode = mode;
        mc.decompose = decompose;
        mc.seed = 42;
        mc.timeout_s = 30;
        const auto a = mission::plan_mission(s, mc);
        const auto b = mission::plan_mission(s, mc);
        ++runs;
        identical += same_result(a, b);
        if (a.has_trajectory) g_ledger.record(s.env, s.agents, a.merged, s.formula);
      }
    }
  }
  bench::BenchConfig cfg;
  cfg.grid = 4;
  cfg.agent_counts = {8, 12};
  cfg.trials = 3;
  cfg.timeout_s = 30;
  cfg.seed = 77;
  const auto csv = [&](int jobs) {
    cfg.jobs = jobs;
    std::ostringstream os;
    bench::write_csv(os, bench::run_benchmark(cfg));
    return strip_time_columns(os.str());
  };
  const std::string first = csv(1);
  const bool csv_same = first == csv(1) && first == csv(3);
  return {identical == runs && csv_same,
          fmt("%d/%d repeated plans identical; benchmark CSV %s modulo time columns",
              identical, runs, csv_same ? "identical" : "differs")};
}

}  // namespace
}  // namespace catl

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::vector<int> allowed;
  std::vector<int> only;
  app.add_option("--allow-fail", allowed,
                 "Criteria whose failure is reported but does not set the exit status");
  app.add_option("--only", only, "Run just these criteria");
  CLI11_PARSE(app, argc, argv);

  using catl::Outcome;
  // Criterion 4 aggregates plans recorded by the others, so it runs last.
  const std::vector<std::pair<int, std::function<Outcome()>>> order = {
      {1, catl::criterion1}, {2, catl::criterion2}, {3, catl::criterion3},
      {5, catl::criterion5}, {6, catl::criterion6}, {7, catl::criterion7},
      {9, catl::criterion9}, {8, catl::criterion8}, {4, catl::criterion4}};
  std::map<int, Outcome> results;
  for (const auto& [id, run] : order) {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
    const auto start = catl::Clock::now();
    results[id] = run();
    std::fprintf(stderr, "criterion %d finished in %.1f s\n", id,
                 catl::seconds_since(start));
  }
  int hard_failures = 0;
  for (const auto& [id, r] : results) {
    const bool tolerated = std::find(allowed.begin(), allowed.end(), id) != allowed.end();
    std::printf("%s criterion %d: %s%s\n", r.pass ? "PASS" : "FAIL", id, r.detail.c_str(),
                !r.pass && tolerated ? " [failure tolerated by --allow-fail]" : "");
    if (!r.pass && !tolerated) ++hard_failures;
  }
  return hard_failures == 0 ? 0 : 1;
}
