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

#include "core/mission.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <thread>

#include "core/semantics.hpp"

namespace catl::mission {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

Status from_plan(synth::PlanStatus s) {
  switch (s) {
    case synth::PlanStatus::optimal: return Status::optimal;
    case synth::PlanStatus::feasible: return Status::feasible;
    case synth::PlanStatus::timeout: return Status::timeout;
    case synth::PlanStatus::infeasible: return Status::infeasible;
  }
  return Status::infeasible;
}

void finish(const Scenario& sc, MissionResult& r, int horizon) {
  r.merged.horizon = horizon;
  for (auto& tr : r.merged.trajectories) extend_trajectory(sc.env, tr, horizon);
  r.original = semantics::robustness(sc.env, sc.agents, r.merged, 0, sc.formula);
  r.verified = semantics::satisfies(sc.env, sc.agents, r.merged, sc.formula);
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::feasible: return "feasible";
    case Status::infeasible: return "infeasible";
    case Status::timeout: return "timeout";
  }
  return "?";
}

MissionResult plan_mission(const Scenario& sc, const Config& config) {
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(config.timeout_s));
  const int H = horizon(sc.formula);
  MissionResult r;

  synth::Options sopt;
  sopt.mode = config.mode;
  sopt.seed = config.seed;
  sopt.deadline = deadline;

  if (!config.decompose) {
    const auto t0 = Clock::now();
    SubResult part{sc.formula, {}, synth::synthesize(sc.env, sc.agents, sc.formula, sopt)};
    for (AgentIndex j = 0; j < static_cast<AgentIndex>(sc.agents.size()); ++j) {
      part.agents.push_back(j);
    }
    r.timings.synth_s = since(t0);
    r.status = from_plan(part.plan.status);
    r.overall = part.plan.robustness;
    if (part.plan.has_trajectory) {
      r.has_trajectory = true;
      r.merged = part.plan.team;
      finish(sc, r, H);
    } else {
      r.failed_stage = "synth";
      r.diagnostic = "no plan reaches robustness 0 for " + format_formula(sc.formula);
    }
    r.parts.push_back(std::move(part));
    r.timings.total_s = since(start);
    return r;
  }

  const SyntaxTree tree(sc.formula);
  const std::vector<std::string>& caps = sc.env.capabilities();
  assign::Team team{sc.agents, caps};
  assign::Options aopt;
  aopt.allow_overlap = config.allow_overlap;
  aopt.distribute_spares = config.distribute_spares;
  aopt.timeout_s = config.timeout_s;
  aopt.seed = config.seed;
  auto t0 = Clock::now();
  r.assignment = assign::solve_assignment(tree, team, aopt);
  r.timings.assign_s = since(t0);
  if (!r.assignment->has_assignment) {
    r.status = r.assignment->status == assign::Status::timeout ? Status::timeout
                                                               : Status::infeasible;
    r.failed_stage = "assign";
    r.diagnostic = r.assignment->diagnostic;
    r.timings.total_s = since(start);
    return r;
  }

  t0 = Clock::now();
  transform::Options topt;
  topt.keep_disjunctions = config.keep_disjunctions;
  r.decomposition = transform::decompose(tree, r.assignment->assignment,
                                         static_cast<int>(sc.agents.size()), topt);
  r.idle = r.decomposition->idle;
  r.timings.decompose_s = since(t0);

  t0 = Clock::now();
  std::vector<std::vector<Agent>> teams;
  for (const auto& p : r.decomposition->parts) {
    std::vector<Agent> sub;
    for (AgentIndex j : p.agents) sub.push_back(sc.agents[j]);
    teams.push_back(std::move(sub));
  }
  // Threads only pay off with more than one part and more than one core.
  const bool parallel = teams.size() > 1 && std::thread::hardware_concurrency() > 1;
  std::vector<std::future<synth::Plan>> futures;
  for (size_t i = 0; i < teams.size(); ++i) {
    futures.push_back(std::async(parallel ? std::launch::async : std::launch::deferred,
                                 [&, i]() {
                                   return synth::synthesize(
                                       sc.env, teams[i],
                                       r.decomposition->parts[i].formula, sopt);
                                 }));
  }
  for (size_t i = 0; i < futures.size(); ++i) {
    const auto& p = r.decomposition->parts[i];
    r.parts.push_back({p.formula, p.agents, futures[i].get()});
  }
  r.timings.synth_s = since(t0);

  // Merge in subteam order.
  bool all_ok = true;
  bool any_timeout = false;
  bool all_optimal = true;
  r.overall = Robustness::pos_inf();
  for (const auto& part : r.parts) {
    r.overall = std::min(r.overall, part.plan.robustness);
    any_timeout |= part.plan.status == synth::PlanStatus::timeout;
    all_optimal &= part.plan.status == synth::PlanStatus::optimal;
    if (!part.plan.has_trajectory && all_ok) {
      all_ok = false;
      r.failed_stage = "synth";
      r.diagnostic = "subformula " + format_formula(part.formula) +
                     " has no plan with robustness >= 0";
    }
  }
  if (all_ok) {
    std::vector<Trajectory> by_agent(sc.agents.size());
    for (AgentIndex j = 0; j < static_cast<AgentIndex>(sc.agents.size()); ++j) {
      by_agent[j] = stationary_trajectory(sc.agents[j], H);
    }
    for (const auto& part : r.parts) {
      for (size_t k = 0; k < part.agents.size(); ++k) {
        by_agent[part.agents[k]] = part.plan.team.trajectories[k];
      }
    }
    r.merged.trajectories = std::move(by_agent);
    r.has_trajectory = true;
    finish(sc, r, H);
    if (any_timeout) {
      r.status = Status::timeout;
    } else {
      r.status = config.mode == synth::Mode::feasible || !all_optimal
                     ? Status::feasible
                     : Status::optimal;
    }
  } else {
    r.status = any_timeout ? Status::timeout : Status::infeasible;
  }
  r.timings.total_s = since(start);
  return r;
}

}  // namespace catl::mission
