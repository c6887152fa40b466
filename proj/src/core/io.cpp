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

#include "core/io.hpp"

#include "core/errors.hpp"

namespace catl::io {

using nlohmann::json;

namespace {

json agent_ids(std::span<const Agent> agents, const std::vector<AgentIndex>& set) {
  json out = json::array();
  for (AgentIndex j : set) out.push_back(agents[j].id);
  return out;
}

json excess_to_json(const assign::ExcessVector& v) {
  json out = json::array();
  for (ExtInt x : v) out.push_back(robustness_to_json(x));
  return out;
}

}  // namespace

json robustness_to_json(Robustness r) {
  if (r.is_finite()) return r.value();
  return r.to_string();
}

Robustness robustness_from_json(const json& j) {
  if (j.is_number_integer()) return Robustness(j.get<std::int64_t>());
  if (j == "inf") return Robustness::pos_inf();
  if (j == "-inf") return Robustness::neg_inf();
  throw ValidationError("robustness must be an integer, \"inf\" or \"-inf\"");
}

json team_to_json(const Environment& env, const TeamTrajectory& team) {
  json out;
  out["horizon"] = team.horizon;
  json trajs = json::object();
  for (const auto& tr : team.trajectories) {
    json steps = json::array();
    for (int t = 0; t < static_cast<int>(tr.occupancy.size()); ++t) {
      const Occupancy& o = tr.occupancy[t];
      if (o.is_state()) {
        steps.push_back({{"t", t}, {"state", env.state_name(o.index)}});
      } else {
        const Edge& e = env.edge(o.index);
        steps.push_back({{"t", t},
                         {"edge", {env.state_name(e.from), env.state_name(e.to)}},
                         {"edge_index", o.index},
                         {"entered", o.entered}});
      }
    }
    trajs[tr.agent_id] = std::move(steps);
  }
  out["trajectories"] = std::move(trajs);
  return out;
}

TeamTrajectory team_from_json(const Environment& env, const json& j) {
  if (j.contains("plan") && j["plan"].is_object()) return team_from_json(env, j["plan"]);
  if (!j.is_object() || !j.contains("trajectories") || !j.contains("horizon")) {
    throw ValidationError("plan JSON needs \"horizon\" and \"trajectories\"");
  }
  TeamTrajectory team;
  team.horizon = j["horizon"].get<int>();
  for (const auto& [id, steps] : j["trajectories"].items()) {
    Trajectory tr;
    tr.agent_id = id;
    for (const auto& s : steps) {
      const int t = s.at("t").get<int>();
      if (t != static_cast<int>(tr.occupancy.size())) {
        throw ValidationError("trajectory of " + id + " skips time " +
                              std::to_string(tr.occupancy.size()));
      }
      if (s.contains("state")) {
        tr.occupancy.push_back(Occupancy::at(env.state_index(s["state"].get<std::string>())));
        continue;
      }
      EdgeIndex e = -1;
      if (s.contains("edge_index")) {
        e = s["edge_index"].get<int>();
        if (e < 0 || e >= static_cast<int>(env.edges().size())) {
          throw ValidationError("unknown edge index");
        }
      } else if (s.contains("edge")) {
        const auto from = env.state_index(s["edge"].at(0).get<std::string>());
        const auto to = env.state_index(s["edge"].at(1).get<std::string>());
        auto found = env.find_edge(from, to);
        if (!found) throw ValidationError("unknown edge in trajectory of " + id);
        e = *found;
      } else {
        throw ValidationError("step needs \"state\" or \"edge\"");
      }
      tr.occupancy.push_back(Occupancy::on_edge(e, s.at("entered").get<int>()));
    }
    if (tr.horizon() != team.horizon) {
      throw ValidationError("trajectory of " + id + " does not span the horizon");
    }
    team.trajectories.push_back(std::move(tr));
  }
  return team;
}

json plan_to_json(const Environment& env, const synth::Plan& plan) {
  json out;
  out["status"] = synth::plan_status_name(plan.status);
  out["robustness"] = robustness_to_json(plan.robustness);
  out["solve_time_s"] = plan.solve_time_s;
  out["stats"] = {{"witnesses", plan.stats.witnesses},
                  {"routing_nodes", plan.stats.routing_nodes},
                  {"evaluations", plan.stats.evaluations}};
  if (plan.has_trajectory) {
    const json team = team_to_json(env, plan.team);
    out["horizon"] = team["horizon"];
    out["trajectories"] = team["trajectories"];
  }
  return out;
}

json assignment_to_json(const SyntaxTree& tree, std::span<const Agent> agents,
                        const assign::Solution& sol) {
  json out;
  out["status"] = assign::status_name(sol.status);
  out["solve_time_s"] = sol.solve_time_s;
  if (!sol.diagnostic.empty()) out["diagnostic"] = sol.diagnostic;
  if (!sol.has_assignment) return out;
  out["cost"] = sol.cost;
  json leaves = json::object();
  for (int leaf : tree.leaves()) {
    leaves[tree.node_name(leaf)] = agent_ids(agents, sol.assignment.leaf(leaf));
  }
  out["leaves"] = std::move(leaves);
  json choices = json::object();
  for (const auto& [node, pos] : sol.assignment.choice_map) {
    choices[tree.node_name(node)] = tree.node_name(tree.node(node).children[pos]);
  }
  out["choices"] = std::move(choices);
  const auto nm = assign::node_map(tree, sol.assignment);
  json nodes = json::array();
  for (int id = 0; id < tree.size(); ++id) {
    nodes.push_back({{"id", id},
                     {"name", tree.node_name(id)},
                     {"op", op_name(tree.node(id).op)},
                     {"formula", format_formula(tree.subformula(id))},
                     {"agents", agent_ids(agents, nm[id])},
                     {"excess", excess_to_json(sol.excess[id])},
                     {"eligible", sol.flags.eligible[id] != 0},
                     {"independent", sol.flags.independent[id] != 0}});
  }
  out["nodes"] = std::move(nodes);
  if (!sol.flags.root_pairwise.empty()) {
    json m = json::array();
    for (const auto& row : sol.flags.root_pairwise) {
      json r = json::array();
      for (char v : row) r.push_back(v != 0);
      m.push_back(std::move(r));
    }
    out["root_pairwise"] = std::move(m);
  }
  return out;
}

json decomposition_to_json(std::span<const Agent> agents,
                           const transform::Decomposition& d) {
  json out;
  json parts = json::array();
  for (const auto& p : d.parts) {
    parts.push_back({{"formula", format_formula(p.formula)},
                     {"agents", agent_ids(agents, p.agents)}});
  }
  out["subproblems"] = std::move(parts);
  out["idle"] = agent_ids(agents, d.idle);
  json log = json::array();
  for (const auto& step : d.log) {
    log.push_back({{"rule", step.rule},
                   {"node", step.node},
                   {"before", step.before},
                   {"after", step.after}});
  }
  out["log"] = std::move(log);
  return out;
}

json mission_to_json(const Environment& env, const Formula& f,
                     std::span<const Agent> agents, const mission::MissionResult& r) {
  json out;
  out["status"] = mission::status_name(r.status);
  if (!r.failed_stage.empty()) out["failed_stage"] = r.failed_stage;
  if (!r.diagnostic.empty()) out["diagnostic"] = r.diagnostic;
  out["formula"] = format_formula(f);
  out["robustness"] = {{"overall", robustness_to_json(r.overall)},
                       {"original", robustness_to_json(r.original)}};
  out["verified"] = r.verified;
  out["timings"] = {{"assign_s", r.timings.assign_s},
                    {"decompose_s", r.timings.decompose_s},
                    {"synth_s", r.timings.synth_s},
                    {"total_s", r.timings.total_s}};
  if (r.assignment) out["assignment"] = assignment_to_json(SyntaxTree(f), agents, *r.assignment);
  if (r.decomposition) out["decomposition"] = decomposition_to_json(agents, *r.decomposition);
  json parts = json::array();
  for (const auto& p : r.parts) {
    parts.push_back({{"formula", format_formula(p.formula)},
                     {"agents", agent_ids(agents, p.agents)},
                     {"plan", plan_to_json(env, p.plan)}});
  }
  out["subproblems"] = std::move(parts);
  out["idle"] = agent_ids(agents, r.idle);
  if (r.has_trajectory) out["plan"] = team_to_json(env, r.merged);
  return out;
}

}  // namespace catl::io
