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

#include "core/model.hpp"

#include <algorithm>
#include <set>

#include "core/errors.hpp"

namespace catl {

Environment::Environment(
    std::vector<std::string> states, const std::vector<EdgeSpec>& edges,
    const std::map<std::string, std::vector<std::string>>& labels,
    std::vector<std::string> propositions,
    std::vector<std::string> capabilities)
    : states_(std::move(states)),
      props_(std::move(propositions)),
      caps_(std::move(capabilities)) {
  if (states_.empty()) throw ValidationError("environment has no states");
  if (static_cast<int>(caps_.size()) > CapabilitySet::kMaxCapabilities) {
    throw ValidationError("at most 64 capabilities are supported");
  }
  for (int i = 0; i < num_states(); ++i) {
    if (!state_ids_.emplace(states_[i], i).second) {
      throw ValidationError("duplicate state '" + states_[i] + "'");
    }
  }
  std::set<std::string> seen;
  for (const auto& p : props_) {
    if (!seen.insert(p).second) {
      throw ValidationError("duplicate proposition '" + p + "'");
    }
  }
  seen.clear();
  for (const auto& c : caps_) {
    if (!seen.insert(c).second) {
      throw ValidationError("duplicate capability '" + c + "'");
    }
  }

  out_edges_.resize(states_.size());
  for (const auto& spec : edges) {
    auto from = find_state(spec.from);
    auto to = find_state(spec.to);
    if (!from || !to) {
      throw ValidationError("edge " + spec.from + "->" + spec.to +
                            " references an unknown state");
    }
    if (spec.weight < 1) {
      throw ValidationError("edge " + spec.from + "->" + spec.to +
                            " has weight < 1");
    }
    out_edges_[*from].push_back(static_cast<EdgeIndex>(edges_.size()));
    edges_.push_back({*from, *to, spec.weight});
  }

  regions_.resize(props_.size());
  for (const auto& [state, props] : labels) {
    auto q = find_state(state);
    if (!q) throw ValidationError("label on unknown state '" + state + "'");
    for (const auto& p : props) {
      auto pi = find_proposition(p);
      if (!pi) {
        throw ValidationError("label '" + p + "' on state '" + state +
                              "' is not a known proposition");
      }
      regions_[*pi].push_back(*q);
    }
  }
  for (auto& r : regions_) {
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
  }

  // Floyd-Warshall; state counts stay in the hundreds.
  const int n = num_states();
  dist_.assign(static_cast<size_t>(n) * n, kUnreachable);
  first_hop_.assign(static_cast<size_t>(n) * n, -1);
  for (int q = 0; q < n; ++q) dist_[q * n + q] = 0;
  for (EdgeIndex e = 0; e < static_cast<EdgeIndex>(edges_.size()); ++e) {
    const Edge& ed = edges_[e];
    int& d = dist_[ed.from * n + ed.to];
    if (ed.from != ed.to && ed.weight < d) {
      d = ed.weight;
      first_hop_[ed.from * n + ed.to] = e;
    }
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      const int dik = dist_[i * n + k];
      if (dik >= kUnreachable) continue;
      for (int j = 0; j < n; ++j) {
        const int cand = dik + dist_[k * n + j];
        if (cand < dist_[i * n + j]) {
          dist_[i * n + j] = cand;
          first_hop_[i * n + j] = first_hop_[i * n + k];
        }
      }
    }
  }
}

std::optional<StateIndex> Environment::find_state(std::string_view name) const {
  auto it = state_ids_.find(name);
  if (it == state_ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<PropIndex> Environment::find_proposition(
    std::string_view name) const {
  auto it = std::find(props_.begin(), props_.end(), name);
  if (it == props_.end()) return std::nullopt;
  return static_cast<PropIndex>(it - props_.begin());
}

std::optional<CapIndex> Environment::find_capability(
    std::string_view name) const {
  auto it = std::find(caps_.begin(), caps_.end(), name);
  if (it == caps_.end()) return std::nullopt;
  return static_cast<CapIndex>(it - caps_.begin());
}

StateIndex Environment::state_index(std::string_view name) const {
  auto q = find_state(name);
  if (!q) throw DomainError("unknown state '" + std::string(name) + "'");
  return *q;
}

CapIndex Environment::capability_index(std::string_view name) const {
  auto c = find_capability(name);
  if (!c) throw DomainError("unknown capability '" + std::string(name) + "'");
  return *c;
}

std::optional<EdgeIndex> Environment::find_edge(StateIndex from,
                                                StateIndex to) const {
  for (EdgeIndex e : out_edges_.at(from)) {
    if (edges_[e].to == to) return e;
  }
  return std::nullopt;
}

std::vector<std::string> Environment::labels_of(StateIndex q) const {
  std::vector<std::string> out;
  for (PropIndex p = 0; p < num_propositions(); ++p) {
    if (std::binary_search(regions_[p].begin(), regions_[p].end(), q)) {
      out.push_back(props_[p]);
    }
  }
  return out;
}

std::vector<EdgeIndex> Environment::shortest_path(StateIndex from,
                                                  StateIndex to) const {
  std::vector<EdgeIndex> path;
  if (distance(from, to) >= kUnreachable) return path;
  const int n = num_states();
  StateIndex at = from;
  while (at != to) {
    EdgeIndex e = first_hop_[at * n + to];
    path.push_back(e);
    at = edges_[e].to;
  }
  return path;
}

const Trajectory* TeamTrajectory::find(std::string_view agent_id) const {
  for (const auto& tr : trajectories) {
    if (tr.agent_id == agent_id) return &tr;
  }
  return nullptr;
}

int count_capability(const TeamTrajectory& team, std::span<const Agent> agents,
                     const Environment& env, StateIndex q, CapIndex c, int t) {
  if (q < 0 || q >= env.num_states()) {
    throw DomainError("state index out of range");
  }
  if (t < 0 || t > team.horizon) throw DomainError("time out of range");
  if (c < 0 || c >= env.num_capabilities()) {
    throw DomainError("capability index out of range");
  }
  int n = 0;
  for (const Agent& a : agents) {
    if (!a.caps.contains(c)) continue;
    const Trajectory* tr = team.find(a.id);
    if (tr == nullptr || t > tr->horizon()) continue;
    const Occupancy& o = tr->occupancy[t];
    if (o.is_state() && o.index == q) ++n;
  }
  return n;
}

std::optional<TrajectoryViolation> validate_trajectory(const Environment& env,
                                                       const Agent& agent,
                                                       const Trajectory& traj) {
  const auto& occ = traj.occupancy;
  if (occ.empty()) return TrajectoryViolation{0, "empty trajectory"};
  if (!occ[0].is_state() || occ[0].index != agent.init) {
    return TrajectoryViolation{0, "does not start at the initial state"};
  }
  const int num_edges = static_cast<int>(env.edges().size());
  for (int t = 0; t < static_cast<int>(occ.size()); ++t) {
    const Occupancy& o = occ[t];
    if (o.is_state()) {
      if (o.index < 0 || o.index >= env.num_states()) {
        return TrajectoryViolation{t, "unknown state"};
      }
    } else if (o.index < 0 || o.index >= num_edges) {
      return TrajectoryViolation{t, "unknown edge"};
    }
  }
  for (int t = 0; t + 1 < static_cast<int>(occ.size()); ++t) {
    const Occupancy& cur = occ[t];
    const Occupancy& nxt = occ[t + 1];
    if (cur.is_state()) {
      if (nxt.is_state()) {
        if (nxt.index == cur.index) continue;
        auto e = env.find_edge(cur.index, nxt.index);
        bool unit = false;
        for (EdgeIndex cand : env.out_edges(cur.index)) {
          if (env.edge(cand).to == nxt.index && env.edge(cand).weight == 1) {
            unit = true;
          }
        }
        if (!e || !unit) {
          return TrajectoryViolation{t + 1, "jump between non-adjacent states"};
        }
        continue;
      }
      const Edge& ed = env.edge(nxt.index);
      if (ed.from != cur.index) {
        return TrajectoryViolation{t + 1, "entered an edge not leaving the current state"};
      }
      if (nxt.entered != t) {
        return TrajectoryViolation{t + 1, "edge entry time mismatch"};
      }
      if (ed.weight < 2) {
        return TrajectoryViolation{t + 1, "weight-1 edge occupied at an integer time"};
      }
      continue;
    }
    // On an edge.
    const Edge& ed = env.edge(cur.index);
    const int arrival = cur.entered + ed.weight;
    if (t < cur.entered + 1 || t > arrival - 1) {
      return TrajectoryViolation{t, "edge occupancy outside its traversal window"};
    }
    if (t + 1 < arrival) {
      if (nxt != cur) {
        return TrajectoryViolation{t + 1, "left an edge before completing it"};
      }
    } else if (!nxt.is_state() || nxt.index != ed.to) {
      return TrajectoryViolation{t + 1, "did not arrive at the edge target on time"};
    }
  }
  return std::nullopt;
}

Trajectory stationary_trajectory(const Agent& agent, int horizon) {
  Trajectory tr;
  tr.agent_id = agent.id;
  tr.occupancy.assign(static_cast<size_t>(horizon) + 1,
                      Occupancy::at(agent.init));
  return tr;
}

void extend_trajectory(const Environment& env, Trajectory& traj, int horizon) {
  while (traj.horizon() < horizon) {
    const Occupancy last = traj.occupancy.back();
    const int t = traj.horizon();
    if (last.is_state()) {
      traj.occupancy.push_back(last);
      continue;
    }
    const Edge& ed = env.edge(last.index);
    if (t + 1 < last.entered + ed.weight) {
      traj.occupancy.push_back(last);
    } else {
      traj.occupancy.push_back(Occupancy::at(ed.to));
    }
  }
}

}  // namespace catl
