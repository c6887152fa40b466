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

#ifndef CATL_CORE_MODEL_HPP_
#define CATL_CORE_MODEL_HPP_

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace catl {

using StateIndex = int;
using EdgeIndex = int;
using CapIndex = int;
using PropIndex = int;
using AgentIndex = int;

// Subset of the global capability list, one bit per capability.
class CapabilitySet {
 public:
  static constexpr int kMaxCapabilities = 64;

  constexpr CapabilitySet() = default;
  constexpr explicit CapabilitySet(std::uint64_t bits) : bits_(bits) {}

  constexpr bool contains(CapIndex c) const { return (bits_ >> c) & 1U; }
  constexpr void insert(CapIndex c) { bits_ |= std::uint64_t{1} << c; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool intersects(CapabilitySet o) const {
    return (bits_ & o.bits_) != 0;
  }

  constexpr auto operator<=>(const CapabilitySet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

struct EdgeSpec {
  std::string from;
  std::string to;
  int weight = 1;
};

struct Edge {
  StateIndex from;
  StateIndex to;
  int weight;
};

// Weighted directed graph of labeled states together with the proposition
// and capability vocabularies. Immutable once built.
class Environment {
 public:
  static constexpr int kUnreachable = 1 << 28;

  Environment() = default;
  Environment(std::vector<std::string> states,
              const std::vector<EdgeSpec>& edges,
              const std::map<std::string, std::vector<std::string>>& labels,
              std::vector<std::string> propositions,
              std::vector<std::string> capabilities);

  int num_states() const { return static_cast<int>(states_.size()); }
  int num_capabilities() const { return static_cast<int>(caps_.size()); }
  int num_propositions() const { return static_cast<int>(props_.size()); }

  const std::vector<std::string>& states() const { return states_; }
  const std::vector<std::string>& propositions() const { return props_; }
  const std::vector<std::string>& capabilities() const { return caps_; }
  const std::string& state_name(StateIndex q) const { return states_.at(q); }

  std::optional<StateIndex> find_state(std::string_view name) const;
  std::optional<PropIndex> find_proposition(std::string_view name) const;
  std::optional<CapIndex> find_capability(std::string_view name) const;
  // Throws DomainError on unknown names.
  StateIndex state_index(std::string_view name) const;
  CapIndex capability_index(std::string_view name) const;

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_.at(e); }
  std::span<const EdgeIndex> out_edges(StateIndex q) const {
    return out_edges_.at(q);
  }
  std::optional<EdgeIndex> find_edge(StateIndex from, StateIndex to) const;

  // L^-1(pi): states carrying proposition p, ascending.
  std::span<const StateIndex> region(PropIndex p) const {
    return regions_.at(p);
  }
  std::vector<std::string> labels_of(StateIndex q) const;

  // Shortest travel time, kUnreachable when no path exists.
  int distance(StateIndex from, StateIndex to) const {
    return dist_[from * num_states() + to];
  }
  // Edges of one shortest path; empty when from == to or unreachable.
  std::vector<EdgeIndex> shortest_path(StateIndex from, StateIndex to) const;

 private:
  std::vector<std::string> states_;
  std::vector<std::string> props_;
  std::vector<std::string> caps_;
  std::map<std::string, StateIndex, std::less<>> state_ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeIndex>> out_edges_;
  std::vector<std::vector<StateIndex>> regions_;
  std::vector<int> dist_;
  std::vector<EdgeIndex> first_hop_;
};

struct Agent {
  std::string id;
  StateIndex init = 0;
  CapabilitySet caps;
};

// State or edge occupied at one integer time. An edge occupancy records the
// time the agent left the edge's source state.
struct Occupancy {
  enum class Kind : std::uint8_t { state, edge };

  Kind kind = Kind::state;
  int index = 0;
  int entered = 0;

  static Occupancy at(StateIndex q) { return {Kind::state, q, 0}; }
  static Occupancy on_edge(EdgeIndex e, int entered) {
    return {Kind::edge, e, entered};
  }
  bool is_state() const { return kind == Kind::state; }

  bool operator==(const Occupancy&) const = default;
};

struct Trajectory {
  std::string agent_id;
  std::vector<Occupancy> occupancy;  // index = time, 0..horizon

  int horizon() const { return static_cast<int>(occupancy.size()) - 1; }
  bool operator==(const Trajectory&) const = default;
};

struct TeamTrajectory {
  int horizon = 0;
  std::vector<Trajectory> trajectories;

  const Trajectory* find(std::string_view agent_id) const;
  bool operator==(const TeamTrajectory&) const = default;
};

// n_{q,c}(t); agents on edges count toward no state.
int count_capability(const TeamTrajectory& team, std::span<const Agent> agents,
                     const Environment& env, StateIndex q, CapIndex c, int t);

struct TrajectoryViolation {
  int time = 0;
  std::string reason;
};

// nullopt when the trajectory respects the movement rules.
std::optional<TrajectoryViolation> validate_trajectory(const Environment& env,
                                                       const Agent& agent,
                                                       const Trajectory& traj);

// Agent parked at its initial state over [0, horizon].
Trajectory stationary_trajectory(const Agent& agent, int horizon);

// Extends a trajectory to a longer horizon: an in-flight edge is completed,
// then the agent waits at its final state.
void extend_trajectory(const Environment& env, Trajectory& traj, int horizon);

}  // namespace catl

#endif  // CATL_CORE_MODEL_HPP_
