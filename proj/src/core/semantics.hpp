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

#ifndef CATL_CORE_SEMANTICS_HPP_
#define CATL_CORE_SEMANTICS_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "core/ext_int.hpp"
#include "core/formula.hpp"
#include "core/model.hpp"

namespace catl::semantics {

// Formula with propositions and capabilities resolved against an
// environment. Node ids follow SyntaxTree's pre-order numbering.
class CompiledFormula {
 public:
  struct Node {
    Op op = Op::task;
    Interval window;
    int duration = 0;
    std::vector<StateIndex> regions;
    std::vector<std::pair<CapIndex, int>> demand;
    std::vector<int> children;
    int horizon = 0;
  };

  // Throws DomainError for names the environment does not know.
  CompiledFormula(const Formula& f, const Environment& env);

  int size() const { return static_cast<int>(nodes_.size()); }
  const Node& node(int id) const { return nodes_[id]; }
  int horizon() const { return nodes_.front().horizon; }

 private:
  int add(const Formula& f, const Environment& env);

  std::vector<Node> nodes_;
};

// n_{q,c}(t) materialized over [0, horizon].
class CountTable {
 public:
  CountTable(int num_states, int num_caps, int horizon);

  static CountTable from_team(const Environment& env,
                              std::span<const Agent> agents,
                              const TeamTrajectory& team);

  int horizon() const { return horizon_; }
  int at(StateIndex q, CapIndex c, int t) const {
    return counts_[index(q, c, t)];
  }
  void add(StateIndex q, CapIndex c, int t, int delta) {
    counts_[index(q, c, t)] += delta;
  }
  // Adds one agent at state q at time t.
  void add_agent(StateIndex q, CapabilitySet caps, int t, int delta = 1);

 private:
  size_t index(StateIndex q, CapIndex c, int t) const {
    return (static_cast<size_t>(t) * num_states_ + q) * num_caps_ + c;
  }

  int num_states_;
  int num_caps_;
  int horizon_;
  std::vector<int> counts_;
};

// Availability robustness of node `node` at time t over a count table.
// Throws DomainError when t + horizon exceeds the table horizon.
Robustness robustness(const CompiledFormula& f, const CountTable& counts,
                      int t, int node = 0);

Robustness robustness(const Environment& env, std::span<const Agent> agents,
                      const TeamTrajectory& team, int t, const Formula& f);

// Boolean semantics, evaluated independently of the robustness recursion.
bool satisfies(const CompiledFormula& f, const CountTable& counts, int t = 0,
               int node = 0);
bool satisfies(const Environment& env, std::span<const Agent> agents,
               const TeamTrajectory& team, const Formula& f);

struct NodeRobustness {
  int node = 0;
  std::string formula;
  Robustness value;
};

// Robustness of every subformula evaluated at time 0, pre-order.
std::vector<NodeRobustness> breakdown(const Environment& env,
                                      std::span<const Agent> agents,
                                      const TeamTrajectory& team,
                                      const Formula& f);

}  // namespace catl::semantics

#endif  // CATL_CORE_SEMANTICS_HPP_
