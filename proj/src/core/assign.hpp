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

#ifndef CATL_CORE_ASSIGN_HPP_
#define CATL_CORE_ASSIGN_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "core/ext_int.hpp"
#include "core/formula.hpp"
#include "core/model.hpp"

namespace catl::assign {

// Sorted, duplicate-free agent indices.
using AgentSet = std::vector<AgentIndex>;

// Agents on leaves plus the child selected at every disjunction. All other
// node sets follow from these two maps.
struct Assignment {
  std::map<int, AgentSet> leaf_map;  // leaf node id -> agents
  std::map<int, int> choice_map;     // disjunction node id -> child position

  // Node id of the selected child of disjunction `node` (first child when the
  // choice map is silent).
  int chosen_child(const SyntaxTree& tree, int node) const;
  const AgentSet& leaf(int node) const;

  bool operator==(const Assignment&) const = default;
};

// Per-node agent sets: leaves from leaf_map, disjunctions from the chosen
// child, everything else the union over children.
std::vector<AgentSet> node_map(const SyntaxTree& tree, const Assignment& a);

// One entry per capability, ordered like Environment::capabilities().
using ExcessVector = std::vector<ExtInt>;

// Context the capability arithmetic needs besides the tree.
struct Team {
  std::span<const Agent> agents;
  std::span<const std::string> capabilities;
};

ExcessVector capability_excess(const SyntaxTree& tree, const Team& team,
                               const Assignment& a, int node);
std::vector<ExcessVector> capability_excess_all(const SyntaxTree& tree,
                                                const Team& team,
                                                const Assignment& a);

bool is_eligible(const SyntaxTree& tree, const Team& team, const Assignment& a);

// Disjointness of the children of an until/conjunction node. Throws
// DomainError for other node kinds.
bool independence(const SyntaxTree& tree, const Assignment& a, int node);
// Disjointness of two root children (child positions); root must be a
// conjunction.
bool root_pair_independence(const SyntaxTree& tree, const Assignment& a,
                            int child_a, int child_b);

struct Flags {
  std::vector<char> eligible;     // per node
  std::vector<char> independent;  // per node, with inheritance at F/G/or
  // Root conjunction children, symmetric; empty when the root is not a
  // conjunction.
  std::vector<std::vector<char>> root_pairwise;
};

Flags compute_flags(const SyntaxTree& tree, const Team& team,
                    const Assignment& a);

// Sum of -2^(D - depth(v)) over nodes with Ind true, plus -2^(D + 1) per
// independent pair of root children.
std::int64_t assignment_cost(const SyntaxTree& tree, const Flags& flags);

// Agents that occupy a task's region with a required capability while the
// task holds at one of the times the formula inspects it.
Assignment induced_assignment(const Environment& env,
                              std::span<const Agent> agents,
                              const TeamTrajectory& team,
                              const SyntaxTree& tree);

enum class Status { optimal, infeasible, timeout };
const char* status_name(Status s);

struct Options {
  bool allow_overlap = false;
  // Unused agents join an active leaf that needs one of their capabilities.
  bool distribute_spares = true;
  double timeout_s = 120.0;
  std::uint64_t seed = 0;
};

struct Solution {
  Status status = Status::infeasible;
  Assignment assignment;
  std::vector<ExcessVector> excess;
  Flags flags;
  std::int64_t cost = 0;
  bool has_assignment = false;
  std::string diagnostic;
  double solve_time_s = 0.0;
};

// Eligible assignment minimizing assignment_cost. Search branches on counts
// per capability class, never on individual agents.
Solution solve_assignment(const SyntaxTree& tree, const Team& team,
                          const Options& options = {});

}  // namespace catl::assign

#endif  // CATL_CORE_ASSIGN_HPP_
