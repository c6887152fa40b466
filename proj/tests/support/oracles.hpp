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

// Reference evaluators written directly from the definitions, sharing no code
// with the library beyond the data types. Slow by design.

#ifndef CATL_TESTS_SUPPORT_ORACLES_HPP_
#define CATL_TESTS_SUPPORT_ORACLES_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/ext_int.hpp"
#include "core/formula.hpp"
#include "core/model.hpp"

namespace catl::testing {

// Materializes n_{q,c}(t) with count_capability and folds the recursion on
// the formula tree literally.
ExtInt literal_robustness(const Environment& env, std::span<const Agent> agents,
                          const TeamTrajectory& team, int t, const Formula& f);

// Per-node quantities of an assignment, indexed by pre-order position.
struct OracleFlags {
  std::vector<std::vector<ExtInt>> excess;
  std::vector<char> independent;
  std::vector<std::vector<char>> root_pairwise;
  bool eligible = false;
  std::int64_t cost = 0;
};

// leaf_map: pre-order leaf id -> agents. choice_map: disjunction id -> child
// position, absent meaning the first child.
OracleFlags oracle_flags(const Formula& f, std::span<const Agent> agents,
                         std::span<const std::string> capabilities,
                         const std::map<int, std::vector<int>>& leaf_map,
                         const std::map<int, int>& choice_map);

// Minimum cost over every eligible assignment, or nullopt when none exists.
// Without overlap each agent sits on at most one leaf.
std::optional<std::int64_t> brute_force_min_cost(
    const Formula& f, std::span<const Agent> agents,
    std::span<const std::string> capabilities, bool allow_overlap);

// Every valid trajectory of one agent over [0, horizon].
std::vector<Trajectory> all_trajectories(const Environment& env, const Agent& a,
                                         int horizon);

// Best literal robustness over the full product of agent trajectories.
ExtInt naive_best_robustness(const Environment& env, std::span<const Agent> agents,
                             const Formula& f);

}  // namespace catl::testing

#endif  // CATL_TESTS_SUPPORT_ORACLES_HPP_
