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

#ifndef CATL_CORE_SYNTH_HPP_
#define CATL_CORE_SYNTH_HPP_

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>

#include "core/ext_int.hpp"
#include "core/formula.hpp"
#include "core/model.hpp"

namespace catl::synth {

enum class Mode { feasible, robust };
enum class PlanStatus { optimal, feasible, infeasible, timeout };

const char* mode_name(Mode m);
const char* plan_status_name(PlanStatus s);
// Throws DomainError for unknown names.
Mode parse_mode(std::string_view name);

struct SearchStats {
  std::uint64_t witnesses = 0;      // demand maps handed to the router
  std::uint64_t routing_nodes = 0;  // router branch points
  std::uint64_t evaluations = 0;    // brute force: joint plans evaluated
};

struct Plan {
  TeamTrajectory team;
  bool has_trajectory = false;
  Robustness robustness = Robustness::neg_inf();
  PlanStatus status = PlanStatus::infeasible;
  double solve_time_s = 0.0;
  SearchStats stats;
};

struct Options {
  Mode mode = Mode::robust;
  double timeout_s = 120.0;
  std::uint64_t seed = 0;
  // Overrides timeout_s when set.
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Plans over horizon(f). Robust mode maximizes availability robustness;
// feasible mode stops at the first plan with robustness >= 0. When no plan
// reaches 0 the status is infeasible and `robustness` holds the best
// negative value found.
Plan synthesize(const Environment& env, std::span<const Agent> agents,
                const Formula& f, const Options& options = {});

// Exhaustive reference. Throws DomainError beyond 4 agents, 6 states or
// horizon 8.
Plan brute_force_synthesize(const Environment& env,
                            std::span<const Agent> agents, const Formula& f,
                            Mode mode);

}  // namespace catl::synth

#endif  // CATL_CORE_SYNTH_HPP_
