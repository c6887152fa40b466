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

#ifndef CATL_CORE_MISSION_HPP_
#define CATL_CORE_MISSION_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/assign.hpp"
#include "core/scenario.hpp"
#include "core/synth.hpp"
#include "core/transform.hpp"

namespace catl::mission {

struct Config {
  bool decompose = true;
  bool keep_disjunctions = false;
  bool allow_overlap = false;
  bool distribute_spares = true;
  synth::Mode mode = synth::Mode::robust;
  double timeout_s = 120.0;
  std::uint64_t seed = 0;
};

enum class Status { optimal, feasible, infeasible, timeout };
const char* status_name(Status s);

struct SubResult {
  Formula formula;
  std::vector<AgentIndex> agents;
  synth::Plan plan;
};

struct Timings {
  double assign_s = 0.0;
  double decompose_s = 0.0;
  double synth_s = 0.0;  // wall clock of the concurrent phase
  double total_s = 0.0;
};

struct MissionResult {
  Status status = Status::infeasible;
  // "assign", "synth" or empty; names the stage that failed.
  std::string failed_stage;
  std::string diagnostic;
  std::optional<assign::Solution> assignment;
  std::optional<transform::Decomposition> decomposition;
  std::vector<SubResult> parts;
  std::vector<AgentIndex> idle;
  bool has_trajectory = false;
  TeamTrajectory merged;
  // Minimum over the subformula robustness values.
  Robustness overall = Robustness::neg_inf();
  // Original formula re-evaluated on the merged plan.
  Robustness original = Robustness::neg_inf();
  bool verified = false;
  Timings timings;
};

MissionResult plan_mission(const Scenario& scenario, const Config& config = {});

}  // namespace catl::mission

#endif  // CATL_CORE_MISSION_HPP_
