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

#ifndef CATL_CORE_IO_HPP_
#define CATL_CORE_IO_HPP_

#include <span>

#include "core/assign.hpp"
#include "core/formula.hpp"
#include "core/mission.hpp"
#include "core/model.hpp"
#include "core/synth.hpp"
#include "core/transform.hpp"
#include "json.hpp"

namespace catl::io {

// Finite values as integers, infinities as "inf" / "-inf".
nlohmann::json robustness_to_json(Robustness r);
Robustness robustness_from_json(const nlohmann::json& j);

nlohmann::json team_to_json(const Environment& env, const TeamTrajectory& team);
// Accepts the output of team_to_json, or any object with a "plan" member
// holding one. Throws ValidationError on malformed input.
TeamTrajectory team_from_json(const Environment& env, const nlohmann::json& j);

nlohmann::json plan_to_json(const Environment& env, const synth::Plan& plan);

nlohmann::json assignment_to_json(const SyntaxTree& tree,
                                  std::span<const Agent> agents,
                                  const assign::Solution& sol);

nlohmann::json decomposition_to_json(std::span<const Agent> agents,
                                     const transform::Decomposition& d);

nlohmann::json mission_to_json(const Environment& env, const Formula& f,
                               std::span<const Agent> agents,
                               const mission::MissionResult& r);

}  // namespace catl::io

#endif  // CATL_CORE_IO_HPP_
