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

#ifndef CATL_CORE_SCENARIO_HPP_
#define CATL_CORE_SCENARIO_HPP_

#include <string>
#include <vector>

#include "core/formula.hpp"
#include "core/model.hpp"
#include "json.hpp"

namespace catl {

// Environment, team and mission bundled as one planning problem.
struct Scenario {
  Environment env;
  std::vector<Agent> agents;
  Formula formula;
  nlohmann::json metadata = nlohmann::json::object();
  std::vector<std::string> warnings;

  std::optional<AgentIndex> find_agent(std::string_view id) const;
};

// Throws ValidationError (schema/model problems) or ParseError (formula).
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);
nlohmann::json scenario_to_json(const Scenario& s);

// Validation warnings that do not reject the scenario, e.g. propositions
// the formula uses that label no state.
std::vector<std::string> scenario_warnings(const Scenario& s);

}  // namespace catl

#endif  // CATL_CORE_SCENARIO_HPP_
