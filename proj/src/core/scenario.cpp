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

#include "core/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "core/errors.hpp"

namespace catl {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ValidationError("unknown key '" + key + "' in " + where);
  }
}

const json& required(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ValidationError(std::string("missing required key '") + key + "'");
  }
  return *it;
}

std::vector<std::string> string_list(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) {
      throw ValidationError(std::string(what) + " entries must be strings");
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

std::optional<AgentIndex> Scenario::find_agent(std::string_view id) const {
  for (AgentIndex i = 0; i < static_cast<AgentIndex>(agents.size()); ++i) {
    if (agents[i].id == id) return i;
  }
  return std::nullopt;
}

Scenario scenario_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"states", "edges", "labels", "capabilities", "agents",
                       "formula", "propositions", "metadata"},
                      "scenario");
  auto states = string_list(required(j, "states"), "states");

  std::vector<EdgeSpec> edges;
  const json& je = required(j, "edges");
  if (!je.is_array()) throw ValidationError("edges must be an array");
  for (const auto& e : je) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_string() ||
        !e[1].is_string() || !e[2].is_number_integer()) {
      throw ValidationError("edges entries must be [from, to, weight]");
    }
    edges.push_back({e[0].get<std::string>(), e[1].get<std::string>(),
                     e[2].get<int>()});
  }

  std::map<std::string, std::vector<std::string>> labels;
  if (auto it = j.find("labels"); it != j.end()) {
    if (!it->is_object()) throw ValidationError("labels must be an object");
    for (const auto& [state, props] : it->items()) {
      labels[state] = string_list(props, "labels");
    }
  }

  std::vector<std::string> props;
  if (auto it = j.find("propositions"); it != j.end()) {
    props = string_list(*it, "propositions");
  } else {
    std::set<std::string> seen;
    for (const auto& [state, ps] : labels) seen.insert(ps.begin(), ps.end());
    props.assign(seen.begin(), seen.end());
  }
  auto caps = string_list(required(j, "capabilities"), "capabilities");

  Scenario s;
  s.env = Environment(std::move(states), edges, labels, std::move(props),
                      std::move(caps));

  const json& ja = required(j, "agents");
  if (!ja.is_array()) throw ValidationError("agents must be an array");
  std::set<std::string> ids;
  for (const auto& a : ja) {
    reject_unknown_keys(a, {"id", "init", "caps"}, "agent");
    const json& id = required(a, "id");
    const json& init = required(a, "init");
    if (!id.is_string() || !init.is_string()) {
      throw ValidationError("agent id and init must be strings");
    }
    Agent agent;
    agent.id = id.get<std::string>();
    if (!ids.insert(agent.id).second) {
      throw ValidationError("duplicate agent id '" + agent.id + "'");
    }
    auto q = s.env.find_state(init.get<std::string>());
    if (!q) {
      throw ValidationError("agent '" + agent.id + "' starts at unknown state");
    }
    agent.init = *q;
    for (const auto& c : string_list(required(a, "caps"), "caps")) {
      auto ci = s.env.find_capability(c);
      if (!ci) {
        throw ValidationError("agent '" + agent.id + "' has unknown capability '" +
                              c + "'");
      }
      agent.caps.insert(*ci);
    }
    if (agent.caps.empty()) {
      throw ValidationError("agent '" + agent.id + "' has no capabilities");
    }
    s.agents.push_back(std::move(agent));
  }

  const json& jf = required(j, "formula");
  if (!jf.is_string()) throw ValidationError("formula must be a string");
  Vocabulary vocab{s.env.propositions(), s.env.capabilities()};
  s.formula = parse_formula(jf.get<std::string>(), vocab);
  validate_formula(s.formula, vocab);

  if (auto it = j.find("metadata"); it != j.end()) {
    if (!it->is_object()) throw ValidationError("metadata must be an object");
    s.metadata = *it;
  }
  s.warnings = scenario_warnings(s);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("scenario '" + path + "' is not valid JSON: " + e.what());
  }
  return scenario_from_json(j);
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["states"] = s.env.states();
  json edges = json::array();
  for (const Edge& e : s.env.edges()) {
    edges.push_back({s.env.state_name(e.from), s.env.state_name(e.to), e.weight});
  }
  j["edges"] = std::move(edges);
  json labels = json::object();
  for (StateIndex q = 0; q < s.env.num_states(); ++q) {
    auto ls = s.env.labels_of(q);
    if (!ls.empty()) labels[s.env.state_name(q)] = ls;
  }
  j["labels"] = std::move(labels);
  j["propositions"] = s.env.propositions();
  j["capabilities"] = s.env.capabilities();
  json agents = json::array();
  for (const Agent& a : s.agents) {
    std::vector<std::string> caps;
    for (CapIndex c = 0; c < s.env.num_capabilities(); ++c) {
      if (a.caps.contains(c)) caps.push_back(s.env.capabilities()[c]);
    }
    agents.push_back({{"id", a.id}, {"init", s.env.state_name(a.init)}, {"caps", caps}});
  }
  j["agents"] = std::move(agents);
  j["formula"] = format_formula(s.formula);
  if (!s.metadata.empty()) j["metadata"] = s.metadata;
  return j;
}

std::vector<std::string> scenario_warnings(const Scenario& s) {
  std::vector<std::string> out;
  std::set<std::string> reported;
  for (const Task* t : tasks_of(s.formula)) {
    auto p = s.env.find_proposition(t->proposition);
    if (p && s.env.region(*p).empty() && reported.insert(t->proposition).second) {
      out.push_back("proposition '" + t->proposition +
                    "' labels no state; its tasks hold vacuously");
    }
  }
  return out;
}

}  // namespace catl
