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

#include "catl/catl.h"

#include <cstdlib>
#include <cstring>
#include <sstream>
#include <string>

#include "core/assign.hpp"
#include "core/bench.hpp"
#include "core/errors.hpp"
#include "core/io.hpp"
#include "core/mission.hpp"
#include "core/scenario.hpp"
#include "core/semantics.hpp"
#include "core/transform.hpp"

struct catl_scenario {
  catl::Scenario s;
};

struct catl_options {
  catl::mission::Config cfg;
};

struct catl_bench_config {
  catl::bench::BenchConfig cfg;
};

namespace {

using nlohmann::json;

thread_local std::string g_error;

class BadArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <class F>
catl_status guard(F&& body) {
  g_error.clear();
  try {
    body();
    return CATL_OK;
  } catch (const BadArgument& e) {
    g_error = e.what();
    return CATL_ERR_INVALID_ARGUMENT;
  } catch (const catl::ParseError& e) {
    g_error = e.what();
    return CATL_ERR_PARSE;
  } catch (const catl::IoError& e) {
    g_error = e.what();
    return CATL_ERR_IO;
  } catch (const catl::ValidationError& e) {
    g_error = e.what();
    return CATL_ERR_VALIDATION;
  } catch (const json::exception& e) {
    g_error = e.what();
    return CATL_ERR_VALIDATION;
  } catch (const catl::DomainError& e) {
    g_error = e.what();
    return CATL_ERR_DOMAIN;
  } catch (const catl::RuleNotApplicable& e) {
    g_error = e.what();
    return CATL_ERR_DOMAIN;
  } catch (const std::exception& e) {
    g_error = e.what();
    return CATL_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw BadArgument(std::string(what) + " is NULL");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

int to_int(const std::string& v) {
  size_t used = 0;
  int x = 0;
  try {
    x = std::stoi(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw BadArgument("not an integer: '" + v + "'");
  return x;
}

double to_double(const std::string& v) {
  size_t used = 0;
  double x = 0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw BadArgument("not a number: '" + v + "'");
  return x;
}

bool to_bool(const std::string& v) {
  if (v == "1" || v == "true") return true;
  if (v == "0" || v == "false") return false;
  throw BadArgument("not a boolean: '" + v + "'");
}

std::vector<std::string> split(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

catl::assign::Options assign_options(const catl::mission::Config& c) {
  catl::assign::Options o;
  o.allow_overlap = c.allow_overlap;
  o.distribute_spares = c.distribute_spares;
  o.timeout_s = c.timeout_s;
  o.seed = c.seed;
  return o;
}

}  // namespace

extern "C" {

const char* catl_version(void) { return "1.0.0"; }

const char* catl_last_error(void) { return g_error.c_str(); }

const char* catl_status_name(catl_status status) {
  switch (status) {
    case CATL_OK: return "ok";
    case CATL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CATL_ERR_PARSE: return "parse error";
    case CATL_ERR_VALIDATION: return "validation error";
    case CATL_ERR_DOMAIN: return "domain error";
    case CATL_ERR_IO: return "i/o error";
    case CATL_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

void catl_string_free(char* s) { std::free(s); }

catl_status catl_scenario_load(const char* path, catl_scenario** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new catl_scenario{catl::load_scenario(path)};
  });
}

catl_status catl_scenario_from_json(const char* text, catl_scenario** out) {
  return guard([&] {
    require(text, "json");
    require(out, "out");
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw catl::ValidationError(std::string("scenario is not valid JSON: ") + e.what());
    }
    *out = new catl_scenario{catl::scenario_from_json(j)};
  });
}

void catl_scenario_free(catl_scenario* scenario) { delete scenario; }

catl_status catl_scenario_to_json(const catl_scenario* scenario, char** out) {
  return guard([&] {
    require(scenario, "scenario");
    require(out, "out");
    *out = dup(catl::scenario_to_json(scenario->s).dump(2));
  });
}

catl_status catl_scenario_warnings(const catl_scenario* scenario, char** out) {
  return guard([&] {
    require(scenario, "scenario");
    require(out, "out");
    *out = dup(json(scenario->s.warnings).dump());
  });
}

catl_status catl_options_new(catl_options** out) {
  return guard([&] {
    require(out, "out");
    *out = new catl_options{};
  });
}

void catl_options_free(catl_options* options) { delete options; }

catl_status catl_options_set_mode(catl_options* options, const char* mode) {
  return guard([&] {
    require(options, "options");
    require(mode, "mode");
    try {
      options->cfg.mode = catl::synth::parse_mode(mode);
    } catch (const catl::DomainError& e) {
      throw BadArgument(e.what());
    }
  });
}

catl_status catl_options_set_timeout(catl_options* options, double seconds) {
  return guard([&] {
    require(options, "options");
    if (!(seconds > 0)) throw BadArgument("timeout must be > 0");
    options->cfg.timeout_s = seconds;
  });
}

catl_status catl_options_set_seed(catl_options* options, uint64_t seed) {
  return guard([&] {
    require(options, "options");
    options->cfg.seed = seed;
  });
}

catl_status catl_options_set_flag(catl_options* options, const char* name, int value) {
  return guard([&] {
    require(options, "options");
    require(name, "name");
    const std::string n = name;
    auto& c = options->cfg;
    if (n == "decompose") {
      c.decompose = value != 0;
    } else if (n == "keep_disjunctions") {
      c.keep_disjunctions = value != 0;
    } else if (n == "allow_overlap") {
      c.allow_overlap = value != 0;
    } else if (n == "distribute_spares") {
      c.distribute_spares = value != 0;
    } else {
      throw BadArgument("unknown flag '" + n + "'");
    }
  });
}

catl_status catl_check(const catl_scenario* scenario, const char* plan_json, char** out) {
  return guard([&] {
    require(scenario, "scenario");
    require(plan_json, "plan_json");
    require(out, "out");
    const auto& s = scenario->s;
    json pj;
    try {
      pj = json::parse(plan_json);
    } catch (const json::parse_error& e) {
      throw catl::ValidationError(std::string("plan is not valid JSON: ") + e.what());
    }
    const catl::TeamTrajectory team = catl::io::team_from_json(s.env, pj);
    json violations = json::array();
    for (const auto& a : s.agents) {
      const catl::Trajectory* tr = team.find(a.id);
      if (tr == nullptr) {
        throw catl::ValidationError("plan has no trajectory for agent " + a.id);
      }
      if (auto v = catl::validate_trajectory(s.env, a, *tr)) {
        violations.push_back({{"agent", a.id}, {"time", v->time}, {"reason", v->reason}});
      }
    }
    json result;
    result["robustness"] = catl::io::robustness_to_json(
        catl::semantics::robustness(s.env, s.agents, team, 0, s.formula));
    result["satisfies"] = catl::semantics::satisfies(s.env, s.agents, team, s.formula);
    json rows = json::array();
    for (const auto& row : catl::semantics::breakdown(s.env, s.agents, team, s.formula)) {
      rows.push_back({{"node", row.node},
                      {"formula", row.formula},
                      {"robustness", catl::io::robustness_to_json(row.value)}});
    }
    result["breakdown"] = std::move(rows);
    result["violations"] = std::move(violations);
    *out = dup(result.dump(2));
  });
}

catl_status catl_assign(const catl_scenario* scenario, const catl_options* options,
                        char** out) {
  return guard([&] {
    require(scenario, "scenario");
    require(options, "options");
    require(out, "out");
    const auto& s = scenario->s;
    const catl::SyntaxTree tree(s.formula);
    const auto sol = catl::assign::solve_assignment(
        tree, {s.agents, s.env.capabilities()}, assign_options(options->cfg));
    *out = dup(catl::io::assignment_to_json(tree, s.agents, sol).dump(2));
  });
}

catl_status catl_decompose(const catl_scenario* scenario, const catl_options* options,
                           char** out) {
  return guard([&] {
    require(scenario, "scenario");
    require(options, "options");
    require(out, "out");
    const auto& s = scenario->s;
    const catl::SyntaxTree tree(s.formula);
    const auto sol = catl::assign::solve_assignment(
        tree, {s.agents, s.env.capabilities()}, assign_options(options->cfg));
    json result;
    result["assignment"] = catl::io::assignment_to_json(tree, s.agents, sol);
    if (sol.has_assignment) {
      catl::transform::Options topt;
      topt.keep_disjunctions = options->cfg.keep_disjunctions;
      const auto d = catl::transform::decompose(tree, sol.assignment,
                                                static_cast<int>(s.agents.size()), topt);
      result["decomposition"] = catl::io::decomposition_to_json(s.agents, d);
    }
    *out = dup(result.dump(2));
  });
}

catl_status catl_synthesize(const catl_scenario* scenario, const catl_options* options,
                            char** out) {
  return guard([&] {
    require(scenario, "scenario");
    require(options, "options");
    require(out, "out");
    const auto& s = scenario->s;
    const auto r = catl::mission::plan_mission(s, options->cfg);
    json result;
    result["status"] = catl::mission::status_name(r.status);
    result["robustness"] = catl::io::robustness_to_json(r.overall);
    if (!r.diagnostic.empty()) result["diagnostic"] = r.diagnostic;
    if (r.has_trajectory) {
      const json team = catl::io::team_to_json(s.env, r.merged);
      result["original_robustness"] = catl::io::robustness_to_json(r.original);
      result["horizon"] = team["horizon"];
      result["trajectories"] = team["trajectories"];
    }
    *out = dup(result.dump(2));
  });
}

catl_status catl_plan(const catl_scenario* scenario, const catl_options* options,
                      char** out) {
  return guard([&] {
    require(scenario, "scenario");
    require(options, "options");
    require(out, "out");
    const auto& s = scenario->s;
    const auto r = catl::mission::plan_mission(s, options->cfg);
    *out = dup(catl::io::mission_to_json(s.env, s.formula, s.agents, r).dump(2));
  });
}

catl_status catl_bench_config_new(catl_bench_config** out) {
  return guard([&] {
    require(out, "out");
    *out = new catl_bench_config{};
  });
}

void catl_bench_config_free(catl_bench_config* config) { delete config; }

catl_status catl_bench_config_set(catl_bench_config* config, const char* key,
                                  const char* value) {
  return guard([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    const std::string k = key;
    const std::string v = value;
    auto& c = config->cfg;
    if (k == "grid") {
      c.grid = to_int(v);
    } else if (k == "edge_weight") {
      c.edge_weight = to_int(v);
    } else if (k == "complete_graph") {
      c.complete_graph = to_bool(v);
    } else if (k == "agents") {
      c.agent_counts.clear();
      for (const auto& item : split(v)) c.agent_counts.push_back(to_int(item));
    } else if (k == "trials") {
      c.trials = to_int(v);
    } else if (k == "timeout") {
      c.timeout_s = to_double(v);
    } else if (k == "seed") {
      try {
        size_t used = 0;
        c.seed = std::stoull(v, &used);
        if (used != v.size()) throw BadArgument("");
      } catch (const std::exception&) {
        throw BadArgument("not an unsigned integer: '" + v + "'");
      }
    } else if (k == "modes") {
      c.modes.clear();
      for (const auto& item : split(v)) {
        try {
          c.modes.push_back(catl::synth::parse_mode(item));
        } catch (const catl::DomainError& e) {
          throw BadArgument(e.what());
        }
      }
    } else if (k == "methods") {
      c.methods.clear();
      for (const auto& item : split(v)) {
        try {
          c.methods.push_back(catl::bench::parse_method(item));
        } catch (const catl::DomainError& e) {
          throw BadArgument(e.what());
        }
      }
    } else if (k == "region_divisor") {
      c.region_divisor = to_int(v);
    } else if (k == "duration") {
      c.duration = to_int(v);
    } else if (k == "until") {
      const auto parts = split(v);
      if (parts.size() != 2) throw BadArgument("until expects \"a,b\"");
      c.until_lo = to_int(parts[0]);
      c.until_hi = to_int(parts[1]);
    } else if (k == "release") {
      c.release = to_int(v);
    } else if (k == "literal_template") {
      c.literal_template = to_bool(v);
    } else if (k == "jobs") {
      c.jobs = to_int(v);
    } else {
      throw BadArgument("unknown bench key '" + k + "'");
    }
  });
}

catl_status catl_generate(const catl_bench_config* config, int n_agents, int trial,
                          char** out) {
  return guard([&] {
    require(config, "config");
    require(out, "out");
    if (n_agents < 1 || trial < 0) throw BadArgument("n_agents >= 1 and trial >= 0 required");
    const json j = catl::bench::generate_scenario_json(config->cfg, n_agents, trial);
    catl::scenario_from_json(j);  // generated scenarios must validate
    *out = dup(j.dump(2));
  });
}

catl_status catl_bench_run(const catl_bench_config* config, const char* plot_dir,
                           catl_bench_progress progress, void* user, char** out_csv,
                           char** out_summary) {
  return guard([&] {
    require(config, "config");
    require(out_csv, "out_csv");
    catl::bench::Progress cb;
    if (progress != nullptr) {
      cb = [&](const catl::bench::Row& row) {
        progress(catl::bench::csv_row(row).c_str(), user);
      };
    }
    const auto rows = catl::bench::run_benchmark(config->cfg, cb);
    std::ostringstream csv;
    catl::bench::write_csv(csv, rows);
    if (plot_dir != nullptr) catl::bench::write_plot_data(plot_dir, rows);
    *out_csv = dup(csv.str());
    if (out_summary != nullptr) *out_summary = dup(catl::bench::summary_tables(rows));
  });
}

}  // extern "C"
