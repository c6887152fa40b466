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

#ifndef CATL_CORE_BENCH_HPP_
#define CATL_CORE_BENCH_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "core/scenario.hpp"
#include "core/synth.hpp"
#include "json.hpp"

namespace catl::bench {

enum class Method { centralized, decomposed };
const char* method_name(Method m);
Method parse_method(std::string_view name);

struct BenchConfig {
  int grid = 5;
  int edge_weight = 1;
  bool complete_graph = false;
  std::vector<int> agent_counts{10, 20, 30, 40, 50};
  int trials = 100;
  double timeout_s = 120.0;
  std::uint64_t seed = 0;
  std::vector<synth::Mode> modes{synth::Mode::feasible, synth::Mode::robust};
  std::vector<Method> methods{Method::centralized, Method::decomposed};
  std::vector<std::vector<std::string>> capability_pool{{"c1"}, {"c2"}, {"c1", "c2"}};
  // Labeled regions per proposition: ceil(n_agents / region_divisor).
  int region_divisor = 10;
  int duration = 1;
  int until_lo = 2;
  int until_hi = 6;
  // Delay before each root conjunct is due; -1 uses the graph diameter.
  int release = -1;
  // Use the bare template without the per-conjunct release wrapper.
  bool literal_template = false;
  int jobs = 1;
};

// Throws ValidationError for configs that violate trials >= 1, timeout > 0
// and similar bounds.
void validate_config(const BenchConfig& cfg);

// Scenario JSON fully determined by (cfg, n_agents, trial).
nlohmann::json generate_scenario_json(const BenchConfig& cfg, int n_agents,
                                      int trial);
Scenario generate_scenario(const BenchConfig& cfg, int n_agents, int trial);

std::string bench_formula(const BenchConfig& cfg);
int release_offset(const BenchConfig& cfg);

struct Row {
  int trial = 0;
  int n_agents = 0;
  Method method = Method::decomposed;
  synth::Mode mode = synth::Mode::feasible;
  double assign_time_s = 0.0;
  double decomp_time_s = 0.0;
  double synth_time_s = 0.0;
  double total_time_s = 0.0;
  std::optional<Robustness> robustness;  // empty when nothing was planned
  std::string status;
  std::optional<bool> verified;          // empty without a merged plan
};

using Progress = std::function<void(const Row&)>;

// Rows ordered by (agent count, trial, mode, method) regardless of jobs.
std::vector<Row> run_benchmark(const BenchConfig& cfg, const Progress& progress = {});

std::string csv_header();
std::string csv_row(const Row& row);
void write_csv(std::ostream& os, const std::vector<Row>& rows);

// Mean / max run time per agent count, plus robustness for robust mode.
std::string summary_tables(const std::vector<Row>& rows);

// One data file per panel: run time per method, and the decomposition
// versus synthesis split. Returns the paths written.
std::vector<std::string> write_plot_data(const std::string& dir,
                                         const std::vector<Row>& rows);

}  // namespace catl::bench

#endif  // CATL_CORE_BENCH_HPP_
