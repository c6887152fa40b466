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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "core/bench.hpp"
#include "core/errors.hpp"
#include "doctest.h"

namespace catl {
namespace {

using bench::BenchConfig;
using bench::Method;

BenchConfig smoke_config() {
  BenchConfig cfg;
  cfg.agent_counts = {5};
  cfg.trials = 2;
  cfg.timeout_s = 10;
  cfg.seed = 9;
  return cfg;
}

// CSV text with the four time columns blanked.
std::string without_times(const std::vector<bench::Row>& rows) {
  std::ostringstream os;
  for (auto r : rows) {
    r.assign_time_s = r.decomp_time_s = r.synth_time_s = r.total_time_s = 0.0;
    os << bench::csv_row(r) << '\n';
  }
  return os.str();
}

TEST_CASE("scenario generation is a pure function of seed and trial") {
  BenchConfig cfg;
  cfg.seed = 123;
  CHECK(bench::generate_scenario_json(cfg, 20, 3).dump() ==
        bench::generate_scenario_json(cfg, 20, 3).dump());
  CHECK(bench::generate_scenario_json(cfg, 20, 3).dump() !=
        bench::generate_scenario_json(cfg, 20, 4).dump());
  BenchConfig other = cfg;
  other.seed = 124;
  CHECK(bench::generate_scenario_json(cfg, 20, 3).dump() !=
        bench::generate_scenario_json(other, 20, 3).dump());
}

TEST_CASE("agents draw capabilities from the pool") {
  BenchConfig cfg;
  const Scenario s = bench::generate_scenario(cfg, 10, 0);
  REQUIRE(s.agents.size() == 10);
  const std::set<std::uint64_t> pool{0b01, 0b10, 0b11};
  for (const auto& a : s.agents) CHECK(pool.count(a.caps.bits()) == 1);
}

TEST_CASE("generated scenarios validate and follow the region rule") {
  BenchConfig cfg;
  cfg.seed = 77;
  int count = 0;
  for (int n : {1, 10, 11, 30, 50, 120}) {
    for (int trial = 0; trial < 170; ++trial) {
      const Scenario s = bench::generate_scenario(cfg, n, trial);
      ++count;
      const int expected = std::min(25, (n + 9) / 10);
      for (int p = 0; p < s.env.num_propositions(); ++p) {
        CHECK(static_cast<int>(s.env.region(p).size()) == expected);
      }
      if (expected * 5 <= 25) {
        std::set<StateIndex> used;
        for (int p = 0; p < s.env.num_propositions(); ++p) {
          for (StateIndex q : s.env.region(p)) CHECK(used.insert(q).second);
        }
      }
      CHECK(s.metadata.at("regions_per_proposition") == expected);
    }
  }
  CHECK(count >= 1000);
}

TEST_CASE("topologies and the release offset") {
  BenchConfig cfg;
  CHECK(bench::release_offset(cfg) == 8);
  CHECK(bench::bench_formula(cfg).rfind("F[8,8] (T(1, A, {c1:2})", 0) == 0);
  cfg.literal_template = true;
  CHECK(bench::bench_formula(cfg).rfind("(T(1, A, {c1:2})", 0) == 0);
  cfg.literal_template = false;
  cfg.complete_graph = true;
  CHECK(bench::release_offset(cfg) == 1);
  const Scenario s = bench::generate_scenario(cfg, 10, 0);
  CHECK(static_cast<int>(s.env.edges().size()) == 25 * 24);
  cfg.complete_graph = false;
  cfg.grid = 3;
  cfg.edge_weight = 2;
  CHECK(bench::release_offset(cfg) == 8);
  CHECK(bench::generate_scenario(cfg, 4, 0).env.edges().size() == 24);
}

TEST_CASE("invalid configs are rejected") {
  BenchConfig cfg;
  cfg.trials = 0;
  CHECK_THROWS_AS(bench::validate_config(cfg), ValidationError);
  cfg = BenchConfig{};
  cfg.timeout_s = 0;
  CHECK_THROWS_AS(bench::validate_config(cfg), ValidationError);
  cfg = BenchConfig{};
  cfg.agent_counts.clear();
  CHECK_THROWS_AS(bench::validate_config(cfg), ValidationError);
  cfg = BenchConfig{};
  cfg.capability_pool.clear();
  CHECK_THROWS_AS(bench::validate_config(cfg), ValidationError);
  CHECK_NOTHROW(bench::validate_config(BenchConfig{}));
}

TEST_CASE("a smoke sweep writes eight rows and a summary") {
  const BenchConfig cfg = smoke_config();
  int seen = 0;
  const auto rows = bench::run_benchmark(cfg, [&](const bench::Row&) { ++seen; });
  CHECK(rows.size() == 8);
  CHECK(seen == 8);
  std::ostringstream csv;
  bench::write_csv(csv, rows);
  std::istringstream in(csv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line ==
        "trial,n_agents,method,mode,assign_time_s,decomp_time_s,synth_time_s,"
        "total_time_s,robustness,status,verified");
  int lines = 0;
  while (std::getline(in, line)) {
    ++lines;
    CHECK(std::count(line.begin(), line.end(), ',') == 10);
  }
  CHECK(lines == 8);
  const std::string summary = bench::summary_tables(rows);
  CHECK(summary.find("first feasible") != std::string::npos);
  CHECK(summary.find("maximally robust") != std::string::npos);
  for (const auto& r : rows) {
    if (r.status == "feasible" || r.status == "optimal") {
      REQUIRE(r.verified.has_value());
      CHECK(*r.verified);
    }
  }
}

TEST_CASE("sweeps reproduce modulo time, with or without worker threads") {
  BenchConfig cfg = smoke_config();
  cfg.agent_counts = {6, 12};
  const auto a = bench::run_benchmark(cfg);
  const auto b = bench::run_benchmark(cfg);
  cfg.jobs = 3;
  const auto c = bench::run_benchmark(cfg);
  CHECK(without_times(a) == without_times(b));
  CHECK(without_times(a) == without_times(c));
}

TEST_CASE("plot data files are written per mode") {
  const auto rows = bench::run_benchmark(smoke_config());
  const auto dir = std::filesystem::temp_directory_path() / "catl_bench_plots";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto files = bench::write_plot_data(dir.string(), rows);
  CHECK(files.size() == 4);
  for (const auto& f : files) {
    std::ifstream in(f);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("#", 0) == 0);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("method names round-trip") {
  CHECK(bench::parse_method("centralized") == Method::centralized);
  CHECK(bench::parse_method(bench::method_name(Method::decomposed)) == Method::decomposed);
  CHECK_THROWS_AS(bench::parse_method("hybrid"), DomainError);
}

}  // namespace
}  // namespace catl
