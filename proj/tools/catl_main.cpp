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

// Command-line front end. Talks to the library only through catl.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "catl/catl.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct Failure {
  int code;
};

void check(catl_status st) {
  if (st != CATL_OK) {
    std::cerr << "catl: " << catl_status_name(st) << ": " << catl_last_error() << "\n";
    throw Failure{1};
  }
}

struct Owned {
  char* p = nullptr;
  ~Owned() { catl_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

using ScenarioPtr = std::unique_ptr<catl_scenario, decltype(&catl_scenario_free)>;
using OptionsPtr = std::unique_ptr<catl_options, decltype(&catl_options_free)>;
using BenchPtr = std::unique_ptr<catl_bench_config, decltype(&catl_bench_config_free)>;

ScenarioPtr load(const std::string& path) {
  catl_scenario* s = nullptr;
  check(catl_scenario_load(path.c_str(), &s));
  ScenarioPtr out(s, catl_scenario_free);
  Owned warnings;
  check(catl_scenario_warnings(s, &warnings.p));
  for (const auto& w : json::parse(warnings.str())) {
    std::cerr << "warning: " << w.get<std::string>() << "\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "catl: cannot open '" << path << "'\n";
    throw Failure{1};
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "catl: cannot write '" << out << "'\n";
    throw Failure{1};
  }
  f << text << "\n";
}

struct PlanFlags {
  bool no_decompose = false;
  bool keep_disjunctions = false;
  bool allow_overlap = false;
  bool no_spares = false;
  std::string mode = "robust";
  double timeout = 120.0;
  std::uint64_t seed = 0;
  std::string out;
};

void add_plan_flags(CLI::App* cmd, PlanFlags& f, bool synthesis, bool decomposition) {
  cmd->add_flag("--allow-overlap", f.allow_overlap,
                "Let an agent serve several tasks");
  cmd->add_flag("--no-spares", f.no_spares,
                "Leave agents the assignment does not need idle");
  cmd->add_option("--timeout", f.timeout, "Time budget in seconds")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "Seed for reproducible runs");
  cmd->add_option("--out", f.out, "Write the JSON result to this file");
  if (decomposition) {
    cmd->add_flag("--keep-disjunctions", f.keep_disjunctions,
                  "Keep unchosen disjunction branches");
  }
  if (synthesis) {
    cmd->add_flag("--no-decompose", f.no_decompose,
                  "Plan centrally over the whole team");
    cmd->add_option("--mode", f.mode, "feasible or robust")
        ->check(CLI::IsMember({"feasible", "robust"}));
  }
}

OptionsPtr make_options(const PlanFlags& f) {
  catl_options* o = nullptr;
  check(catl_options_new(&o));
  OptionsPtr out(o, catl_options_free);
  check(catl_options_set_mode(o, f.mode.c_str()));
  check(catl_options_set_timeout(o, f.timeout));
  check(catl_options_set_seed(o, f.seed));
  check(catl_options_set_flag(o, "decompose", f.no_decompose ? 0 : 1));
  check(catl_options_set_flag(o, "keep_disjunctions", f.keep_disjunctions ? 1 : 0));
  check(catl_options_set_flag(o, "allow_overlap", f.allow_overlap ? 1 : 0));
  check(catl_options_set_flag(o, "distribute_spares", f.no_spares ? 0 : 1));
  return out;
}

std::string value_text(const json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

struct BenchFlags {
  std::string agents = "10,20,30,40,50";
  int trials = 100;
  double timeout = 120.0;
  std::uint64_t seed = 0;
  int grid = 5;
  int edge_weight = 1;
  bool complete = false;
  std::string modes = "feasible,robust";
  std::string methods = "centralized,decomposed";
  int jobs = 1;
  int duration = 1;
  std::string until = "2,6";
  int release = -1;
  bool literal = false;
  int region_divisor = 10;
};

void add_bench_flags(CLI::App* cmd, BenchFlags& b) {
  cmd->add_option("--seed", b.seed, "Base seed");
  cmd->add_option("--grid", b.grid, "Grid side length")->check(CLI::PositiveNumber);
  cmd->add_option("--edge-weight", b.edge_weight, "Travel time per edge")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--complete-graph", b.complete, "Connect every pair of states");
  cmd->add_option("--duration", b.duration, "Task duration d")->check(CLI::PositiveNumber);
  cmd->add_option("--until", b.until, "Until window as a,b");
  cmd->add_option("--release", b.release,
                  "Delay before each root conjunct is due (-1: graph diameter)");
  cmd->add_flag("--literal-template", b.literal,
                "Use the formula template without release delays");
  cmd->add_option("--region-divisor", b.region_divisor,
                  "Regions per proposition = ceil(agents / divisor)")
      ->check(CLI::PositiveNumber);
}

BenchPtr make_bench(const BenchFlags& b) {
  catl_bench_config* c = nullptr;
  check(catl_bench_config_new(&c));
  BenchPtr out(c, catl_bench_config_free);
  auto set = [&](const char* k, const std::string& v) {
    check(catl_bench_config_set(c, k, v.c_str()));
  };
  set("agents", b.agents);
  set("trials", std::to_string(b.trials));
  set("timeout", std::to_string(b.timeout));
  set("seed", std::to_string(b.seed));
  set("grid", std::to_string(b.grid));
  set("edge_weight", std::to_string(b.edge_weight));
  set("complete_graph", b.complete ? "true" : "false");
  set("modes", b.modes);
  set("methods", b.methods);
  set("jobs", std::to_string(b.jobs));
  set("duration", std::to_string(b.duration));
  set("until", b.until);
  set("release", std::to_string(b.release));
  set("literal_template", b.literal ? "true" : "false");
  set("region_divisor", std::to_string(b.region_divisor));
  return out;
}

void progress_line(const char* row, void*) { std::cerr << row << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decompose capability temporal logic missions and plan for agent teams"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(catl_version()));

  std::string scenario_path;
  std::string plan_path;
  bool as_json = false;
  auto* check_cmd = app.add_subcommand("check", "Evaluate a plan against a scenario");
  check_cmd->add_option("scenario", scenario_path, "Scenario JSON")->required();
  check_cmd->add_option("plan", plan_path, "Plan JSON")->required();
  check_cmd->add_flag("--json", as_json, "Print the full JSON report");

  PlanFlags assign_flags;
  auto* assign_cmd = app.add_subcommand("assign", "Solve the agent-to-task assignment");
  assign_cmd->add_option("scenario", scenario_path, "Scenario JSON")->required();
  add_plan_flags(assign_cmd, assign_flags, false, false);

  PlanFlags decomp_flags;
  auto* decomp_cmd = app.add_subcommand("decompose", "Split the mission into subproblems");
  decomp_cmd->add_option("scenario", scenario_path, "Scenario JSON")->required();
  add_plan_flags(decomp_cmd, decomp_flags, false, true);

  PlanFlags synth_flags;
  auto* synth_cmd = app.add_subcommand("synth", "Synthesize team trajectories");
  synth_cmd->add_option("scenario", scenario_path, "Scenario JSON")->required();
  add_plan_flags(synth_cmd, synth_flags, true, true);

  PlanFlags plan_flags;
  auto* plan_cmd = app.add_subcommand("plan", "Run the full pipeline and verify the result");
  plan_cmd->add_option("scenario", scenario_path, "Scenario JSON")->required();
  add_plan_flags(plan_cmd, plan_flags, true, true);

  BenchFlags bench_flags;
  std::string csv_out;
  std::string summary_out;
  std::string plot_dir = "plots";
  bool emit_plots = false;
  bool quiet = false;
  auto* bench_cmd = app.add_subcommand("bench", "Compare centralized and decomposed planning");
  add_bench_flags(bench_cmd, bench_flags);
  bench_cmd->add_option("--agents", bench_flags.agents, "Comma-separated agent counts");
  bench_cmd->add_option("--trials", bench_flags.trials, "Trials per agent count")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--timeout", bench_flags.timeout, "Per-run budget in seconds")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--mode", bench_flags.modes, "feasible,robust");
  bench_cmd->add_option("--methods", bench_flags.methods, "centralized,decomposed");
  bench_cmd->add_option("--jobs", bench_flags.jobs, "Trials run in parallel")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", csv_out, "CSV output file (default stdout)");
  bench_cmd->add_option("--summary", summary_out, "Write summary tables to this file");
  bench_cmd->add_flag("--emit-plots", emit_plots, "Write per-figure data files");
  bench_cmd->add_option("--plot-dir", plot_dir, "Directory for --emit-plots");
  bench_cmd->add_flag("--quiet", quiet, "Do not print progress rows");

  BenchFlags gen_flags;
  int gen_agents = 10;
  int gen_trial = 0;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("generate", "Write one benchmark scenario");
  add_bench_flags(gen_cmd, gen_flags);
  gen_cmd->add_option("--agents", gen_agents, "Number of agents")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--trial", gen_trial, "Trial index")->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--out", gen_out, "Scenario output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check_cmd) {
      auto sc = load(scenario_path);
      const std::string plan = read_file(plan_path);
      Owned out;
      check(catl_check(sc.get(), plan.c_str(), &out.p));
      if (as_json) {
        std::cout << out.str() << "\n";
      } else {
        const json r = json::parse(out.str());
        std::cout << "robustness: " << value_text(r["robustness"]) << "\n";
        std::cout << "satisfied:  " << (r["satisfies"].get<bool>() ? "yes" : "no") << "\n";
        for (const auto& v : r["violations"]) {
          std::cout << "violation:  " << v["agent"].get<std::string>() << " at t="
                    << v["time"] << ": " << v["reason"].get<std::string>() << "\n";
        }
        std::cout << "subformula robustness at t=0:\n";
        for (const auto& row : r["breakdown"]) {
          std::cout << "  " << value_text(row["robustness"]) << "\t"
                    << row["formula"].get<std::string>() << "\n";
        }
      }
      return 0;
    }
    auto run = [&](const PlanFlags& f, auto fn) {
      auto sc = load(scenario_path);
      auto opts = make_options(f);
      Owned out;
      check(fn(sc.get(), opts.get(), &out.p));
      emit(out.str(), f.out);
      return 0;
    };
    if (*assign_cmd) return run(assign_flags, catl_assign);
    if (*decomp_cmd) return run(decomp_flags, catl_decompose);
    if (*synth_cmd) return run(synth_flags, catl_synthesize);
    if (*plan_cmd) return run(plan_flags, catl_plan);
    if (*bench_cmd) {
      auto cfg = make_bench(bench_flags);
      Owned csv;
      Owned summary;
      check(catl_bench_run(cfg.get(), emit_plots ? plot_dir.c_str() : nullptr,
                           quiet ? nullptr : progress_line, nullptr, &csv.p, &summary.p));
      if (csv_out.empty()) {
        std::cout << csv.str();
      } else {
        std::ofstream f(csv_out);
        if (!f) {
          std::cerr << "catl: cannot write '" << csv_out << "'\n";
          return 1;
        }
        f << csv.str();
      }
      if (!summary_out.empty()) emit(summary.str(), summary_out);
      std::cerr << "\n" << summary.str();
      return 0;
    }
    if (*gen_cmd) {
      auto cfg = make_bench(gen_flags);
      Owned out;
      check(catl_generate(cfg.get(), gen_agents, gen_trial, &out.p));
      emit(out.str(), gen_out);
      return 0;
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
