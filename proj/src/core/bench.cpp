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

#include "core/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "core/errors.hpp"
#include "core/mission.hpp"

namespace catl::bench {

namespace {

constexpr const char* kProps[] = {"A", "B", "C", "D", "E"};

std::string fixed3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

// Summaries and plot data keep sub-millisecond detail the CSV rounds away.
std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string task_text(int d, const char* prop, const std::string& counts) {
  return "T(" + std::to_string(d) + ", " + prop + ", {" + counts + "})";
}

}  // namespace

const char* method_name(Method m) {
  return m == Method::centralized ? "centralized" : "decomposed";
}

Method parse_method(std::string_view name) {
  if (name == "centralized") return Method::centralized;
  if (name == "decomposed") return Method::decomposed;
  throw DomainError("unknown method '" + std::string(name) + "'");
}

void validate_config(const BenchConfig& cfg) {
  if (cfg.trials < 1) throw ValidationError("trials must be >= 1");
  if (!(cfg.timeout_s > 0)) throw ValidationError("timeout must be > 0");
  if (cfg.grid < 1) throw ValidationError("grid must be >= 1");
  if (cfg.edge_weight < 1) throw ValidationError("edge weight must be >= 1");
  if (cfg.agent_counts.empty()) throw ValidationError("no agent counts");
  for (int n : cfg.agent_counts) {
    if (n < 1) throw ValidationError("agent counts must be >= 1");
  }
  if (cfg.capability_pool.empty()) throw ValidationError("empty capability pool");
  for (const auto& caps : cfg.capability_pool) {
    if (caps.empty()) throw ValidationError("empty capability set in pool");
  }
  if (cfg.region_divisor < 1) throw ValidationError("region divisor must be >= 1");
  if (cfg.duration < 1) throw ValidationError("duration must be >= 1");
  if (cfg.until_lo < 0 || cfg.until_lo > cfg.until_hi) {
    throw ValidationError("until window must satisfy 0 <= lo <= hi");
  }
  if (cfg.jobs < 1) throw ValidationError("jobs must be >= 1");
  if (cfg.modes.empty() || cfg.methods.empty()) {
    throw ValidationError("at least one mode and one method are required");
  }
}

int release_offset(const BenchConfig& cfg) {
  if (cfg.literal_template) return 0;
  if (cfg.release >= 0) return cfg.release;
  if (cfg.complete_graph) return cfg.grid > 1 ? cfg.edge_weight : 0;
  return 2 * (cfg.grid - 1) * cfg.edge_weight;
}

std::string bench_formula(const BenchConfig& cfg) {
  const int d = cfg.duration;
  const std::string both = "c1:1, c2:1";
  const std::string left = "(" + task_text(d, "A", "c1:2") + " || " +
                           task_text(d, "B", "c1:2, c2:2") + ")";
  const std::string right = "(" + task_text(d, "C", "c2:1") + " U[" +
                            std::to_string(cfg.until_lo) + "," +
                            std::to_string(cfg.until_hi) + "] (" +
                            task_text(d, "D", both) + " && " +
                            task_text(d, "E", both) + "))";
  if (cfg.literal_template) return left + " && " + right;
  const std::string s = std::to_string(release_offset(cfg));
  const std::string wrap = "F[" + s + "," + s + "] ";
  return wrap + left + " && " + wrap + right;
}

nlohmann::json generate_scenario_json(const BenchConfig& cfg, int n_agents,
                                      int trial) {
  validate_config(cfg);
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                    static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(n_agents),
                    static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);

  const int g = cfg.grid;
  const int num_states = g * g;
  nlohmann::json j;
  j["states"] = nlohmann::json::array();
  for (int i = 0; i < num_states; ++i) j["states"].push_back("q" + std::to_string(i));
  j["edges"] = nlohmann::json::array();
  auto edge = [&](int a, int b) {
    j["edges"].push_back({"q" + std::to_string(a), "q" + std::to_string(b),
                          cfg.edge_weight});
  };
  for (int a = 0; a < num_states; ++a) {
    if (cfg.complete_graph) {
      for (int b = 0; b < num_states; ++b) {
        if (a != b) edge(a, b);
      }
      continue;
    }
    const int r = a / g;
    const int c = a % g;
    if (r > 0) edge(a, a - g);
    if (c > 0) edge(a, a - 1);
    if (c + 1 < g) edge(a, a + 1);
    if (r + 1 < g) edge(a, a + g);
  }

  const int per_prop = std::min(
      num_states, (n_agents + cfg.region_divisor - 1) / cfg.region_divisor);
  std::vector<int> order(num_states);
  for (int i = 0; i < num_states; ++i) order[i] = i;
  std::map<int, std::vector<std::string>> labels;
  const bool disjoint_regions = per_prop * 5 <= num_states;
  std::shuffle(order.begin(), order.end(), rng);
  for (int p = 0; p < 5; ++p) {
    if (!disjoint_regions) std::shuffle(order.begin(), order.end(), rng);
    for (int k = 0; k < per_prop; ++k) {
      const int q = disjoint_regions ? order[p * per_prop + k] : order[k];
      labels[q].push_back(kProps[p]);
    }
  }
  j["labels"] = nlohmann::json::object();
  for (const auto& [q, props] : labels) j["labels"]["q" + std::to_string(q)] = props;
  j["propositions"] = {"A", "B", "C", "D", "E"};

  std::vector<std::string> caps;
  for (const auto& set : cfg.capability_pool) {
    for (const auto& c : set) {
      if (std::find(caps.begin(), caps.end(), c) == caps.end()) caps.push_back(c);
    }
  }
  std::sort(caps.begin(), caps.end());
  j["capabilities"] = caps;

  std::uniform_int_distribution<int> pick_state(0, num_states - 1);
  std::uniform_int_distribution<int> pick_caps(
      0, static_cast<int>(cfg.capability_pool.size()) - 1);
  j["agents"] = nlohmann::json::array();
  for (int a = 0; a < n_agents; ++a) {
    const int q = pick_state(rng);
    const auto& set = cfg.capability_pool[pick_caps(rng)];
    j["agents"].push_back({{"id", "A" + std::to_string(a + 1)},
                           {"init", "q" + std::to_string(q)},
                           {"caps", set}});
  }
  j["formula"] = bench_formula(cfg);
  j["metadata"] = {
      {"generator", "bench"},
      {"seed", cfg.seed},
      {"trial", trial},
      {"n_agents", n_agents},
      {"grid", g},
      {"edge_weight", cfg.edge_weight},
      {"topology", cfg.complete_graph ? "complete" : "grid-4-neighbour"},
      {"regions_per_proposition", per_prop},
      {"region_rule", "ceil(n_agents / " + std::to_string(cfg.region_divisor) + ")"},
      {"agent_placement", "uniform"},
      {"task_duration", cfg.duration},
      {"until_window", {cfg.until_lo, cfg.until_hi}},
      {"release_offset", release_offset(cfg)},
      {"template", cfg.literal_template ? "literal" : "released"},
      {"note", "durations, until window and release offset are generator defaults"},
  };
  return j;
}

Scenario generate_scenario(const BenchConfig& cfg, int n_agents, int trial) {
  return scenario_from_json(generate_scenario_json(cfg, n_agents, trial));
}

namespace {

struct Job {
  int n_agents;
  int trial;
  synth::Mode mode;
  Method method;
};

Row run_one(const BenchConfig& cfg, const Job& job) {
  Row row;
  row.trial = job.trial;
  row.n_agents = job.n_agents;
  row.method = job.method;
  row.mode = job.mode;
  try {
    const Scenario sc = generate_scenario(cfg, job.n_agents, job.trial);
    mission::Config mc;
    mc.decompose = job.method == Method::decomposed;
    mc.mode = job.mode;
    mc.timeout_s = cfg.timeout_s;
    mc.seed = cfg.seed;
    const auto r = mission::plan_mission(sc, mc);
    row.assign_time_s = r.timings.assign_s;
    row.decomp_time_s = r.timings.decompose_s;
    row.synth_time_s = r.timings.synth_s;
    row.total_time_s = r.timings.total_s;
    row.status = mission::status_name(r.status);
    if (!r.parts.empty()) row.robustness = r.overall;
    if (r.has_trajectory) row.verified = r.verified;
  } catch (const std::exception&) {
    row.status = "error";
  }
  return row;
}

}  // namespace

std::vector<Row> run_benchmark(const BenchConfig& cfg, const Progress& progress) {
  validate_config(cfg);
  std::vector<Job> jobs;
  for (int n : cfg.agent_counts) {
    for (int t = 0; t < cfg.trials; ++t) {
      for (synth::Mode m : cfg.modes) {
        for (Method meth : cfg.methods) jobs.push_back({n, t, m, meth});
      }
    }
  }
  std::vector<Row> rows(jobs.size());
  std::atomic<size_t> next{0};
  std::mutex mu;
  auto worker = [&]() {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      rows[i] = run_one(cfg, jobs[i]);
      if (progress) {
        std::lock_guard<std::mutex> lock(mu);
        progress(rows[i]);
      }
    }
  };
  if (cfg.jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < cfg.jobs; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return rows;
}

std::string csv_header() {
  return "trial,n_agents,method,mode,assign_time_s,decomp_time_s,synth_time_s,"
         "total_time_s,robustness,status,verified";
}

std::string csv_row(const Row& r) {
  std::ostringstream os;
  os << r.trial << ',' << r.n_agents << ',' << method_name(r.method) << ','
     << synth::mode_name(r.mode) << ',' << fixed3(r.assign_time_s) << ','
     << fixed3(r.decomp_time_s) << ',' << fixed3(r.synth_time_s) << ','
     << fixed3(r.total_time_s) << ',';
  if (r.robustness) os << r.robustness->to_string();
  os << ',' << r.status << ',';
  if (r.verified) os << (*r.verified ? "true" : "false");
  return os.str();
}

void write_csv(std::ostream& os, const std::vector<Row>& rows) {
  os << csv_header() << '\n';
  for (const auto& r : rows) os << csv_row(r) << '\n';
}

namespace {

struct Stat {
  double sum = 0.0;
  double max = 0.0;
  int n = 0;
  void add(double v) {
    sum += v;
    max = n == 0 ? v : std::max(max, v);
    ++n;
  }
  std::string text(bool seconds) const {
    if (n == 0) return "- / -";
    if (seconds) return fixed6(sum / n) + " / " + fixed6(max);
    return fixed2(sum / n) + " / " + fixed2(max);
  }
};

bool solved(const Row& r) {
  return r.verified.has_value() && r.robustness && r.robustness->is_finite() &&
         *r.robustness >= ExtInt(0);
}

}  // namespace

std::string summary_tables(const std::vector<Row>& rows) {
  std::ostringstream os;
  for (synth::Mode mode : {synth::Mode::feasible, synth::Mode::robust}) {
    std::map<int, std::map<Method, Stat>> time;
    std::map<int, std::map<Method, Stat>> rho;
    std::map<int, std::map<Method, std::pair<int, int>>> count;  // solved, total
    bool any = false;
    for (const auto& r : rows) {
      if (r.mode != mode) continue;
      any = true;
      time[r.n_agents][r.method].add(r.total_time_s);
      auto& cnt = count[r.n_agents][r.method];
      ++cnt.second;
      if (solved(r)) {
        ++cnt.first;
        rho[r.n_agents][r.method].add(static_cast<double>(r.robustness->value()));
      }
    }
    if (!any) continue;
    const bool robust = mode == synth::Mode::robust;
    os << (robust ? "Run time and robustness for the maximally robust solution"
                  : "Run time to the first feasible solution")
       << " (mean / max)\n";
    os << "agents | centralized time (s)" << (robust ? " | centralized rho" : "")
       << " | decomposed time (s)" << (robust ? " | decomposed rho" : "")
       << " | solved c/d\n";
    for (const auto& [n, by_method] : time) {
      auto cell = [&](Method m, bool want_rho) {
        const auto& src = want_rho ? rho : time;
        auto it = src.find(n);
        if (it == src.end() || !it->second.count(m)) return std::string("- / -");
        return it->second.at(m).text(!want_rho);
      };
      auto solved_text = [&](Method m) {
        const auto& c = count[n];
        if (!c.count(m)) return std::string("-");
        return std::to_string(c.at(m).first) + "/" + std::to_string(c.at(m).second);
      };
      os << n << " | " << cell(Method::centralized, false);
      if (robust) os << " | " << cell(Method::centralized, true);
      os << " | " << cell(Method::decomposed, false);
      if (robust) os << " | " << cell(Method::decomposed, true);
      os << " | " << solved_text(Method::centralized) << " "
         << solved_text(Method::decomposed) << "\n";
    }
    os << "\n";
  }
  return os.str();
}

std::vector<std::string> write_plot_data(const std::string& dir,
                                         const std::vector<Row>& rows) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  for (synth::Mode mode : {synth::Mode::feasible, synth::Mode::robust}) {
    std::map<int, std::map<Method, Stat>> total;
    std::map<int, Stat> decomp;
    std::map<int, Stat> synth_time;
    for (const auto& r : rows) {
      if (r.mode != mode) continue;
      total[r.n_agents][r.method].add(r.total_time_s);
      if (r.method == Method::decomposed) {
        decomp[r.n_agents].add(r.assign_time_s + r.decomp_time_s);
        synth_time[r.n_agents].add(r.synth_time_s);
      }
    }
    if (total.empty()) continue;
    const std::string m = synth::mode_name(mode);
    const std::string runtime = dir + "/runtime_" + m + ".dat";
    std::ofstream rt(runtime);
    rt << "# n_agents method mean_total_s max_total_s trials\n";
    for (const auto& [n, by] : total) {
      for (const auto& [meth, st] : by) {
        rt << n << ' ' << method_name(meth) << ' ' << fixed6(st.sum / st.n) << ' '
           << fixed6(st.max) << ' ' << st.n << '\n';
      }
    }
    written.push_back(runtime);
    if (!decomp.empty()) {
      const std::string split = dir + "/decomposition_split_" + m + ".dat";
      std::ofstream sp(split);
      sp << "# n_agents mean_decomposition_s mean_synthesis_s decomposition_share\n";
      for (const auto& [n, st] : decomp) {
        const double d = st.sum / st.n;
        const double s = synth_time[n].sum / synth_time[n].n;
        const double share = d + s > 0 ? d / (d + s) : 0.0;
        sp << n << ' ' << fixed6(d) << ' ' << fixed6(s) << ' ' << fixed3(share) << '\n';
      }
      written.push_back(split);
    }
  }
  return written;
}

}  // namespace catl::bench
