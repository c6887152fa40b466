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

#include "core/synth.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "core/errors.hpp"
#include "core/semantics.hpp"

namespace catl::synth {

namespace {

using Clock = std::chrono::steady_clock;
using semantics::CompiledFormula;
using semantics::CountTable;

// Dense (time, state, capability) indexing.
struct Grid {
  int num_states = 0;
  int num_caps = 0;
  int horizon = 0;

  size_t index(int tau, int q, int c) const {
    return (static_cast<size_t>(tau) * num_states + q) * num_caps + c;
  }
  size_t size() const {
    return static_cast<size_t>(horizon + 1) * num_states * num_caps;
  }
  int time_of(size_t i) const {
    return static_cast<int>(i / (static_cast<size_t>(num_states) * num_caps));
  }
  int state_of(size_t i) const {
    return static_cast<int>(i / num_caps % num_states);
  }
  int cap_of(size_t i) const { return static_cast<int>(i % num_caps); }
};

class Deadline {
 public:
  explicit Deadline(Clock::time_point end) : end_(end) {}
  bool hit() {
    if (!expired_ && (++ticks_ & 0x3ff) == 0 && Clock::now() > end_) {
      expired_ = true;
    }
    return expired_;
  }
  bool expired() const { return expired_; }

 private:
  Clock::time_point end_;
  std::uint64_t ticks_ = 0;
  bool expired_ = false;
};

using Commitments = std::vector<std::vector<std::pair<int, int>>>;  // (q, tau)

// Decides whether agents can be routed so that at least demand[i] agents
// with capability c sit at state q at time tau for every point i. Exact:
// every solution is reachable through some branch.
class Router {
 public:
  Router(const Environment& env, std::span<const Agent> agents, const Grid& g,
         const std::vector<int>& demand, Deadline& deadline, SearchStats& stats)
      : env_(env), agents_(agents), g_(g), deadline_(deadline), stats_(stats) {
    deficit_ = demand;
    const int n = static_cast<int>(agents.size());
    anchor_q_.resize(n);
    anchor_t_.assign(n, 0);
    history_.resize(n);
    for (int j = 0; j < n; ++j) {
      anchor_q_[j] = agents[j].init;
      history_[j].emplace_back(agents[j].init, 0);
      for (int c = 0; c < g.num_caps; ++c) {
        if (agents[j].caps.contains(c)) --deficit_[g.index(0, agents[j].init, c)];
      }
    }
    for (size_t i = 0; i < deficit_.size(); ++i) {
      if (demand[i] > 0) points_.push_back(i);
    }
  }

  bool run() { return bounds_hold() && dfs(); }
  const Commitments& commitments() const { return history_; }

 private:
  struct Key {
    int popcount;
    std::uint64_t bits;
    int q;
    int t;
    auto operator<=>(const Key&) const = default;
  };

  Key key_of(int j) const {
    return {agents_[j].caps.size(), agents_[j].caps.bits(), anchor_q_[j],
            anchor_t_[j]};
  }

  bool can_serve(int j, int q, int c, int tau) const {
    return agents_[j].caps.contains(c) && anchor_t_[j] < tau &&
           env_.distance(anchor_q_[j], q) <= tau - anchor_t_[j];
  }

  int candidates(int q, int c, int tau) const {
    int n = 0;
    for (int j = 0; j < static_cast<int>(agents_.size()); ++j) {
      if (can_serve(j, q, c, tau)) ++n;
    }
    return n;
  }

  // Necessary conditions on every open point and per (time, capability).
  bool bounds_hold() const {
    std::vector<int> open_by_tc;
    int cur_t = -1;
    std::vector<int> per_cap(g_.num_caps, 0);
    auto flush = [&]() {
      if (cur_t < 0) return true;
      for (int c = 0; c < g_.num_caps; ++c) {
        if (per_cap[c] == 0) continue;
        int free = 0;
        for (int j = 0; j < static_cast<int>(agents_.size()); ++j) {
          if (agents_[j].caps.contains(c) && anchor_t_[j] < cur_t) ++free;
        }
        if (free < per_cap[c]) return false;
      }
      return true;
    };
    for (size_t i : points_) {
      if (deficit_[i] <= 0) continue;
      const int tau = g_.time_of(i);
      if (tau == 0) return false;
      if (tau != cur_t) {
        if (!flush()) return false;
        std::fill(per_cap.begin(), per_cap.end(), 0);
        cur_t = tau;
      }
      const int q = g_.state_of(i);
      const int c = g_.cap_of(i);
      per_cap[c] += deficit_[i];
      if (candidates(q, c, tau) < deficit_[i]) return false;
    }
    return flush();
  }

  bool dfs() {
    if (deadline_.hit()) return false;
    ++stats_.routing_nodes;
    int tau = -1;
    for (size_t i : points_) {
      if (deficit_[i] > 0) {
        tau = g_.time_of(i);
        break;
      }
    }
    if (tau < 0) return true;
    size_t unit = 0;
    int best_slack = -1;
    for (size_t i : points_) {
      if (g_.time_of(i) != tau || deficit_[i] <= 0) continue;
      const int slack =
          candidates(g_.state_of(i), g_.cap_of(i), tau) - deficit_[i];
      if (slack < 0) return false;
      if (best_slack < 0 || slack < best_slack) {
        best_slack = slack;
        unit = i;
      }
    }
    const int q = g_.state_of(unit);
    const int c = g_.cap_of(unit);

    // One representative per interchangeable group.
    std::vector<std::pair<Key, int>> groups;
    for (int j = 0; j < static_cast<int>(agents_.size()); ++j) {
      if (!can_serve(j, q, c, tau)) continue;
      const Key k = key_of(j);
      if (last_unit_ == static_cast<std::int64_t>(unit) && k < last_key_) continue;
      if (std::none_of(groups.begin(), groups.end(),
                       [&](const auto& g) { return g.first == k; })) {
        groups.emplace_back(k, j);
      }
    }
    std::sort(groups.begin(), groups.end());
    for (const auto& [key, j] : groups) {
      const int old_q = anchor_q_[j];
      const int old_t = anchor_t_[j];
      const std::int64_t old_unit = last_unit_;
      const Key old_key = last_key_;
      anchor_q_[j] = q;
      anchor_t_[j] = tau;
      history_[j].emplace_back(q, tau);
      for (int cc = 0; cc < g_.num_caps; ++cc) {
        if (agents_[j].caps.contains(cc)) --deficit_[g_.index(tau, q, cc)];
      }
      last_unit_ = static_cast<std::int64_t>(unit);
      last_key_ = key;
      if (bounds_hold() && dfs()) return true;
      for (int cc = 0; cc < g_.num_caps; ++cc) {
        if (agents_[j].caps.contains(cc)) ++deficit_[g_.index(tau, q, cc)];
      }
      history_[j].pop_back();
      anchor_q_[j] = old_q;
      anchor_t_[j] = old_t;
      last_unit_ = old_unit;
      last_key_ = old_key;
      if (deadline_.expired()) return false;
    }
    return false;
  }

  const Environment& env_;
  std::span<const Agent> agents_;
  Grid g_;
  Deadline& deadline_;
  SearchStats& stats_;
  std::vector<int> deficit_;
  std::vector<size_t> points_;  // ascending index, hence ascending time
  std::vector<int> anchor_q_;
  std::vector<int> anchor_t_;
  Commitments history_;
  std::int64_t last_unit_ = -1;
  Key last_key_{};
};

// Shortest-path moves between commitments: leave at once, then wait.
Trajectory materialize(const Environment& env, const Agent& agent,
                       const std::vector<std::pair<int, int>>& stops,
                       int horizon) {
  Trajectory tr;
  tr.agent_id = agent.id;
  tr.occupancy.assign(horizon + 1, Occupancy::at(agent.init));
  int q = agent.init;
  int t = 0;
  for (const auto& [next_q, tau] : stops) {
    if (tau == 0) continue;
    for (EdgeIndex e : env.shortest_path(q, next_q)) {
      const Edge& ed = env.edge(e);
      for (int s = 1; s < ed.weight; ++s) {
        tr.occupancy[t + s] = Occupancy::on_edge(e, t);
      }
      t += ed.weight;
      tr.occupancy[t] = Occupancy::at(ed.to);
    }
    q = next_q;
    for (; t <= tau; ++t) tr.occupancy[t] = Occupancy::at(q);
    t = tau;
  }
  for (int s = t; s <= horizon; ++s) tr.occupancy[s] = Occupancy::at(q);
  return tr;
}

struct Obligation {
  int node;
  int t;
  auto operator<=>(const Obligation&) const = default;
};

class Synthesizer {
 public:
  Synthesizer(const Environment& env, std::span<const Agent> agents,
              const CompiledFormula& cf, Deadline& deadline, SearchStats& stats)
      : env_(env), agents_(agents), cf_(cf), deadline_(deadline), stats_(stats) {
    g_ = {env.num_states(), env.num_capabilities(), cf.horizon()};
    reach_.assign(g_.size(), 0);
    cap_count_.assign(g_.num_caps, 0);
    for (const Agent& a : agents) {
      for (int c = 0; c < g_.num_caps; ++c) {
        if (!a.caps.contains(c)) continue;
        ++cap_count_[c];
        for (int q = 0; q < g_.num_states; ++q) {
          const int d = env.distance(a.init, q);
          for (int tau = d; tau <= g_.horizon; ++tau) ++reach_[g_.index(tau, q, c)];
        }
      }
    }
  }

  // Count table where every agent is counted wherever it could be.
  CountTable optimistic_counts() const {
    CountTable table(g_.num_states, g_.num_caps, g_.horizon);
    for (size_t i = 0; i < reach_.size(); ++i) {
      table.add(g_.state_of(i), g_.cap_of(i), g_.time_of(i), reach_[i]);
    }
    return table;
  }

  // Searches for a plan with robustness >= r.
  std::optional<TeamTrajectory> attempt(std::int64_t r) {
    r_ = r;
    demand_.assign(g_.size(), 0);
    undo_.clear();
    failed_.clear();
    found_.reset();
    search({{0, 0}});
    return found_;
  }

 private:
  bool add_task(const Obligation& ob) {
    const auto& n = cf_.node(ob.node);
    for (const auto& [c, cp] : n.demand) {
      const std::int64_t need = cp + r_;
      if (need <= 0) continue;
      for (int tau = ob.t; tau < ob.t + n.duration; ++tau) {
        int total = 0;
        for (StateIndex q : n.regions) {
          const size_t i = g_.index(tau, q, c);
          if (need > demand_[i]) {
            if (need > reach_[i]) return false;
            undo_.emplace_back(i, demand_[i]);
            demand_[i] = static_cast<int>(need);
          }
        }
        for (int q = 0; q < g_.num_states; ++q) total += demand_[g_.index(tau, q, c)];
        if (total > cap_count_[c]) return false;
      }
    }
    return true;
  }

  void rollback(size_t mark) {
    while (undo_.size() > mark) {
      demand_[undo_.back().first] = undo_.back().second;
      undo_.pop_back();
    }
  }

  static bool is_choice(const CompiledFormula::Node& n) {
    switch (n.op) {
      case Op::disj:
        return true;
      case Op::eventually:
      case Op::until:
        return n.window.hi > n.window.lo;
      default:
        return false;
    }
  }

  int option_count(const Obligation& ob) const {
    const auto& n = cf_.node(ob.node);
    if (n.op == Op::disj) return static_cast<int>(n.children.size());
    return n.window.hi - n.window.lo + 1;
  }

  void push_option(const Obligation& ob, int k, std::vector<Obligation>& out) const {
    const auto& n = cf_.node(ob.node);
    switch (n.op) {
      case Op::disj:
        out.push_back({n.children[k], ob.t});
        break;
      case Op::eventually:
        out.push_back({n.children[0], ob.t + n.window.lo + k});
        break;
      case Op::until: {
        const int tp = ob.t + n.window.lo + k;
        out.push_back({n.children[1], tp});
        for (int s = ob.t; s <= tp; ++s) out.push_back({n.children[0], s});
        break;
      }
      default:
        break;
    }
  }

  bool search(std::vector<Obligation> pending) {
    if (deadline_.hit()) return false;
    const size_t mark = undo_.size();
    std::vector<Obligation> choices;
    while (!pending.empty()) {
      const Obligation ob = pending.back();
      pending.pop_back();
      const auto& n = cf_.node(ob.node);
      if (is_choice(n)) {
        choices.push_back(ob);
        continue;
      }
      switch (n.op) {
        case Op::task:
          if (!add_task(ob)) {
            rollback(mark);
            return false;
          }
          break;
        case Op::conj:
          for (int c : n.children) pending.push_back({c, ob.t});
          break;
        case Op::always:
          for (int s = ob.t + n.window.lo; s <= ob.t + n.window.hi; ++s) {
            pending.push_back({n.children[0], s});
          }
          break;
        case Op::eventually:
          pending.push_back({n.children[0], ob.t + n.window.lo});
          break;
        case Op::until:
          push_option(ob, 0, pending);
          break;
        case Op::disj:
          break;
      }
    }
    std::sort(choices.begin(), choices.end());
    choices.erase(std::unique(choices.begin(), choices.end()), choices.end());
    if (choices.empty()) {
      const bool ok = route();
      if (!ok) rollback(mark);
      return ok;
    }
    size_t pick = 0;
    for (size_t i = 1; i < choices.size(); ++i) {
      if (option_count(choices[i]) < option_count(choices[pick])) pick = i;
    }
    const Obligation ob = choices[pick];
    choices.erase(choices.begin() + static_cast<std::ptrdiff_t>(pick));
    for (int k = 0; k < option_count(ob); ++k) {
      std::vector<Obligation> next = choices;
      push_option(ob, k, next);
      if (search(std::move(next))) return true;
      if (deadline_.expired()) break;
    }
    rollback(mark);
    return false;
  }

  bool route() {
    std::vector<std::pair<size_t, int>> sparse;
    for (size_t i = 0; i < demand_.size(); ++i) {
      if (demand_[i] > 0) sparse.emplace_back(i, demand_[i]);
    }
    // A demand map dominating a failed one fails too.
    for (const auto& f : failed_) {
      const bool dominated = std::all_of(f.begin(), f.end(), [&](const auto& p) {
        return demand_[p.first] >= p.second;
      });
      if (dominated) return false;
    }
    ++stats_.witnesses;
    Router router(env_, agents_, g_, demand_, deadline_, stats_);
    if (router.run()) {
      TeamTrajectory team;
      team.horizon = g_.horizon;
      const auto& stops = router.commitments();
      for (size_t j = 0; j < agents_.size(); ++j) {
        team.trajectories.push_back(
            materialize(env_, agents_[j], stops[j], g_.horizon));
      }
      found_ = std::move(team);
      return true;
    }
    if (!deadline_.expired()) failed_.push_back(std::move(sparse));
    return false;
  }

  const Environment& env_;
  std::span<const Agent> agents_;
  const CompiledFormula& cf_;
  Deadline& deadline_;
  SearchStats& stats_;
  Grid g_;
  std::vector<int> reach_;
  std::vector<int> cap_count_;
  std::int64_t r_ = 0;
  std::vector<int> demand_;
  std::vector<std::pair<size_t, int>> undo_;
  std::vector<std::vector<std::pair<size_t, int>>> failed_;
  std::optional<TeamTrajectory> found_;
};

TeamTrajectory stationary_team(std::span<const Agent> agents, int horizon) {
  TeamTrajectory team;
  team.horizon = horizon;
  for (const Agent& a : agents) {
    team.trajectories.push_back(stationary_trajectory(a, horizon));
  }
  return team;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

const char* mode_name(Mode m) {
  return m == Mode::feasible ? "feasible" : "robust";
}

const char* plan_status_name(PlanStatus s) {
  switch (s) {
    case PlanStatus::optimal: return "optimal";
    case PlanStatus::feasible: return "feasible";
    case PlanStatus::infeasible: return "infeasible";
    case PlanStatus::timeout: return "timeout";
  }
  return "?";
}

Mode parse_mode(std::string_view name) {
  if (name == "feasible") return Mode::feasible;
  if (name == "robust") return Mode::robust;
  throw DomainError("unknown mode '" + std::string(name) + "'");
}

Plan synthesize(const Environment& env, std::span<const Agent> agents,
                const Formula& f, const Options& options) {
  if (agents.empty()) throw DomainError("synthesis needs at least one agent");
  const auto start = Clock::now();
  const auto end = options.deadline.value_or(
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(options.timeout_s)));
  const CompiledFormula cf(f, env);
  const int H = cf.horizon();
  Deadline deadline(end);
  Plan plan;
  Synthesizer synth(env, agents, cf, deadline, plan.stats);

  auto evaluate = [&](const TeamTrajectory& team) {
    return semantics::robustness(cf, CountTable::from_team(env, agents, team), 0);
  };
  TeamTrajectory best = stationary_team(agents, H);
  Robustness best_rho = evaluate(best);
  const Robustness upper = semantics::robustness(cf, synth.optimistic_counts(), 0);

  bool complete = true;
  // Raises best_rho one margin at a time until the bound or a failure.
  auto ascend = [&](Robustness cap) {
    while (best_rho.is_finite() && ExtInt(best_rho.value() + 1) <= cap) {
      auto team = synth.attempt(best_rho.value() + 1);
      if (!team) {
        complete = !deadline.expired();
        return;
      }
      best = std::move(*team);
      best_rho = evaluate(best);
    }
  };

  bool feasible_hit = false;
  if (options.mode == Mode::feasible) {
    if (best_rho >= ExtInt(0)) {
      feasible_hit = true;
    } else if (ExtInt(0) <= upper) {
      if (auto team = synth.attempt(0)) {
        best = std::move(*team);
        best_rho = evaluate(best);
        feasible_hit = true;
      } else {
        complete = !deadline.expired();
      }
    }
    if (!feasible_hit && complete) ascend(std::min(upper, ExtInt(-1)));
  } else {
    ascend(upper);
  }

  plan.robustness = best_rho;
  if (best_rho >= ExtInt(0)) {
    plan.team = std::move(best);
    plan.has_trajectory = true;
    if (options.mode == Mode::feasible) {
      plan.status = PlanStatus::feasible;
    } else {
      plan.status = complete ? PlanStatus::optimal : PlanStatus::timeout;
    }
  } else {
    plan.status = complete ? PlanStatus::infeasible : PlanStatus::timeout;
  }
  plan.solve_time_s = seconds_since(start);
  return plan;
}

namespace {

void enumerate_trajectories(const Environment& env, int horizon, int t,
                            std::vector<Occupancy>& cur,
                            std::vector<std::vector<Occupancy>>& out) {
  if (t == horizon) {
    out.push_back(cur);
    return;
  }
  const int q = cur[t].index;
  cur.push_back(Occupancy::at(q));
  enumerate_trajectories(env, horizon, t + 1, cur, out);
  cur.pop_back();
  for (EdgeIndex e : env.out_edges(q)) {
    const Edge& ed = env.edge(e);
    const size_t mark = cur.size();
    int s = t + 1;
    for (; s < t + ed.weight && s <= horizon; ++s) {
      cur.push_back(Occupancy::on_edge(e, t));
    }
    if (s <= horizon) {
      cur.push_back(Occupancy::at(ed.to));
      enumerate_trajectories(env, horizon, s, cur, out);
    } else {
      out.push_back(cur);
    }
    cur.resize(mark);
  }
}

}  // namespace

Plan brute_force_synthesize(const Environment& env,
                            std::span<const Agent> agents, const Formula& f,
                            Mode mode) {
  if (agents.empty() || agents.size() > 4 || env.num_states() > 6 ||
      horizon(f) > 8) {
    throw DomainError(
        "brute force is limited to 1-4 agents, 6 states and horizon 8");
  }
  const auto start = Clock::now();
  const CompiledFormula cf(f, env);
  const int H = cf.horizon();
  const int C = env.num_capabilities();

  // Only states some task inspects influence robustness.
  std::vector<int> slot(env.num_states(), -1);
  std::vector<StateIndex> relevant;
  for (int id = 0; id < cf.size(); ++id) {
    for (StateIndex q : cf.node(id).regions) {
      if (slot[q] < 0) {
        slot[q] = static_cast<int>(relevant.size());
        relevant.push_back(q);
      }
    }
  }
  const size_t R = relevant.size();
  const size_t width = static_cast<size_t>(H + 1) * R * C;

  const size_t n = agents.size();
  std::vector<std::vector<std::vector<Occupancy>>> trajs(n);
  std::vector<std::vector<std::vector<int>>> contrib(n);
  std::vector<int> twin(n, -1);  // previous agent with identical init/caps
  for (size_t j = 0; j < n; ++j) {
    for (size_t i = 0; i < j; ++i) {
      if (agents[i].init == agents[j].init && agents[i].caps == agents[j].caps) {
        twin[j] = static_cast<int>(i);
      }
    }
    std::vector<std::vector<Occupancy>> all;
    std::vector<Occupancy> cur{Occupancy::at(agents[j].init)};
    enumerate_trajectories(env, H, 0, cur, all);
    std::unordered_set<std::string> seen;
    for (auto& occ : all) {
      std::string sig;
      for (const Occupancy& o : occ) {
        sig.push_back(o.is_state() && slot[o.index] >= 0
                          ? static_cast<char>(slot[o.index])
                          : static_cast<char>(-1));
      }
      if (!seen.insert(sig).second) continue;
      std::vector<int> v(width, 0);
      for (int t = 0; t <= H; ++t) {
        if (sig[t] < 0) continue;
        for (int c = 0; c < C; ++c) {
          if (agents[j].caps.contains(c)) ++v[(t * R + sig[t]) * C + c];
        }
      }
      trajs[j].push_back(std::move(occ));
      contrib[j].push_back(std::move(v));
    }
  }

  struct Partial {
    std::vector<int> choice;
    std::vector<int> sum;
  };
  std::vector<Partial> layer{{{}, std::vector<int>(width, 0)}};
  for (size_t j = 0; j + 1 < n; ++j) {
    std::vector<Partial> next;
    std::unordered_set<std::string> seen;
    for (const Partial& p : layer) {
      const int lo = twin[j] >= 0 ? p.choice[twin[j]] : 0;
      for (int x = lo; x < static_cast<int>(contrib[j].size()); ++x) {
        Partial q{p.choice, p.sum};
        q.choice.push_back(x);
        for (size_t k = 0; k < width; ++k) q.sum[k] += contrib[j][x][k];
        std::string key(reinterpret_cast<const char*>(q.sum.data()),
                        q.sum.size() * sizeof(int));
        if (seen.insert(std::move(key)).second) next.push_back(std::move(q));
      }
    }
    layer = std::move(next);
  }

  Plan plan;
  std::vector<int> best_choice;
  Robustness best = Robustness::neg_inf();
  bool have = false;
  const size_t last = n - 1;
  for (const Partial& p : layer) {
    const int lo = twin[last] >= 0 ? p.choice[twin[last]] : 0;
    for (int x = lo; x < static_cast<int>(contrib[last].size()); ++x) {
      CountTable table(env.num_states(), C, H);
      for (int t = 0; t <= H; ++t) {
        for (size_t r = 0; r < R; ++r) {
          for (int c = 0; c < C; ++c) {
            const size_t k = (t * R + r) * C + c;
            const int v = p.sum[k] + contrib[last][x][k];
            if (v != 0) table.add(relevant[r], c, t, v);
          }
        }
      }
      ++plan.stats.evaluations;
      const Robustness rho = semantics::robustness(cf, table, 0);
      if (!have || rho > best) {
        have = true;
        best = rho;
        best_choice = p.choice;
        best_choice.push_back(x);
        if (mode == Mode::feasible && best >= ExtInt(0)) break;
      }
    }
    if (mode == Mode::feasible && best >= ExtInt(0)) break;
  }

  plan.robustness = best;
  if (best >= ExtInt(0)) {
    plan.has_trajectory = true;
    plan.status = mode == Mode::feasible ? PlanStatus::feasible : PlanStatus::optimal;
    plan.team.horizon = H;
    for (size_t j = 0; j < n; ++j) {
      plan.team.trajectories.push_back({agents[j].id, trajs[j][best_choice[j]]});
    }
  } else {
    plan.status = PlanStatus::infeasible;
  }
  plan.solve_time_s = seconds_since(start);
  return plan;
}

}  // namespace catl::synth
