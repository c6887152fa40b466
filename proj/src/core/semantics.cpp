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

#include "core/semantics.hpp"

#include <algorithm>

#include "core/errors.hpp"

namespace catl::semantics {

CompiledFormula::CompiledFormula(const Formula& f, const Environment& env) {
  add(f, env);
}

int CompiledFormula::add(const Formula& f, const Environment& env) {
  const int id = size();
  nodes_.emplace_back();
  {
    Node& n = nodes_[id];
    n.op = f.op;
    n.window = f.window;
    if (f.op == Op::task) {
      n.duration = f.task.duration;
      auto p = env.find_proposition(f.task.proposition);
      if (!p) {
        throw DomainError("unknown proposition '" + f.task.proposition + "'");
      }
      const auto region = env.region(*p);
      n.regions.assign(region.begin(), region.end());
      for (const auto& [cap, count] : f.task.counts) {
        n.demand.emplace_back(env.capability_index(cap), count);
      }
    }
  }
  std::vector<int> kids;
  for (const auto& c : f.children) kids.push_back(add(c, env));
  Node& n = nodes_[id];
  n.children = std::move(kids);
  switch (n.op) {
    case Op::task:
      n.horizon = n.duration;
      break;
    case Op::conj:
    case Op::disj:
      for (int c : n.children) n.horizon = std::max(n.horizon, nodes_[c].horizon);
      break;
    case Op::until:
      n.horizon = n.window.hi + std::max(nodes_[n.children[0]].horizon,
                                         nodes_[n.children[1]].horizon);
      break;
    case Op::eventually:
    case Op::always:
      n.horizon = n.window.hi + nodes_[n.children[0]].horizon;
      break;
  }
  return id;
}

CountTable::CountTable(int num_states, int num_caps, int horizon)
    : num_states_(num_states),
      num_caps_(num_caps),
      horizon_(horizon),
      counts_(static_cast<size_t>(horizon + 1) * num_states * num_caps, 0) {}

void CountTable::add_agent(StateIndex q, CapabilitySet caps, int t, int delta) {
  for (CapIndex c = 0; c < num_caps_; ++c) {
    if (caps.contains(c)) counts_[index(q, c, t)] += delta;
  }
}

CountTable CountTable::from_team(const Environment& env,
                                 std::span<const Agent> agents,
                                 const TeamTrajectory& team) {
  CountTable table(env.num_states(), env.num_capabilities(), team.horizon);
  for (const Agent& a : agents) {
    const Trajectory* tr = team.find(a.id);
    if (tr == nullptr) continue;
    const int last = std::min(team.horizon, tr->horizon());
    for (int t = 0; t <= last; ++t) {
      const Occupancy& o = tr->occupancy[t];
      if (o.is_state()) table.add_agent(o.index, a.caps, t);
    }
  }
  return table;
}

namespace {

// Memoized evaluation of rho(node, t).
class Evaluator {
 public:
  Evaluator(const CompiledFormula& f, const CountTable& counts)
      : f_(f),
        counts_(counts),
        width_(counts.horizon() + 1),
        memo_(static_cast<size_t>(f.size()) * width_),
        known_(memo_.size(), 0) {}

  Robustness eval(int node, int t) {
    const size_t key = static_cast<size_t>(node) * width_ + t;
    if (known_[key]) return memo_[key];
    Robustness r = compute(node, t);
    memo_[key] = r;
    known_[key] = 1;
    return r;
  }

 private:
  Robustness compute(int node, int t) {
    const auto& n = f_.node(node);
    switch (n.op) {
      case Op::task: {
        Robustness r = Robustness::pos_inf();
        for (const auto& [c, need] : n.demand) {
          for (int tau = t; tau < t + n.duration; ++tau) {
            for (StateIndex q : n.regions) {
              r = std::min(r, Robustness(counts_.at(q, c, tau) - need));
            }
          }
        }
        return r;
      }
      case Op::conj: {
        Robustness r = Robustness::pos_inf();
        for (int c : n.children) r = std::min(r, eval(c, t));
        return r;
      }
      case Op::disj: {
        Robustness r = Robustness::neg_inf();
        for (int c : n.children) r = std::max(r, eval(c, t));
        return r;
      }
      case Op::always: {
        Robustness r = Robustness::pos_inf();
        for (int s = t + n.window.lo; s <= t + n.window.hi; ++s) {
          r = std::min(r, eval(n.children[0], s));
        }
        return r;
      }
      case Op::eventually: {
        Robustness r = Robustness::neg_inf();
        for (int s = t + n.window.lo; s <= t + n.window.hi; ++s) {
          r = std::max(r, eval(n.children[0], s));
        }
        return r;
      }
      case Op::until: {
        Robustness best = Robustness::neg_inf();
        Robustness prefix = Robustness::pos_inf();
        for (int s = t; s <= t + n.window.hi; ++s) {
          prefix = std::min(prefix, eval(n.children[0], s));
          if (s >= t + n.window.lo) {
            best = std::max(best, std::min(eval(n.children[1], s), prefix));
          }
        }
        return best;
      }
    }
    return Robustness::neg_inf();
  }

  const CompiledFormula& f_;
  const CountTable& counts_;
  size_t width_;
  std::vector<Robustness> memo_;
  std::vector<char> known_;
};

bool holds(const CompiledFormula& f, const CountTable& counts, int node, int t) {
  const auto& n = f.node(node);
  switch (n.op) {
    case Op::task:
      for (int tau = t; tau < t + n.duration; ++tau) {
        for (StateIndex q : n.regions) {
          for (const auto& [c, need] : n.demand) {
            if (counts.at(q, c, tau) < need) return false;
          }
        }
      }
      return true;
    case Op::conj:
      return std::all_of(n.children.begin(), n.children.end(),
                         [&](int c) { return holds(f, counts, c, t); });
    case Op::disj:
      return std::any_of(n.children.begin(), n.children.end(),
                         [&](int c) { return holds(f, counts, c, t); });
    case Op::always:
      for (int s = t + n.window.lo; s <= t + n.window.hi; ++s) {
        if (!holds(f, counts, n.children[0], s)) return false;
      }
      return true;
    case Op::eventually:
      for (int s = t + n.window.lo; s <= t + n.window.hi; ++s) {
        if (holds(f, counts, n.children[0], s)) return true;
      }
      return false;
    case Op::until:
      for (int s = t + n.window.lo; s <= t + n.window.hi; ++s) {
        if (!holds(f, counts, n.children[1], s)) continue;
        bool prefix = true;
        for (int u = t; u <= s && prefix; ++u) {
          prefix = holds(f, counts, n.children[0], u);
        }
        if (prefix) return true;
      }
      return false;
  }
  return false;
}

void check_horizon(const CompiledFormula& f, const CountTable& counts, int t,
                   int node) {
  if (t < 0 || t + f.node(node).horizon > counts.horizon()) {
    throw DomainError("formula horizon exceeds the trajectory horizon");
  }
}

}  // namespace

Robustness robustness(const CompiledFormula& f, const CountTable& counts, int t,
                      int node) {
  check_horizon(f, counts, t, node);
  Evaluator ev(f, counts);
  return ev.eval(node, t);
}

Robustness robustness(const Environment& env, std::span<const Agent> agents,
                      const TeamTrajectory& team, int t, const Formula& f) {
  CompiledFormula cf(f, env);
  return robustness(cf, CountTable::from_team(env, agents, team), t);
}

bool satisfies(const CompiledFormula& f, const CountTable& counts, int t,
               int node) {
  check_horizon(f, counts, t, node);
  return holds(f, counts, node, t);
}

bool satisfies(const Environment& env, std::span<const Agent> agents,
               const TeamTrajectory& team, const Formula& f) {
  CompiledFormula cf(f, env);
  return satisfies(cf, CountTable::from_team(env, agents, team));
}

std::vector<NodeRobustness> breakdown(const Environment& env,
                                      std::span<const Agent> agents,
                                      const TeamTrajectory& team,
                                      const Formula& f) {
  CompiledFormula cf(f, env);
  const CountTable counts = CountTable::from_team(env, agents, team);
  check_horizon(cf, counts, 0, 0);
  SyntaxTree tree(f);
  Evaluator ev(cf, counts);
  std::vector<NodeRobustness> out;
  for (int id = 0; id < tree.size(); ++id) {
    out.push_back({id, format_formula(tree.subformula(id)), ev.eval(id, 0)});
  }
  return out;
}

}  // namespace catl::semantics
