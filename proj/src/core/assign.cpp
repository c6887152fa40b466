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

#include "core/assign.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

#include "core/errors.hpp"
#include "core/semantics.hpp"

namespace catl::assign {

namespace {

const AgentSet kEmpty;

AgentSet set_union(const AgentSet& a, const AgentSet& b) {
  AgentSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool disjoint(const AgentSet& a, const AgentSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) {
      ++i;
    } else {
      ++j;
    }
  }
  return true;
}

bool pairwise_disjoint(const std::vector<AgentSet>& nm,
                       const std::vector<int>& children) {
  for (size_t i = 0; i < children.size(); ++i) {
    for (size_t j = i + 1; j < children.size(); ++j) {
      if (!disjoint(nm[children[i]], nm[children[j]])) return false;
    }
  }
  return true;
}

using Demand = std::vector<std::pair<CapIndex, int>>;

Demand leaf_demand(const SyntaxTree& tree, const Team& team, int leaf) {
  Demand d;
  for (const auto& [name, count] : tree.task(leaf).counts) {
    auto it = std::find(team.capabilities.begin(), team.capabilities.end(), name);
    if (it == team.capabilities.end()) {
      throw DomainError("unknown capability '" + name + "'");
    }
    d.emplace_back(static_cast<CapIndex>(it - team.capabilities.begin()), count);
  }
  return d;
}

// Inherits independence at unary and disjunction nodes from `core`, which
// must already hold the values of leaves and until/conjunction nodes.
void inherit_independence(const SyntaxTree& tree, const Assignment& a,
                          std::vector<char>& ind) {
  for (int id = tree.size() - 1; id >= 0; --id) {
    const auto& n = tree.node(id);
    switch (n.op) {
      case Op::task:
        ind[id] = 1;
        break;
      case Op::eventually:
      case Op::always:
        ind[id] = ind[n.children[0]];
        break;
      case Op::disj:
        ind[id] = ind[a.chosen_child(tree, id)];
        break;
      default:
        break;
    }
  }
}

std::int64_t weight(const SyntaxTree& tree, int depth) {
  return std::int64_t{1} << (tree.max_depth() - depth);
}

}  // namespace

int Assignment::chosen_child(const SyntaxTree& tree, int node) const {
  const auto& n = tree.node(node);
  auto it = choice_map.find(node);
  const int pos = it == choice_map.end() ? 0 : it->second;
  if (pos < 0 || pos >= static_cast<int>(n.children.size())) {
    throw DomainError("disjunction choice out of range");
  }
  return n.children[pos];
}

const AgentSet& Assignment::leaf(int node) const {
  auto it = leaf_map.find(node);
  return it == leaf_map.end() ? kEmpty : it->second;
}

const char* status_name(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::timeout: return "timeout";
  }
  return "?";
}

std::vector<AgentSet> node_map(const SyntaxTree& tree, const Assignment& a) {
  std::vector<AgentSet> nm(tree.size());
  for (int id = tree.size() - 1; id >= 0; --id) {
    const auto& n = tree.node(id);
    if (n.op == Op::task) {
      nm[id] = a.leaf(id);
    } else if (n.op == Op::disj) {
      nm[id] = nm[a.chosen_child(tree, id)];
    } else {
      for (int c : n.children) nm[id] = set_union(nm[id], nm[c]);
    }
  }
  return nm;
}

std::vector<ExcessVector> capability_excess_all(const SyntaxTree& tree,
                                                const Team& team,
                                                const Assignment& a) {
  const int num_caps = static_cast<int>(team.capabilities.size());
  std::vector<ExcessVector> ex(tree.size());
  for (int id = tree.size() - 1; id >= 0; --id) {
    const auto& n = tree.node(id);
    if (n.op == Op::task) {
      ExcessVector v(num_caps, ExtInt(0));
      for (const auto& [c, need] : leaf_demand(tree, team, id)) {
        std::int64_t have = 0;
        for (AgentIndex j : a.leaf(id)) {
          if (team.agents[j].caps.contains(c)) ++have;
        }
        v[c] = ExtInt(have - need);
      }
      ex[id] = std::move(v);
    } else if (n.op == Op::disj) {
      ex[id] = ex[a.chosen_child(tree, id)];
    } else {
      ExcessVector v(num_caps, ExtInt::pos_inf());
      for (int c : n.children) {
        for (int k = 0; k < num_caps; ++k) v[k] = std::min(v[k], ex[c][k]);
      }
      ex[id] = std::move(v);
    }
  }
  return ex;
}

ExcessVector capability_excess(const SyntaxTree& tree, const Team& team,
                               const Assignment& a, int node) {
  return capability_excess_all(tree, team, a).at(node);
}

bool is_eligible(const SyntaxTree& tree, const Team& team, const Assignment& a) {
  const ExcessVector root = capability_excess(tree, team, a, tree.root());
  return std::all_of(root.begin(), root.end(),
                     [](ExtInt x) { return x >= ExtInt(0); });
}

bool independence(const SyntaxTree& tree, const Assignment& a, int node) {
  const auto& n = tree.node(node);
  if (n.op != Op::until && n.op != Op::conj) {
    throw DomainError("independence is defined for until and conjunction nodes");
  }
  return pairwise_disjoint(node_map(tree, a), n.children);
}

bool root_pair_independence(const SyntaxTree& tree, const Assignment& a,
                            int child_a, int child_b) {
  const auto& root = tree.node(tree.root());
  if (root.op != Op::conj) throw DomainError("root is not a conjunction");
  const int k = static_cast<int>(root.children.size());
  if (child_a < 0 || child_b < 0 || child_a >= k || child_b >= k ||
      child_a == child_b) {
    throw DomainError("invalid root child pair");
  }
  const auto nm = node_map(tree, a);
  return disjoint(nm[root.children[child_a]], nm[root.children[child_b]]);
}

Flags compute_flags(const SyntaxTree& tree, const Team& team,
                    const Assignment& a) {
  Flags f;
  const auto nm = node_map(tree, a);
  const auto ex = capability_excess_all(tree, team, a);
  f.eligible.assign(tree.size(), 0);
  f.independent.assign(tree.size(), 1);
  for (int id = tree.size() - 1; id >= 0; --id) {
    const auto& n = tree.node(id);
    switch (n.op) {
      case Op::task:
        f.eligible[id] = std::all_of(ex[id].begin(), ex[id].end(),
                                     [](ExtInt x) { return x >= ExtInt(0); });
        break;
      case Op::disj:
        f.eligible[id] = f.eligible[a.chosen_child(tree, id)];
        break;
      case Op::eventually:
      case Op::always:
        f.eligible[id] = f.eligible[n.children[0]];
        break;
      case Op::until:
      case Op::conj:
        f.eligible[id] = std::all_of(n.children.begin(), n.children.end(),
                                     [&](int c) { return f.eligible[c] != 0; });
        f.independent[id] = pairwise_disjoint(nm, n.children);
        break;
    }
  }
  inherit_independence(tree, a, f.independent);
  const auto& root = tree.node(tree.root());
  if (root.op == Op::conj) {
    const size_t k = root.children.size();
    f.root_pairwise.assign(k, std::vector<char>(k, 0));
    for (size_t i = 0; i < k; ++i) {
      for (size_t j = i + 1; j < k; ++j) {
        const char v = disjoint(nm[root.children[i]], nm[root.children[j]]);
        f.root_pairwise[i][j] = f.root_pairwise[j][i] = v;
      }
    }
  }
  return f;
}

std::int64_t assignment_cost(const SyntaxTree& tree, const Flags& flags) {
  std::int64_t cost = 0;
  for (int id = 0; id < tree.size(); ++id) {
    if (flags.independent[id]) cost -= weight(tree, tree.node(id).depth);
  }
  const std::int64_t pair_weight = std::int64_t{1} << (tree.max_depth() + 1);
  for (size_t i = 0; i < flags.root_pairwise.size(); ++i) {
    for (size_t j = i + 1; j < flags.root_pairwise.size(); ++j) {
      if (flags.root_pairwise[i][j]) cost -= pair_weight;
    }
  }
  return cost;
}

Assignment induced_assignment(const Environment& env,
                              std::span<const Agent> agents,
                              const TeamTrajectory& team,
                              const SyntaxTree& tree) {
  semantics::CompiledFormula cf(tree.formula(), env);
  const auto counts = semantics::CountTable::from_team(env, agents, team);
  const int H = team.horizon;
  if (cf.horizon() > H) {
    throw DomainError("formula horizon exceeds the trajectory horizon");
  }
  // Times at which each node is inspected, top-down.
  std::vector<std::vector<char>> relevant(tree.size(),
                                          std::vector<char>(H + 1, 0));
  relevant[tree.root()][0] = 1;
  for (int id = 0; id < tree.size(); ++id) {
    const auto& n = tree.node(id);
    for (int t = 0; t <= H; ++t) {
      if (!relevant[id][t]) continue;
      switch (n.op) {
        case Op::task:
          break;
        case Op::conj:
        case Op::disj:
          for (int c : n.children) relevant[c][t] = 1;
          break;
        case Op::eventually:
        case Op::always:
          for (int s = t + n.window.lo; s <= t + n.window.hi && s <= H; ++s) {
            relevant[n.children[0]][s] = 1;
          }
          break;
        case Op::until:
          for (int s = t; s <= t + n.window.hi && s <= H; ++s) {
            relevant[n.children[0]][s] = 1;
            if (s >= t + n.window.lo) relevant[n.children[1]][s] = 1;
          }
          break;
      }
    }
  }
  auto holds = [&](int node, int t) {
    if (t + cf.node(node).horizon > H) return false;
    return semantics::satisfies(cf, counts, t, node);
  };

  Assignment a;
  for (int id = 0; id < tree.size(); ++id) {
    const auto& n = tree.node(id);
    if (n.op == Op::disj) {
      int choice = 0;
      bool found = false;
      for (size_t pos = 0; pos < n.children.size() && !found; ++pos) {
        for (int t = 0; t <= H && !found; ++t) {
          if (relevant[id][t] && holds(n.children[pos], t)) {
            choice = static_cast<int>(pos);
            found = true;
          }
        }
      }
      a.choice_map[id] = choice;
      continue;
    }
    if (n.op != Op::task) continue;
    const auto& cn = cf.node(id);
    CapabilitySet required;
    for (const auto& [c, need] : cn.demand) required.insert(c);
    AgentSet members;
    for (int t = 0; t <= H; ++t) {
      if (!relevant[id][t] || !holds(id, t)) continue;
      for (int tau = t; tau < t + cn.duration; ++tau) {
        for (AgentIndex j = 0; j < static_cast<AgentIndex>(agents.size()); ++j) {
          if (!agents[j].caps.intersects(required)) continue;
          const Trajectory* tr = team.find(agents[j].id);
          if (tr == nullptr || tau > tr->horizon()) continue;
          const Occupancy& o = tr->occupancy[tau];
          if (o.is_state() && std::binary_search(cn.regions.begin(),
                                                 cn.regions.end(), o.index)) {
            members.push_back(j);
          }
        }
      }
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    a.leaf_map[id] = std::move(members);
  }
  return a;
}

namespace {

using Clock = std::chrono::steady_clock;

struct ClassInfo {
  CapabilitySet caps;
  std::vector<AgentIndex> members;
};

// Separation point whose independence a marking may give up: an
// until/conjunction node, or a pair of root-conjunction children.
struct SeparationItem {
  int node = -1;
  int child_a = -1;
  int child_b = -1;
};

class Solver {
 public:
  Solver(const SyntaxTree& tree, const Team& team, const Options& opts)
      : tree_(tree),
        team_(team),
        opts_(opts),
        deadline_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(opts.timeout_s))) {
    const int num_caps = static_cast<int>(team.capabilities.size());
    supply_.assign(num_caps, 0);
    for (AgentIndex j = 0; j < static_cast<AgentIndex>(team.agents.size()); ++j) {
      const CapabilitySet caps = team.agents[j].caps;
      auto it = std::find_if(classes_.begin(), classes_.end(),
                             [&](const ClassInfo& k) { return k.caps == caps; });
      if (it == classes_.end()) {
        classes_.push_back({caps, {}});
        it = classes_.end() - 1;
      }
      it->members.push_back(j);
      for (int c = 0; c < num_caps; ++c) {
        if (caps.contains(c)) ++supply_[c];
      }
    }
    // Specialists before generalists.
    std::sort(classes_.begin(), classes_.end(),
              [](const ClassInfo& a, const ClassInfo& b) {
                if (a.caps.size() != b.caps.size()) {
                  return a.caps.size() < b.caps.size();
                }
                return a.caps.bits() < b.caps.bits();
              });
    demand_.resize(tree.size());
    for (int leaf : tree.leaves()) demand_[leaf] = leaf_demand(tree, team, leaf);
    for (int id = 0; id < tree.size(); ++id) {
      if (tree.node(id).op == Op::disj) disjunctions_.push_back(id);
    }
  }

  Solution run() {
    const auto start = Clock::now();
    Solution sol;
    const std::int64_t lower_bound = all_independent_cost();
    bool have = false;
    Assignment best;
    std::int64_t best_cost = 0;

    std::vector<int> choice(disjunctions_.size(), 0);
    for (;;) {
      if (timed_out()) break;
      Assignment base;
      for (size_t i = 0; i < disjunctions_.size(); ++i) {
        base.choice_map[disjunctions_[i]] = choice[i];
      }
      if (canonical_choice(base)) {
        auto found = solve_for_choice(base, have ? best_cost : 0, have);
        if (found) {
          const Flags f = compute_flags(tree_, team_, *found);
          const std::int64_t cost = assignment_cost(tree_, f);
          if (!have || cost < best_cost) {
            have = true;
            best = std::move(*found);
            best_cost = cost;
          }
          if (best_cost <= lower_bound) break;
        }
      }
      if (!next_choice(choice)) break;
    }

    sol.solve_time_s = std::chrono::duration<double>(Clock::now() - start).count();
    if (have) {
      sol.has_assignment = true;
      sol.assignment = std::move(best);
      sol.flags = compute_flags(tree_, team_, sol.assignment);
      sol.excess = capability_excess_all(tree_, team_, sol.assignment);
      sol.cost = assignment_cost(tree_, sol.flags);
      sol.status = timed_out_ && best_cost > lower_bound ? Status::timeout
                                                         : Status::optimal;
    } else {
      sol.status = timed_out_ ? Status::timeout : Status::infeasible;
      sol.diagnostic = diagnose();
    }
    return sol;
  }

 private:
  bool timed_out() {
    if (!timed_out_ && (++ticks_ & 0xff) == 0 && Clock::now() > deadline_) {
      timed_out_ = true;
    }
    return timed_out_;
  }

  std::int64_t all_independent_cost() const {
    Flags f;
    f.independent.assign(tree_.size(), 1);
    const auto& root = tree_.node(tree_.root());
    if (root.op == Op::conj) {
      const size_t k = root.children.size();
      f.root_pairwise.assign(k, std::vector<char>(k, 1));
    }
    return assignment_cost(tree_, f);
  }

  bool next_choice(std::vector<int>& choice) const {
    for (int i = static_cast<int>(choice.size()) - 1; i >= 0; --i) {
      const int arity = static_cast<int>(tree_.node(disjunctions_[i]).children.size());
      if (++choice[i] < arity) return true;
      choice[i] = 0;
    }
    return false;
  }

  // Choices at disjunctions outside the active subtree stay at 0 so each
  // distinct active structure is visited once.
  bool canonical_choice(const Assignment& a) const {
    std::vector<char> active(tree_.size(), 0);
    mark_active(a, tree_.root(), active);
    for (int d : disjunctions_) {
      if (!active[d] && a.choice_map.at(d) != 0) return false;
    }
    return true;
  }

  void mark_active(const Assignment& a, int node, std::vector<char>& active) const {
    active[node] = 1;
    const auto& n = tree_.node(node);
    if (n.op == Op::disj) {
      mark_active(a, a.chosen_child(tree_, node), active);
      return;
    }
    for (int c : n.children) mark_active(a, c, active);
  }

  std::vector<int> active_leaves(const Assignment& a) const {
    std::vector<char> active(tree_.size(), 0);
    mark_active(a, tree_.root(), active);
    std::vector<int> out;
    for (int leaf : tree_.leaves()) {
      if (active[leaf]) out.push_back(leaf);
    }
    return out;
  }

  std::optional<Assignment> solve_for_choice(const Assignment& base,
                                             std::int64_t incumbent,
                                             bool have_incumbent) {
    const auto leaves = active_leaves(base);
    std::vector<std::vector<int>> alloc(leaves.size(),
                                        std::vector<int>(classes_.size(), 0));
    std::vector<int> remaining(classes_.size());
    for (size_t k = 0; k < classes_.size(); ++k) {
      remaining[k] = static_cast<int>(classes_[k].members.size());
    }
    if (allocate_disjoint(leaves, 0, remaining, alloc)) {
      return materialize_disjoint(base, leaves, alloc);
    }
    if (!opts_.allow_overlap || timed_out_) return std::nullopt;
    return solve_with_overlap(base, leaves, incumbent, have_incumbent);
  }

  // Each agent on at most one leaf: per-leaf minimal covers by class counts.
  bool allocate_disjoint(const std::vector<int>& leaves, size_t li,
                         std::vector<int>& remaining,
                         std::vector<std::vector<int>>& alloc) {
    if (li == leaves.size()) return true;
    if (timed_out()) return false;
    const int num_caps = static_cast<int>(supply_.size());
    std::vector<int> need_total(num_caps, 0);
    for (size_t l = li; l < leaves.size(); ++l) {
      for (const auto& [c, n] : demand_[leaves[l]]) need_total[c] += n;
    }
    for (int c = 0; c < num_caps; ++c) {
      int have = 0;
      for (size_t k = 0; k < classes_.size(); ++k) {
        if (classes_[k].caps.contains(c)) have += remaining[k];
      }
      if (need_total[c] > have) return false;
    }
    std::vector<int> residual(num_caps, 0);
    for (const auto& [c, n] : demand_[leaves[li]]) residual[c] = n;
    std::vector<int> cover(classes_.size(), 0);
    return enumerate_covers(leaves, li, 0, residual, cover, remaining, alloc);
  }

  bool enumerate_covers(const std::vector<int>& leaves, size_t li, size_t k,
                        std::vector<int>& residual, std::vector<int>& cover,
                        std::vector<int>& remaining,
                        std::vector<std::vector<int>>& alloc) {
    const int num_caps = static_cast<int>(residual.size());
    if (k == classes_.size()) {
      for (int c = 0; c < num_caps; ++c) {
        if (residual[c] > 0) return false;
      }
      // Minimal: dropping any chosen agent must break the cover.
      for (size_t i = 0; i < classes_.size(); ++i) {
        if (cover[i] == 0) continue;
        bool needed = false;
        for (int c = 0; c < num_caps && !needed; ++c) {
          needed = classes_[i].caps.contains(c) && residual[c] == 0 &&
                   required(leaves[li], c);
        }
        if (!needed) return false;
      }
      for (size_t i = 0; i < classes_.size(); ++i) remaining[i] -= cover[i];
      alloc[li] = cover;
      const bool ok = allocate_disjoint(leaves, li + 1, remaining, alloc);
      for (size_t i = 0; i < classes_.size(); ++i) remaining[i] += cover[i];
      return ok;
    }
    // Remaining classes must be able to close the residual.
    for (int c = 0; c < num_caps; ++c) {
      if (residual[c] <= 0) continue;
      int have = 0;
      for (size_t i = k; i < classes_.size(); ++i) {
        if (classes_[i].caps.contains(c)) have += remaining[i];
      }
      if (have < residual[c]) return false;
    }
    int useful = 0;
    for (int c = 0; c < num_caps; ++c) {
      if (classes_[k].caps.contains(c)) useful = std::max(useful, residual[c]);
    }
    const int top = std::min(useful, remaining[k]);
    for (int x = top; x >= 0; --x) {
      if (timed_out()) return false;
      cover[k] = x;
      for (int c = 0; c < num_caps; ++c) {
        if (classes_[k].caps.contains(c)) residual[c] -= x;
      }
      const bool ok = enumerate_covers(leaves, li, k + 1, residual, cover,
                                       remaining, alloc);
      for (int c = 0; c < num_caps; ++c) {
        if (classes_[k].caps.contains(c)) residual[c] += x;
      }
      cover[k] = 0;
      if (ok) return true;
    }
    return false;
  }

  bool required(int leaf, CapIndex c) const {
    for (const auto& [cap, n] : demand_[leaf]) {
      if (cap == c) return true;
    }
    return false;
  }

  Assignment materialize_disjoint(const Assignment& base,
                                  const std::vector<int>& leaves,
                                  const std::vector<std::vector<int>>& alloc) {
    Assignment a = base;
    std::vector<size_t> next(classes_.size(), 0);
    for (size_t li = 0; li < leaves.size(); ++li) {
      AgentSet& set = a.leaf_map[leaves[li]];
      for (size_t k = 0; k < classes_.size(); ++k) {
        for (int x = 0; x < alloc[li][k]; ++x) {
          set.push_back(classes_[k].members[next[k]++]);
        }
      }
      std::sort(set.begin(), set.end());
    }
    distribute_spares(a, leaves);
    return a;
  }

  void distribute_spares(Assignment& a, const std::vector<int>& leaves) const {
    if (!opts_.distribute_spares) return;
    std::vector<char> used(team_.agents.size(), 0);
    for (const auto& [leaf, set] : a.leaf_map) {
      for (AgentIndex j : set) used[j] = 1;
    }
    for (AgentIndex j = 0; j < static_cast<AgentIndex>(team_.agents.size()); ++j) {
      if (used[j]) continue;
      int target = -1;
      size_t fewest = 0;
      for (int leaf : leaves) {
        bool wants = false;
        for (const auto& [c, n] : demand_[leaf]) {
          wants = wants || team_.agents[j].caps.contains(c);
        }
        if (!wants) continue;
        const size_t sz = a.leaf(leaf).size();
        if (target < 0 || sz < fewest) {
          target = leaf;
          fewest = sz;
        }
      }
      if (target >= 0) {
        AgentSet& set = a.leaf_map[target];
        set.insert(std::upper_bound(set.begin(), set.end(), j), j);
      }
    }
  }

  // --- overlap mode ---------------------------------------------------------

  std::vector<SeparationItem> separation_items(const Assignment& base) const {
    std::vector<char> active(tree_.size(), 0);
    mark_active(base, tree_.root(), active);
    std::vector<SeparationItem> items;
    const auto& root = tree_.node(tree_.root());
    for (int id = 0; id < tree_.size(); ++id) {
      const auto& n = tree_.node(id);
      if (!active[id] || (n.op != Op::conj && n.op != Op::until)) continue;
      if (id == tree_.root() && n.op == Op::conj) {
        for (size_t i = 0; i < root.children.size(); ++i) {
          for (size_t j = i + 1; j < root.children.size(); ++j) {
            items.push_back({id, static_cast<int>(i), static_cast<int>(j)});
          }
        }
      } else {
        items.push_back({id, -1, -1});
      }
    }
    return items;
  }

  std::int64_t marking_cost(const Assignment& base,
                            const std::vector<SeparationItem>& items,
                            std::uint32_t mask) const {
    Flags f;
    f.independent.assign(tree_.size(), 1);
    const auto& root = tree_.node(tree_.root());
    if (root.op == Op::conj) {
      const size_t k = root.children.size();
      f.root_pairwise.assign(k, std::vector<char>(k, 1));
    }
    for (size_t i = 0; i < items.size(); ++i) {
      if (!(mask >> i & 1U)) continue;
      const auto& it = items[i];
      f.independent[it.node] = 0;
      if (it.child_a >= 0) {
        f.root_pairwise[it.child_a][it.child_b] = 0;
        f.root_pairwise[it.child_b][it.child_a] = 0;
      }
    }
    inherit_independence(tree_, base, f.independent);
    return assignment_cost(tree_, f);
  }

  int root_child_of(int node) const {
    while (tree_.node(node).parent != tree_.root()) node = tree_.node(node).parent;
    const auto& kids = tree_.node(tree_.root()).children;
    return static_cast<int>(std::find(kids.begin(), kids.end(), node) - kids.begin());
  }

  int lca(int a, int b) const {
    while (tree_.node(a).depth > tree_.node(b).depth) a = tree_.node(a).parent;
    while (tree_.node(b).depth > tree_.node(a).depth) b = tree_.node(b).parent;
    while (a != b) {
      a = tree_.node(a).parent;
      b = tree_.node(b).parent;
    }
    return a;
  }

  bool may_share(int la, int lb, const std::vector<SeparationItem>& items,
                 std::uint32_t mask) const {
    const int v = lca(la, lb);
    const bool root_pairs = v == tree_.root() && tree_.node(v).op == Op::conj;
    int ca = -1, cb = -1;
    if (root_pairs) {
      ca = root_child_of(la);
      cb = root_child_of(lb);
      if (ca > cb) std::swap(ca, cb);
    }
    for (size_t i = 0; i < items.size(); ++i) {
      if (!(mask >> i & 1U) || items[i].node != v) continue;
      if (!root_pairs || (items[i].child_a == ca && items[i].child_b == cb)) {
        return true;
      }
    }
    return false;
  }

  static void bron_kerbosch(const std::vector<std::vector<char>>& adj,
                            std::vector<int> r, std::vector<int> p,
                            std::vector<int> x,
                            std::vector<std::vector<int>>& out) {
    if (p.empty() && x.empty()) {
      std::sort(r.begin(), r.end());
      out.push_back(r);
      return;
    }
    while (!p.empty()) {
      const int v = p.front();
      std::vector<int> np, nx;
      for (int u : p) {
        if (adj[v][u]) np.push_back(u);
      }
      for (int u : x) {
        if (adj[v][u]) nx.push_back(u);
      }
      auto nr = r;
      nr.push_back(v);
      bron_kerbosch(adj, nr, np, nx, out);
      p.erase(p.begin());
      x.push_back(v);
    }
  }

  struct PatternVar {
    size_t cls;
    std::vector<int> leaves;  // positions into the active leaf list
  };

  std::optional<Assignment> solve_with_overlap(const Assignment& base,
                                               const std::vector<int>& leaves,
                                               std::int64_t incumbent,
                                               bool have_incumbent) {
    const auto items = separation_items(base);
    std::vector<std::uint32_t> masks;
    if (items.size() <= 16) {
      for (std::uint32_t m = 0; m < (1U << items.size()); ++m) masks.push_back(m);
    } else {
      // Too many separation points to enumerate; only the extremes.
      masks = {0U, 0xffffffffU};
    }
    std::vector<std::pair<std::int64_t, std::uint32_t>> order;
    for (auto m : masks) order.emplace_back(marking_cost(base, items, m), m);
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [cost, mask] : order) {
      if (timed_out()) return std::nullopt;
      if (have_incumbent && cost >= incumbent) return std::nullopt;
      auto found = overlap_feasible(base, leaves, items, mask);
      if (found) return found;
    }
    return std::nullopt;
  }

  std::optional<Assignment> overlap_feasible(
      const Assignment& base, const std::vector<int>& leaves,
      const std::vector<SeparationItem>& items, std::uint32_t mask) {
    const int nl = static_cast<int>(leaves.size());
    std::vector<std::vector<char>> adj(nl, std::vector<char>(nl, 0));
    for (int a = 0; a < nl; ++a) {
      for (int b = a + 1; b < nl; ++b) {
        adj[a][b] = adj[b][a] = may_share(leaves[a], leaves[b], items, mask);
      }
    }
    std::vector<int> all(nl);
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::vector<int>> cliques;
    bron_kerbosch(adj, {}, all, {}, cliques);
    std::sort(cliques.begin(), cliques.end());

    std::vector<PatternVar> vars;
    for (size_t k = 0; k < classes_.size(); ++k) {
      for (const auto& cl : cliques) {
        bool useful = false;
        for (int li : cl) {
          for (const auto& [c, n] : demand_[leaves[li]]) {
            useful = useful || classes_[k].caps.contains(c);
          }
        }
        if (useful) vars.push_back({k, cl});
      }
    }
    const int num_caps = static_cast<int>(supply_.size());
    std::vector<std::vector<int>> residual(nl, std::vector<int>(num_caps, 0));
    for (int li = 0; li < nl; ++li) {
      for (const auto& [c, n] : demand_[leaves[li]]) residual[li][c] = n;
    }
    std::vector<int> remaining(classes_.size());
    for (size_t k = 0; k < classes_.size(); ++k) {
      remaining[k] = static_cast<int>(classes_[k].members.size());
    }
    std::vector<int> counts(vars.size(), 0);
    if (!pattern_dfs(vars, 0, residual, remaining, counts)) return std::nullopt;

    Assignment a = base;
    std::vector<size_t> next(classes_.size(), 0);
    for (size_t v = 0; v < vars.size(); ++v) {
      for (int x = 0; x < counts[v]; ++x) {
        const AgentIndex j = classes_[vars[v].cls].members[next[vars[v].cls]++];
        for (int li : vars[v].leaves) a.leaf_map[leaves[li]].push_back(j);
      }
    }
    for (int leaf : leaves) std::sort(a.leaf_map[leaf].begin(), a.leaf_map[leaf].end());
    drop_redundant_memberships(a, leaves);
    distribute_spares(a, leaves);
    return a;
  }

  bool pattern_dfs(const std::vector<PatternVar>& vars, size_t vi,
                   std::vector<std::vector<int>>& residual,
                   std::vector<int>& remaining, std::vector<int>& counts) {
    const int nl = static_cast<int>(residual.size());
    const int num_caps = static_cast<int>(supply_.size());
    bool done = true;
    for (int li = 0; li < nl && done; ++li) {
      for (int c = 0; c < num_caps && done; ++c) done = residual[li][c] <= 0;
    }
    if (done) return true;
    if (vi == vars.size() || timed_out()) return false;
    // Optimistic coverage from the variables not yet fixed.
    for (int li = 0; li < nl; ++li) {
      for (int c = 0; c < num_caps; ++c) {
        if (residual[li][c] <= 0) continue;
        std::vector<char> seen(classes_.size(), 0);
        int can = 0;
        for (size_t w = vi; w < vars.size(); ++w) {
          const size_t k = vars[w].cls;
          if (seen[k] || !classes_[k].caps.contains(c)) continue;
          if (std::find(vars[w].leaves.begin(), vars[w].leaves.end(), li) ==
              vars[w].leaves.end()) {
            continue;
          }
          seen[k] = 1;
          can += remaining[k];
        }
        if (can < residual[li][c]) return false;
      }
    }
    const PatternVar& v = vars[vi];
    int useful = 0;
    for (int li : v.leaves) {
      for (int c = 0; c < num_caps; ++c) {
        if (classes_[v.cls].caps.contains(c)) useful = std::max(useful, residual[li][c]);
      }
    }
    const int top = std::min(useful, remaining[v.cls]);
    for (int x = top; x >= 0; --x) {
      counts[vi] = x;
      remaining[v.cls] -= x;
      for (int li : v.leaves) {
        for (int c = 0; c < num_caps; ++c) {
          if (classes_[v.cls].caps.contains(c)) residual[li][c] -= x;
        }
      }
      const bool ok = pattern_dfs(vars, vi + 1, residual, remaining, counts);
      remaining[v.cls] += x;
      for (int li : v.leaves) {
        for (int c = 0; c < num_caps; ++c) {
          if (classes_[v.cls].caps.contains(c)) residual[li][c] += x;
        }
      }
      if (ok) return true;
      counts[vi] = 0;
    }
    return false;
  }

  // Removes shared agents from leaves that stay covered without them.
  void drop_redundant_memberships(Assignment& a, const std::vector<int>& leaves) const {
    std::vector<int> memberships(team_.agents.size(), 0);
    for (int leaf : leaves) {
      for (AgentIndex j : a.leaf(leaf)) ++memberships[j];
    }
    for (int leaf : leaves) {
      AgentSet& set = a.leaf_map[leaf];
      for (auto it = set.end(); it != set.begin();) {
        --it;
        const AgentIndex j = *it;
        if (memberships[j] < 2) continue;
        bool needed = false;
        for (const auto& [c, n] : demand_[leaf]) {
          if (!team_.agents[j].caps.contains(c)) continue;
          int have = 0;
          for (AgentIndex o : set) have += team_.agents[o].caps.contains(c) ? 1 : 0;
          needed = needed || have <= n;
        }
        if (!needed) {
          --memberships[j];
          it = set.erase(it);
        }
      }
    }
  }

  std::string diagnose() const {
    std::ostringstream os;
    bool any = false;
    for (int leaf : tree_.leaves()) {
      for (const auto& [c, n] : demand_[leaf]) {
        if (supply_[c] < n) {
          if (any) os << "; ";
          any = true;
          os << tree_.node_name(leaf) << " needs " << n << " x "
             << team_.capabilities[c] << ", team has " << supply_[c];
        }
      }
    }
    if (timed_out_) return "search timed out before finding an eligible assignment";
    if (!any) {
      os << "combined demand of the selected tasks exceeds the team's "
            "capability supply";
    }
    return os.str();
  }

  const SyntaxTree& tree_;
  Team team_;
  Options opts_;
  Clock::time_point deadline_;
  std::vector<ClassInfo> classes_;
  std::vector<int> supply_;
  std::vector<Demand> demand_;
  std::vector<int> disjunctions_;
  std::uint64_t ticks_ = 0;
  bool timed_out_ = false;
};

}  // namespace

Solution solve_assignment(const SyntaxTree& tree, const Team& team,
                          const Options& options) {
  Solver solver(tree, team, options);
  return solver.run();
}

}  // namespace catl::assign
