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

#include "core/transform.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "core/errors.hpp"

namespace catl::transform {

namespace {

RewriteNode copy_node(const SyntaxTree& tree, const assign::Assignment& a,
                      int id) {
  const auto& n = tree.node(id);
  RewriteNode r;
  r.id = id;
  r.op = n.op;
  r.window = n.window;
  if (n.op == Op::task) {
    r.task = tree.task(id);
    r.agents = a.leaf(id);
  }
  for (int c : n.children) r.children.push_back(copy_node(tree, a, c));
  return r;
}

const RewriteNode* find_in(const RewriteNode& n, int id) {
  if (n.id == id) return &n;
  for (const auto& c : n.children) {
    if (const RewriteNode* hit = find_in(c, id)) return hit;
  }
  return nullptr;
}

void collect_agents(const RewriteNode& n, assign::AgentSet& out) {
  if (n.op == Op::task) {
    out.insert(out.end(), n.agents.begin(), n.agents.end());
    return;
  }
  for (const auto& c : n.children) collect_agents(c, out);
}

void collect_leaf_ids(const RewriteNode& n, std::vector<int>& out) {
  if (n.op == Op::task) {
    out.push_back(n.id);
    return;
  }
  for (const auto& c : n.children) collect_leaf_ids(c, out);
}

bool is_temporal(Op op) { return op == Op::eventually || op == Op::always; }

RewriteNode make_node(int id, Op op, Interval w, std::vector<RewriteNode> kids) {
  RewriteNode n;
  n.id = id;
  n.op = op;
  n.window = w;
  n.children = std::move(kids);
  return n;
}

// Descends the F/G chain starting at `top`; returns the conjunction at its
// end or nullptr.
RewriteNode* chain_target(RewriteNode& top) {
  RewriteNode* cur = &top;
  while (is_temporal(cur->op)) cur = &cur->children[0];
  return cur != &top && cur->op == Op::conj ? cur : nullptr;
}

RewriteNode hoist(RewriteTree& tree, RewriteNode& top) {
  std::vector<Interval> chain;
  RewriteNode* cur = &top;
  while (is_temporal(cur->op)) {
    chain.push_back(cur->window);
    cur = &cur->children[0];
  }
  RewriteNode conj = make_node(cur->id, Op::conj, {}, {});
  for (auto& child : cur->children) {
    RewriteNode wrapped = std::move(child);
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      wrapped = make_node(tree.fresh_id(), Op::always, *it, {std::move(wrapped)});
    }
    conj.children.push_back(std::move(wrapped));
  }
  return conj;
}

RewriteNode substitute(RewriteTree& tree, RewriteNode& u) {
  const Interval w = u.window;
  RewriteNode g = make_node(tree.fresh_id(), Op::always, {0, w.hi},
                            {std::move(u.children[0])});
  RewriteNode f = make_node(tree.fresh_id(), Op::eventually, w,
                            {std::move(u.children[1])});
  return make_node(u.id, Op::conj, {}, {std::move(g), std::move(f)});
}

// One post-order pass of the substitution rules. Returns true if anything
// changed.
bool rewrite_pass(RewriteTree& tree, RewriteNode& n, bool is_root,
                  bool parent_temporal) {
  bool changed = false;
  for (auto& c : n.children) {
    changed |= rewrite_pass(tree, c, false, is_temporal(n.op));
  }
  if (n.op == Op::until && independent(n)) {
    const std::string before = format_formula(to_formula(n));
    n = substitute(tree, n);
    tree.record("substitute_until", n.id, before, format_formula(to_formula(n)));
    changed = true;
  } else if (is_temporal(n.op) && !parent_temporal) {
    RewriteNode* target = chain_target(n);
    if (target != nullptr && independent(*target)) {
      const std::string before = format_formula(to_formula(n));
      const int at = target->id;
      n = hoist(tree, n);
      tree.record("distribute_temporal_over_conjunction", at, before,
                  format_formula(to_formula(n)));
      changed = true;
    }
  }
  if (is_root && n.op == Op::conj) {
    std::vector<RewriteNode> flat;
    bool merged = false;
    for (auto& c : n.children) {
      if (c.op == Op::conj) {
        merged = true;
        for (auto& g : c.children) flat.push_back(std::move(g));
      } else {
        flat.push_back(std::move(c));
      }
    }
    n.children = std::move(flat);
    changed |= merged;
  }
  return changed;
}

RewriteNode prune(const RewriteNode& n, const assign::Assignment& a,
                  RewriteTree& tree) {
  if (n.op == Op::disj) {
    auto it = a.choice_map.find(n.id);
    const int pos = it == a.choice_map.end() ? 0 : it->second;
    if (pos < 0 || pos >= static_cast<int>(n.children.size())) {
      throw DomainError("disjunction choice out of range");
    }
    RewriteNode kept = prune(n.children[pos], a, tree);
    tree.record("prune_disjunction", n.id, format_formula(to_formula(n)),
                format_formula(to_formula(kept)));
    return kept;
  }
  RewriteNode r = n;
  r.children.clear();
  for (const auto& c : n.children) r.children.push_back(prune(c, a, tree));
  return r;
}

}  // namespace

RewriteTree RewriteTree::from_assignment(const SyntaxTree& tree,
                                         const assign::Assignment& a) {
  return RewriteTree(copy_node(tree, a, tree.root()), tree.size());
}

RewriteTree::RewriteTree(RewriteNode root, int next_id)
    : root_(std::move(root)), next_id_(next_id) {}

Formula RewriteTree::formula() const { return to_formula(root_); }

std::string RewriteTree::text() const { return format_formula(formula()); }

const RewriteNode* RewriteTree::find(int id) const { return find_in(root_, id); }

RewriteNode* RewriteTree::find_mutable(int id) {
  return const_cast<RewriteNode*>(find_in(root_, id));
}

void RewriteTree::record(std::string rule, int node, std::string before,
                         std::string after) {
  log_.push_back({std::move(rule), node, std::move(before), std::move(after)});
}

Formula to_formula(const RewriteNode& n) {
  Formula f;
  f.op = n.op;
  f.window = n.window;
  if (n.op == Op::task) f.task = n.task;
  for (const auto& c : n.children) f.children.push_back(to_formula(c));
  return f;
}

assign::AgentSet agents_of(const RewriteNode& n) {
  assign::AgentSet out;
  collect_agents(n, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool independent(const RewriteNode& n) {
  std::vector<assign::AgentSet> sets;
  for (const auto& c : n.children) sets.push_back(agents_of(c));
  for (size_t i = 0; i < sets.size(); ++i) {
    for (size_t j = i + 1; j < sets.size(); ++j) {
      std::vector<AgentIndex> common;
      std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(),
                            sets[j].end(), std::back_inserter(common));
      if (!common.empty()) return false;
    }
  }
  return true;
}

RewriteTree prune_disjunctions(RewriteTree tree, const assign::Assignment& a) {
  RewriteNode pruned = prune(tree.root(), a, tree);
  tree.mutable_root() = std::move(pruned);
  return tree;
}

RewriteTree substitute_until(RewriteTree tree, int node) {
  RewriteNode* n = tree.find_mutable(node);
  if (n == nullptr || n->op != Op::until) {
    throw RuleNotApplicable("node " + std::to_string(node) + " is not an until");
  }
  if (!independent(*n)) {
    throw RuleNotApplicable("until operands share agents");
  }
  const std::string before = format_formula(to_formula(*n));
  *n = substitute(tree, *n);
  tree.record("substitute_until", node, before, format_formula(to_formula(*n)));
  return tree;
}

RewriteTree distribute_temporal_over_conjunction(RewriteTree tree, int node) {
  const RewriteNode* target = tree.find(node);
  if (target == nullptr || target->op != Op::conj) {
    throw RuleNotApplicable("node " + std::to_string(node) +
                            " is not a conjunction");
  }
  if (!independent(*target)) {
    throw RuleNotApplicable("conjuncts share agents");
  }
  // Walk up from the conjunction while the parent is F or G.
  std::vector<RewriteNode*> path{&tree.mutable_root()};
  while (path.back()->id != node) {
    RewriteNode* next = nullptr;
    for (auto& c : path.back()->children) {
      if (find_in(c, node) != nullptr) next = &c;
    }
    path.push_back(next);
  }
  size_t top = path.size() - 1;
  while (top > 0 && is_temporal(path[top - 1]->op)) --top;
  if (top == path.size() - 1) {
    throw RuleNotApplicable("no eventually/always chain above the conjunction");
  }
  RewriteNode& chain_top = *path[top];
  const std::string before = format_formula(to_formula(chain_top));
  chain_top = hoist(tree, chain_top);
  tree.record("distribute_temporal_over_conjunction", node, before,
              format_formula(to_formula(chain_top)));
  return tree;
}

std::vector<RewriteTree> parallelize(const RewriteTree& tree) {
  const RewriteNode& root = tree.root();
  if (root.op != Op::conj) return {tree};
  const size_t k = root.children.size();
  std::vector<assign::AgentSet> sets;
  for (const auto& c : root.children) sets.push_back(agents_of(c));
  std::vector<size_t> parent(k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = i + 1; j < k; ++j) {
      std::vector<AgentIndex> common;
      std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(),
                            sets[j].end(), std::back_inserter(common));
      if (!common.empty()) parent[find(j)] = find(i);
    }
  }
  std::vector<std::vector<size_t>> clusters;
  std::vector<int> cluster_of(k, -1);
  for (size_t i = 0; i < k; ++i) {
    const size_t r = find(i);
    if (cluster_of[r] < 0) {
      cluster_of[r] = static_cast<int>(clusters.size());
      clusters.emplace_back();
    }
    clusters[cluster_of[r]].push_back(i);
  }
  if (clusters.size() == 1) return {tree};
  std::vector<RewriteTree> out;
  int next = tree.next_id();
  for (const auto& cl : clusters) {
    RewriteNode r;
    if (cl.size() == 1) {
      r = root.children[cl[0]];
    } else {
      r = make_node(next++, Op::conj, {}, {});
      for (size_t i : cl) r.children.push_back(root.children[i]);
    }
    out.emplace_back(std::move(r), tree.next_id() + static_cast<int>(clusters.size()));
  }
  return out;
}

Decomposition decompose(const SyntaxTree& tree, const assign::Assignment& a,
                        int num_agents, const Options& options) {
  RewriteTree rt = RewriteTree::from_assignment(tree, a);
  if (!options.keep_disjunctions) rt = prune_disjunctions(std::move(rt), a);
  while (rewrite_pass(rt, rt.mutable_root(), true, false)) {
  }
  Decomposition d;
  d.log = rt.log();
  const auto pieces = parallelize(rt);
  if (pieces.size() > 1) {
    d.log.push_back({"parallelize", rt.root().id, rt.text(),
                     std::to_string(pieces.size()) + " subformulas"});
  }
  std::vector<char> used(num_agents, 0);
  for (const auto& p : pieces) {
    Subproblem s;
    s.formula = p.formula();
    s.agents = agents_of(p.root());
    collect_leaf_ids(p.root(), s.leaf_ids);
    for (AgentIndex j : s.agents) used.at(j) = 1;
    d.parts.push_back(std::move(s));
  }
  for (AgentIndex j = 0; j < num_agents; ++j) {
    if (!used[j]) d.idle.push_back(j);
  }
  return d;
}

}  // namespace catl::transform
