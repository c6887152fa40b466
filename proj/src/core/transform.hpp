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

#ifndef CATL_CORE_TRANSFORM_HPP_
#define CATL_CORE_TRANSFORM_HPP_

#include <span>
#include <string>
#include <vector>

#include "core/assign.hpp"
#include "core/formula.hpp"
#include "core/model.hpp"

namespace catl::transform {

// Formula node annotated for rewriting. Nodes carried over from the input
// syntax tree keep its ids; nodes created by a rule get fresh ones.
struct RewriteNode {
  int id = 0;
  Op op = Op::task;
  Interval window;
  Task task;
  std::vector<RewriteNode> children;
  assign::AgentSet agents;  // leaves only
};

struct RewriteStep {
  std::string rule;
  int node = 0;
  std::string before;
  std::string after;
};

class RewriteTree {
 public:
  // Copies `tree` with leaf agent sets taken from `a`.
  static RewriteTree from_assignment(const SyntaxTree& tree,
                                     const assign::Assignment& a);
  RewriteTree(RewriteNode root, int next_id);

  const RewriteNode& root() const { return root_; }
  RewriteNode& mutable_root() { return root_; }
  Formula formula() const;
  std::string text() const;

  // nullptr when no node carries `id`.
  const RewriteNode* find(int id) const;
  RewriteNode* find_mutable(int id);

  int fresh_id() { return next_id_++; }
  int next_id() const { return next_id_; }

  const std::vector<RewriteStep>& log() const { return log_; }
  void record(std::string rule, int node, std::string before, std::string after);

 private:
  RewriteNode root_;
  int next_id_ = 0;
  std::vector<RewriteStep> log_;
};

Formula to_formula(const RewriteNode& n);

// Union of leaf agent sets below n.
assign::AgentSet agents_of(const RewriteNode& n);
// Children of an until/conjunction node have pairwise disjoint agent sets.
bool independent(const RewriteNode& n);

// Replaces every disjunction by its chosen child (choices keyed by the
// original node ids).
RewriteTree prune_disjunctions(RewriteTree tree, const assign::Assignment& a);

// phi1 U[a,b] phi2 -> (G[0,b] phi1) && (F[a,b] phi2). Throws
// RuleNotApplicable unless `node` is an independent until node.
RewriteTree substitute_until(RewriteTree tree, int node);

// Hoists an independent conjunction above the maximal F/G chain directly
// over it; every conjunct receives the chain rewritten as G operators with
// the same bounds. Throws RuleNotApplicable when `node` is not such a
// conjunction or the chain is empty.
RewriteTree distribute_temporal_over_conjunction(RewriteTree tree, int node);

// Splits a root conjunction into connected components of the agent-overlap
// graph over its children. Other roots come back as a single tree.
std::vector<RewriteTree> parallelize(const RewriteTree& tree);

struct Subproblem {
  Formula formula;
  std::vector<AgentIndex> agents;  // ascending
  std::vector<int> leaf_ids;       // original leaf ids in the subformula
};

struct Decomposition {
  std::vector<Subproblem> parts;
  std::vector<AgentIndex> idle;
  std::vector<RewriteStep> log;
};

struct Options {
  bool keep_disjunctions = false;
};

Decomposition decompose(const SyntaxTree& tree, const assign::Assignment& a,
                        int num_agents, const Options& options = {});

}  // namespace catl::transform

#endif  // CATL_CORE_TRANSFORM_HPP_
