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

#ifndef CATL_CORE_FORMULA_HPP_
#define CATL_CORE_FORMULA_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace catl {

enum class Op : std::uint8_t { task, conj, disj, until, eventually, always };

const char* op_name(Op op);

struct Interval {
  int lo = 0;
  int hi = 0;
  bool operator==(const Interval&) const = default;
};

// (d, pi, cp). Capabilities absent from `counts` are not required.
struct Task {
  int duration = 1;
  std::string proposition;
  std::map<std::string, int> counts;

  bool operator==(const Task&) const = default;
};

struct Formula {
  Op op = Op::task;
  Interval window;  // temporal operators only
  Task task;        // Op::task only
  std::vector<Formula> children;

  static Formula make_task(int duration, std::string proposition,
                           std::map<std::string, int> counts);
  static Formula conj(std::vector<Formula> children);
  static Formula disj(std::vector<Formula> children);
  static Formula until(Interval w, Formula lhs, Formula rhs);
  static Formula eventually(Interval w, Formula child);
  static Formula always(Interval w, Formula child);

  bool operator==(const Formula&) const = default;
};

// Names a parse or validation is checked against. Empty spans skip the check.
struct Vocabulary {
  std::span<const std::string> propositions;
  std::span<const std::string> capabilities;
};

// Throws ParseError on syntax errors, unknown names and inverted intervals.
// Root-level conjunction chains are flattened to one N-ary node.
Formula parse_formula(std::string_view text, const Vocabulary& vocab = {});

std::string format_formula(const Formula& f);

// Throws ValidationError when a structural invariant fails.
void validate_formula(const Formula& f, const Vocabulary& vocab = {});

int horizon(const Formula& f);

// Tasks in left-to-right order.
std::vector<const Task*> tasks_of(const Formula& f);

// Merges directly nested conjunctions under a conjunction root.
Formula flatten_root_conjunction(Formula f);

// Indexed view of a formula: pre-order node ids, parent map, leaves, depth.
class SyntaxTree {
 public:
  struct Node {
    int id = 0;
    Op op = Op::task;
    Interval window;
    int parent = -1;
    std::vector<int> children;
    int depth = 0;
    int leaf_index = -1;  // position among leaves, tasks only
    const Formula* formula = nullptr;
  };

  explicit SyntaxTree(Formula f);

  int size() const { return static_cast<int>(nodes_.size()); }
  int root() const { return 0; }
  const Node& node(int id) const { return nodes_.at(id); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<int>& leaves() const { return leaves_; }
  int max_depth() const { return max_depth_; }
  const Formula& formula() const { return *formula_; }
  const Formula& subformula(int id) const { return *nodes_.at(id).formula; }
  const Task& task(int id) const { return nodes_.at(id).formula->task; }
  // "T1", "T2", ... for leaves in left-to-right order; "v<id>" otherwise.
  std::string node_name(int id) const;

 private:
  int add(const Formula& f, int parent, int depth);

  std::shared_ptr<const Formula> formula_;
  std::vector<Node> nodes_;
  std::vector<int> leaves_;
  int max_depth_ = 0;
};

}  // namespace catl

#endif  // CATL_CORE_FORMULA_HPP_
