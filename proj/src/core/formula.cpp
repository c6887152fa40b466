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

#include "core/formula.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "core/errors.hpp"

namespace catl {

const char* op_name(Op op) {
  switch (op) {
    case Op::task: return "task";
    case Op::conj: return "and";
    case Op::disj: return "or";
    case Op::until: return "until";
    case Op::eventually: return "eventually";
    case Op::always: return "always";
  }
  return "?";
}

Formula Formula::make_task(int duration, std::string proposition,
                           std::map<std::string, int> counts) {
  Formula f;
  f.op = Op::task;
  f.task = Task{duration, std::move(proposition), std::move(counts)};
  return f;
}

Formula Formula::conj(std::vector<Formula> children) {
  Formula f;
  f.op = Op::conj;
  f.children = std::move(children);
  return f;
}

Formula Formula::disj(std::vector<Formula> children) {
  Formula f;
  f.op = Op::disj;
  f.children = std::move(children);
  return f;
}

Formula Formula::until(Interval w, Formula lhs, Formula rhs) {
  Formula f;
  f.op = Op::until;
  f.window = w;
  f.children.push_back(std::move(lhs));
  f.children.push_back(std::move(rhs));
  return f;
}

Formula Formula::eventually(Interval w, Formula child) {
  Formula f;
  f.op = Op::eventually;
  f.window = w;
  f.children.push_back(std::move(child));
  return f;
}

Formula Formula::always(Interval w, Formula child) {
  Formula f;
  f.op = Op::always;
  f.window = w;
  f.children.push_back(std::move(child));
  return f;
}

namespace {

bool contains(std::span<const std::string> names, std::string_view n) {
  return std::find(names.begin(), names.end(), n) != names.end();
}

enum class Tok {
  ident, integer, lparen, rparen, lbracket, rbracket, lbrace, rbrace,
  comma, colon, and_, or_, end
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      const int l = line_, c = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::end, "", l, c});
        return out;
      }
      const char ch = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        size_t start = pos_;
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                src_[pos_] == '_')) {
          advance();
        }
        out.push_back({Tok::ident, std::string(src_.substr(start, pos_ - start)), l, c});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        size_t start = pos_;
        while (pos_ < src_.size() &&
               std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          advance();
        }
        out.push_back({Tok::integer, std::string(src_.substr(start, pos_ - start)), l, c});
        continue;
      }
      if (ch == '&' || ch == '|') {
        if (pos_ + 1 >= src_.size() || src_[pos_ + 1] != ch) {
          throw ParseError(std::string("expected '") + ch + ch + "'", l, c);
        }
        advance();
        advance();
        out.push_back({ch == '&' ? Tok::and_ : Tok::or_, ch == '&' ? "&&" : "||", l, c});
        continue;
      }
      Tok k;
      switch (ch) {
        case '(': k = Tok::lparen; break;
        case ')': k = Tok::rparen; break;
        case '[': k = Tok::lbracket; break;
        case ']': k = Tok::rbracket; break;
        case '{': k = Tok::lbrace; break;
        case '}': k = Tok::rbrace; break;
        case ',': k = Tok::comma; break;
        case ':': k = Tok::colon; break;
        default:
          throw ParseError(std::string("unexpected character '") + ch + "'", l, c);
      }
      advance();
      out.push_back({k, std::string(1, ch), l, c});
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_]))) {
      advance();
    }
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const Vocabulary& vocab)
      : toks_(std::move(toks)), vocab_(vocab) {}

  Formula parse() {
    Formula f = parse_or();
    if (peek().kind != Tok::end) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek(int ahead = 0) const {
    size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().line, peek().column);
  }
  const Token& expect(Tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what);
    return next();
  }
  bool at_temporal(const char* kw) const {
    return peek().kind == Tok::ident && peek().text == kw &&
           peek(1).kind == Tok::lbracket;
  }

  int parse_int() {
    const Token& t = expect(Tok::integer, "integer");
    int v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc()) {
      throw ParseError("integer out of range", t.line, t.column);
    }
    return v;
  }

  Interval parse_interval() {
    const Token& open = expect(Tok::lbracket, "'['");
    Interval w;
    w.lo = parse_int();
    expect(Tok::comma, "','");
    w.hi = parse_int();
    expect(Tok::rbracket, "']'");
    if (w.lo > w.hi) {
      throw ParseError("interval lower bound exceeds upper bound", open.line,
                       open.column);
    }
    return w;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (peek().kind == Tok::or_) {
      next();
      lhs = Formula::disj({std::move(lhs), parse_and()});
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_until();
    while (peek().kind == Tok::and_) {
      next();
      lhs = Formula::conj({std::move(lhs), parse_until()});
    }
    return lhs;
  }

  Formula parse_until() {
    Formula lhs = parse_unary();
    if (at_temporal("U")) {
      next();
      Interval w = parse_interval();
      Formula rhs = parse_unary();
      if (at_temporal("U")) fail("chained until needs parentheses");
      return Formula::until(w, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Formula parse_unary() {
    if (at_temporal("F") || at_temporal("G")) {
      const bool ev = next().text == "F";
      Interval w = parse_interval();
      Formula child = parse_unary();
      return ev ? Formula::eventually(w, std::move(child))
                : Formula::always(w, std::move(child));
    }
    return parse_primary();
  }

  Formula parse_primary() {
    if (peek().kind == Tok::lparen) {
      next();
      Formula f = parse_or();
      expect(Tok::rparen, "')'");
      return f;
    }
    if (peek().kind == Tok::ident && peek().text == "T" &&
        peek(1).kind == Tok::lparen) {
      return parse_task();
    }
    fail("expected a task, '(' or a temporal operator");
  }

  Formula parse_task() {
    next();
    expect(Tok::lparen, "'('");
    const Token& dtok = peek();
    const int d = parse_int();
    if (d < 1) throw ParseError("task duration must be >= 1", dtok.line, dtok.column);
    expect(Tok::comma, "','");
    const Token& ptok = expect(Tok::ident, "proposition");
    if (!vocab_.propositions.empty() && !contains(vocab_.propositions, ptok.text)) {
      throw ParseError("unknown proposition '" + ptok.text + "'", ptok.line,
                       ptok.column);
    }
    expect(Tok::comma, "','");
    expect(Tok::lbrace, "'{'");
    std::map<std::string, int> counts;
    for (;;) {
      const Token& ctok = expect(Tok::ident, "capability");
      if (!vocab_.capabilities.empty() && !contains(vocab_.capabilities, ctok.text)) {
        throw ParseError("unknown capability '" + ctok.text + "'", ctok.line,
                         ctok.column);
      }
      expect(Tok::colon, "':'");
      const Token& ntok = peek();
      const int n = parse_int();
      if (n < 1) throw ParseError("required count must be >= 1", ntok.line, ntok.column);
      if (!counts.emplace(ctok.text, n).second) {
        throw ParseError("duplicate capability '" + ctok.text + "'", ctok.line,
                         ctok.column);
      }
      if (peek().kind == Tok::comma) {
        next();
        continue;
      }
      expect(Tok::rbrace, "'}'");
      break;
    }
    expect(Tok::rparen, "')'");
    return Formula::make_task(d, ptok.text, std::move(counts));
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  const Vocabulary& vocab_;
};

void flatten_into(Formula& parent, Formula child) {
  if (child.op == Op::conj) {
    for (auto& c : child.children) flatten_into(parent, std::move(c));
  } else {
    parent.children.push_back(std::move(child));
  }
}

void format_into(const Formula& f, std::ostringstream& os) {
  switch (f.op) {
    case Op::task: {
      os << "T(" << f.task.duration << ", " << f.task.proposition << ", {";
      bool first = true;
      for (const auto& [c, n] : f.task.counts) {
        if (!first) os << ", ";
        first = false;
        os << c << ':' << n;
      }
      os << "})";
      return;
    }
    case Op::conj:
    case Op::disj: {
      os << '(';
      for (size_t i = 0; i < f.children.size(); ++i) {
        if (i > 0) os << (f.op == Op::conj ? " && " : " || ");
        format_into(f.children[i], os);
      }
      os << ')';
      return;
    }
    case Op::until:
      os << '(';
      format_into(f.children[0], os);
      os << " U[" << f.window.lo << ',' << f.window.hi << "] ";
      format_into(f.children[1], os);
      os << ')';
      return;
    case Op::eventually:
    case Op::always:
      os << (f.op == Op::eventually ? 'F' : 'G') << '[' << f.window.lo << ','
         << f.window.hi << "] ";
      format_into(f.children[0], os);
      return;
  }
}

void collect_tasks(const Formula& f, std::vector<const Task*>& out) {
  if (f.op == Op::task) {
    out.push_back(&f.task);
    return;
  }
  for (const auto& c : f.children) collect_tasks(c, out);
}

}  // namespace

Formula flatten_root_conjunction(Formula f) {
  if (f.op != Op::conj) return f;
  Formula root = Formula::conj({});
  for (auto& c : f.children) flatten_into(root, std::move(c));
  return root;
}

Formula parse_formula(std::string_view text, const Vocabulary& vocab) {
  Parser p(Lexer(text).run(), vocab);
  return flatten_root_conjunction(p.parse());
}

std::string format_formula(const Formula& f) {
  std::ostringstream os;
  format_into(f, os);
  return os.str();
}

void validate_formula(const Formula& f, const Vocabulary& vocab) {
  switch (f.op) {
    case Op::task:
      if (!f.children.empty()) throw ValidationError("task with children");
      if (f.task.duration < 1) throw ValidationError("task duration < 1");
      if (f.task.counts.empty()) {
        throw ValidationError("task requires no capability");
      }
      for (const auto& [c, n] : f.task.counts) {
        if (n < 1) throw ValidationError("required count < 1");
        if (!vocab.capabilities.empty() && !contains(vocab.capabilities, c)) {
          throw ValidationError("unknown capability '" + c + "'");
        }
      }
      if (!vocab.propositions.empty() &&
          !contains(vocab.propositions, f.task.proposition)) {
        throw ValidationError("unknown proposition '" + f.task.proposition + "'");
      }
      return;
    case Op::conj:
    case Op::disj:
      if (f.children.size() < 2) {
        throw ValidationError("boolean operator with fewer than 2 children");
      }
      break;
    case Op::until:
      if (f.children.size() != 2) throw ValidationError("until needs 2 children");
      break;
    case Op::eventually:
    case Op::always:
      if (f.children.size() != 1) {
        throw ValidationError("unary temporal operator needs 1 child");
      }
      break;
  }
  if (f.op == Op::until || f.op == Op::eventually || f.op == Op::always) {
    if (f.window.lo < 0 || f.window.lo > f.window.hi) {
      throw ValidationError("invalid interval");
    }
  }
  for (const auto& c : f.children) validate_formula(c, vocab);
}

int horizon(const Formula& f) {
  switch (f.op) {
    case Op::task:
      return f.task.duration;
    case Op::conj:
    case Op::disj: {
      int h = 0;
      for (const auto& c : f.children) h = std::max(h, horizon(c));
      return h;
    }
    case Op::until:
      return f.window.hi +
             std::max(horizon(f.children[0]), horizon(f.children[1]));
    case Op::eventually:
    case Op::always:
      return f.window.hi + horizon(f.children[0]);
  }
  return 0;
}

std::vector<const Task*> tasks_of(const Formula& f) {
  std::vector<const Task*> out;
  collect_tasks(f, out);
  return out;
}

SyntaxTree::SyntaxTree(Formula f)
    : formula_(std::make_shared<const Formula>(std::move(f))) {
  add(*formula_, -1, 0);
}

int SyntaxTree::add(const Formula& f, int parent, int depth) {
  const int id = size();
  Node n;
  n.id = id;
  n.op = f.op;
  n.window = f.window;
  n.parent = parent;
  n.depth = depth;
  n.formula = &f;
  max_depth_ = std::max(max_depth_, depth);
  if (f.op == Op::task) {
    n.leaf_index = static_cast<int>(leaves_.size());
    leaves_.push_back(id);
  }
  nodes_.push_back(std::move(n));
  for (const auto& c : f.children) {
    const int cid = add(c, id, depth + 1);
    nodes_[id].children.push_back(cid);
  }
  return id;
}

std::string SyntaxTree::node_name(int id) const {
  const Node& n = nodes_.at(id);
  if (n.leaf_index >= 0) return "T" + std::to_string(n.leaf_index + 1);
  return "v" + std::to_string(id);
}

}  // namespace catl
