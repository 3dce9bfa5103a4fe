//  Copyright 2026 The fixtrans Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#pragma once

// Concrete syntax shared by the μ-calculus and GL front ends.
//
//   formula := ('mu' | 'nu') IDENT '.' formula
//            | disj ('->' formula)?
//   disj    := conj ('|' conj)*
//   conj    := unary ('&' unary)*
//   unary   := ('!' | '[]' | '<>') unary | binder | atom
//   atom    := 'true' | 'false' | IDENT | '(' formula ')'
//
// Binders extend as far right as possible. `->` is right associative.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "fixtrans/error.hpp"

namespace fixtrans::syntax {

enum class NodeKind { True, False, Ident, Not, And, Or, Implies, Box, Diamond, Mu, Nu };

struct Node {
  NodeKind kind;
  std::string name;  // Ident, and the bound variable of Mu/Nu
  std::vector<Node> children;
  int line = 1;
  int column = 1;
};

struct ParseOptions {
  bool allow_binders = true;
  bool allow_implies = true;
};

namespace detail {

class Parser {
 public:
  Parser(std::string_view text, ParseOptions opts) : text_(text), opts_(opts) {}

  Node parse() {
    Node n = formula();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return n;
  }

 private:
  Node formula() {
    skip_ws();
    if (at_binder()) return binder();
    Node lhs = disj();
    skip_ws();
    if (text_.substr(pos_, 2) == "->") {
      auto [l, c] = position();
      if (!opts_.allow_implies) fail("'->' is not part of this grammar");
      pos_ += 2;
      Node rhs = formula();
      return Node{NodeKind::Implies, {}, {std::move(lhs), std::move(rhs)}, l, c};
    }
    return lhs;
  }

  Node disj() {
    Node lhs = conj();
    for (;;) {
      skip_ws();
      if (peek() != '|') return lhs;
      auto [l, c] = position();
      ++pos_;
      Node rhs = conj();
      lhs = Node{NodeKind::Or, {}, {std::move(lhs), std::move(rhs)}, l, c};
    }
  }

  Node conj() {
    Node lhs = unary();
    for (;;) {
      skip_ws();
      if (peek() != '&') return lhs;
      auto [l, c] = position();
      ++pos_;
      Node rhs = unary();
      lhs = Node{NodeKind::And, {}, {std::move(lhs), std::move(rhs)}, l, c};
    }
  }

  Node unary() {
    skip_ws();
    auto [l, c] = position();
    if (peek() == '!') {
      ++pos_;
      return Node{NodeKind::Not, {}, {unary()}, l, c};
    }
    if (text_.substr(pos_, 2) == "[]") {
      pos_ += 2;
      return Node{NodeKind::Box, {}, {unary()}, l, c};
    }
    if (text_.substr(pos_, 2) == "<>") {
      pos_ += 2;
      return Node{NodeKind::Diamond, {}, {unary()}, l, c};
    }
    if (at_binder()) return binder();
    return atom();
  }

  Node binder() {
    skip_ws();
    auto [l, c] = position();
    std::string kw = identifier();
    if (!opts_.allow_binders) fail("fixpoint binders are not part of this grammar", l, c);
    skip_ws();
    auto [vl, vc] = position();
    std::string var = identifier();
    if (var.empty() || is_keyword(var)) fail("expected a variable after '" + kw + "'", vl, vc);
    skip_ws();
    if (peek() != '.') fail("expected '.' after bound variable");
    ++pos_;
    Node body = formula();
    return Node{kw == "mu" ? NodeKind::Mu : NodeKind::Nu, var, {std::move(body)}, l, c};
  }

  Node atom() {
    skip_ws();
    auto [l, c] = position();
    if (peek() == '(') {
      ++pos_;
      Node n = formula();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return n;
    }
    std::string id = identifier();
    if (id.empty()) fail(pos_ == text_.size() ? "unexpected end of input" : "unexpected character");
    if (id == "true") return Node{NodeKind::True, {}, {}, l, c};
    if (id == "false") return Node{NodeKind::False, {}, {}, l, c};
    if (is_keyword(id)) fail("unexpected keyword '" + id + "'", l, c);
    return Node{NodeKind::Ident, id, {}, l, c};
  }

  bool at_binder() const {
    for (std::string_view kw : {"mu", "nu"}) {
      if (text_.substr(pos_, 2) == kw) {
        std::size_t after = pos_ + 2;
        if (after >= text_.size() || !is_ident_char(text_[after])) return true;
      }
    }
    return false;
  }

  static bool is_keyword(const std::string& s) { return s == "mu" || s == "nu" || s == "true" || s == "false"; }
  static bool is_ident_char(char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'';
  }

  std::string identifier() {
    std::size_t start = pos_;
    if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::pair<int, int> position() const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void fail(const std::string& msg) const {
    auto [l, c] = position();
    fail(msg, l, c);
  }
  [[noreturn]] static void fail(const std::string& msg, int line, int col) { throw ParseError(msg, line, col); }

  std::string_view text_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Node parse(std::string_view text, ParseOptions opts = {}) { return detail::Parser(text, opts).parse(); }

}  // namespace fixtrans::syntax
