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

// Prefix grammar for sentence bodies:
//
//   term  := 'not' term
//          | ('and' | 'or' | 'implies' | 'iff') '(' term ',' term ')'
//          | 'trans' '(' name ')' | 'ref' '(' name ')'
//          | 'atom' '(' name ',' ('true' | 'false') ')'
//          | '(' term ')'
//
// A bare name is shorthand for ref(name).

#include <cctype>
#include <string>
#include <string_view>

#include "fixtrans/error.hpp"
#include "fixtrans/truth.hpp"

namespace fixtrans::truth {

namespace detail {

class SentenceParser {
 public:
  explicit SentenceParser(std::string_view text) : text_(text) {}

  Sentence parse() {
    Sentence s = term();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return s;
  }

 private:
  Sentence term() {
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      Sentence s = term();
      expect(')');
      return s;
    }
    const std::string word = identifier("expected a connective or name");
    if (word == "not") return Sentence::negate(term());
    if (word == "and" || word == "or" || word == "implies" || word == "iff") {
      expect('(');
      Sentence a = term();
      expect(',');
      Sentence b = term();
      expect(')');
      if (word == "and") return Sentence::conj(std::move(a), std::move(b));
      if (word == "or") return Sentence::disj(std::move(a), std::move(b));
      if (word == "implies") return Sentence::implies(std::move(a), std::move(b));
      return Sentence::iff(std::move(a), std::move(b));
    }
    if (word == "trans" || word == "ref") {
      expect('(');
      std::string name = identifier("expected a sentence name");
      expect(')');
      return word == "trans" ? Sentence::trans(std::move(name)) : Sentence::ref(std::move(name));
    }
    if (word == "atom") {
      expect('(');
      std::string name = identifier("expected an atom name");
      expect(',');
      std::string value = identifier("expected true or false");
      if (value != "true" && value != "false") fail("atom value must be true or false");
      expect(')');
      return Sentence::atom(std::move(name), value == "true");
    }
    return Sentence::ref(word);
  }

  std::string identifier(const char* message) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
                                   text_[pos_] == '\'' || text_[pos_] == '.'))
      ++pos_;
    if (start == pos_) fail(message);
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Sentence parse_sentence(std::string_view text) { return detail::SentenceParser(text).parse(); }

}  // namespace fixtrans::truth
