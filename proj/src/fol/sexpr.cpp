// Copyright 2026 The arbac-reach Authors
//
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

#include "arbac/fol/sexpr.hpp"

#include <cctype>

#include "arbac/errors.hpp"

namespace arbac {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : s_(text) {}

  void skip() {
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (c == ';') {
        while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip();
    return pos_ >= s_.size();
  }

  SExpr read() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input");
    char c = s_[pos_];
    if (c == ')') throw ParseError("unbalanced ')' at offset " + std::to_string(pos_));
    if (c == '(') {
      ++pos_;
      std::vector<SExpr> items;
      while (true) {
        skip();
        if (pos_ >= s_.size()) throw ParseError("missing ')'");
        if (s_[pos_] == ')') {
          ++pos_;
          break;
        }
        items.push_back(read());
      }
      return SExpr::make_list(std::move(items));
    }
    std::size_t start = pos_;
    while (pos_ < s_.size()) {
      char d = s_[pos_];
      if (d == '(' || d == ')' || d == ';' ||
          std::isspace(static_cast<unsigned char>(d))) {
        break;
      }
      ++pos_;
    }
    return SExpr::make_atom(std::string(s_.substr(start, pos_ - start)));
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<SExpr> parse_sexprs(std::string_view text) {
  Reader r(text);
  std::vector<SExpr> out;
  while (!r.done()) out.push_back(r.read());
  return out;
}

SExpr parse_sexpr(std::string_view text) {
  auto xs = parse_sexprs(text);
  if (xs.size() != 1) {
    throw ParseError("expected one s-expression, got " + std::to_string(xs.size()));
  }
  return std::move(xs[0]);
}

std::string to_string(const SExpr& e) {
  if (e.is_atom) return e.atom;
  std::string out = "(";
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    if (i) out += ' ';
    out += to_string(e.items[i]);
  }
  out += ')';
  return out;
}

}  // namespace arbac
