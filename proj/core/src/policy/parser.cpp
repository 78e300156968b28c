// Copyright 2026 The etenon Authors
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

#include "etenon/policy/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace etenon::policy {
namespace {

struct Token {
  enum class Type { kWord, kNumber, kPunct, kEnd };
  Type type = Type::kEnd;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-' ||
         c == '.' || c == '@';
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    Token tok;
    tok.line = line;
    tok.column = col;
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == ',' || c == ':') {
      tok.type = Token::Type::kPunct;
      tok.text = std::string(1, c);
      advance(1);
    } else if (is_name_char(c)) {
      std::size_t j = i;
      while (j < text.size() && is_name_char(text[j])) ++j;
      tok.text = std::string(text.substr(i, j - i));
      const bool numeric = std::all_of(tok.text.begin(), tok.text.end(), [](char ch) {
        return std::isdigit(static_cast<unsigned char>(ch)) != 0;
      });
      tok.type = numeric ? Token::Type::kNumber : Token::Type::kWord;
      advance(j - i);
    } else {
      throw PolicyError(PolicyError::Kind::kSyntax, line, col,
                        std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  AccessTree run() {
    AccessTree::LevelMap levels;
    std::map<LevelId, const Token*> level_sites;
    std::optional<Node> root;

    while (peek().type != Token::Type::kEnd) {
      const Token& head = peek();
      if (is_word("level")) {
        next();
        const Token& id_tok = expect_number("level id");
        const LevelId id = to_number<LevelId>(id_tok);
        expect_word("requires");
        expect_punct("[");
        std::vector<std::size_t> indices;
        std::set<std::size_t> seen;
        if (is_punct("]")) {
          throw error(PolicyError::Kind::kInvalidLevel, peek(),
                      "level " + id_tok.text + " requires no sub-tree");
        }
        for (;;) {
          const Token& idx = expect_number("child index");
          const auto value = to_number<std::size_t>(idx);
          if (!seen.insert(value).second) {
            throw error(PolicyError::Kind::kInvalidLevel, idx, "duplicate index " + idx.text);
          }
          indices.push_back(value);
          if (is_punct(",")) {
            next();
            continue;
          }
          expect_punct("]");
          break;
        }
        if (!levels.emplace(id, std::move(indices)).second) {
          throw error(PolicyError::Kind::kInvalidLevel, id_tok, "level " + id_tok.text + " declared twice");
        }
        level_sites[id] = &id_tok;
      } else if (is_word("tree")) {
        if (root) throw error(PolicyError::Kind::kSyntax, head, "second tree block");
        next();
        expect_punct(":");
        if (!is_word("threshold")) {
          throw error(PolicyError::Kind::kSyntax, peek(), "tree root must be threshold(...)");
        }
        root = parse_node();
      } else {
        throw error(PolicyError::Kind::kSyntax, head,
                    "expected 'level' or 'tree', found '" + head.text + "'");
      }
    }

    if (!root) throw error(PolicyError::Kind::kSyntax, peek(), "missing tree block");
    if (levels.empty()) {
      throw error(PolicyError::Kind::kInvalidLevel, peek(), "no level declared");
    }
    for (const auto& [id, indices] : levels) {
      for (auto index : indices) {
        if (index < 1 || index > root->children.size()) {
          throw error(PolicyError::Kind::kUnknownChildIndex, *level_sites[id],
                      "level " + std::to_string(id) + " references unknown child index " +
                          std::to_string(index));
        }
      }
    }
    return AccessTree(root->threshold, std::move(root->children), std::move(levels));
  }

 private:
  Node parse_node() {
    const Token& head = peek();
    if (is_word("attr")) {
      next();
      expect_punct(":");
      const Token& name = next();
      if (name.type != Token::Type::kWord && name.type != Token::Type::kNumber) {
        throw error(PolicyError::Kind::kSyntax, name, "expected attribute name");
      }
      return Node::leaf(name.text);
    }
    if (is_word("threshold")) {
      next();
      expect_punct("(");
      const Token& t_tok = expect_number("threshold");
      const auto t = to_number<std::size_t>(t_tok);
      std::vector<Node> children;
      while (is_punct(",")) {
        next();
        children.push_back(parse_node());
      }
      expect_punct(")");
      if (children.empty()) {
        throw error(PolicyError::Kind::kSyntax, head, "threshold gate needs children");
      }
      if (t < 1 || t > children.size()) {
        throw error(PolicyError::Kind::kThresholdOutOfRange, t_tok,
                    "threshold " + t_tok.text + " out of range for " +
                        std::to_string(children.size()) + " children");
      }
      return Node::gate(t, std::move(children));
    }
    throw error(PolicyError::Kind::kSyntax, head,
                "expected threshold(...) or attr:<name>, found '" + head.text + "'");
  }

  template <typename T>
  T to_number(const Token& tok) {
    T value{};
    const auto [ptr, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
    if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size()) {
      throw error(PolicyError::Kind::kSyntax, tok, "number out of range");
    }
    return value;
  }

  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (t.type != Token::Type::kEnd) ++pos_;
    return t;
  }
  bool is_word(std::string_view w) const {
    return peek().type == Token::Type::kWord && peek().text == w;
  }
  bool is_punct(std::string_view p) const {
    return peek().type == Token::Type::kPunct && peek().text == p;
  }
  void expect_punct(std::string_view p) {
    if (!is_punct(p)) {
      throw error(PolicyError::Kind::kSyntax, peek(),
                  "expected '" + std::string(p) + "', found '" + describe(peek()) + "'");
    }
    next();
  }
  void expect_word(std::string_view w) {
    if (!is_word(w)) {
      throw error(PolicyError::Kind::kSyntax, peek(),
                  "expected '" + std::string(w) + "', found '" + describe(peek()) + "'");
    }
    next();
  }
  const Token& expect_number(std::string_view what) {
    if (peek().type != Token::Type::kNumber) {
      throw error(PolicyError::Kind::kSyntax, peek(),
                  "expected " + std::string(what) + ", found '" + describe(peek()) + "'");
    }
    return next();
  }
  static std::string describe(const Token& t) {
    return t.type == Token::Type::kEnd ? "end of input" : t.text;
  }
  static PolicyError error(PolicyError::Kind kind, const Token& at, const std::string& msg) {
    return PolicyError(kind, at.line, at.column, msg);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

void format_node(const Node& node, std::string& out) {
  if (node.is_leaf()) {
    out += "attr:" + node.attribute;
    return;
  }
  out += "threshold(" + std::to_string(node.threshold);
  for (const auto& c : node.children) {
    out += ", ";
    format_node(c, out);
  }
  out += ")";
}

}  // namespace

PolicyError::PolicyError(Kind kind, std::size_t line, std::size_t column,
                         const std::string& message)
    : Error(ErrorCode::kParse, std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

AccessTree parse_policy(std::string_view text) { return Parser(lex(text)).run(); }

std::string format_policy(const AccessTree& tree) {
  std::string out;
  for (const auto& [id, indices] : tree.levels()) {
    out += "level " + std::to_string(id) + " requires [";
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (i > 0) out += ", ";
      out += std::to_string(indices[i]);
    }
    out += "]\n";
  }
  out += "tree: ";
  format_node(Node::gate(tree.root_threshold(), tree.children()), out);
  out += "\n";
  return out;
}

}  // namespace etenon::policy
