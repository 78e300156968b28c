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

#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "etenon/algebra/rng.hpp"
#include "etenon/policy/access_tree.hpp"

namespace etenon::testing {

inline std::size_t uniform(algebra::Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline const std::vector<std::string>& attribute_pool() {
  static const std::vector<std::string> pool{"doctor", "nurse", "oncology", "cardiology", "admin", "pharmacist"};
  return pool;
}

inline policy::Node random_node(algebra::Rng& rng, std::size_t depth, std::size_t max_depth,
                                std::size_t max_fanout) {
  const auto& pool = attribute_pool();
  if (depth + 1 >= max_depth || uniform(rng, 0, 2) == 0) {
    return policy::Node::leaf(pool[uniform(rng, 0, pool.size() - 1)]);
  }
  std::vector<policy::Node> children;
  const std::size_t n = uniform(rng, 1, max_fanout);
  for (std::size_t i = 0; i < n; ++i) children.push_back(random_node(rng, depth + 1, max_depth, max_fanout));
  return policy::Node::gate(uniform(rng, 1, n), std::move(children));
}

/// Tree at most `max_depth` deep (root included) with fanout at most
/// `max_fanout` and 1..max_levels levels over random non-empty child sets.
inline policy::AccessTree random_tree(algebra::Rng& rng, std::size_t max_depth = 4, std::size_t max_fanout = 3,
                                      std::size_t max_levels = 4) {
  const std::size_t c = uniform(rng, 1, max_fanout);
  std::vector<policy::Node> children;
  for (std::size_t i = 0; i < c; ++i) children.push_back(random_node(rng, 1, max_depth, max_fanout));
  policy::AccessTree::LevelMap levels;
  const std::size_t k = uniform(rng, 1, max_levels);
  for (std::size_t l = 1; l <= k; ++l) {
    std::vector<std::size_t> set;
    for (std::size_t i = 1; i <= c; ++i) {
      if (uniform(rng, 0, 1) == 1) set.push_back(i);
    }
    if (set.empty()) set.push_back(uniform(rng, 1, c));
    levels[static_cast<policy::LevelId>(l)] = set;
  }
  return policy::AccessTree(uniform(rng, 1, c), std::move(children), std::move(levels));
}

inline policy::AttributeSet random_attributes(algebra::Rng& rng) {
  policy::AttributeSet out;
  for (const auto& a : attribute_pool()) {
    if (uniform(rng, 0, 1) == 1) out.insert(a);
  }
  if (out.empty()) out.insert(attribute_pool()[uniform(rng, 0, attribute_pool().size() - 1)]);
  return out;
}

/// Reference evaluator: explicit-stack post-order walk, kept separate from
/// the library's recursive one.
inline bool oracle_satisfies(const policy::Node& root, const policy::AttributeSet& attrs) {
  struct Frame {
    const policy::Node* node;
    std::size_t next = 0;
    std::size_t hits = 0;
  };
  std::vector<Frame> stack{{&root}};
  bool last = false;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.node->is_leaf()) {
      last = attrs.count(f.node->attribute) == 1;
      stack.pop_back();
      if (!stack.empty()) stack.back().hits += last ? 1 : 0;
      continue;
    }
    if (f.next < f.node->children.size()) {
      const policy::Node* child = &f.node->children[f.next++];
      stack.push_back({child});
      continue;
    }
    last = f.hits >= f.node->threshold;
    stack.pop_back();
    if (!stack.empty()) stack.back().hits += last ? 1 : 0;
  }
  return last;
}

inline std::set<policy::LevelId> oracle_levels(const policy::AccessTree& tree, const policy::AttributeSet& attrs) {
  std::set<policy::LevelId> out;
  for (const auto& [id, set] : tree.levels()) {
    bool all = true;
    for (auto i : set) all = all && oracle_satisfies(tree.children()[i - 1], attrs);
    if (all) out.insert(id);
  }
  return out;
}

inline const std::vector<std::string>& word_pool() {
  static const std::vector<std::string> pool{
      "pain", "in", "the", "chest", "and", "of", "breath", "shortness", "a", "to", "fever", "with",
      "history", "on", "at", "mild", "severe", "cough", "for", "two", "weeks", "is", "by", "left", "arm"};
  return pool;
}

/// Up to `max_words` words joined by random whitespace runs.
inline std::string random_text(algebra::Rng& rng, std::size_t max_words) {
  static const std::vector<std::string> gaps{" ", "  ", "\t", " \n ", "   "};
  const std::size_t n = uniform(rng, 0, max_words);
  std::string out = uniform(rng, 0, 3) == 0 ? " " : "";
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0) out += gaps[uniform(rng, 0, gaps.size() - 1)];
    out += word_pool()[uniform(rng, 0, word_pool().size() - 1)];
  }
  if (uniform(rng, 0, 3) == 0) out += "\n";
  return out;
}

}  // namespace etenon::testing
