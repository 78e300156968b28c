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

#include "etenon/policy/access_tree.hpp"

#include <algorithm>

#include "etenon/error.hpp"

namespace etenon::policy {
namespace {

void validate_node(const Node& node) {
  if (node.is_leaf()) {
    if (node.attribute.empty()) throw InvalidArgument("leaf without attribute");
    if (!node.children.empty()) throw InvalidArgument("leaf with children");
    return;
  }
  if (node.children.empty()) throw InvalidArgument("gate without children");
  if (node.threshold < 1 || node.threshold > node.children.size()) {
    throw InvalidArgument("threshold " + std::to_string(node.threshold) +
                          " out of range for " + std::to_string(node.children.size()) +
                          " children");
  }
  for (const auto& c : node.children) validate_node(c);
}

void collect(const Node& node, std::vector<const Node*>& out, bool leaves_only) {
  if (!leaves_only || node.is_leaf()) out.push_back(&node);
  for (const auto& c : node.children) collect(c, out, leaves_only);
}

void lint_node(const Node& node, std::vector<std::string>& findings) {
  if (node.is_leaf()) return;
  std::set<std::string> seen;
  for (const auto& c : node.children) {
    if (c.is_leaf() && !seen.insert(c.attribute).second) {
      findings.push_back("attribute '" + c.attribute + "' repeated under one gate");
    }
    lint_node(c, findings);
  }
}

}  // namespace

Node Node::leaf(std::string attribute) {
  Node n;
  n.kind = Kind::kLeaf;
  n.attribute = std::move(attribute);
  return n;
}

Node Node::gate(std::size_t threshold, std::vector<Node> children) {
  Node n;
  n.kind = Kind::kGate;
  n.threshold = threshold;
  n.children = std::move(children);
  return n;
}

std::size_t Node::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t n = 0;
  for (const auto& c : children) n += c.leaf_count();
  return n;
}

AccessTree::AccessTree(std::size_t root_threshold, std::vector<Node> children,
                       LevelMap levels)
    : root_threshold_(root_threshold),
      children_(std::move(children)),
      levels_(std::move(levels)) {
  if (children_.empty()) throw InvalidArgument("access tree root has no children");
  if (root_threshold_ < 1 || root_threshold_ > children_.size()) {
    throw InvalidArgument("root threshold out of range");
  }
  for (const auto& c : children_) validate_node(c);
  if (levels_.empty()) throw InvalidArgument("access tree declares no security level");
  for (auto& [id, indices] : levels_) {
    if (indices.empty()) {
      throw InvalidArgument("level " + std::to_string(id) + " requires no sub-tree");
    }
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
      throw InvalidArgument("level " + std::to_string(id) + " repeats a sub-tree index");
    }
    if (indices.front() < 1 || indices.back() > children_.size()) {
      throw InvalidArgument("level " + std::to_string(id) + " references unknown child index");
    }
  }
}

std::set<LevelId> AccessTree::level_ids() const {
  std::set<LevelId> ids;
  for (const auto& [id, _] : levels_) ids.insert(id);
  return ids;
}

std::size_t AccessTree::leaf_count() const {
  std::size_t n = 0;
  for (const auto& c : children_) n += c.leaf_count();
  return n;
}

std::vector<const Node*> AccessTree::leaves() const {
  std::vector<const Node*> out;
  for (const auto& c : children_) collect(c, out, true);
  return out;
}

std::vector<const Node*> AccessTree::nodes() const {
  std::vector<const Node*> out;
  for (const auto& c : children_) collect(c, out, false);
  return out;
}

std::vector<std::string> AccessTree::lint() const {
  std::vector<std::string> findings;
  lint_node(Node::gate(root_threshold_, children_), findings);
  return findings;
}

AttributeSet make_attribute_set(std::initializer_list<std::string> attributes) {
  return AttributeSet(attributes.begin(), attributes.end());
}

bool satisfies(const Node& node, const AttributeSet& attributes) {
  if (node.is_leaf()) return attributes.contains(node.attribute);
  std::size_t hits = 0;
  for (const auto& c : node.children) {
    if (satisfies(c, attributes) && ++hits >= node.threshold) return true;
  }
  return false;
}

bool level_satisfied(const AccessTree& tree, LevelId level, const AttributeSet& attributes) {
  const auto it = tree.levels().find(level);
  if (it == tree.levels().end()) return false;
  return std::all_of(it->second.begin(), it->second.end(), [&](std::size_t index) {
    return satisfies(tree.child(index), attributes);
  });
}

std::set<LevelId> satisfied_levels(const AccessTree& tree, const AttributeSet& attributes) {
  std::set<LevelId> out;
  for (const auto& [id, _] : tree.levels()) {
    if (level_satisfied(tree, id, attributes)) out.insert(id);
  }
  return out;
}

}  // namespace etenon::policy
