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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace etenon::policy {

using AttributeSet = std::set<std::string>;
using LevelId = std::uint32_t;

/// Threshold gate or attribute leaf. A child's index is its 1-based
/// position among its siblings.
struct Node {
  enum class Kind { kGate, kLeaf };

  Kind kind = Kind::kLeaf;
  std::size_t threshold = 0;
  std::string attribute;
  std::vector<Node> children;

  static Node leaf(std::string attribute);
  static Node gate(std::size_t threshold, std::vector<Node> children);

  bool is_leaf() const { return kind == Kind::kLeaf; }
  std::size_t leaf_count() const;
  bool operator==(const Node&) const = default;
};

/// An access tree whose root children are the sub-trees each security level
/// selects from. Validated on construction.
class AccessTree {
 public:
  using LevelMap = std::map<LevelId, std::vector<std::size_t>>;

  /// Throws InvalidArgument when a gate threshold is out of range, a leaf
  /// has no attribute, a level is empty or names an unknown child, or no
  /// level is declared.
  AccessTree(std::size_t root_threshold, std::vector<Node> children, LevelMap levels);

  std::size_t root_threshold() const { return root_threshold_; }
  const std::vector<Node>& children() const { return children_; }
  /// Root child by 1-based index.
  const Node& child(std::size_t index) const { return children_.at(index - 1); }
  std::size_t child_count() const { return children_.size(); }
  const LevelMap& levels() const { return levels_; }
  std::set<LevelId> level_ids() const;

  std::size_t leaf_count() const;
  /// Leaves in canonical order: depth-first, children in index order.
  std::vector<const Node*> leaves() const;
  /// Every non-root node in the same depth-first order.
  std::vector<const Node*> nodes() const;

  /// Non-fatal findings, e.g. an attribute repeated under one gate.
  std::vector<std::string> lint() const;

  bool operator==(const AccessTree&) const = default;

 private:
  std::size_t root_threshold_;
  std::vector<Node> children_;
  LevelMap levels_;
};

AttributeSet make_attribute_set(std::initializer_list<std::string> attributes);

bool satisfies(const Node& node, const AttributeSet& attributes);

/// A level is open when every sub-tree it names is satisfied.
bool level_satisfied(const AccessTree& tree, LevelId level, const AttributeSet& attributes);

std::set<LevelId> satisfied_levels(const AccessTree& tree, const AttributeSet& attributes);

}  // namespace etenon::policy
