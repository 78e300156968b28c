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

#include "etenon/policy/json.hpp"

#include "etenon/error.hpp"

namespace etenon::policy {
namespace {

nlohmann::json node_to_json(const Node& node) {
  if (node.is_leaf()) return {{"kind", "leaf"}, {"attribute", node.attribute}};
  nlohmann::json children = nlohmann::json::array();
  for (const auto& c : node.children) children.push_back(node_to_json(c));
  return {{"kind", "gate"}, {"threshold", node.threshold}, {"children", std::move(children)}};
}

Node node_from_json(const nlohmann::json& j, int depth) {
  if (depth > 64) throw DecodeError("policy tree too deep");
  const auto& kind = j.at("kind").get_ref<const std::string&>();
  if (kind == "leaf") return Node::leaf(j.at("attribute").get<std::string>());
  if (kind != "gate") throw DecodeError("unknown node kind '" + kind + "'");
  std::vector<Node> children;
  for (const auto& c : j.at("children")) children.push_back(node_from_json(c, depth + 1));
  return Node::gate(j.at("threshold").get<std::size_t>(), std::move(children));
}

}  // namespace

nlohmann::json to_json(const AccessTree& tree) {
  nlohmann::json children = nlohmann::json::array();
  for (const auto& c : tree.children()) children.push_back(node_to_json(c));
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& [id, indices] : tree.levels()) {
    levels.push_back({{"id", id}, {"requires", indices}});
  }
  return {{"root_threshold", tree.root_threshold()},
          {"children", std::move(children)},
          {"levels", std::move(levels)}};
}

AccessTree tree_from_json(const nlohmann::json& j) {
  try {
    std::vector<Node> children;
    for (const auto& c : j.at("children")) children.push_back(node_from_json(c, 0));
    AccessTree::LevelMap levels;
    for (const auto& l : j.at("levels")) {
      const auto id = l.at("id").get<LevelId>();
      if (!levels.emplace(id, l.at("requires").get<std::vector<std::size_t>>()).second) {
        throw DecodeError("duplicate level id");
      }
    }
    return AccessTree(j.at("root_threshold").get<std::size_t>(), std::move(children),
                      std::move(levels));
  } catch (const nlohmann::json::exception& e) {
    throw DecodeError(std::string("malformed policy JSON: ") + e.what());
  }
}

}  // namespace etenon::policy
