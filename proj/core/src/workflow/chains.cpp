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

#include "chains.hpp"

#include <nlohmann/json.hpp>

#include "etenon/error.hpp"

namespace etenon::workflow::detail {

using nlohmann::json;

algebra::Bytes encode_links(const tenon::ColumnChain& chain) {
  std::map<tenon::Pointer, const tenon::Triple*> by_self;
  for (const auto& t : chain.structure.triples) by_self.emplace(t.self, &t);
  json links = json::array();
  std::optional<tenon::Pointer> cursor = chain.structure.head;
  while (cursor) {
    const auto* t = by_self.at(*cursor);
    links.push_back({t->self.to_string(), t->next ? json(t->next->to_string()) : json(nullptr)});
    cursor = t->next;
  }
  return algebra::to_bytes(json{{"column", chain.column}, {"links", std::move(links)}}.dump());
}

LinkSet decode_links(std::span<const std::uint8_t> bytes) {
  try {
    const json j = json::parse(bytes.begin(), bytes.end());
    LinkSet out;
    out.column = j.at("column").get<std::string>();
    for (const auto& l : j.at("links")) {
      std::optional<tenon::Pointer> next;
      if (!l.at(1).is_null()) next = tenon::Pointer::parse(l.at(1).get<std::string>());
      out.links.emplace_back(tenon::Pointer::parse(l.at(0).get<std::string>()), next);
    }
    return out;
  } catch (const json::exception& e) {
    throw DecodeError(std::string("malformed chain links: ") + e.what());
  }
}

algebra::Bytes encode_columns(const std::vector<tenon::Column>& columns) {
  json out = json::array();
  for (const auto& c : columns) out.push_back({c.name, c.value});
  return algebra::to_bytes(out.dump());
}

std::vector<tenon::Column> decode_columns(std::span<const std::uint8_t> bytes) {
  try {
    std::vector<tenon::Column> out;
    for (const auto& c : json::parse(bytes.begin(), bytes.end())) {
      out.push_back({c.at(0).get<std::string>(), c.at(1).get<std::string>(),
                     tenon::ColumnClass::kIdentifiable, false});
    }
    return out;
  } catch (const json::exception& e) {
    throw DecodeError(std::string("malformed identifiable columns: ") + e.what());
  }
}

tenon::Reconstruction join(const tenon::Pointer& head, const LinkSet& links,
                           const std::map<tenon::Pointer, std::string>& blocks) {
  std::vector<tenon::Triple> triples;
  for (const auto& [self, next] : links.links) {
    const auto it = blocks.find(self);
    if (it != blocks.end()) triples.push_back({self, it->second, next});
  }
  return tenon::reconstruct(head, triples);
}

}  // namespace etenon::workflow::detail
