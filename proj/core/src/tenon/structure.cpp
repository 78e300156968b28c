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

#include "etenon/tenon/structure.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "etenon/error.hpp"

namespace etenon::tenon {

TenonStructure build_structure(const std::vector<std::string>& blocks, algebra::Rng& rng) {
  if (blocks.empty()) throw InvalidArgument("cannot build a structure from no blocks");
  std::vector<Pointer> ptrs;
  std::unordered_set<Pointer> seen;
  while (ptrs.size() < blocks.size()) {
    const Pointer p = Pointer::generate(rng);
    if (seen.insert(p).second) ptrs.push_back(p);
  }
  TenonStructure out;
  out.head = ptrs.front();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    std::optional<Pointer> next;
    if (i + 1 < blocks.size()) next = ptrs[i + 1];
    out.triples.push_back({ptrs[i], blocks[i], next});
  }
  std::shuffle(out.triples.begin(), out.triples.end(), rng);
  return out;
}

Reconstruction reconstruct(const Pointer& head, std::span<const Triple> available) {
  std::unordered_map<Pointer, const Triple*> index;
  index.reserve(available.size());
  for (const auto& t : available) {
    if (!index.emplace(t.self, &t).second) {
      throw StructuralError("two triples share pointer " + t.self.to_string());
    }
  }
  Reconstruction out;
  std::unordered_set<Pointer> visited;
  std::optional<Pointer> cursor = head;
  while (cursor) {
    const auto it = index.find(*cursor);
    if (it == index.end()) return out;
    if (!visited.insert(*cursor).second) {
      throw StructuralError("pointer cycle at " + cursor->to_string());
    }
    out.blocks.push_back(it->second->block);
    cursor = it->second->next;
  }
  out.complete = true;
  return out;
}

}  // namespace etenon::tenon
