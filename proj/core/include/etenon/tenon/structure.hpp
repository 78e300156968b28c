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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "etenon/algebra/rng.hpp"
#include "etenon/tenon/pointer.hpp"

namespace etenon::tenon {

/// (self, block, next). A missing `next` is the terminal marker.
struct Triple {
  Pointer self;
  std::string block;
  std::optional<Pointer> next;

  bool operator==(const Triple&) const = default;
};

/// Triples in storage order, which is a random permutation of chain order.
struct TenonStructure {
  Pointer head;
  std::vector<Triple> triples;
};

/// Fresh pointer per block, chained in block order, then shuffled. Throws
/// InvalidArgument on an empty block list.
TenonStructure build_structure(const std::vector<std::string>& blocks, algebra::Rng& rng);

struct Reconstruction {
  std::vector<std::string> blocks;
  /// True when the chain reached its terminal triple.
  bool complete = false;
};

/// Follows next-pointers from `head` through `available`. Stops at the
/// terminal or at the first unresolvable pointer. Throws StructuralError on
/// a cycle or on two triples sharing a self pointer.
Reconstruction reconstruct(const Pointer& head, std::span<const Triple> available);

}  // namespace etenon::tenon
