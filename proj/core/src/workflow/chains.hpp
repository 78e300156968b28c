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

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etenon/algebra/hashing.hpp"
#include "etenon/tenon/preprocess.hpp"

namespace etenon::workflow::detail {

/// Chain links sealed per level: which column the chain holds and its
/// (self, next) pairs in chain order.
struct LinkSet {
  std::string column;
  std::vector<std::pair<tenon::Pointer, std::optional<tenon::Pointer>>> links;
};

algebra::Bytes encode_links(const tenon::ColumnChain& chain);
/// Throws DecodeError.
LinkSet decode_links(std::span<const std::uint8_t> bytes);

algebra::Bytes encode_columns(const std::vector<tenon::Column>& columns);
std::vector<tenon::Column> decode_columns(std::span<const std::uint8_t> bytes);

/// Rebuilds triples from links and the block texts that are available, then
/// follows the chain from `head`.
tenon::Reconstruction join(const tenon::Pointer& head, const LinkSet& links,
                           const std::map<tenon::Pointer, std::string>& blocks);

}  // namespace etenon::workflow::detail
