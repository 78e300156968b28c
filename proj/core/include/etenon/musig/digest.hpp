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
#include <span>

#include "etenon/algebra/hashing.hpp"
#include "etenon/tenon/pointer.hpp"

namespace etenon::musig {

/// Message signed for an open-table row: H(block ∥ pointer ∥ pp ∥ t).
algebra::Bytes block_message(std::span<const std::uint8_t> block, const tenon::Pointer& pointer,
                             std::span<const std::uint8_t> pp_bytes, std::int64_t timestamp);

/// Message signed for a secret-table entry: H(E ∥ pp ∥ t), E being the
/// canonical ciphertext bytes.
algebra::Bytes ciphertext_message(std::span<const std::uint8_t> ciphertext_bytes,
                                  std::span<const std::uint8_t> pp_bytes, std::int64_t timestamp);

}  // namespace etenon::musig
