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

#include "etenon/musig/digest.hpp"

namespace etenon::musig {
namespace {

algebra::Bytes be64(std::int64_t t) {
  algebra::Bytes out;
  algebra::append_u64(out, static_cast<std::uint64_t>(t));
  return out;
}

}  // namespace

algebra::Bytes block_message(std::span<const std::uint8_t> block, const tenon::Pointer& pointer,
                             std::span<const std::uint8_t> pp_bytes, std::int64_t timestamp) {
  const auto d = algebra::Sha256()
                     .update("ETN-MSG-BLOCK")
                     .update_framed(block)
                     .update_framed(pointer.bytes())
                     .update_framed(pp_bytes)
                     .update(be64(timestamp))
                     .finish();
  return {d.begin(), d.end()};
}

algebra::Bytes ciphertext_message(std::span<const std::uint8_t> ciphertext_bytes,
                                  std::span<const std::uint8_t> pp_bytes, std::int64_t timestamp) {
  const auto d = algebra::Sha256()
                     .update("ETN-MSG-CT")
                     .update_framed(ciphertext_bytes)
                     .update_framed(pp_bytes)
                     .update(be64(timestamp))
                     .finish();
  return {d.begin(), d.end()};
}

}  // namespace etenon::musig
