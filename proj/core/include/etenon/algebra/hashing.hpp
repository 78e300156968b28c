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

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace etenon::algebra {

using Bytes = std::vector<std::uint8_t>;
using Digest = std::array<std::uint8_t, 32>;

inline constexpr std::string_view kCommitDomain = "ETN-H0";
inline constexpr std::string_view kChallengeDomain = "ETN-H1";

/// Incremental SHA-256.
class Sha256 {
 public:
  Sha256();
  Sha256& update(std::span<const std::uint8_t> data);
  Sha256& update(std::string_view data);
  /// Appends a 64-bit big-endian length followed by the data.
  Sha256& update_framed(std::span<const std::uint8_t> data);
  Sha256& update_framed(std::string_view data);
  Digest finish();

 private:
  alignas(16) std::array<std::uint8_t, 128> state_{};
};

Digest sha256(std::span<const std::uint8_t> data);

/// H0: 256-bit commitment digest, domain-separated by "ETN-H0".
Digest hash_commit(std::span<const std::uint8_t> msg);

/// The raw 256-bit digest H1 reduces into the scalar field.
Digest hash_challenge_digest(std::span<const std::uint8_t> msg);

Bytes to_bytes(std::string_view s);
std::string to_hex(std::span<const std::uint8_t> data);
std::string base64_encode(std::span<const std::uint8_t> data);
/// Throws DecodeError on malformed input.
Bytes base64_decode(std::string_view text);

/// Writes a u32 big-endian length prefix followed by the bytes.
void append_framed(Bytes& out, std::span<const std::uint8_t> data);
void append_u64(Bytes& out, std::uint64_t value);

}  // namespace etenon::algebra
