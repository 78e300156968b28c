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

#include "etenon/tenon/pointer.hpp"

#include <cctype>

#include "etenon/algebra/hashing.hpp"
#include "etenon/error.hpp"

namespace etenon::tenon {
namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower >= 'a' && lower <= 'f') return lower - 'a' + 10;
  return -1;
}

}  // namespace

Pointer Pointer::generate(algebra::Rng& rng) {
  std::array<std::uint8_t, kBytes> b{};
  rng.fill(b);
  b[6] = static_cast<std::uint8_t>((b[6] & 0x0f) | 0x40);
  b[8] = static_cast<std::uint8_t>((b[8] & 0x3f) | 0x80);
  return Pointer(b);
}

Pointer Pointer::parse(std::string_view text) {
  if (text.size() != 36 || text[8] != '-' || text[13] != '-' || text[18] != '-' ||
      text[23] != '-') {
    throw DecodeError("malformed UUID '" + std::string(text) + "'");
  }
  std::array<std::uint8_t, kBytes> b{};
  std::size_t out = 0;
  for (std::size_t i = 0; i < text.size();) {
    if (text[i] == '-') {
      ++i;
      continue;
    }
    const int hi = hex_value(text[i]);
    const int lo = hex_value(text[i + 1]);
    if (hi < 0 || lo < 0) throw DecodeError("malformed UUID '" + std::string(text) + "'");
    b[out++] = static_cast<std::uint8_t>(hi << 4 | lo);
    i += 2;
  }
  return Pointer(b);
}

Pointer Pointer::from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kBytes) throw DecodeError("pointer must be 16 bytes");
  std::array<std::uint8_t, kBytes> b{};
  std::copy(bytes.begin(), bytes.end(), b.begin());
  return Pointer(b);
}

std::string Pointer::to_string() const {
  const std::string hex = algebra::to_hex(bytes_);
  return hex.substr(0, 8) + "-" + hex.substr(8, 4) + "-" + hex.substr(12, 4) + "-" +
         hex.substr(16, 4) + "-" + hex.substr(20, 12);
}

}  // namespace etenon::tenon
