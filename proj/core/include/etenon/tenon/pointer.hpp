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
#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>

#include "etenon/algebra/rng.hpp"

namespace etenon::tenon {

/// 128-bit random block identifier rendered as a version-4 UUID.
class Pointer {
 public:
  static constexpr std::size_t kBytes = 16;

  Pointer() = default;
  explicit Pointer(const std::array<std::uint8_t, kBytes>& bytes) : bytes_(bytes) {}

  /// Draws 122 random bits from `rng` and sets the UUID version/variant bits.
  static Pointer generate(algebra::Rng& rng);
  /// Accepts the 36-character 8-4-4-4-12 form; throws DecodeError otherwise.
  static Pointer parse(std::string_view text);
  static Pointer from_bytes(std::span<const std::uint8_t> bytes);

  const std::array<std::uint8_t, kBytes>& bytes() const { return bytes_; }
  std::string to_string() const;

  auto operator<=>(const Pointer&) const = default;

 private:
  std::array<std::uint8_t, kBytes> bytes_{};
};

}  // namespace etenon::tenon

template <>
struct std::hash<etenon::tenon::Pointer> {
  std::size_t operator()(const etenon::tenon::Pointer& p) const noexcept {
    std::size_t h = 0;
    for (auto b : p.bytes()) h = h * 131 + b;
    return h;
  }
};
