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
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>

namespace etenon::algebra {

/// ChaCha20 keystream generator. Seeded instances are reproducible; the
/// OS-seeded instance is the strong source used for nonces, keys and
/// pointers. Satisfies std::uniform_random_bit_generator.
///
/// Move-only: a copied generator would replay its keystream.
class Rng {
 public:
  using result_type = std::uint64_t;

  static Rng from_seed(std::uint64_t seed);
  static Rng from_key(std::span<const std::uint8_t, 32> key);
  static Rng from_os();

  Rng(Rng&&) noexcept = default;
  Rng& operator=(Rng&&) noexcept = default;
  Rng(const Rng&) = delete;
  Rng& operator=(const Rng&) = delete;
  ~Rng();

  void fill(std::span<std::uint8_t> out);
  result_type operator()();

  /// Independent child stream keyed by this stream's output and `label`.
  Rng fork(std::string_view label);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

 private:
  explicit Rng(std::span<const std::uint8_t, 32> key);
  void refill();

  static constexpr std::size_t kBlockBytes = 512;

  std::array<std::uint8_t, 32> key_{};
  std::uint64_t nonce_ = 0;
  std::array<std::uint8_t, kBlockBytes> buffer_{};
  std::size_t pos_ = kBlockBytes;
};

}  // namespace etenon::algebra
