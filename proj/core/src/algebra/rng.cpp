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

#include "etenon/algebra/rng.hpp"

#include <cstring>
#include <stdexcept>

#include <sodium.h>

#include "etenon/algebra/hashing.hpp"

namespace etenon::algebra {
namespace {

void ensure_sodium() {
  static const bool ready = [] { return sodium_init() >= 0; }();
  if (!ready) throw std::runtime_error("libsodium initialisation failed");
}

}  // namespace

Rng::Rng(std::span<const std::uint8_t, 32> key) {
  ensure_sodium();
  std::memcpy(key_.data(), key.data(), key_.size());
}

Rng::~Rng() {
  sodium_memzero(key_.data(), key_.size());
  sodium_memzero(buffer_.data(), buffer_.size());
}

Rng Rng::from_seed(std::uint64_t seed) {
  Sha256 h;
  h.update("ETN-RNG-SEED");
  Bytes be;
  append_u64(be, seed);
  h.update(be);
  const Digest key = h.finish();
  return Rng(std::span<const std::uint8_t, 32>(key));
}

Rng Rng::from_key(std::span<const std::uint8_t, 32> key) { return Rng(key); }

Rng Rng::from_os() {
  ensure_sodium();
  std::array<std::uint8_t, 32> key{};
  randombytes_buf(key.data(), key.size());
  Rng rng{std::span<const std::uint8_t, 32>(key)};
  sodium_memzero(key.data(), key.size());
  return rng;
}

void Rng::refill() {
  std::array<std::uint8_t, crypto_stream_chacha20_NONCEBYTES> nonce{};
  static_assert(crypto_stream_chacha20_NONCEBYTES == 8);
  std::uint64_t n = nonce_++;
  for (int i = 7; i >= 0; --i) {
    nonce[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(n & 0xff);
    n >>= 8;
  }
  crypto_stream_chacha20(buffer_.data(), buffer_.size(), nonce.data(), key_.data());
  pos_ = 0;
}

void Rng::fill(std::span<std::uint8_t> out) {
  std::size_t written = 0;
  while (written < out.size()) {
    if (pos_ == buffer_.size()) refill();
    const std::size_t take = std::min(out.size() - written, buffer_.size() - pos_);
    std::memcpy(out.data() + written, buffer_.data() + pos_, take);
    // Consumed keystream is wiped so a later memory read cannot replay it.
    sodium_memzero(buffer_.data() + pos_, take);
    pos_ += take;
    written += take;
  }
}

Rng::result_type Rng::operator()() {
  std::array<std::uint8_t, 8> b{};
  fill(b);
  result_type v = 0;
  for (auto byte : b) v = (v << 8) | byte;
  return v;
}

Rng Rng::fork(std::string_view label) {
  std::array<std::uint8_t, 32> material{};
  fill(material);
  Sha256 h;
  h.update("ETN-RNG-FORK");
  h.update(material);
  h.update_framed(label);
  const Digest key = h.finish();
  return Rng(std::span<const std::uint8_t, 32>(key));
}

}  // namespace etenon::algebra
