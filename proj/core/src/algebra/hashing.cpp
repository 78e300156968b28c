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

#include "etenon/algebra/hashing.hpp"

#include <cstring>
#include <new>

#include <sodium.h>

#include "etenon/error.hpp"

namespace etenon::algebra {
namespace {

static_assert(sizeof(crypto_hash_sha256_state) <= 128);

crypto_hash_sha256_state* as_state(std::array<std::uint8_t, 128>& raw) {
  return reinterpret_cast<crypto_hash_sha256_state*>(raw.data());
}

Digest domain_hash(std::string_view domain, std::span<const std::uint8_t> msg) {
  Sha256 h;
  h.update(domain);
  h.update(msg);
  return h.finish();
}

}  // namespace

Sha256::Sha256() { crypto_hash_sha256_init(as_state(state_)); }

Sha256& Sha256::update(std::span<const std::uint8_t> data) {
  crypto_hash_sha256_update(as_state(state_), data.data(), data.size());
  return *this;
}

Sha256& Sha256::update(std::string_view data) {
  return update(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

Sha256& Sha256::update_framed(std::span<const std::uint8_t> data) {
  Bytes len;
  append_u64(len, data.size());
  update(len);
  return update(data);
}

Sha256& Sha256::update_framed(std::string_view data) {
  return update_framed(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

Digest Sha256::finish() {
  Digest out{};
  crypto_hash_sha256_final(as_state(state_), out.data());
  return out;
}

Digest sha256(std::span<const std::uint8_t> data) {
  Digest out{};
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

Digest hash_commit(std::span<const std::uint8_t> msg) {
  return domain_hash(kCommitDomain, msg);
}

Digest hash_challenge_digest(std::span<const std::uint8_t> msg) {
  return domain_hash(kChallengeDomain, msg);
}

Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

std::string to_hex(std::span<const std::uint8_t> data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::string base64_encode(std::span<const std::uint8_t> data) {
  const auto variant = sodium_base64_VARIANT_ORIGINAL;
  std::string out(sodium_base64_ENCODED_LEN(data.size(), variant), '\0');
  sodium_bin2base64(out.data(), out.size(), data.data(), data.size(), variant);
  out.resize(std::strlen(out.c_str()));
  return out;
}

Bytes base64_decode(std::string_view text) {
  Bytes out(text.size() / 4 * 3 + 3);
  std::size_t len = 0;
  const char* end = nullptr;
  if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), nullptr,
                        &len, &end, sodium_base64_VARIANT_ORIGINAL) != 0 ||
      end != text.data() + text.size()) {
    throw DecodeError("malformed base64");
  }
  out.resize(len);
  return out;
}

void append_framed(Bytes& out, std::span<const std::uint8_t> data) {
  const auto n = static_cast<std::uint32_t>(data.size());
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>((n >> shift) & 0xff));
  }
  out.insert(out.end(), data.begin(), data.end());
}

void append_u64(Bytes& out, std::uint64_t value) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>((value >> shift) & 0xff));
  }
}

}  // namespace etenon::algebra
