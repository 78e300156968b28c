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

#include <string>

#include "etenon/algebra/group.hpp"
#include "etenon/error.hpp"

namespace etenon::algebra {
namespace {

constexpr std::uint8_t kG0Tag = 'M';
constexpr std::uint8_t kG1Tag = 'T';

class MockSuite final : public GroupSuite {
 public:
  explicit MockSuite(std::uint64_t prime)
      : GroupSuite(ScalarField::create(mpz_class(std::to_string(prime)))),
        p_(prime) {}

  std::string id() const override { return "mock-" + std::to_string(p_); }

  G0Element generator() const override { return G0Element(MockRep{1}); }
  G0Element identity0() const override { return G0Element(MockRep{0}); }
  G1Element identity1() const override { return G1Element(MockRep{0}); }
  bool is_identity(const G0Element& a) const override { return exponent(a) == 0; }
  bool is_identity(const G1Element& a) const override { return exponent(a) == 0; }

  Bytes encode(const G0Element& a) const override { return encode_tagged(kG0Tag, exponent(a)); }
  Bytes encode(const G1Element& a) const override { return encode_tagged(kG1Tag, exponent(a)); }

  G0Element decode_g0(std::span<const std::uint8_t> bytes) const override {
    return G0Element(MockRep{decode_tagged(kG0Tag, bytes)});
  }
  G1Element decode_g1(std::span<const std::uint8_t> bytes) const override {
    return G1Element(MockRep{decode_tagged(kG1Tag, bytes)});
  }

  std::optional<Scalar> discrete_log(const G0Element& a) const override {
    return scalars().from_u64(exponent(a));
  }
  std::optional<Scalar> discrete_log(const G1Element& a) const override {
    return scalars().from_u64(exponent(a));
  }

 protected:
  G0Element do_mul(const G0Element& a, const G0Element& b) const override {
    return G0Element(MockRep{add(exponent(a), exponent(b))});
  }
  G0Element do_exp(const G0Element& a, const Scalar& k) const override {
    return G0Element(MockRep{mulmod(exponent(a), k.to_u64())});
  }
  G0Element do_inverse(const G0Element& a) const override {
    return G0Element(MockRep{neg(exponent(a))});
  }
  G1Element do_mul(const G1Element& a, const G1Element& b) const override {
    return G1Element(MockRep{add(exponent(a), exponent(b))});
  }
  G1Element do_exp(const G1Element& a, const Scalar& k) const override {
    return G1Element(MockRep{mulmod(exponent(a), k.to_u64())});
  }
  G1Element do_inverse(const G1Element& a) const override {
    return G1Element(MockRep{neg(exponent(a))});
  }
  G1Element do_pair(const G0Element& a, const G0Element& b) const override {
    return G1Element(MockRep{mulmod(exponent(a), exponent(b))});
  }
  G0Element do_hash_to_group(std::span<const std::uint8_t> label) const override {
    const Digest d = algebra::hash_commit(label);
    std::uint64_t h = scalars().from_bytes_reduce(d).to_u64();
    if (h == 0) h = 1;
    return G0Element(MockRep{h});
  }

 private:
  template <typename E>
  std::uint64_t exponent(const E& e) const {
    const auto* m = std::get_if<MockRep>(&e.rep());
    if (m == nullptr) throw InvalidArgument("element is not from a mock group");
    return m->exponent;
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;  // p < 2^62, no overflow
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const {
    __extension__ using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % p_);
  }

  static Bytes encode_tagged(std::uint8_t tag, std::uint64_t x) {
    Bytes out{tag};
    append_u64(out, x);
    return out;
  }

  std::uint64_t decode_tagged(std::uint8_t tag, std::span<const std::uint8_t> bytes) const {
    if (bytes.size() != 9 || bytes[0] != tag) throw DecodeError("malformed mock element");
    std::uint64_t x = 0;
    for (std::size_t i = 1; i < 9; ++i) x = (x << 8) | bytes[i];
    if (x >= p_) throw DecodeError("mock element out of range");
    return x;
  }

  std::uint64_t p_;
};

}  // namespace

SuitePtr make_mock_suite(std::uint64_t prime) {
  if (prime >= (std::uint64_t{1} << 62)) {
    throw InvalidArgument("mock prime must be below 2^62");
  }
  return std::make_shared<const MockSuite>(prime);
}

}  // namespace etenon::algebra
