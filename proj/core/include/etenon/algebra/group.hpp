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
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <blst.h>

#include "etenon/algebra/hashing.hpp"
#include "etenon/algebra/rng.hpp"
#include "etenon/algebra/scalar.hpp"

namespace etenon::algebra {

/// Mock representation: the element g^x (or e(g,g)^x) stored as x mod p.
struct MockRep {
  std::uint64_t exponent = 0;
};

/// Source-group element on BLS12-381. The pairing is symmetric at the
/// interface, so an element carries the same discrete log in both source
/// groups when it is derived from the generator. Hash outputs have no
/// known discrete log and live in the second group only.
struct DualRep {
  std::optional<blst_p1> first;
  std::optional<blst_p2> second;
};

/// Element of the source group G0.
class G0Element {
 public:
  using Rep = std::variant<std::monostate, MockRep, DualRep>;

  G0Element() = default;
  explicit G0Element(Rep rep) : rep_(std::move(rep)) {}

  const Rep& rep() const { return rep_; }
  bool empty() const { return std::holds_alternative<std::monostate>(rep_); }

  /// Equal when both carry the same value in every source group they share.
  bool operator==(const G0Element& other) const;

 private:
  Rep rep_;
};

/// Element of the target group G1.
class G1Element {
 public:
  using Rep = std::variant<std::monostate, MockRep, blst_fp12>;

  G1Element() = default;
  explicit G1Element(Rep rep) : rep_(std::move(rep)) {}

  const Rep& rep() const { return rep_; }
  bool empty() const { return std::holds_alternative<std::monostate>(rep_); }
  bool operator==(const G1Element& other) const;

 private:
  Rep rep_;
};

/// Bilinear group e: G0 x G0 -> G1 of prime order p, with the hash
/// functions the protocols need. Public calls are tallied in
/// thread_op_counters(); implementations override the do_* hooks.
class GroupSuite {
 public:
  virtual ~GroupSuite() = default;

  virtual std::string id() const = 0;

  const ScalarField& scalars() const { return *field_; }
  std::shared_ptr<const ScalarField> scalar_field() const { return field_; }
  const mpz_class& order() const { return field_->modulus(); }

  virtual G0Element generator() const = 0;
  virtual G0Element identity0() const = 0;
  virtual G1Element identity1() const = 0;
  virtual bool is_identity(const G0Element& a) const = 0;
  virtual bool is_identity(const G1Element& a) const = 0;

  G0Element mul(const G0Element& a, const G0Element& b) const;
  G0Element exp(const G0Element& a, const Scalar& k) const;
  G0Element inverse(const G0Element& a) const;
  G1Element mul(const G1Element& a, const G1Element& b) const;
  G1Element exp(const G1Element& a, const Scalar& k) const;
  G1Element inverse(const G1Element& a) const;
  G1Element div(const G1Element& a, const G1Element& b) const;

  /// g^k for the fixed generator.
  G0Element exp_g(const Scalar& k) const { return exp(generator(), k); }

  G1Element pair(const G0Element& a, const G0Element& b) const;

  /// H: byte-string -> G0, deterministic, never the identity.
  G0Element hash_to_group(std::span<const std::uint8_t> label) const;
  G0Element hash_to_group(std::string_view label) const;

  /// H0 (commitment digest, l0 = 256 bits).
  Digest hash_commit(std::span<const std::uint8_t> msg) const;
  /// H1 (l1 = 256 bits) reduced into Z_p.
  Scalar hash_challenge(std::span<const std::uint8_t> msg) const;

  virtual Bytes encode(const G0Element& a) const = 0;
  virtual Bytes encode(const G1Element& a) const = 0;
  /// Throws DecodeError on malformed or out-of-group input.
  virtual G0Element decode_g0(std::span<const std::uint8_t> bytes) const = 0;
  virtual G1Element decode_g1(std::span<const std::uint8_t> bytes) const = 0;

  G1Element random_g1(Rng& rng) const { return exp(pair(generator(), generator()), scalars().random_nonzero(rng)); }

  /// Exponent extraction; only the mock suite supports it.
  virtual std::optional<Scalar> discrete_log(const G0Element& a) const;
  virtual std::optional<Scalar> discrete_log(const G1Element& a) const;

 protected:
  explicit GroupSuite(std::shared_ptr<const ScalarField> field)
      : field_(std::move(field)) {}

  virtual G0Element do_mul(const G0Element& a, const G0Element& b) const = 0;
  virtual G0Element do_exp(const G0Element& a, const Scalar& k) const = 0;
  virtual G0Element do_inverse(const G0Element& a) const = 0;
  virtual G1Element do_mul(const G1Element& a, const G1Element& b) const = 0;
  virtual G1Element do_exp(const G1Element& a, const Scalar& k) const = 0;
  virtual G1Element do_inverse(const G1Element& a) const = 0;
  virtual G1Element do_pair(const G0Element& a, const G0Element& b) const = 0;
  virtual G0Element do_hash_to_group(std::span<const std::uint8_t> label) const = 0;

 private:
  std::shared_ptr<const ScalarField> field_;
};

using SuitePtr = std::shared_ptr<const GroupSuite>;

/// Default prime for randomized mock runs: the Mersenne prime 2^61 - 1.
inline constexpr std::uint64_t kDefaultMockPrime = 2305843009213693951ULL;

/// Mock bilinear group: elements are exponents mod a prime p < 2^62 and the
/// pairing multiplies exponents. Discrete logs are free, which turns every
/// protocol identity into exact integer arithmetic.
SuitePtr make_mock_suite(std::uint64_t prime = kDefaultMockPrime);

/// BLS12-381 via blst, exposed with the symmetric interface described at
/// DualRep.
SuitePtr make_bls12_381_suite();

/// Resolves "bls12-381", "mock" or "mock-<prime>".
SuitePtr suite_from_id(std::string_view id);

}  // namespace etenon::algebra
