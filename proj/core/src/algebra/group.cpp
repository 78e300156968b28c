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

#include "etenon/algebra/group.hpp"

#include <charconv>

#include "etenon/algebra/counters.hpp"
#include "etenon/error.hpp"

namespace etenon::algebra {
namespace {

bool dual_equal(const DualRep& a, const DualRep& b) {
  bool shared = false;
  if (a.first && b.first) {
    shared = true;
    if (!blst_p1_is_equal(&*a.first, &*b.first)) return false;
  }
  if (a.second && b.second) {
    shared = true;
    if (!blst_p2_is_equal(&*a.second, &*b.second)) return false;
  }
  return shared;
}

void check_field(const GroupSuite& suite, const Scalar& k) {
  if (k.field().modulus() != suite.order()) {
    throw InvalidArgument("scalar belongs to a different group order");
  }
}

}  // namespace

bool G0Element::operator==(const G0Element& other) const {
  if (rep_.index() != other.rep_.index()) return false;
  if (const auto* m = std::get_if<MockRep>(&rep_)) {
    return m->exponent == std::get<MockRep>(other.rep_).exponent;
  }
  if (const auto* d = std::get_if<DualRep>(&rep_)) {
    return dual_equal(*d, std::get<DualRep>(other.rep_));
  }
  return true;
}

bool G1Element::operator==(const G1Element& other) const {
  if (rep_.index() != other.rep_.index()) return false;
  if (const auto* m = std::get_if<MockRep>(&rep_)) {
    return m->exponent == std::get<MockRep>(other.rep_).exponent;
  }
  if (const auto* f = std::get_if<blst_fp12>(&rep_)) {
    return blst_fp12_is_equal(f, &std::get<blst_fp12>(other.rep_));
  }
  return true;
}

G0Element GroupSuite::mul(const G0Element& a, const G0Element& b) const {
  ++thread_op_counters().multiplications;
  return do_mul(a, b);
}

G0Element GroupSuite::exp(const G0Element& a, const Scalar& k) const {
  check_field(*this, k);
  ++thread_op_counters().exponentiations;
  return do_exp(a, k);
}

G0Element GroupSuite::inverse(const G0Element& a) const { return do_inverse(a); }

G1Element GroupSuite::mul(const G1Element& a, const G1Element& b) const {
  ++thread_op_counters().multiplications;
  return do_mul(a, b);
}

G1Element GroupSuite::exp(const G1Element& a, const Scalar& k) const {
  check_field(*this, k);
  ++thread_op_counters().exponentiations;
  return do_exp(a, k);
}

G1Element GroupSuite::inverse(const G1Element& a) const { return do_inverse(a); }

G1Element GroupSuite::div(const G1Element& a, const G1Element& b) const {
  return mul(a, do_inverse(b));
}

G1Element GroupSuite::pair(const G0Element& a, const G0Element& b) const {
  ++thread_op_counters().pairings;
  return do_pair(a, b);
}

G0Element GroupSuite::hash_to_group(std::span<const std::uint8_t> label) const {
  ++thread_op_counters().hashes;
  return do_hash_to_group(label);
}

G0Element GroupSuite::hash_to_group(std::string_view label) const {
  return hash_to_group(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(label.data()), label.size()));
}

Digest GroupSuite::hash_commit(std::span<const std::uint8_t> msg) const {
  ++thread_op_counters().hashes;
  return algebra::hash_commit(msg);
}

Scalar GroupSuite::hash_challenge(std::span<const std::uint8_t> msg) const {
  ++thread_op_counters().hashes;
  return scalars().from_bytes_reduce(hash_challenge_digest(msg));
}

std::optional<Scalar> GroupSuite::discrete_log(const G0Element&) const {
  return std::nullopt;
}

std::optional<Scalar> GroupSuite::discrete_log(const G1Element&) const {
  return std::nullopt;
}

SuitePtr suite_from_id(std::string_view id) {
  if (id == "bls12-381") return make_bls12_381_suite();
  if (id == "mock") return make_mock_suite();
  constexpr std::string_view kMockPrefix = "mock-";
  if (id.starts_with(kMockPrefix)) {
    const auto digits = id.substr(kMockPrefix.size());
    std::uint64_t prime = 0;
    const auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), prime);
    if (ec == std::errc{} && ptr == digits.data() + digits.size()) {
      return make_mock_suite(prime);
    }
  }
  throw InvalidArgument("unknown group suite '" + std::string(id) + "'");
}

}  // namespace etenon::algebra
