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
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "etenon/algebra/rng.hpp"

namespace etenon::algebra {

class Scalar;

/// The prime field Z_p shared by a group suite. Always held by shared_ptr so
/// scalars can keep their modulus alive.
class ScalarField : public std::enable_shared_from_this<ScalarField> {
 public:
  /// Throws InvalidArgument if `modulus` is not (probably) prime.
  static std::shared_ptr<const ScalarField> create(const mpz_class& modulus);

  const mpz_class& modulus() const { return modulus_; }
  std::size_t byte_width() const { return byte_width_; }
  std::size_t bit_width() const { return bit_width_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_integer(const mpz_class& value) const;  // reduced mod p
  Scalar from_u64(std::uint64_t value) const;
  /// Interprets big-endian bytes as an integer and reduces mod p.
  Scalar from_bytes_reduce(std::span<const std::uint8_t> bytes) const;
  /// Strict decoding: exactly byte_width() bytes encoding a value < p.
  Scalar decode(std::span<const std::uint8_t> bytes) const;

  Scalar random(Rng& rng) const;
  Scalar random_nonzero(Rng& rng) const;

 private:
  struct Token {};

 public:
  ScalarField(Token, const mpz_class& modulus);

 private:
  mpz_class modulus_;
  std::size_t byte_width_;
  std::size_t bit_width_;
};

/// Element of Z_p. Arithmetic between scalars of different fields throws.
class Scalar {
 public:
  Scalar() = default;

  const mpz_class& value() const { return value_; }
  const ScalarField& field() const;
  bool valid() const { return field_ != nullptr; }
  bool is_zero() const { return value_ == 0; }

  Scalar operator+(const Scalar& other) const;
  Scalar operator-(const Scalar& other) const;
  Scalar operator*(const Scalar& other) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other) { return *this = *this + other; }
  Scalar& operator*=(const Scalar& other) { return *this = *this * other; }
  /// Multiplicative inverse; throws InvalidArgument for zero.
  Scalar inverse() const;

  bool operator==(const Scalar& other) const;

  /// Big-endian, field().byte_width() bytes.
  std::vector<std::uint8_t> encode() const;
  std::string to_string() const { return value_.get_str(); }
  /// Only meaningful when the value fits; used by the small mock groups.
  std::uint64_t to_u64() const;

 private:
  friend class ScalarField;
  Scalar(std::shared_ptr<const ScalarField> field, mpz_class value)
      : field_(std::move(field)), value_(std::move(value)) {}
  const ScalarField& checked_same(const Scalar& other) const;

  std::shared_ptr<const ScalarField> field_;
  mpz_class value_;
};

}  // namespace etenon::algebra
