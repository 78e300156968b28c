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

#include "etenon/algebra/scalar.hpp"

#include <algorithm>

#include "etenon/error.hpp"

namespace etenon::algebra {
namespace {

mpz_class import_be(std::span<const std::uint8_t> bytes) {
  mpz_class v;
  if (!bytes.empty()) {
    mpz_import(v.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  }
  return v;
}

mpz_class reduce(const mpz_class& v, const mpz_class& p) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return r;
}

}  // namespace

std::shared_ptr<const ScalarField> ScalarField::create(const mpz_class& modulus) {
  if (modulus < 2 || mpz_probab_prime_p(modulus.get_mpz_t(), 40) == 0) {
    throw InvalidArgument("scalar field modulus must be prime");
  }
  return std::make_shared<const ScalarField>(Token{}, modulus);
}

ScalarField::ScalarField(Token, const mpz_class& modulus)
    : modulus_(modulus),
      byte_width_((mpz_sizeinbase(modulus.get_mpz_t(), 2) + 7) / 8),
      bit_width_(mpz_sizeinbase(modulus.get_mpz_t(), 2)) {}

Scalar ScalarField::zero() const { return Scalar(shared_from_this(), 0); }
Scalar ScalarField::one() const { return Scalar(shared_from_this(), 1); }

Scalar ScalarField::from_integer(const mpz_class& value) const {
  return Scalar(shared_from_this(), reduce(value, modulus_));
}

Scalar ScalarField::from_u64(std::uint64_t value) const {
  mpz_class v;
  mpz_import(v.get_mpz_t(), 1, 1, sizeof(value), 0, 0, &value);
  return from_integer(v);
}

Scalar ScalarField::from_bytes_reduce(std::span<const std::uint8_t> bytes) const {
  return from_integer(import_be(bytes));
}

Scalar ScalarField::decode(std::span<const std::uint8_t> bytes) const {
  if (bytes.size() != byte_width_) throw DecodeError("scalar has wrong width");
  mpz_class v = import_be(bytes);
  if (v >= modulus_) throw DecodeError("scalar not reduced");
  return Scalar(shared_from_this(), std::move(v));
}

Scalar ScalarField::random(Rng& rng) const {
  // 128 extra bits make the modular bias negligible.
  std::vector<std::uint8_t> buf(byte_width_ + 16);
  rng.fill(buf);
  return from_bytes_reduce(buf);
}

Scalar ScalarField::random_nonzero(Rng& rng) const {
  for (;;) {
    Scalar s = random(rng);
    if (!s.is_zero()) return s;
  }
}

const ScalarField& Scalar::field() const {
  if (!field_) throw InvalidArgument("uninitialised scalar");
  return *field_;
}

const ScalarField& Scalar::checked_same(const Scalar& other) const {
  const ScalarField& f = field();
  if (&f != &other.field() && f.modulus() != other.field().modulus()) {
    throw InvalidArgument("scalars from different fields");
  }
  return f;
}

Scalar Scalar::operator+(const Scalar& other) const {
  const auto& f = checked_same(other);
  mpz_class r = value_ + other.value_;
  if (r >= f.modulus()) r -= f.modulus();
  return Scalar(field_, std::move(r));
}

Scalar Scalar::operator-(const Scalar& other) const {
  const auto& f = checked_same(other);
  mpz_class r = value_ - other.value_;
  if (r < 0) r += f.modulus();
  return Scalar(field_, std::move(r));
}

Scalar Scalar::operator*(const Scalar& other) const {
  const auto& f = checked_same(other);
  return Scalar(field_, reduce(value_ * other.value_, f.modulus()));
}

Scalar Scalar::operator-() const {
  const auto& f = field();
  if (value_ == 0) return *this;
  return Scalar(field_, f.modulus() - value_);
}

Scalar Scalar::inverse() const {
  const auto& f = field();
  if (value_ == 0) throw InvalidArgument("zero has no inverse");
  mpz_class r;
  mpz_invert(r.get_mpz_t(), value_.get_mpz_t(), f.modulus().get_mpz_t());
  return Scalar(field_, std::move(r));
}

bool Scalar::operator==(const Scalar& other) const {
  if (!field_ || !other.field_) return field_ == other.field_ && value_ == other.value_;
  return field_->modulus() == other.field_->modulus() && value_ == other.value_;
}

std::vector<std::uint8_t> Scalar::encode() const {
  const std::size_t width = field().byte_width();
  std::vector<std::uint8_t> out(width, 0);
  std::size_t count = 0;
  std::vector<std::uint8_t> tmp((mpz_sizeinbase(value_.get_mpz_t(), 2) + 7) / 8 + 1);
  mpz_export(tmp.data(), &count, 1, 1, 1, 0, value_.get_mpz_t());
  std::copy(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(count),
            out.end() - static_cast<std::ptrdiff_t>(count));
  return out;
}

std::uint64_t Scalar::to_u64() const {
  if (mpz_sizeinbase(value_.get_mpz_t(), 2) > 64) {
    throw InvalidArgument("scalar does not fit in 64 bits");
  }
  std::uint64_t v = 0;
  mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, value_.get_mpz_t());
  return v;
}

}  // namespace etenon::algebra
