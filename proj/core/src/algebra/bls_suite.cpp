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

#include <algorithm>
#include <array>
#include <cstring>

#include "etenon/algebra/group.hpp"
#include "etenon/error.hpp"

namespace etenon::algebra {
namespace {

// Group order r of BLS12-381.
constexpr const char* kOrderHex =
    "73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001";
constexpr std::string_view kHashDst = "ETN-H-V01-BLS12381G2_XMD:SHA-256_SSWU_RO_";

constexpr std::uint8_t kHasFirst = 0x01;
constexpr std::uint8_t kHasSecond = 0x02;
constexpr std::size_t kFirstBytes = 48;
constexpr std::size_t kSecondBytes = 96;
constexpr std::size_t kTargetBytes = 48 * 12;

const DualRep& dual(const G0Element& e) {
  const auto* d = std::get_if<DualRep>(&e.rep());
  if (d == nullptr) throw InvalidArgument("element is not from BLS12-381");
  return *d;
}

const blst_fp12& target(const G1Element& e) {
  const auto* f = std::get_if<blst_fp12>(&e.rep());
  if (f == nullptr) throw InvalidArgument("element is not from BLS12-381");
  return *f;
}

blst_scalar to_blst_scalar(const Scalar& k) {
  const auto be = k.encode();  // 32 bytes for r
  blst_scalar s;
  blst_scalar_from_bendian(&s, be.data());
  return s;
}

blst_fp12 fp12_pow(const blst_fp12& base, const Scalar& k) {
  blst_fp12 acc = *blst_fp12_one();
  const mpz_srcptr e = k.value().get_mpz_t();
  const auto bits = static_cast<long>(mpz_sizeinbase(e, 2));
  if (mpz_sgn(e) == 0) return acc;
  for (long i = bits - 1; i >= 0; --i) {
    blst_fp12_cyclotomic_sqr(&acc, &acc);
    if (mpz_tstbit(e, static_cast<mp_bitcnt_t>(i)) != 0) blst_fp12_mul(&acc, &acc, &base);
  }
  return acc;
}

class BlsSuite final : public GroupSuite {
 public:
  BlsSuite() : GroupSuite(ScalarField::create(mpz_class(kOrderHex, 16))) {}

  std::string id() const override { return "bls12-381"; }

  G0Element generator() const override {
    return G0Element(DualRep{*blst_p1_generator(), *blst_p2_generator()});
  }

  G0Element identity0() const override {
    blst_p1 a{};
    blst_p2 b{};
    return G0Element(DualRep{a, b});
  }

  G1Element identity1() const override { return G1Element(*blst_fp12_one()); }

  bool is_identity(const G0Element& a) const override {
    const auto& d = dual(a);
    if (d.first) return blst_p1_is_inf(&*d.first);
    if (d.second) return blst_p2_is_inf(&*d.second);
    return true;
  }

  bool is_identity(const G1Element& a) const override {
    return blst_fp12_is_one(&target(a));
  }

  Bytes encode(const G0Element& a) const override {
    const auto& d = dual(a);
    Bytes out{static_cast<std::uint8_t>((d.first ? kHasFirst : 0) |
                                        (d.second ? kHasSecond : 0))};
    if (d.first) {
      std::array<std::uint8_t, kFirstBytes> buf{};
      blst_p1_compress(buf.data(), &*d.first);
      out.insert(out.end(), buf.begin(), buf.end());
    }
    if (d.second) {
      std::array<std::uint8_t, kSecondBytes> buf{};
      blst_p2_compress(buf.data(), &*d.second);
      out.insert(out.end(), buf.begin(), buf.end());
    }
    return out;
  }

  Bytes encode(const G1Element& a) const override {
    Bytes out(kTargetBytes);
    blst_bendian_from_fp12(out.data(), &target(a));
    return out;
  }

  G0Element decode_g0(std::span<const std::uint8_t> bytes) const override {
    if (bytes.empty()) throw DecodeError("empty group element");
    const std::uint8_t flags = bytes[0];
    if (flags == 0 || (flags & ~(kHasFirst | kHasSecond)) != 0) {
      throw DecodeError("bad group element flags");
    }
    const std::size_t expect = 1 + ((flags & kHasFirst) ? kFirstBytes : 0) +
                               ((flags & kHasSecond) ? kSecondBytes : 0);
    if (bytes.size() != expect) throw DecodeError("group element has wrong length");
    DualRep out;
    std::size_t pos = 1;
    if (flags & kHasFirst) {
      blst_p1_affine aff;
      if (blst_p1_uncompress(&aff, bytes.data() + pos) != BLST_SUCCESS ||
          !blst_p1_affine_in_g1(&aff)) {
        throw DecodeError("invalid G1 point");
      }
      blst_p1 p;
      blst_p1_from_affine(&p, &aff);
      out.first = p;
      pos += kFirstBytes;
    }
    if (flags & kHasSecond) {
      blst_p2_affine aff;
      if (blst_p2_uncompress(&aff, bytes.data() + pos) != BLST_SUCCESS ||
          !blst_p2_affine_in_g2(&aff)) {
        throw DecodeError("invalid G2 point");
      }
      blst_p2 p;
      blst_p2_from_affine(&p, &aff);
      out.second = p;
    }
    return G0Element(std::move(out));
  }

  G1Element decode_g1(std::span<const std::uint8_t> bytes) const override {
    if (bytes.size() != kTargetBytes) throw DecodeError("target element has wrong length");
    blst_fp12 f;
    const std::uint8_t* in = bytes.data();
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 2; ++j) {
        blst_fp_from_bendian(&f.fp6[j].fp2[i].fp[0], in);
        in += 48;
        blst_fp_from_bendian(&f.fp6[j].fp2[i].fp[1], in);
        in += 48;
      }
    }
    Bytes check(kTargetBytes);
    blst_bendian_from_fp12(check.data(), &f);
    if (!std::equal(check.begin(), check.end(), bytes.begin()) || !blst_fp12_in_group(&f)) {
      throw DecodeError("invalid target group element");
    }
    return G1Element(f);
  }

 protected:
  G0Element do_mul(const G0Element& a, const G0Element& b) const override {
    const auto& x = dual(a);
    const auto& y = dual(b);
    DualRep out;
    if (x.first && y.first) {
      blst_p1 p;
      blst_p1_add_or_double(&p, &*x.first, &*y.first);
      out.first = p;
    }
    if (x.second && y.second) {
      blst_p2 p;
      blst_p2_add_or_double(&p, &*x.second, &*y.second);
      out.second = p;
    }
    if (!out.first && !out.second) throw InvalidArgument("operands share no source group");
    return G0Element(std::move(out));
  }

  G0Element do_exp(const G0Element& a, const Scalar& k) const override {
    const auto& x = dual(a);
    const blst_scalar s = to_blst_scalar(k);
    DualRep out;
    if (x.first) {
      blst_p1 p;
      blst_p1_mult(&p, &*x.first, s.b, 255);
      out.first = p;
    }
    if (x.second) {
      blst_p2 p;
      blst_p2_mult(&p, &*x.second, s.b, 255);
      out.second = p;
    }
    return G0Element(std::move(out));
  }

  G0Element do_inverse(const G0Element& a) const override {
    DualRep out = dual(a);
    if (out.first) blst_p1_cneg(&*out.first, true);
    if (out.second) blst_p2_cneg(&*out.second, true);
    return G0Element(std::move(out));
  }

  G1Element do_mul(const G1Element& a, const G1Element& b) const override {
    blst_fp12 r;
    blst_fp12_mul(&r, &target(a), &target(b));
    return G1Element(r);
  }

  G1Element do_exp(const G1Element& a, const Scalar& k) const override {
    return G1Element(fp12_pow(target(a), k));
  }

  G1Element do_inverse(const G1Element& a) const override {
    blst_fp12 r = target(a);
    blst_fp12_conjugate(&r);  // inverse on the cyclotomic subgroup
    return G1Element(r);
  }

  G1Element do_pair(const G0Element& a, const G0Element& b) const override {
    const auto& x = dual(a);
    const auto& y = dual(b);
    const blst_p1* p = nullptr;
    const blst_p2* q = nullptr;
    if (x.first && y.second) {
      p = &*x.first;
      q = &*y.second;
    } else if (y.first && x.second) {
      p = &*y.first;
      q = &*x.second;
    } else {
      throw InvalidArgument("pairing needs one operand with a first-group component");
    }
    if (blst_p1_is_inf(p) || blst_p2_is_inf(q)) return identity1();
    blst_p1_affine pa;
    blst_p2_affine qa;
    blst_p1_to_affine(&pa, p);
    blst_p2_to_affine(&qa, q);
    blst_fp12 ml;
    blst_miller_loop(&ml, &qa, &pa);
    blst_fp12 r;
    blst_final_exp(&r, &ml);
    return G1Element(r);
  }

  G0Element do_hash_to_group(std::span<const std::uint8_t> label) const override {
    blst_p2 q;
    blst_hash_to_g2(&q, label.data(), label.size(),
                    reinterpret_cast<const std::uint8_t*>(kHashDst.data()), kHashDst.size(),
                    nullptr, 0);
    return G0Element(DualRep{std::nullopt, q});
  }
};

}  // namespace

SuitePtr make_bls12_381_suite() {
  static const SuitePtr suite = std::make_shared<const BlsSuite>();
  return suite;
}

}  // namespace etenon::algebra
