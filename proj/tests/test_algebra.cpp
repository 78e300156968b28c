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

#include <gtest/gtest.h>

#include <set>

#include "etenon/algebra/counters.hpp"
#include "etenon/algebra/group.hpp"
#include "etenon/algebra/hashing.hpp"
#include "etenon/algebra/rng.hpp"
#include "etenon/error.hpp"

using namespace etenon;
using namespace etenon::algebra;

namespace {

std::vector<SuitePtr> both_suites() { return {make_mock_suite(), make_bls12_381_suite()}; }

std::uint64_t mock_log(const GroupSuite& s, const G0Element& a) { return s.discrete_log(a)->to_u64(); }

}  // namespace

TEST(Hashing, CommitDigestFrozen) {
  // SHA-256 over the domain tag followed by the message, computed offline.
  EXPECT_EQ(to_hex(hash_commit(to_bytes("x"))),
            "d1a8bcfb861716656b3587efd4e106e70be988fb440cea13c542e9fc54db5b93");
  EXPECT_EQ(to_hex(hash_challenge_digest(to_bytes("x"))),
            "2211df5ae337120cbe0f70e2a64142b3289ab57a1a4a0ff9689ad01664457d41");
}

TEST(Hashing, CommitIsDeterministic) {
  EXPECT_EQ(hash_commit(to_bytes("same")), hash_commit(to_bytes("same")));
}

TEST(Hashing, DomainsDiffer) {
  EXPECT_NE(hash_commit(to_bytes("x")), hash_challenge_digest(to_bytes("x")));
}

TEST(Hashing, ChallengeOfEmptyMessage) {
  auto s = make_mock_suite();
  Scalar c = s->hash_challenge({});
  EXPECT_LT(c.value(), s->order());
  EXPECT_EQ(c.to_u64(), 561196603819182759ULL);
  auto b = make_bls12_381_suite();
  EXPECT_LT(b->hash_challenge({}).value(), b->order());
}

TEST(Hashing, Base64RoundTripAndRejects) {
  Bytes data{0, 1, 2, 250, 255};
  EXPECT_EQ(base64_decode(base64_encode(data)), data);
  EXPECT_THROW(base64_decode("!!!"), DecodeError);
}

TEST(Scalar, FieldBasics) {
  auto f = ScalarField::create(101);
  EXPECT_EQ((f->from_u64(100) + f->from_u64(5)).to_u64(), 4u);
  EXPECT_EQ((f->from_u64(7) * f->from_u64(7).inverse()).to_u64(), 1u);
  EXPECT_THROW(f->zero().inverse(), InvalidArgument);
  EXPECT_THROW(ScalarField::create(100), InvalidArgument);
  auto g = ScalarField::create(103);
  EXPECT_THROW(f->one() + g->one(), InvalidArgument);
}

TEST(Scalar, StrictDecode) {
  auto f = ScalarField::create(101);
  EXPECT_EQ(f->decode(f->from_u64(42).encode()).to_u64(), 42u);
  EXPECT_THROW(f->decode(Bytes{101}), DecodeError);
  EXPECT_THROW(f->decode(Bytes{1, 2}), DecodeError);
}

TEST(Scalar, RandomStaysBelowModulus) {
  auto f = ScalarField::create(101);
  auto rng = Rng::from_seed(1);
  for (int i = 0; i < 500; ++i) {
    auto v = f->random_nonzero(rng);
    EXPECT_FALSE(v.is_zero());
    EXPECT_LT(v.value(), 101);
  }
}

TEST(Rng, SeededStreamsReproduce) {
  auto a = Rng::from_seed(9);
  auto b = Rng::from_seed(9);
  auto c = Rng::from_seed(10);
  for (int i = 0; i < 20; ++i) {
    auto x = a();
    EXPECT_EQ(x, b());
    EXPECT_NE(x, c());
  }
}

TEST(MockSuite, PairingMultipliesExponents) {
  auto s = make_mock_suite(101);
  auto e = s->pair(s->exp_g(s->scalars().from_u64(7)), s->exp_g(s->scalars().from_u64(11)));
  EXPECT_EQ(s->discrete_log(e)->to_u64(), 77u);
}

TEST(MockSuite, HashToGroupRule) {
  auto s = make_mock_suite();
  EXPECT_EQ(mock_log(*s, s->hash_to_group("a")), 1966694176701392752ULL);
  auto small = make_mock_suite(101);
  EXPECT_EQ(mock_log(*small, small->hash_to_group("a")), 49u);
  EXPECT_EQ(mock_log(*s, s->hash_to_group("doctor")), 965817485711471959ULL);
  EXPECT_EQ(mock_log(*s, s->hash_to_group("doctor ")), 973479802516031703ULL);
}

TEST(MockSuite, HashNeverIdentity) {
  auto s = make_mock_suite(101);
  for (int i = 0; i < 2000; ++i) {
    EXPECT_FALSE(s->is_identity(s->hash_to_group(std::to_string(i))));
  }
}

TEST(MockSuite, SuiteIdResolution) {
  EXPECT_EQ(suite_from_id("mock-101")->order(), 101);
  EXPECT_EQ(suite_from_id("mock")->order(), mpz_class(std::to_string(kDefaultMockPrime)));
  EXPECT_EQ(suite_from_id("bls12-381")->id(), "bls12-381");
  EXPECT_THROW(suite_from_id("p-256"), InvalidArgument);
}

TEST(BlsSuite, NoLogExtraction) {
  auto s = make_bls12_381_suite();
  EXPECT_FALSE(s->discrete_log(s->generator()).has_value());
}

TEST(BlsSuite, HashDistinguishesTrailingSpace) {
  auto s = make_bls12_381_suite();
  EXPECT_EQ(s->hash_to_group("doctor"), s->hash_to_group("doctor"));
  EXPECT_FALSE(s->hash_to_group("doctor") == s->hash_to_group("doctor "));
  EXPECT_FALSE(s->is_identity(s->hash_to_group("")));
}

TEST(GroupSuites, PairingWithZeroIsIdentity) {
  for (const auto& s : both_suites()) {
    EXPECT_TRUE(s->is_identity(s->pair(s->generator(), s->exp_g(s->scalars().zero())))) << s->id();
  }
}

TEST(GroupSuites, NonDegenerate) {
  for (const auto& s : both_suites()) {
    EXPECT_FALSE(s->is_identity(s->pair(s->generator(), s->generator()))) << s->id();
  }
}

TEST(GroupSuites, Bilinearity) {
  for (const auto& s : both_suites()) {
    auto rng = Rng::from_seed(17);
    const auto egg = s->pair(s->generator(), s->generator());
    for (int i = 0; i < 100; ++i) {
      auto x = s->scalars().random(rng);
      auto y = s->scalars().random(rng);
      EXPECT_EQ(s->pair(s->exp_g(x), s->exp_g(y)), s->exp(egg, x * y)) << s->id();
    }
  }
}

TEST(GroupSuites, Symmetry) {
  for (const auto& s : both_suites()) {
    auto rng = Rng::from_seed(18);
    for (int i = 0; i < 50; ++i) {
      auto a = s->exp_g(s->scalars().random(rng));
      auto b = s->exp_g(s->scalars().random(rng));
      EXPECT_EQ(s->pair(a, b), s->pair(b, a)) << s->id();
    }
  }
}

TEST(GroupSuites, HashOutputPairs) {
  // e(H(a)^x, g^y) = e(H(a), g)^{xy} with H(a) on either side.
  for (const auto& s : both_suites()) {
    auto rng = Rng::from_seed(19);
    auto h = s->hash_to_group("oncology");
    auto x = s->scalars().random(rng);
    auto y = s->scalars().random(rng);
    auto lhs = s->pair(s->exp(h, x), s->exp_g(y));
    EXPECT_EQ(lhs, s->exp(s->pair(h, s->generator()), x * y)) << s->id();
    EXPECT_EQ(lhs, s->pair(s->exp_g(y), s->exp(h, x))) << s->id();
  }
}

TEST(GroupSuites, GroupLaws) {
  for (const auto& s : both_suites()) {
    auto rng = Rng::from_seed(20);
    auto x = s->scalars().random(rng);
    auto y = s->scalars().random(rng);
    EXPECT_EQ(s->mul(s->exp_g(x), s->exp_g(y)), s->exp_g(x + y)) << s->id();
    EXPECT_TRUE(s->is_identity(s->mul(s->exp_g(x), s->inverse(s->exp_g(x))))) << s->id();
    auto gt = s->random_g1(rng);
    EXPECT_TRUE(s->is_identity(s->div(gt, gt))) << s->id();
    EXPECT_EQ(s->mul(s->div(gt, s->pair(s->generator(), s->generator())),
                     s->pair(s->generator(), s->generator())),
              gt)
        << s->id();
  }
}

TEST(GroupSuites, SerializationRoundTrip) {
  for (const auto& s : both_suites()) {
    auto rng = Rng::from_seed(21);
    for (int i = 0; i < 20; ++i) {
      auto x = s->scalars().random(rng);
      EXPECT_EQ(s->scalars().decode(x.encode()), x);
      auto a = s->exp_g(x);
      EXPECT_EQ(s->decode_g0(s->encode(a)), a) << s->id();
      auto h = s->exp(s->hash_to_group(std::to_string(i)), x);
      EXPECT_EQ(s->decode_g0(s->encode(h)), h) << s->id();
      auto t = s->random_g1(rng);
      EXPECT_EQ(s->decode_g1(s->encode(t)), t) << s->id();
    }
  }
}

TEST(GroupSuites, MalformedEncodingsRejected) {
  for (const auto& s : both_suites()) {
    EXPECT_THROW(s->decode_g0(Bytes{1, 2, 3}), DecodeError) << s->id();
    EXPECT_THROW(s->decode_g1(Bytes{}), DecodeError) << s->id();
    auto enc = s->encode(s->generator());
    std::fill(enc.begin() + 1, enc.end(), 0xff);
    EXPECT_THROW(s->decode_g0(enc), DecodeError) << s->id();
  }
}

TEST(Counters, SpanTalliesSuiteCalls) {
  auto s = make_mock_suite();
  CounterSpan span;
  auto a = s->exp_g(s->scalars().from_u64(3));
  s->mul(a, a);
  s->pair(a, a);
  s->hash_to_group("x");
  auto d = span.elapsed();
  EXPECT_EQ(d.exponentiations, 1u);
  EXPECT_EQ(d.multiplications, 1u);
  EXPECT_EQ(d.pairings, 1u);
  EXPECT_EQ(d.hashes, 1u);
  span.reset();
  EXPECT_EQ(span.elapsed(), OpCounters{});
}
