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

#include "etenon/algebra/counters.hpp"
#include "etenon/algebra/group.hpp"
#include "etenon/algebra/hashing.hpp"
#include "etenon/error.hpp"
#include "etenon/musig/digest.hpp"
#include "etenon/musig/json.hpp"
#include "etenon/musig/keys.hpp"
#include "etenon/musig/session.hpp"
#include "etenon/tenon/pointer.hpp"
#include "support/signing.hpp"

using namespace etenon;
using namespace etenon::musig;
using algebra::Rng;
using etenon::testing::Driver;
using etenon::testing::make_signers;

namespace {

class MusigBoth : public ::testing::TestWithParam<std::string> {
 protected:
  algebra::SuitePtr suite() const { return algebra::suite_from_id(GetParam()); }
};

MultiSig finish(Driver& d) {
  d.round();
  d.round();
  auto last = d.round();
  return std::get<MultiSig>(last.at(0));
}

}  // namespace

TEST_P(MusigBoth, HonestSessionsVerify) {
  auto s = suite();
  auto rng = Rng::from_seed(1);
  for (std::size_t n : {1u, 2u, 3u, 5u}) {
    auto signers = make_signers(*s, rng, n);
    Bytes msg = algebra::to_bytes("record " + std::to_string(n));
    Driver d(s, signers, msg, rng);
    d.round();
    d.round();
    auto results = d.round();
    for (const auto& r : results) {
      const auto& sig = std::get<MultiSig>(r);
      EXPECT_TRUE(verify(*s, sig, signers.roster, msg)) << n;
      EXPECT_EQ(sig.rc, std::get<MultiSig>(results[0]).rc);
    }
    for (const auto& session : d.sessions) {
      EXPECT_EQ(session.phase(), SignSession::Phase::kDone);
      EXPECT_FALSE(session.holds_nonce());
    }
  }
}

TEST_P(MusigBoth, SingleSignerIsSchnorr) {
  auto s = suite();
  auto rng = Rng::from_seed(2);
  auto signers = make_signers(*s, rng, 1);
  Bytes msg{7, 7, 7};
  Driver d(s, signers, msg, rng);
  auto sig = finish(d);
  auto ch = challenge(*s, encode_roster(*s, signers.roster), signers.roster[0], sig.rc, msg);
  EXPECT_EQ(s->exp_g(sig.ms), s->mul(s->exp(signers.roster[0].point, ch), sig.rc));
}

TEST_P(MusigBoth, MutationsBreakVerification) {
  auto s = suite();
  auto rng = Rng::from_seed(3);
  auto signers = make_signers(*s, rng, 3);
  Bytes msg = algebra::to_bytes("blood pressure 140/90");
  auto sig = sign_locally(s, signers.keys, signers.roster, msg, rng);
  ASSERT_TRUE(verify(*s, sig, signers.roster, msg));

  for (std::size_t bit = 0; bit < msg.size() * 8; bit += 13) {
    Bytes flipped = msg;
    flipped[bit / 8] ^= static_cast<std::uint8_t>(1U << (bit % 8));
    EXPECT_FALSE(verify(*s, sig, signers.roster, flipped)) << bit;
  }
  for (std::size_t i = 0; i < signers.roster.size(); ++i) {
    auto roster = signers.roster;
    roster[i] = {s->exp_g(s->scalars().random_nonzero(rng))};
    EXPECT_FALSE(verify(*s, sig, roster, msg)) << i;
  }
  auto bad_rc = sig;
  bad_rc.rc = s->mul(sig.rc, s->generator());
  EXPECT_FALSE(verify(*s, bad_rc, signers.roster, msg));
  auto bad_ms = sig;
  bad_ms.ms = sig.ms + s->scalars().one();
  EXPECT_FALSE(verify(*s, bad_ms, signers.roster, msg));
  auto swapped = signers.roster;
  std::swap(swapped[0], swapped[2]);
  EXPECT_FALSE(verify(*s, sig, swapped, msg));
  EXPECT_FALSE(verify(*s, sig, {}, msg));
}

TEST_P(MusigBoth, AllZeroKeysReduceToNonceProduct) {
  auto s = suite();
  auto rng = Rng::from_seed(4);
  // One real session with SK = 0: MS = r and the equation is g^r = RC.
  etenon::testing::Signers zero;
  zero.keys.push_back({{s->scalars().zero()}, {s->identity0()}});
  zero.roster.push_back(zero.keys.back().vk);
  Driver d(s, zero, Bytes{1}, rng);
  auto sig = finish(d);
  EXPECT_EQ(s->exp_g(sig.ms), sig.rc);
  EXPECT_TRUE(verify(*s, sig, zero.roster, Bytes{1}));

  // Three signers: g^{sum r_i} = prod RC_i against an all-identity roster.
  G0Element rc = s->identity0();
  auto ms = s->scalars().zero();
  for (int i = 0; i < 3; ++i) {
    auto r = s->scalars().random(rng);
    rc = s->mul(rc, s->exp_g(r));
    ms += r;
  }
  Roster identities(3, VerificationKey{s->identity0()});
  EXPECT_TRUE(verify(*s, MultiSig{rc, ms}, identities, Bytes{1}));
}

TEST_P(MusigBoth, SubstitutedMessageFailsVerification) {
  auto s = suite();
  auto rng = Rng::from_seed(5);
  auto signers = make_signers(*s, rng, 2);
  Bytes msg{1, 2, 3};
  Driver d(s, signers, msg, rng);
  d.sessions[1].substitute_message_for_testing(Bytes{1, 2, 4});
  auto sig = finish(d);
  EXPECT_FALSE(verify(*s, sig, signers.roster, msg));
  EXPECT_FALSE(verify(*s, sig, signers.roster, Bytes{1, 2, 4}));
}

TEST_P(MusigBoth, BadRevealAbortsWithoutPartial) {
  auto s = suite();
  auto rng = Rng::from_seed(6);
  for (int trial = 0; trial < 20; ++trial) {
    auto signers = make_signers(*s, rng, 3);
    Driver d(s, signers, Bytes{9}, rng);
    d.round();  // reveals now in the outbox
    d.outbox[2].payload = s->encode(s->exp_g(s->scalars().random_nonzero(rng)));
    auto results = d.round();
    for (std::size_t i = 0; i < 2; ++i) {
      const auto* abort = std::get_if<Abort>(&results[i]);
      ASSERT_NE(abort, nullptr);
      EXPECT_EQ(abort->signer, 2u);
      EXPECT_EQ(d.sessions[i].phase(), SignSession::Phase::kAborted);
      EXPECT_FALSE(d.sessions[i].holds_nonce());
    }
    EXPECT_THROW(d.sessions[0].step({}), ProtocolError);
  }
}

TEST_P(MusigBoth, UndecodableRevealAborts) {
  auto s = suite();
  auto rng = Rng::from_seed(7);
  auto signers = make_signers(*s, rng, 2);
  Driver d(s, signers, Bytes{9}, rng);
  const Bytes garbage{0xde, 0xad, 0xbe, 0xef};
  const auto t = algebra::hash_commit(garbage);
  d.outbox[1].payload.assign(t.begin(), t.end());
  d.round();
  d.outbox[1].payload = garbage;
  auto results = d.round();
  const auto* abort = std::get_if<Abort>(&results[0]);
  ASSERT_NE(abort, nullptr);
  EXPECT_EQ(abort->signer, 1u);
  EXPECT_FALSE(d.sessions[0].holds_nonce());
}

TEST_P(MusigBoth, StartValidatesRoster) {
  auto s = suite();
  auto rng = Rng::from_seed(8);
  auto signers = make_signers(*s, rng, 2);
  Roster dup{signers.roster[0], signers.roster[1], signers.roster[0]};
  EXPECT_THROW(SignSession::start(s, "x", signers.keys[0], dup, {}, rng), InvalidArgument);
  EXPECT_THROW(SignSession::start(s, "x", signers.keys[0], {}, {}, rng), InvalidArgument);
  Roster without{signers.roster[1]};
  EXPECT_THROW(SignSession::start(s, "x", signers.keys[0], without, {}, rng), InvalidArgument);
}

TEST_P(MusigBoth, FreshNoncePerSession) {
  auto s = suite();
  auto rng = Rng::from_seed(9);
  auto signers = make_signers(*s, rng, 1);
  auto a = SignSession::start(s, "a", signers.keys[0], signers.roster, Bytes{1}, rng).second;
  auto b = SignSession::start(s, "a", signers.keys[0], signers.roster, Bytes{1}, rng).second;
  EXPECT_NE(a.payload, b.payload);
  EXPECT_EQ(a.payload.size(), 32u);
}

TEST_P(MusigBoth, ProtocolErrorsLeaveSessionUnchanged) {
  auto s = suite();
  auto rng = Rng::from_seed(10);
  auto signers = make_signers(*s, rng, 3);
  Driver d(s, signers, Bytes{5}, rng);
  auto& s0 = d.sessions[0];
  auto in = etenon::testing::others(d.outbox, 0);

  EXPECT_THROW(s0.step({}), ProtocolError);  // missing
  auto duplicate = in;
  duplicate.push_back(in[0]);
  EXPECT_THROW(s0.step(duplicate), ProtocolError);
  auto self = in;
  self[0].sender = 0;
  EXPECT_THROW(s0.step(self), ProtocolError);
  auto foreign = in;
  foreign[0].session_id = "other";
  EXPECT_THROW(s0.step(foreign), ProtocolError);
  auto outside = in;
  outside[0].sender = 7;
  EXPECT_THROW(s0.step(outside), ProtocolError);
  auto wrong_round = in;
  wrong_round[0].round = Round::kReveal;
  EXPECT_THROW(s0.step(wrong_round), ProtocolError);
  EXPECT_EQ(s0.phase(), SignSession::Phase::kCommit);
  EXPECT_TRUE(s0.holds_nonce());

  auto sig = finish(d);
  EXPECT_TRUE(verify(*s, sig, signers.roster, Bytes{5}));
  EXPECT_THROW(d.sessions[0].step({}), ProtocolError);
}

TEST_P(MusigBoth, OperationCounts) {
  auto s = suite();
  auto rng = Rng::from_seed(11);
  for (std::size_t n = 1; n <= 5; ++n) {
    auto signers = make_signers(*s, rng, n);
    Bytes msg{static_cast<std::uint8_t>(n)};
    Driver d(s, signers, msg, rng);
    algebra::CounterSpan span;
    // Each session's own work: one g^{r_i}, drawn at start, so count it
    // on a fresh session.
    auto fresh = SignSession::start(s, "count", signers.keys[0], signers.roster, msg, rng);
    EXPECT_EQ(span.elapsed().exponentiations, 1u);
    span.reset();
    d.round();
    d.round();
    d.round();
    EXPECT_EQ(span.elapsed().exponentiations, 0u);

    auto sig = sign_locally(s, signers.keys, signers.roster, msg, rng);
    span.reset();
    EXPECT_TRUE(verify(*s, sig, signers.roster, msg));
    auto v = span.elapsed();
    EXPECT_EQ(v.exponentiations, n + 1);
    EXPECT_EQ(v.hashes, n);
  }
}

TEST_P(MusigBoth, JsonRoundTrips) {
  auto s = suite();
  auto rng = Rng::from_seed(12);
  auto signers = make_signers(*s, rng, 2);
  Driver d(s, signers, Bytes{1}, rng);
  const auto& m = d.outbox[0];
  auto text = to_json(m).dump();
  EXPECT_EQ(round_message_from_json(nlohmann::json::parse(text)), m);
  auto sig = sign_locally(s, signers.keys, signers.roster, Bytes{1}, rng);
  auto sig2 = multisig_from_json(*s, nlohmann::json::parse(to_json(*s, sig).dump()));
  EXPECT_EQ(sig2.rc, sig.rc);
  EXPECT_EQ(sig2.ms, sig.ms);
  EXPECT_EQ(roster_from_json(*s, nlohmann::json::parse(to_json(*s, signers.roster).dump())), signers.roster);
  EXPECT_THROW(multisig_from_json(*s, nlohmann::json::parse(R"({"rc":"AAAA"})")), DecodeError);
  EXPECT_THROW(round_message_from_json(nlohmann::json::parse(R"({"round":9})")), DecodeError);
}

TEST(MusigDigest, BindsEveryField) {
  auto rng = Rng::from_seed(13);
  auto p = tenon::Pointer::generate(rng);
  auto q = tenon::Pointer::generate(rng);
  Bytes block = algebra::to_bytes("in the chest");
  Bytes pp{1, 2, 3};
  auto base = block_message(block, p, pp, 1700000000);
  EXPECT_EQ(base.size(), 32u);
  EXPECT_EQ(base, block_message(block, p, pp, 1700000000));
  EXPECT_NE(base, block_message(algebra::to_bytes("in the chesT"), p, pp, 1700000000));
  EXPECT_NE(base, block_message(block, q, pp, 1700000000));
  EXPECT_NE(base, block_message(block, p, Bytes{1, 2}, 1700000000));
  EXPECT_NE(base, block_message(block, p, pp, 1700000001));
  EXPECT_NE(ciphertext_message(block, pp, 1), ciphertext_message(block, pp, 2));
  EXPECT_NE(ciphertext_message(block, pp, 1), block_message(block, p, pp, 1));
}

TEST(MusigKeys, SelfIssueNeedsTrust) {
  auto s = algebra::make_mock_suite();
  auto rng = Rng::from_seed(14);
  EXPECT_THROW(self_issue_keys(*s, rng, false), InvalidArgument);
  auto k = self_issue_keys(*s, rng, true);
  EXPECT_EQ(k.vk.point, s->exp_g(k.sk.secret));
}

TEST(MusigStress, ManyTrialsMock) {
  auto s = algebra::make_mock_suite();
  auto rng = Rng::from_seed(15);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = std::vector<std::size_t>{1, 2, 3, 5}[trial % 4];
    auto signers = make_signers(*s, rng, n);
    Bytes msg(1 + trial % 40, static_cast<std::uint8_t>(trial));
    ASSERT_TRUE(verify(*s, sign_locally(s, signers.keys, signers.roster, msg, rng), signers.roster, msg));
  }
}

INSTANTIATE_TEST_SUITE_P(Suites, MusigBoth, ::testing::Values("mock", "bls12-381"));
