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
#include "etenon/error.hpp"
#include "etenon/mlabe/mlabe.hpp"
#include "etenon/mlabe/serialize.hpp"
#include "etenon/policy/parser.hpp"
#include "support/generators.hpp"

using namespace etenon;
using namespace etenon::mlabe;
using algebra::Rng;
using policy::AttributeSet;

namespace {

std::map<LevelId, Pointer> fresh_pointers(const policy::AccessTree& tree, Rng& rng) {
  std::map<LevelId, Pointer> out;
  for (auto id : tree.level_ids()) out[id] = Pointer::generate(rng);
  return out;
}

const char* kTwoLevel =
    "level 1 requires [1]\nlevel 2 requires [1, 2]\n"
    "tree: threshold(2, threshold(1, attr:doctor, attr:nurse), threshold(2, attr:doctor, attr:oncology))\n";

class MlabeBoth : public ::testing::TestWithParam<std::string> {
 protected:
  algebra::SuitePtr suite() const { return algebra::suite_from_id(GetParam()); }
};

}  // namespace

TEST(Setup, MockExponents) {
  auto s = algebra::make_mock_suite(101);
  auto rng = Rng::from_seed(1);
  auto [pp, msk] = setup(s, rng);
  EXPECT_EQ(s->discrete_log(pp.g_delta)->to_u64(), msk.delta.to_u64());
  EXPECT_FALSE(msk.delta.is_zero());
}

TEST(Setup, FreshDeltaEachTime) {
  auto s = algebra::make_mock_suite();
  auto rng = Rng::from_seed(2);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 100; ++i) seen.insert(setup(s, rng).second.delta.to_u64());
  EXPECT_EQ(seen.size(), 100u);
}

TEST(Keygen, RejectsEmptyAttributes) {
  auto s = algebra::make_mock_suite();
  auto rng = Rng::from_seed(3);
  auto [pp, msk] = setup(s, rng);
  EXPECT_THROW(keygen(pp, msk, {}, rng), InvalidArgument);
}

TEST(Keygen, MockKeyExponents) {
  auto s = algebra::make_mock_suite();
  auto rng = Rng::from_seed(4);
  auto [pp, msk] = setup(s, rng);
  auto k = keygen(pp, msk, {"doctor", "nurse"}, rng);
  const auto gamma = *s->discrete_log(msk.g_gamma);
  const auto r = *s->discrete_log(k.dk.d) * msk.delta - gamma;
  // e(D, g^delta) = e(g,g)^gamma * e(g,g)^r
  EXPECT_EQ(*s->discrete_log(s->pair(k.dk.d, pp.g_delta)), gamma + r);
  for (const auto& [a, ak] : k.dk.attributes) {
    const auto ra = *s->discrete_log(ak.d_prime);
    EXPECT_EQ(*s->discrete_log(ak.d), r + *s->discrete_log(s->hash_to_group(a)) * ra);
  }
  EXPECT_EQ(k.signer.vk.point, s->exp_g(k.signer.sk.secret));
  EXPECT_FALSE(k.signer.sk.secret == r);
}

TEST_P(MlabeBoth, SetupConsistency) {
  auto s = suite();
  auto rng = Rng::from_seed(5);
  auto [pp, msk] = setup(s, rng);
  EXPECT_EQ(s->pair(msk.g_gamma, pp.g), pp.egg_gamma);
  EXPECT_EQ(s->pair(pp.g, pp.g_delta), s->pair(pp.g_delta, pp.g));
  EXPECT_FALSE(s->is_identity(pp.egg_gamma));
}

TEST_P(MlabeBoth, KeyComponentIdentity) {
  auto s = suite();
  auto rng = Rng::from_seed(6);
  auto [pp, msk] = setup(s, rng);
  auto k = keygen(pp, msk, {"doctor", "nurse", "oncology"}, rng);
  EXPECT_EQ(k.dk.attribute_set(), (AttributeSet{"doctor", "nurse", "oncology"}));
  const auto egg_r = s->div(s->pair(k.dk.d, pp.g_delta), pp.egg_gamma);
  for (const auto& [a, ak] : k.dk.attributes) {
    EXPECT_EQ(s->pair(ak.d, pp.g), s->mul(egg_r, s->pair(s->hash_to_group(a), ak.d_prime))) << a;
  }
  auto again = keygen(pp, msk, {"doctor", "nurse", "oncology"}, rng);
  EXPECT_FALSE(again.dk.d == k.dk.d);
  EXPECT_FALSE(again.dk.attributes.at("doctor").d == k.dk.attributes.at("doctor").d);
}

TEST_P(MlabeBoth, SingleLeafRoundTrip) {
  auto s = suite();
  auto rng = Rng::from_seed(7);
  auto [pp, msk] = setup(s, rng);
  auto tree = policy::parse_policy("tree: threshold(1, attr:doctor)\nlevel 1 requires [1]");
  auto ptrs = fresh_pointers(tree, rng);
  auto ct = encrypt_pointers(pp, ptrs, tree, rng);
  EXPECT_EQ(decrypt_pointers(pp, ct, keygen(pp, msk, {"doctor"}, rng).dk).pointers, ptrs);
  EXPECT_TRUE(decrypt_pointers(pp, ct, keygen(pp, msk, {"nurse"}, rng).dk).pointers.empty());
}

TEST_P(MlabeBoth, MissingSubTreeDropsOnlyThatLevel) {
  auto s = suite();
  auto rng = Rng::from_seed(8);
  auto [pp, msk] = setup(s, rng);
  auto tree = policy::parse_policy(kTwoLevel);
  auto ptrs = fresh_pointers(tree, rng);
  auto ct = encrypt_pointers(pp, ptrs, tree, rng);
  auto nurse = decrypt_pointers(pp, ct, keygen(pp, msk, {"nurse"}, rng).dk);
  ASSERT_EQ(nurse.pointers.size(), 1u);
  EXPECT_EQ(nurse.pointers.at(1), ptrs.at(1));
  EXPECT_EQ(policy::satisfied_levels(tree, {"nurse"}), (std::set<LevelId>{1}));
  auto doctor = decrypt_pointers(pp, ct, keygen(pp, msk, {"doctor", "oncology"}, rng).dk);
  EXPECT_EQ(doctor.pointers, ptrs);
}

TEST_P(MlabeBoth, GroupElementIdentity) {
  auto s = suite();
  auto rng = Rng::from_seed(9);
  auto [pp, msk] = setup(s, rng);
  auto tree = policy::parse_policy(kTwoLevel);
  std::map<LevelId, G1Element> msgs{{1, s->random_g1(rng)}, {2, s->random_g1(rng)}};
  auto ct = encrypt_group_elements(pp, msgs, tree, rng);
  EXPECT_EQ(ct.group_element_count(), 2 * (2 + 4));
  auto k = keygen(pp, msk, {"doctor", "oncology"}, rng);
  for (const auto& [lc, c_tilde] : ct.levels) {
    auto key = recover_level_key(pp, tree, lc, ct.leaves, k.dk);
    ASSERT_TRUE(key.has_value());
    EXPECT_EQ(s->div(c_tilde, *key), msgs.at(lc.level));
  }
  EXPECT_EQ(decrypt_group_elements(pp, ct, k.dk), msgs);
  auto nurse = decrypt_group_elements(pp, ct, keygen(pp, msk, {"nurse"}, rng).dk);
  EXPECT_EQ(nurse.size(), 1u);
}

TEST_P(MlabeBoth, TamperedMaskNeverYieldsAPointer) {
  auto s = suite();
  auto rng = Rng::from_seed(10);
  auto [pp, msk] = setup(s, rng);
  auto tree = policy::parse_policy(kTwoLevel);
  auto ct = encrypt_pointers(pp, fresh_pointers(tree, rng), tree, rng);
  ct.levels[1].mask[3] ^= 0x01;
  auto out = decrypt_pointers(pp, ct, keygen(pp, msk, {"doctor", "oncology"}, rng).dk);
  EXPECT_EQ(out.pointers.count(1), 1u);
  EXPECT_EQ(out.pointers.count(2), 0u);
}

TEST_P(MlabeBoth, AttachmentsOpenWithTheirLevel) {
  auto s = suite();
  auto rng = Rng::from_seed(11);
  auto [pp, msk] = setup(s, rng);
  auto tree = policy::parse_policy(kTwoLevel);
  std::map<AttachmentKey, Bytes> att{{{1, "links"}, algebra::to_bytes("low")},
                                     {{2, "links"}, algebra::to_bytes("high")},
                                     {{2, "identifiable"}, algebra::to_bytes("QQ123456C")}};
  auto ct = encrypt_pointers(pp, fresh_pointers(tree, rng), tree, rng, att);
  for (const auto& a : ct.attachments) {
    EXPECT_EQ(std::string(a.sealed.begin(), a.sealed.end()).find("QQ123456C"), std::string::npos);
  }
  auto nurse = decrypt_pointers(pp, ct, keygen(pp, msk, {"nurse"}, rng).dk);
  EXPECT_EQ(nurse.attachments.size(), 1u);
  EXPECT_EQ(nurse.attachments.at({1, "links"}), algebra::to_bytes("low"));
  auto doctor = decrypt_pointers(pp, ct, keygen(pp, msk, {"doctor", "oncology"}, rng).dk);
  EXPECT_EQ(doctor.attachments, att);
  EXPECT_THROW(encrypt_pointers(pp, fresh_pointers(tree, rng), tree, rng, {{{9, "x"}, {}}}), InvalidArgument);
}

TEST_P(MlabeBoth, RejectsLevelMismatch) {
  auto s = suite();
  auto rng = Rng::from_seed(12);
  auto [pp, msk] = setup(s, rng);
  auto tree = policy::parse_policy(kTwoLevel);
  EXPECT_THROW(encrypt_pointers(pp, {{1, Pointer::generate(rng)}}, tree, rng), InvalidArgument);
  EXPECT_THROW(encrypt_pointers(pp, {{1, Pointer::generate(rng)}, {3, Pointer::generate(rng)}}, tree, rng),
               InvalidArgument);
}

TEST_P(MlabeBoth, MalformedBundleIsDecodeError) {
  auto s = suite();
  auto rng = Rng::from_seed(13);
  auto [pp, msk] = setup(s, rng);
  auto tree = policy::parse_policy(kTwoLevel);
  auto ct = encrypt_pointers(pp, fresh_pointers(tree, rng), tree, rng);
  auto dk = keygen(pp, msk, {"doctor"}, rng).dk;
  auto short_leaves = ct;
  short_leaves.leaves.pop_back();
  EXPECT_THROW(decrypt_pointers(pp, short_leaves, dk), DecodeError);
  auto renamed = ct;
  renamed.leaves[0].attribute = "admin";
  EXPECT_THROW(decrypt_pointers(pp, renamed, dk), DecodeError);
  auto no_level = ct;
  no_level.levels.pop_back();
  EXPECT_THROW(decrypt_pointers(pp, no_level, dk), DecodeError);
}

TEST_P(MlabeBoth, EnvelopesRoundTrip) {
  auto s = suite();
  auto rng = Rng::from_seed(14);
  auto [pp, msk] = setup(s, rng);
  auto tree = policy::parse_policy(kTwoLevel);
  auto ptrs = fresh_pointers(tree, rng);
  auto ct = encrypt_pointers(pp, ptrs, tree, rng, {{{2, "links"}, algebra::to_bytes("x")}});
  auto keys = keygen(pp, msk, {"doctor", "oncology"}, rng);

  auto pp_json = nlohmann::json::parse(to_json(pp).dump());
  EXPECT_EQ(pp_json.at("version"), kEnvelopeVersion);
  auto pp2 = public_params_from_json(pp_json);
  EXPECT_EQ(pp2.encode(), pp.encode());

  auto msk2 = master_key_from_json(*s, nlohmann::json::parse(to_json(*s, msk).dump()));
  EXPECT_EQ(msk2.delta, msk.delta);
  EXPECT_EQ(msk2.g_gamma, msk.g_gamma);

  auto keys2 = key_bundle_from_json(*s, nlohmann::json::parse(to_json(*s, keys).dump()));
  EXPECT_EQ(to_json(*s, keys2).dump(), to_json(*s, keys).dump());
  EXPECT_EQ(keys2.signer.vk, keys.signer.vk);

  auto ct_text = to_json(*s, ct).dump();
  auto ct2 = ciphertext_from_json(*s, nlohmann::json::parse(ct_text));
  EXPECT_EQ(to_json(*s, ct2).dump(), ct_text);
  EXPECT_EQ(canonical_bytes(*s, ct2), canonical_bytes(*s, ct));
  EXPECT_EQ(decrypt_pointers(pp2, ct2, keys2.dk).pointers, ptrs);
}

TEST_P(MlabeBoth, EnvelopeRejections) {
  auto s = suite();
  auto rng = Rng::from_seed(15);
  auto [pp, msk] = setup(s, rng);
  auto tree = policy::parse_policy(kTwoLevel);
  auto ct_json = to_json(*s, encrypt_pointers(pp, fresh_pointers(tree, rng), tree, rng));
  auto wrong_type = ct_json;
  wrong_type["type"] = "key_bundle";
  EXPECT_THROW(ciphertext_from_json(*s, wrong_type), DecodeError);
  auto wrong_version = ct_json;
  wrong_version["version"] = kEnvelopeVersion + 1;
  EXPECT_THROW(ciphertext_from_json(*s, wrong_version), DecodeError);
  auto other = s->id() == "bls12-381" ? algebra::make_mock_suite() : algebra::make_bls12_381_suite();
  EXPECT_THROW(ciphertext_from_json(*other, ct_json), DecodeError);
  auto truncated = ct_json;
  truncated["leaves"].erase(truncated["leaves"].size() - 1);
  EXPECT_THROW(ciphertext_from_json(*s, truncated), DecodeError);
  EXPECT_THROW(public_params_from_json(nlohmann::json::parse("{}")), DecodeError);
  EXPECT_THROW(key_bundle_from_json(*s, nlohmann::json::parse("[1,2]")), DecodeError);
}

INSTANTIATE_TEST_SUITE_P(Suites, MlabeBoth, ::testing::Values("mock", "bls12-381"));

TEST(MlabeMock, UnsealWithOracleLevelKey) {
  auto s = algebra::make_mock_suite();
  auto rng = Rng::from_seed(16);
  auto [pp, msk] = setup(s, rng);
  const auto gamma = *s->discrete_log(msk.g_gamma);
  const auto egg = s->pair(pp.g, pp.g);
  for (int trial = 0; trial < 100; ++trial) {
    auto tree = etenon::testing::random_tree(rng);
    auto ptrs = fresh_pointers(tree, rng);
    policy::SharePlan plan;
    auto ct = encrypt_pointers(pp, ptrs, tree, rng, {}, &plan);
    for (const auto& lc : ct.levels) {
      const auto secret = plan.level_secrets.at(lc.level);
      ASSERT_EQ(*s->discrete_log(lc.c), msk.delta * secret);
      auto opened = open_level(pp, lc, s->exp(egg, gamma * secret));
      ASSERT_TRUE(opened.has_value());
      ASSERT_EQ(*opened, ptrs.at(lc.level));
      ASSERT_FALSE(open_level(pp, lc, s->exp(egg, gamma * secret + s->scalars().one())).has_value());
    }
    for (std::size_t i = 0; i < ct.leaves.size(); ++i) {
      ASSERT_EQ(*s->discrete_log(ct.leaves[i].c), plan.leaf_shares[i]);
    }
  }
}

TEST(MlabeMock, FrankensteinResidual) {
  auto s = algebra::make_mock_suite();
  auto rng = Rng::from_seed(17);
  auto [pp, msk] = setup(s, rng);
  const auto gamma = *s->discrete_log(msk.g_gamma);
  auto tree = policy::parse_policy(kTwoLevel);
  AttributeSet attrs{"doctor", "oncology"};
  for (int trial = 0; trial < 100; ++trial) {
    auto k1 = keygen(pp, msk, attrs, rng);
    auto k2 = keygen(pp, msk, attrs, rng);
    DecryptionKey frank{k1.dk.d, k2.dk.attributes};
    policy::SharePlan plan;
    auto ct = encrypt_pointers(pp, fresh_pointers(tree, rng), tree, rng, {}, &plan);
    EXPECT_TRUE(decrypt_pointers(pp, ct, frank).pointers.empty());
    const auto r1 = *s->discrete_log(k1.dk.d) * msk.delta - gamma;
    const auto r2 = *s->discrete_log(k2.dk.d) * msk.delta - gamma;
    for (const auto& lc : ct.levels) {
      auto key = recover_level_key(pp, tree, lc, ct.leaves, frank);
      ASSERT_TRUE(key.has_value());
      const auto secret = plan.level_secrets.at(lc.level);
      const auto residual = *s->discrete_log(*key) - gamma * secret;
      EXPECT_EQ(residual, (r1 - r2) * secret);
      EXPECT_FALSE(residual.is_zero());
    }
  }
}

TEST(MlabeCounts, ShapeAndExponentiations) {
  auto s = algebra::make_mock_suite();
  auto rng = Rng::from_seed(18);
  auto [pp, msk] = setup(s, rng);
  for (std::size_t k = 1; k <= 5; ++k) {
    for (std::size_t l = 1; l <= 10; ++l) {
      std::vector<policy::Node> kids;
      for (std::size_t i = 0; i < l; ++i) kids.push_back(policy::Node::leaf("a" + std::to_string(i)));
      policy::AccessTree::LevelMap levels;
      for (std::size_t j = 1; j <= k; ++j) levels[static_cast<LevelId>(j)] = {(j - 1) % l + 1};
      policy::AccessTree tree(1, std::move(kids), std::move(levels));
      auto ptrs = fresh_pointers(tree, rng);
      algebra::CounterSpan span;
      auto ct = encrypt_pointers(pp, ptrs, tree, rng);
      auto used = span.elapsed();
      EXPECT_EQ(ct.component_count(), 2 * (k + l));
      EXPECT_EQ(used.exponentiations, 2 * (k + l));
      EXPECT_EQ(used.multiplications, k);
      EXPECT_EQ(used.pairings, 0u);
    }
  }
}
