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
#include "etenon/error.hpp"
#include "etenon/mlabe/serialize.hpp"
#include "etenon/musig/json.hpp"
#include "etenon/policy/parser.hpp"
#include "etenon/tdb/records.hpp"
#include "etenon/tenon/tokenize.hpp"
#include "etenon/workflow/agreement.hpp"
#include "etenon/workflow/retrieval.hpp"
#include "etenon/workflow/scenario.hpp"
#include "support/fixture.hpp"

using namespace etenon;
using namespace etenon::workflow;
using algebra::Rng;

namespace {

System ward_system(std::uint64_t seed = 7, const std::string& suite = "mock") {
  return phase_setup(algebra::suite_from_id(suite), etenon::testing::ward_entities(), Rng::from_seed(seed));
}

std::string stored_entry(System& sys) {
  const auto tree = policy::parse_policy(etenon::testing::kWardPolicy);
  auto tr = run_agreement(sys, "patient", "ward-device", etenon::testing::ward_record(), tree,
                          etenon::testing::ward_options());
  EXPECT_TRUE(submit(sys, tr).accepted);
  return tr.batch->secret.entry_id;
}

}  // namespace

TEST(Setup, KeysFollowRoles) {
  auto sys = ward_system();
  const auto pp_bytes = sys.pp.encode();
  for (const auto& [name, e] : sys.entities) {
    ASSERT_TRUE(e.pp.has_value()) << name;
    EXPECT_EQ(e.pp->encode(), pp_bytes) << name;
    const bool keyed = e.role == Role::kDo || e.role == Role::kSp || e.role == Role::kDu;
    EXPECT_EQ(e.keys.has_value(), keyed) << name;
    if (keyed) EXPECT_EQ(e.keys->dk.attribute_set(), e.attributes) << name;
  }
  EXPECT_EQ(sys.entity("nurse-baker").keys->dk.attributes.size(), 1u);
  EXPECT_TRUE(sys.aa_master_key.has_value());
  EXPECT_EQ(sys.only(Role::kTdb), "tdb");
  EXPECT_THROW(sys.only(Role::kDu), InvalidArgument);
  EXPECT_EQ(sys.tdb->public_params().encode(), pp_bytes);
}

TEST(Setup, ProbeCiphertextPerEntity) {
  auto sys = ward_system();
  auto rng = Rng::from_seed(1);
  for (const auto& [name, e] : sys.entities) {
    if (!e.keys) continue;
    std::vector<policy::Node> leaves;
    for (const auto& a : e.attributes) leaves.push_back(policy::Node::leaf(a));
    const auto n = leaves.size();
    policy::AccessTree tree(1, {policy::Node::gate(n, std::move(leaves))}, {{1, {1}}});
    auto p = tenon::Pointer::generate(rng);
    auto ct = mlabe::encrypt_pointers(sys.pp, {{1, p}}, tree, rng);
    EXPECT_EQ(mlabe::decrypt_pointers(*e.pp, ct, e.keys->dk).pointers.at(1), p) << name;
  }
}

TEST(Setup, MasterKeyTravelsOnlyToTheAuthority) {
  auto sys = ward_system();
  std::size_t msk_messages = 0;
  for (const auto& env : sys.bus.log()) {
    if (env.kind == "master_key") {
      ++msk_messages;
      EXPECT_EQ(env.from, "cta");
      EXPECT_EQ(env.to, "aa");
    }
    if (env.to == "tdb") EXPECT_EQ(env.kind, "public_params");
  }
  EXPECT_EQ(msk_messages, 1u);
}

TEST(Setup, Validation) {
  auto specs = etenon::testing::ward_entities();
  specs.push_back({"visitor", Role::kDu, {"x"}});
  EXPECT_THROW(phase_setup(algebra::make_mock_suite(), specs, Rng::from_seed(1)), InvalidArgument);
  auto keyless = etenon::testing::ward_entities();
  keyless.push_back({"ghost", Role::kDu, {}});
  EXPECT_THROW(phase_setup(algebra::make_mock_suite(), keyless, Rng::from_seed(1)), InvalidArgument);
  auto no_tdb = etenon::testing::ward_entities();
  no_tdb.erase(no_tdb.begin() + 4);
  EXPECT_THROW(phase_setup(algebra::make_mock_suite(), no_tdb, Rng::from_seed(1)), InvalidArgument);
  EXPECT_THROW(role_from_string("auditor"), InvalidArgument);
}

TEST(Agreement, UntamperedYieldsFullSignatureSet) {
  auto sys = ward_system();
  const auto tree = policy::parse_policy(etenon::testing::kWardPolicy);
  auto tr = run_agreement(sys, "patient", "ward-device", etenon::testing::ward_record(), tree,
                          etenon::testing::ward_options());
  EXPECT_EQ(tr.verdict, Verdict::kIdentical);
  EXPECT_TRUE(tr.sp_reconstructed);
  ASSERT_TRUE(tr.batch.has_value());
  // gender 1 + blood pressure 3 + symptom 4 + condition 4 + treatment 7 blocks, plus the ciphertext.
  EXPECT_EQ(tr.batch->rows.size(), 19u);
  EXPECT_EQ(tr.signature_count(), 20u);
  EXPECT_EQ(tr.roster.size(), 2u);
  EXPECT_EQ(tr.steps.size(), 5u);
  EXPECT_EQ(tr.batch->secret.entry_id.rfind("entry-", 0), 0u);
  EXPECT_TRUE(submit(sys, tr).accepted);
}

TEST(Agreement, TamperingIsRefusedWithoutSignatures) {
  const auto tree = policy::parse_policy(etenon::testing::kWardPolicy);
  for (auto t : {Tamper::kBlockEdit, Tamper::kReorder, Tamper::kCiphertextSwap}) {
    auto sys = ward_system();
    const auto log_before = sys.bus.log().size();
    auto tr = run_agreement(sys, "patient", "ward-device", etenon::testing::ward_record(), tree,
                            etenon::testing::ward_options(t));
    EXPECT_EQ(tr.verdict, Verdict::kMismatch) << to_string(t);
    EXPECT_FALSE(tr.batch.has_value()) << to_string(t);
    EXPECT_EQ(tr.signature_count(), 0u) << to_string(t);
    EXPECT_FALSE(tr.mismatch.empty());
    for (std::size_t i = log_before; i < sys.bus.log().size(); ++i) {
      EXPECT_EQ(sys.bus.log()[i].kind.find("sign"), std::string::npos) << sys.bus.log()[i].kind;
    }
    auto outcome = submit(sys, tr);
    EXPECT_FALSE(outcome.accepted);
    EXPECT_TRUE(sys.tdb->secret_ids().empty());
  }
}

TEST(Agreement, SignatureImpliesIdenticalVerdict) {
  const auto tree = policy::parse_policy(etenon::testing::kWardPolicy);
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto sys = ward_system(seed);
    for (auto t : {Tamper::kNone, Tamper::kBlockEdit, Tamper::kReorder, Tamper::kCiphertextSwap}) {
      auto tr = run_agreement(sys, "patient", "ward-device", etenon::testing::ward_record(), tree,
                              etenon::testing::ward_options(t));
      EXPECT_EQ(tr.batch.has_value(), tr.verdict == Verdict::kIdentical);
      EXPECT_EQ(tr.verdict == Verdict::kIdentical, t == Tamper::kNone);
    }
  }
}

TEST(Agreement, ImpossibleWhenSpCannotOpenEveryLevel) {
  auto specs = etenon::testing::ward_entities();
  specs[3].attributes = {"nurse"};
  auto sys = phase_setup(algebra::make_mock_suite(), specs, Rng::from_seed(2));
  const auto tree = policy::parse_policy(etenon::testing::kWardPolicy);
  try {
    run_agreement(sys, "patient", "ward-device", etenon::testing::ward_record(), tree, etenon::testing::ward_options());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAgreementImpossible);
  }
}

TEST(Agreement, ColumnLevelsMustCoverTheLevels) {
  auto sys = ward_system();
  const auto tree = policy::parse_policy(etenon::testing::kWardPolicy);
  auto opts = etenon::testing::ward_options();
  opts.column_levels.erase("gender");
  EXPECT_THROW(run_agreement(sys, "patient", "ward-device", etenon::testing::ward_record(), tree, opts),
               InvalidArgument);
  opts = etenon::testing::ward_options();
  opts.column_levels["gender"] = 2;
  EXPECT_THROW(run_agreement(sys, "patient", "ward-device", etenon::testing::ward_record(), tree, opts),
               InvalidArgument);
  EXPECT_THROW(run_agreement(sys, "nurse-baker", "ward-device", etenon::testing::ward_record(), tree,
                             etenon::testing::ward_options()),
               InvalidArgument);
}

TEST(Retrieval, LeveledRecovery) {
  auto sys = ward_system();
  const auto id = stored_entry(sys);
  auto doctor = phase_retrieval(sys, "dr-adams", id, "cardiology");
  auto nurse = phase_retrieval(sys, "nurse-baker", id, "cardiology");
  auto visitor = phase_retrieval(sys, "visitor", id, "cardiology");
  EXPECT_EQ(doctor.chains_recovered(), 5u);
  EXPECT_EQ(nurse.chains_recovered(), 2u);
  EXPECT_EQ(visitor.chains_recovered(), 0u);
  EXPECT_TRUE(nurse.levels.at(1).decrypted);
  EXPECT_TRUE(nurse.levels.at(2).decrypted);
  for (policy::LevelId l : {3u, 4u, 5u}) EXPECT_FALSE(nurse.levels.at(l).decrypted);
  EXPECT_TRUE(nurse.identifiable.empty());
  EXPECT_TRUE(visitor.identifiable.empty());
  EXPECT_EQ(doctor.rows.size(), 19u);
  for (const auto& r : doctor.rows) EXPECT_TRUE(r.verified);
}

TEST(Retrieval, FullRecordMatchesNormalizedOriginal) {
  auto sys = ward_system();
  const auto id = stored_entry(sys);
  auto doctor = phase_retrieval(sys, "dr-adams", id, "cardiology");
  const auto text = doctor.recovered_text();
  for (const auto& c : etenon::testing::ward_record().columns) {
    if (c.name == "NINO" || c.name == "mobile") continue;
    EXPECT_EQ(text.at(c.name), tenon::normalize(c.value)) << c.name;
  }
  ASSERT_EQ(doctor.identifiable.size(), 2u);
  EXPECT_EQ(doctor.identifiable[0].name, "NINO");
  EXPECT_EQ(doctor.identifiable[0].value, "QQ 12 34 56 C");
  EXPECT_EQ(doctor.identifiable[1].value, "07700 900123");
}

TEST(Retrieval, OpenBlocksAloneYieldNoChain) {
  auto sys = ward_system();
  const auto id = stored_entry(sys);
  auto visitor = phase_retrieval(sys, "visitor", id, "cardiology");
  for (const auto& [l, rec] : visitor.levels) {
    EXPECT_FALSE(rec.decrypted);
    EXPECT_TRUE(rec.blocks.empty());
  }
  EXPECT_TRUE(visitor.recovered_text().empty());
}

TEST(Retrieval, WrongLabelIsDenied) {
  auto sys = ward_system();
  const auto id = stored_entry(sys);
  try {
    phase_retrieval(sys, "dr-adams", id, "oncology-ward");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAccessDenied);
  }
}

TEST(Retrieval, InvalidEntrySignatureAbortsBeforeDecryption) {
  auto sys = ward_system();
  const auto id = stored_entry(sys);
  // The DU checks against its own copy of pp; a forged copy breaks the digest.
  auto& du = sys.entity("dr-adams");
  du.pp->egg_gamma = du.pp->suite->mul(du.pp->egg_gamma, du.pp->egg_gamma);
  algebra::CounterSpan span;
  EXPECT_THROW(phase_retrieval(sys, "dr-adams", id, "cardiology"), ProtocolError);
  EXPECT_EQ(span.elapsed().pairings, 0u);
}

TEST(Retrieval, MonotoneInAttributes) {
  auto sys = ward_system();
  const auto id = stored_entry(sys);
  const std::vector<std::string> pool{"nurse", "doctor", "oncology", "visitor"};
  std::map<std::size_t, std::set<policy::LevelId>> by_mask;
  for (std::size_t mask = 1; mask < 16; ++mask) {
    policy::AttributeSet attrs;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if ((mask >> i) & 1U) attrs.insert(pool[i]);
    }
    const std::string name = "du-" + std::to_string(mask);
    issue_key(sys, {name, Role::kDu, attrs});
    auto report = phase_retrieval(sys, name, id, "cardiology");
    for (const auto& [l, rec] : report.levels) {
      if (rec.decrypted) by_mask[mask].insert(l);
    }
  }
  for (const auto& [small, levels] : by_mask) {
    for (const auto& [big, more] : by_mask) {
      if ((small & big) != small) continue;
      for (auto l : levels) EXPECT_TRUE(more.count(l)) << small << " vs " << big;
    }
  }
}

TEST(Workflow, DeterministicUnderSeed) {
  auto run = [] {
    auto sys = ward_system(99);
    const auto tree = policy::parse_policy(etenon::testing::kWardPolicy);
    auto tr = run_agreement(sys, "patient", "ward-device", etenon::testing::ward_record(), tree,
                            etenon::testing::ward_options());
    EXPECT_TRUE(submit(sys, tr).accepted);
    std::string out = tdb::to_json(*sys.pp.suite, *tr.batch).dump();
    for (const auto& du : {"dr-adams", "nurse-baker", "visitor"}) {
      auto r = phase_retrieval(sys, du, tr.batch->secret.entry_id, "cardiology");
      out += std::to_string(r.chains_recovered());
      for (const auto& [c, t] : r.recovered_text()) out += c + "=" + t + ";";
    }
    for (const auto& row : sys.tdb->read_all_open()) out += row.pointer.to_string();
    return out;
  };
  EXPECT_EQ(run(), run());
}

TEST(Workflow, TdbHoldsNoSecretScalars) {
  auto sys = ward_system();
  const auto id = stored_entry(sys);
  EXPECT_FALSE(sys.entity("tdb").keys.has_value());
  const auto& s = *sys.pp.suite;
  std::string tdb_state;
  for (const auto& row : sys.tdb->read_all_open()) tdb_state += tdb::to_json(s, row).dump();
  tdb_state += tdb::to_json(s, sys.tdb->read_secret(id, "cardiology")).dump();
  tdb_state += musig::to_json(s, *sys.tdb->roster(sys.tdb->read_secret(id, "cardiology").roster_ref)).dump();
  std::vector<std::string> secrets{algebra::base64_encode(sys.aa_master_key->delta.encode()),
                                   algebra::base64_encode(s.encode(sys.aa_master_key->g_gamma))};
  for (const auto& [name, e] : sys.entities) {
    if (!e.keys) continue;
    secrets.push_back(algebra::base64_encode(s.encode(e.keys->dk.d)));
    secrets.push_back(algebra::base64_encode(e.keys->signer.sk.secret.encode()));
    for (const auto& [a, ak] : e.keys->dk.attributes) {
      secrets.push_back(algebra::base64_encode(s.encode(ak.d)));
      secrets.push_back(algebra::base64_encode(s.encode(ak.d_prime)));
    }
  }
  for (const auto& sec : secrets) EXPECT_EQ(tdb_state.find(sec), std::string::npos);
}

TEST(Workflow, BlsEndToEnd) {
  auto sys = ward_system(3, "bls12-381");
  const auto id = stored_entry(sys);
  EXPECT_EQ(phase_retrieval(sys, "dr-adams", id, "cardiology").chains_recovered(), 5u);
  EXPECT_EQ(phase_retrieval(sys, "nurse-baker", id, "cardiology").chains_recovered(), 2u);
}

TEST(Workflow, BusChannelsAreFifo) {
  Bus bus;
  bus.send({"a", "b", "one", 1});
  bus.send({"c", "b", "x", 0});
  bus.send({"a", "b", "two", 2});
  EXPECT_EQ(bus.pending(), 3u);
  EXPECT_EQ(bus.receive("b", "a")->kind, "one");
  EXPECT_THROW(bus.expect("b", "a", "one"), ProtocolError);
  EXPECT_EQ(bus.expect("b", "c", "x").body, 0);
  EXPECT_THROW(bus.expect("b", "c", "x"), ProtocolError);
  EXPECT_EQ(bus.log().size(), 3u);
}

TEST(Scenario, DeclarativeRun) {
  nlohmann::json s{{"suite", "mock"},
                   {"seed", 5},
                   {"entities", {{{"name", "cta"}, {"role", "cta"}},
                                 {{"name", "aa"}, {"role", "aa"}},
                                 {{"name", "p"}, {"role", "do"}, {"attributes", {"patient"}}},
                                 {{"name", "d"}, {"role", "sp"}, {"attributes", {"nurse"}}},
                                 {{"name", "tdb"}, {"role", "tdb"}},
                                 {{"name", "n"}, {"role", "du"}, {"attributes", {"nurse"}}}}},
                   {"policy", "level 1 requires [1]\ntree: threshold(1, attr:nurse)"},
                   {"record", nlohmann::json::array({nlohmann::json::array({"symptom", "pain in the chest"})})},
                   {"column_levels", {{"symptom", 1}}},
                   {"retrievals", {{{"du", "n"}, {"expect_chains", 1}}}}};
  auto out = run_scenario(s);
  EXPECT_TRUE(out.at("passed").get<bool>()) << out.dump(2);
  s["retrievals"][0]["expect_chains"] = 0;
  EXPECT_FALSE(run_scenario(s).at("passed").get<bool>());
  EXPECT_THROW(run_scenario(nlohmann::json::object()), DecodeError);
}
