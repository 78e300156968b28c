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

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "etenon/error.hpp"
#include "etenon/tdb/database.hpp"
#include "support/batches.hpp"

using namespace etenon;
using namespace etenon::tdb;
using algebra::Rng;
using etenon::testing::Issuer;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_log(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("etenon_" + name + "_" + std::to_string(::getpid()) + ".jsonl");
  std::filesystem::remove(p);
  return p;
}

std::vector<std::shared_ptr<const OpenRow>> rows_named(std::size_t n, Rng& rng) {
  std::vector<std::shared_ptr<const OpenRow>> out;
  for (std::size_t i = 0; i < n; ++i) {
    auto r = std::make_shared<OpenRow>();
    r->pointer = tenon::Pointer::generate(rng);
    r->block = std::to_string(i);
    out.push_back(std::move(r));
  }
  return out;
}

std::multiset<std::string> blocks(const std::vector<OpenRow>& rows) {
  std::multiset<std::string> out;
  for (const auto& r : rows) out.insert(r.block);
  return out;
}

class TdbTest : public ::testing::Test {
 protected:
  Rng rng = Rng::from_seed(42);
  Issuer issuer{algebra::make_mock_suite(), rng};
  Database db{issuer.pp, Rng::from_seed(43)};

  void SetUp() override { db.register_roster(issuer.roster_ref, issuer.signers.roster); }
};

}  // namespace

TEST_F(TdbTest, HonestBatchAccepted) {
  auto batch = issuer.batch("e1", 4, rng);
  auto out = db.ingest(batch);
  EXPECT_TRUE(out.accepted) << out.item << ": " << out.reason;
  auto rows = db.read_open("open");
  EXPECT_EQ(blocks(rows), blocks(batch.rows));
  EXPECT_EQ(db.read_open("open", batch.rows[2].pointer).size(), 1u);
  EXPECT_EQ(db.read_open("open", tenon::Pointer::generate(rng)).size(), 0u);
  EXPECT_EQ(db.read_secret("e1", "ward").entry_id, "e1");
  EXPECT_EQ(db.secret_ids(), std::vector<std::string>{"e1"});
}

TEST_F(TdbTest, FlippedByteRejectedCitingRow) {
  auto batch = issuer.batch("e1", 3, rng);
  batch.rows[1].block[0] ^= 0x01;
  auto out = db.ingest(batch);
  EXPECT_FALSE(out.accepted);
  EXPECT_EQ(out.item, "row 1");
  EXPECT_TRUE(db.read_open("open").empty());
  EXPECT_TRUE(db.secret_ids().empty());
}

TEST_F(TdbTest, BadSecretSignatureRejected) {
  auto batch = issuer.batch("e1", 2, rng);
  batch.secret.timestamp += 1;
  auto out = db.ingest(batch);
  EXPECT_FALSE(out.accepted);
  EXPECT_EQ(out.item, "secret");
  EXPECT_TRUE(db.read_open("open").empty());
}

TEST_F(TdbTest, OtherRejections) {
  auto unknown = issuer.batch("e1", 1, rng);
  unknown.rows[0].roster_ref = "nobody";
  EXPECT_EQ(db.ingest(unknown).item, "row 0");
  auto no_id = issuer.batch("", 0, rng);
  EXPECT_EQ(db.ingest(no_id).item, "secret");
  auto ok = issuer.batch("e2", 1, rng);
  ASSERT_TRUE(db.ingest(ok).accepted);
  auto again = issuer.batch("e2", 0, rng);
  EXPECT_FALSE(db.ingest(again).accepted);
  auto reused = issuer.batch("e3", 1, rng);
  reused.rows[0] = ok.rows[0];
  EXPECT_FALSE(db.ingest(reused).accepted);
  EXPECT_THROW(db.register_roster("x", {}), InvalidArgument);
  EXPECT_THROW(db.register_roster(issuer.roster_ref, {issuer.signers.roster[0]}), InvalidArgument);
  EXPECT_NO_THROW(db.register_roster(issuer.roster_ref, issuer.signers.roster));
}

TEST_F(TdbTest, EmptyRowsWithValidSecret) {
  EXPECT_TRUE(db.ingest(issuer.batch("meta", 0, rng)).accepted);
  EXPECT_EQ(db.secret_ids().size(), 1u);
}

TEST_F(TdbTest, SecretLabels) {
  ASSERT_TRUE(db.ingest(issuer.batch("e1", 0, rng, "ward-7")).accepted);
  ASSERT_TRUE(db.ingest(issuer.batch("e2-much-longer-entry-id", 0, rng, "ward-7")).accepted);
  EXPECT_NO_THROW(db.read_secret("e1", "ward-7"));
  try {
    db.read_secret("e1", "ward-8");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kAccessDenied);
  }
  try {
    db.read_secret("zzz", "ward-7");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotFound);
  }
  const auto denied1 = db.secret_response("e1", "ward-8");
  const auto denied2 = db.secret_response("e2-much-longer-entry-id", "x");
  EXPECT_EQ(denied1, denied2);
  EXPECT_EQ(denied1.size(), std::string(R"({"status":"access_denied"})").size());
  const auto entry_json = to_json(*issuer.pp.suite, db.read_secret("e1", "ward-7")).dump();
  EXPECT_EQ(denied1.find("ciphertext"), std::string::npos);
  EXPECT_GT(db.secret_response("e1", "ward-7").size(), entry_json.size());
  EXPECT_EQ(db.secret_response("nope", "ward-7"), db.secret_response("nope-2", "other"));
}

TEST_F(TdbTest, OpenTableHoldsNoCiphertextBytes) {
  auto batch = issuer.batch("e1", 5, rng);
  ASSERT_TRUE(db.ingest(batch).accepted);
  std::string open_dump;
  for (const auto& r : db.read_open("open")) open_dump += to_json(*issuer.pp.suite, r).dump();
  const auto& ct = batch.secret.ciphertext;
  const auto& s = *issuer.pp.suite;
  std::vector<std::string> fragments;
  for (const auto& l : ct.levels) {
    fragments.push_back(algebra::base64_encode(s.encode(l.c)));
    fragments.push_back(algebra::base64_encode(l.mask));
  }
  for (const auto& y : ct.leaves) {
    fragments.push_back(algebra::base64_encode(s.encode(y.c)));
    fragments.push_back(algebra::base64_encode(s.encode(y.c_prime)));
  }
  for (const auto& f : fragments) EXPECT_EQ(open_dump.find(f), std::string::npos) << f;
}

TEST_F(TdbTest, ReadsAroundShuffle) {
  ASSERT_TRUE(db.ingest(issuer.batch("e1", 10, rng)).accepted);
  auto before = db.snapshot("open");
  db.shuffle_table("open");
  auto after = db.snapshot("open");
  EXPECT_NE(before->order_digest, after->order_digest);
  EXPECT_EQ(after->order_digest, TableSnapshot::digest_of(after->rows));
  EXPECT_EQ(blocks(db.read_open("open")).size(), 10u);
  std::multiset<const OpenRow*> a, b;
  for (const auto& r : before->rows) a.insert(r.get());
  for (const auto& r : after->rows) b.insert(r.get());
  EXPECT_EQ(a, b);
  EXPECT_THROW(db.shuffle_table("missing"), Error);
}

TEST_F(TdbTest, TablesShuffleIndependently) {
  auto first = issuer.batch("e1", 3, rng);
  auto second = issuer.batch("e2", 3, rng);
  second.table = "labs";
  ASSERT_TRUE(db.ingest(first).accepted);
  ASSERT_TRUE(db.ingest(second).accepted);
  EXPECT_EQ(db.table_names(), (std::vector<std::string>{"labs", "open"}));
  EXPECT_EQ(db.read_open("labs").size(), 3u);
  EXPECT_EQ(db.read_all_open().size(), 6u);
  auto labs = db.snapshot("labs")->order_digest;
  auto open = db.snapshot("open")->order_digest;
  db.shuffle_table("open");
  EXPECT_EQ(db.snapshot("labs")->order_digest, labs);
  EXPECT_NE(db.snapshot("open")->order_digest, open);
}

TEST(Shuffle, DegenerateSizes) {
  auto rng = Rng::from_seed(1);
  TableSnapshot empty;
  empty.order_digest = TableSnapshot::digest_of(empty.rows);
  EXPECT_TRUE(shuffle(empty, rng).rows.empty());
  TableSnapshot one;
  one.rows = rows_named(1, rng);
  one.order_digest = TableSnapshot::digest_of(one.rows);
  auto s1 = shuffle(one, rng);
  EXPECT_EQ(s1.rows, one.rows);
  EXPECT_EQ(s1.order_digest, one.order_digest);
  TableSnapshot two;
  two.rows = rows_named(2, rng);
  two.order_digest = TableSnapshot::digest_of(two.rows);
  for (int i = 0; i < 1000; ++i) {
    auto s2 = shuffle(two, rng);
    ASSERT_EQ(s2.rows[0], two.rows[1]);
    ASSERT_EQ(s2.rows[1], two.rows[0]);
  }
}

TEST(Shuffle, NeverRepeatsAndPreservesMultiset) {
  auto rng = Rng::from_seed(2);
  for (std::size_t n = 2; n <= 8; ++n) {
    TableSnapshot t;
    t.rows = rows_named(n, rng);
    t.order_digest = TableSnapshot::digest_of(t.rows);
    for (int i = 0; i < 300; ++i) {
      auto s = shuffle(t, rng);
      ASSERT_NE(s.order_digest, t.order_digest);
      ASSERT_EQ(std::multiset<std::shared_ptr<const OpenRow>>(s.rows.begin(), s.rows.end()),
                std::multiset<std::shared_ptr<const OpenRow>>(t.rows.begin(), t.rows.end()));
      t = s;
    }
  }
}

TEST(Persistence, RejectLeavesLogByteIdenticalAndReopenReplays) {
  auto rng = Rng::from_seed(3);
  Issuer issuer(algebra::make_mock_suite(), rng);
  const auto path = temp_log("persist");
  std::vector<std::string> ids;
  {
    auto db = Database::open(issuer.pp, Rng::from_seed(4), path);
    db->register_roster(issuer.roster_ref, issuer.signers.roster);
    ASSERT_TRUE(db->ingest(issuer.batch("e1", 3, rng)).accepted);
    const auto before = slurp(path);
    auto bad = issuer.batch("e2", 2, rng);
    bad.rows[0].sig.ms = bad.rows[0].sig.ms + issuer.pp.suite->scalars().one();
    EXPECT_FALSE(db->ingest(bad).accepted);
    EXPECT_EQ(slurp(path), before);
    ASSERT_TRUE(db->ingest(issuer.batch("e3", 1, rng)).accepted);
    EXPECT_GT(slurp(path).size(), before.size());
    ids = db->secret_ids();
  }
  auto reopened = Database::open(issuer.pp, Rng::from_seed(5), path);
  EXPECT_EQ(reopened->secret_ids(), ids);
  EXPECT_EQ(reopened->read_open("open").size(), 4u);
  EXPECT_TRUE(reopened->roster(issuer.roster_ref).has_value());
  // Appends continue after a reopen.
  ASSERT_TRUE(reopened->ingest(issuer.batch("e4", 1, rng)).accepted);
  reopened.reset();
  EXPECT_EQ(Database::open(issuer.pp, Rng::from_seed(6), path)->secret_ids().size(), 3u);
  std::filesystem::remove(path);
}

TEST(Persistence, TamperedLogFailsReplay) {
  auto rng = Rng::from_seed(7);
  Issuer issuer(algebra::make_mock_suite(), rng);
  const auto path = temp_log("tamper");
  {
    auto db = Database::open(issuer.pp, Rng::from_seed(8), path);
    db->register_roster(issuer.roster_ref, issuer.signers.roster);
    ASSERT_TRUE(db->ingest(issuer.batch("e1", 2, rng)).accepted);
  }
  auto text = slurp(path);
  const auto at = text.find("e1 block 0");
  ASSERT_NE(at, std::string::npos);
  text[at] = 'E';
  std::ofstream(path, std::ios::binary | std::ios::trunc) << text;
  EXPECT_THROW(Database::open(issuer.pp, Rng::from_seed(9), path), Error);
  std::filesystem::remove(path);
}

TEST_F(TdbTest, PeriodicShuffle) {
  ASSERT_TRUE(db.ingest(issuer.batch("e1", 6, rng)).accepted);
  auto before = db.snapshot("open")->order_digest;
  db.start_periodic_shuffle(std::chrono::milliseconds(5));
  std::this_thread::sleep_for(std::chrono::milliseconds(100));
  db.stop_periodic_shuffle();
  auto stopped = db.snapshot("open")->order_digest;
  EXPECT_NE(before, stopped);
  std::this_thread::sleep_for(std::chrono::milliseconds(30));
  EXPECT_EQ(db.snapshot("open")->order_digest, stopped);
}

TEST_F(TdbTest, ConcurrentReadersSeeWholeStates) {
  ASSERT_TRUE(db.ingest(issuer.batch("e0", 4, rng)).accepted);
  std::vector<IngestBatch> valid, invalid;
  for (int i = 1; i <= 6; ++i) {
    valid.push_back(issuer.batch("v" + std::to_string(i), 4, rng));
    auto bad = issuer.batch("x" + std::to_string(i), 4, rng);
    bad.rows[3].block += "!";
    invalid.push_back(std::move(bad));
  }
  std::atomic<bool> done{false};
  std::atomic<int> violations{0};
  std::vector<std::thread> readers;
  for (int t = 0; t < 4; ++t) {
    readers.emplace_back([&] {
      while (!done.load()) {
        auto snap = db.snapshot("open");
        if (snap->rows.size() % 4 != 0) ++violations;
        if (snap->order_digest != TableSnapshot::digest_of(snap->rows)) ++violations;
        for (const auto& r : snap->rows) {
          if (r->block.find('!') != std::string::npos || r->block.rfind("x", 0) == 0) ++violations;
        }
      }
    });
  }
  db.start_periodic_shuffle(std::chrono::milliseconds(1));
  for (std::size_t i = 0; i < valid.size(); ++i) {
    EXPECT_FALSE(db.ingest(invalid[i]).accepted);
    EXPECT_TRUE(db.ingest(valid[i]).accepted);
  }
  db.stop_periodic_shuffle();
  done = true;
  for (auto& r : readers) r.join();
  EXPECT_EQ(violations.load(), 0);
  EXPECT_EQ(db.read_open("open").size(), 28u);
}

TEST(Records, JsonRoundTrip) {
  auto rng = Rng::from_seed(10);
  Issuer issuer(algebra::make_mock_suite(), rng);
  auto batch = issuer.batch("e1", 2, rng);
  const auto& s = *issuer.pp.suite;
  auto text = to_json(s, batch).dump();
  auto back = ingest_batch_from_json(s, nlohmann::json::parse(text));
  EXPECT_EQ(to_json(s, back).dump(), text);
  EXPECT_EQ(back.rows[1].pointer, batch.rows[1].pointer);
  EXPECT_THROW(ingest_batch_from_json(s, nlohmann::json::parse(R"({"rows":7})")), DecodeError);
}
