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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "etenon/cli/app.hpp"
#include "etenon/cli/bench.hpp"
#include "etenon/algebra/group.hpp"
#include "etenon/error.hpp"
#include "etenon/mlabe/serialize.hpp"

namespace fs = std::filesystem;
using namespace etenon;
using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "etenon");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  fs::path dir;

  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("etenon_cli_" + std::to_string(::getpid()) + "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string p(const std::string& name) const { return (dir / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(dir / name) << text; }

  void provision() {
    ASSERT_EQ(run({"--seed", "1", "setup", "--suite", "mock", "--out-dir", dir.string()}).code, 0);
    for (auto [name, attrs] : std::vector<std::pair<std::string, std::string>>{
             {"do", "patient"}, {"sp", "doctor,nurse"}, {"nurse", "nurse"}, {"visitor", "visitor"}}) {
      auto r = run({"--seed", "2", "keygen", "--pp", p("pp.json"), "--msk", p("msk.json"), "--attributes", attrs,
                    "--out", p(name + ".json")});
      ASSERT_EQ(r.code, 0) << r.err;
    }
    write("policy.txt", "level 1 requires [1]\nlevel 2 requires [2]\ntree: threshold(1, attr:nurse, attr:doctor)\n");
    write("record.json",
          R"({"columns": [["NINO", "QQ123456C"], ["symptom", "pain in the chest"], ["medical condition", "stable angina"]],
              "column_levels": {"symptom": 1, "medical condition": 2}})");
  }

  Result ingest(const std::string& label = "ward") {
    return run({"--seed", "3", "ingest", "--pp", p("pp.json"), "--do-key", p("do.json"), "--sp-key", p("sp.json"),
                "--record", p("record.json"), "--policy", p("policy.txt"), "--db", p("tdb.jsonl"), "--label", label,
                "--timestamp", "1700000000"});
  }
};

}  // namespace

TEST_F(CliTest, SetupArtifactsRoundTrip) {
  provision();
  const auto pp_text = slurp(dir / "pp.json");
  const auto pp = mlabe::public_params_from_json(json::parse(pp_text));
  EXPECT_EQ(mlabe::to_json(pp).dump(2) + "\n", pp_text);
  const auto msk_text = slurp(dir / "msk.json");
  EXPECT_EQ(mlabe::to_json(*pp.suite, mlabe::master_key_from_json(*pp.suite, json::parse(msk_text))).dump(2) + "\n",
            msk_text);
  const auto key_text = slurp(dir / "nurse.json");
  const auto keys = mlabe::key_bundle_from_json(*pp.suite, json::parse(key_text));
  EXPECT_EQ(mlabe::to_json(*pp.suite, keys).dump(2) + "\n", key_text);
  EXPECT_EQ(keys.dk.attribute_set(), (policy::AttributeSet{"nurse"}));
}

TEST_F(CliTest, IngestRetrieveShuffle) {
  provision();
  auto in = ingest();
  ASSERT_EQ(in.code, 0) << in.out << in.err;
  auto result = json::parse(in.out);
  EXPECT_EQ(result.at("verdict"), "identical");
  EXPECT_EQ(result.at("rows"), 4);
  EXPECT_EQ(result.at("signatures"), 5);

  auto sp = run({"retrieve", "--pp", p("pp.json"), "--key", p("sp.json"), "--db", p("tdb.jsonl"), "--label", "ward"});
  ASSERT_EQ(sp.code, 0) << sp.err;
  auto sp_report = json::parse(sp.out).at(0);
  EXPECT_EQ(sp_report.at("chains_recovered"), 2);
  EXPECT_EQ(sp_report.at("text").at("symptom"), "pain in the chest");
  EXPECT_EQ(sp_report.at("identifiable").at(0).at(1), "QQ123456C");

  auto nurse = run({"retrieve", "--pp", p("pp.json"), "--key", p("nurse.json"), "--db", p("tdb.jsonl"), "--label", "ward"});
  ASSERT_EQ(nurse.code, 0);
  EXPECT_EQ(json::parse(nurse.out).at(0).at("chains_recovered"), 1);

  auto visitor = run({"retrieve", "--pp", p("pp.json"), "--key", p("visitor.json"), "--db", p("tdb.jsonl"), "--label", "ward"});
  EXPECT_EQ(visitor.code, 0) << visitor.err;
  auto empty = json::parse(visitor.out).at(0);
  EXPECT_EQ(empty.at("chains_recovered"), 0);
  EXPECT_TRUE(empty.at("text").empty());
  EXPECT_TRUE(empty.at("identifiable").empty());

  auto denied = run({"retrieve", "--pp", p("pp.json"), "--key", p("sp.json"), "--db", p("tdb.jsonl"), "--label", "other"});
  EXPECT_EQ(denied.code, 2);
  EXPECT_EQ(json::parse(denied.err).at("code"), "access_denied");

  auto sh = run({"shuffle", "--pp", p("pp.json"), "--db", p("tdb.jsonl")});
  ASSERT_EQ(sh.code, 0) << sh.err;
  auto tables = json::parse(sh.out);
  ASSERT_EQ(tables.size(), 1u);
  EXPECT_NE(tables[0].at("before"), tables[0].at("after"));
  EXPECT_EQ(run({"shuffle", "--pp", p("pp.json"), "--db", p("tdb.jsonl"), "--table", "nope"}).code, 2);
}

TEST_F(CliTest, ConfigDirectoryOverridesRules) {
  provision();
  write("classification.conf", "symptom = identifiable\ndefault = nonpii\n");
  ::setenv("ETENON_CONFIG_DIR", dir.c_str(), 1);
  write("record.json",
        R"({"columns": [["symptom", "pain in the chest"], ["NINO", "QQ123456C"], ["notes", "stable"]],
            "column_levels": {"NINO": 1, "notes": 2}})");
  auto in = ingest();
  ::unsetenv("ETENON_CONFIG_DIR");
  ASSERT_EQ(in.code, 0) << in.err;
  EXPECT_EQ(json::parse(in.out).at("rows"), 2);
}

TEST_F(CliTest, ErrorsAreMachineReadable) {
  auto missing = run({"keygen", "--pp", p("absent.json"), "--msk", p("absent.json"), "--attributes", "a", "--out", p("k.json")});
  EXPECT_EQ(missing.code, 2);
  auto e = json::parse(missing.err);
  EXPECT_TRUE(e.contains("code"));
  EXPECT_TRUE(e.contains("message"));

  provision();
  write("policy.txt", "level 1 requires [1]\ntree: threshold(3, attr:nurse)\n");
  auto bad_policy = ingest();
  EXPECT_EQ(bad_policy.code, 2);
  EXPECT_EQ(json::parse(bad_policy.err).at("code"), "parse_error");

  write("broken.json", "{ not json");
  auto bad_scenario = run({"run-scenario", p("broken.json")});
  EXPECT_EQ(bad_scenario.code, 2);

  EXPECT_EQ(run({"bench"}).code, 2);
  EXPECT_NE(run({"frobnicate"}).code, 0);
}

TEST(Cli, BenchReportsEncryptionCounts) {
  auto r = run({"bench", "--levels", "5", "--leaves", "10", "--csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream lines(r.out);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_EQ(header, cli::kBenchCsvHeader);
  EXPECT_EQ(row.rfind("encrypt,5,10,,30,5,30,", 0), 0u) << row;
}

TEST(Cli, BenchSignatureSizeIsConstant) {
  auto rows = cli::bench_sign(algebra::make_mock_suite(), cli::parse_range("1..5"), 1);
  ASSERT_EQ(rows.size(), 5u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.signature_group_elements, 1u);
    EXPECT_EQ(r.signature_scalars, 1u);
    EXPECT_EQ(r.sign_exp_per_signer, 1u);
    EXPECT_EQ(r.verify_exponentiations, r.signers + 1);
    EXPECT_EQ(r.verify_hashes, r.signers);
    EXPECT_TRUE(r.verified);
  }
}

TEST(Cli, BenchGrid) {
  auto rows = cli::bench_encrypt(algebra::make_mock_suite(), cli::parse_range("1..5"), cli::parse_range("1..10"), 1);
  ASSERT_EQ(rows.size(), 50u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.exponentiations, 2 * (r.levels + r.leaves));
    EXPECT_EQ(r.multiplications, r.levels);
    EXPECT_EQ(r.ciphertext_elements, 2 * (r.levels + r.leaves));
  }
  EXPECT_THROW(cli::parse_range("5..1"), InvalidArgument);
  EXPECT_THROW(cli::parse_range("x"), InvalidArgument);
  EXPECT_THROW(cli::parse_range("0"), InvalidArgument);
}

TEST(Cli, ShippedScenarioPasses) {
  auto r = run({"run-scenario", std::string(ETENON_SCENARIO_DIR) + "/doctor_nurse.json"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  auto out = json::parse(r.out);
  EXPECT_TRUE(out.at("passed").get<bool>());
}
