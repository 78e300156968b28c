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

#include "etenon/cli/app.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "etenon/cli/bench.hpp"
#include "etenon/error.hpp"
#include "etenon/mlabe/serialize.hpp"
#include "etenon/policy/parser.hpp"
#include "etenon/tdb/database.hpp"
#include "etenon/workflow/agreement.hpp"
#include "etenon/workflow/retrieval.hpp"
#include "etenon/workflow/scenario.hpp"

namespace etenon::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const fs::path& p) {
  try {
    return json::parse(read_file(p));
  } catch (const json::parse_error& e) {
    throw DecodeError(p.string() + ": " + e.what());
  }
}

void write_file(const fs::path& p, const std::string& text) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + p.string());
}

algebra::Rng make_rng(const std::optional<std::uint64_t>& seed) {
  return seed ? algebra::Rng::from_seed(*seed) : algebra::Rng::from_os();
}

/// Rules and stopwords from $ETENON_CONFIG_DIR when set, else the built-ins.
std::pair<tenon::ClassificationRules, tenon::Stopwords> load_config() {
  tenon::ClassificationRules rules = tenon::ClassificationRules::defaults();
  tenon::Stopwords stop = tenon::Stopwords::defaults();
  if (const char* dir = std::getenv("ETENON_CONFIG_DIR"); dir != nullptr && *dir != '\0') {
    const fs::path base(dir);
    if (fs::exists(base / "classification.conf")) {
      rules = tenon::ClassificationRules::parse(read_file(base / "classification.conf"));
    }
    if (fs::exists(base / "stopwords.txt")) stop = tenon::Stopwords::parse(read_file(base / "stopwords.txt"));
  }
  return {std::move(rules), std::move(stop)};
}

json report_to_json(const workflow::RetrievalReport& r) {
  json levels = json::array();
  for (const auto& [id, l] : r.levels) {
    levels.push_back({{"level", id},
                      {"decrypted", l.decrypted},
                      {"column", l.column},
                      {"complete", l.complete},
                      {"blocks", l.blocks}});
  }
  std::size_t verified = 0;
  for (const auto& row : r.rows) verified += row.verified ? 1 : 0;
  json ident = json::array();
  for (const auto& c : r.identifiable) ident.push_back({c.name, c.value});
  return {{"entry_id", r.entry_id},
          {"secret_verified", r.secret_verified},
          {"levels", levels},
          {"chains_recovered", r.chains_recovered()},
          {"rows_total", r.rows.size()},
          {"rows_verified", verified},
          {"text", r.recovered_text()},
          {"identifiable", ident}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"E-Tenon: leveled attribute-based pointer encryption, co-signing and the Tenon database"};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "Deterministic randomness seed (default: OS randomness)");

  // setup
  auto* setup = app.add_subcommand("setup", "Generate public parameters and the master key");
  std::string suite_id = "bls12-381";
  fs::path out_dir = ".";
  setup->add_option("--suite", suite_id, "bls12-381 | mock | mock-<prime>")->capture_default_str();
  setup->add_option("--out-dir", out_dir, "Directory for pp.json and msk.json")->capture_default_str();

  // keygen
  auto* keygen = app.add_subcommand("keygen", "Issue a key bundle for an attribute list");
  fs::path pp_path = "pp.json";
  fs::path msk_path = "msk.json";
  std::vector<std::string> attributes;
  fs::path key_out;
  keygen->add_option("--pp", pp_path)->capture_default_str();
  keygen->add_option("--msk", msk_path)->capture_default_str();
  keygen->add_option("--attributes", attributes, "Attribute names")->required()->delimiter(',');
  keygen->add_option("--out", key_out, "Key bundle file")->required();

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Preprocess, encrypt, co-sign and store one record");
  fs::path do_key, sp_key, record_path, policy_path, db_path = "tdb.jsonl";
  std::string label = "default";
  std::string table = "open";
  std::int64_t timestamp = 0;
  ingest->add_option("--pp", pp_path)->capture_default_str();
  ingest->add_option("--do-key", do_key, "Data owner key bundle")->required();
  ingest->add_option("--sp-key", sp_key, "Service provider key bundle")->required();
  ingest->add_option("--record", record_path,
                     "JSON {\"columns\": [[name, value], ...], \"column_levels\": {name: level}}")
      ->required();
  ingest->add_option("--policy", policy_path, "Policy file")->required();
  ingest->add_option("--db", db_path, "TDB log file")->capture_default_str();
  ingest->add_option("--label", label, "Access label for the secret entry")->capture_default_str();
  ingest->add_option("--table", table, "Open table name")->capture_default_str();
  ingest->add_option("--timestamp", timestamp, "Signed timestamp (default: now)");

  // retrieve
  auto* retrieve = app.add_subcommand("retrieve", "Decrypt and rebuild what a key can open");
  fs::path du_key;
  std::string entry;
  retrieve->add_option("--pp", pp_path)->capture_default_str();
  retrieve->add_option("--key", du_key, "Data user key bundle")->required();
  retrieve->add_option("--db", db_path)->capture_default_str();
  retrieve->add_option("--entry", entry, "Secret entry id (default: every entry)");
  retrieve->add_option("--label", label)->capture_default_str();

  // shuffle
  auto* shuffle = app.add_subcommand("shuffle", "Reshuffle open tables and print the order digests");
  shuffle->add_option("--pp", pp_path)->capture_default_str();
  shuffle->add_option("--db", db_path)->capture_default_str();
  std::string shuffle_table;
  shuffle->add_option("--table", shuffle_table, "Only this table");

  // run-scenario
  auto* scenario = app.add_subcommand("run-scenario", "Run a JSON scenario end to end");
  fs::path scenario_path;
  scenario->add_option("file", scenario_path)->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Count group operations and sizes over a parameter grid");
  std::string levels_arg, leaves_arg, signers_arg;
  std::string bench_suite = "mock";
  bool csv = false;
  bench->add_option("--levels", levels_arg, "k or a..b");
  bench->add_option("--leaves", leaves_arg, "l or a..b");
  bench->add_option("--signers", signers_arg, "n or a..b");
  bench->add_option("--suite", bench_suite)->capture_default_str();
  bench->add_flag("--csv", csv, "CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*setup) {
      auto rng = make_rng(seed);
      auto [pp, msk] = mlabe::setup(algebra::suite_from_id(suite_id), rng);
      write_file(out_dir / "pp.json", mlabe::to_json(pp).dump(2) + "\n");
      write_file(out_dir / "msk.json", mlabe::to_json(*pp.suite, msk).dump(2) + "\n");
      out << "wrote " << (out_dir / "pp.json").string() << " and " << (out_dir / "msk.json").string() << '\n';
      return 0;
    }
    const auto load_pp = [&] { return mlabe::public_params_from_json(read_json(pp_path)); };

    if (*keygen) {
      auto rng = make_rng(seed);
      const auto pp = load_pp();
      const auto msk = mlabe::master_key_from_json(*pp.suite, read_json(msk_path));
      const policy::AttributeSet attrs(attributes.begin(), attributes.end());
      const auto keys = mlabe::keygen(pp, msk, attrs, rng);
      write_file(key_out, mlabe::to_json(*pp.suite, keys).dump(2) + "\n");
      out << "wrote " << key_out.string() << " (" << attrs.size() << " attributes)\n";
      return 0;
    }
    if (*ingest) {
      const auto pp = load_pp();
      const auto [rules, stop] = load_config();
      const auto rec_json = read_json(record_path);
      tenon::EhrRecord record;
      workflow::AgreementOptions opt;
      try {
        for (const auto& c : rec_json.at("columns")) {
          record.columns.push_back({c.at(0).get<std::string>(), c.at(1).get<std::string>(), {}, false});
        }
        opt.column_levels = rec_json.at("column_levels").get<std::map<std::string, policy::LevelId>>();
      } catch (const json::exception& e) {
        throw DecodeError(record_path.string() + ": " + e.what());
      }
      opt.access_label = label;
      opt.table = table;
      opt.timestamp = timestamp != 0 ? timestamp
                                     : std::chrono::duration_cast<std::chrono::seconds>(
                                           std::chrono::system_clock::now().time_since_epoch())
                                           .count();
      const auto tree = policy::parse_policy(read_file(policy_path));
      auto rng = make_rng(seed);
      workflow::System sys{pp, {}, tdb::Database::open(pp, rng.fork("tdb"), db_path), {}, rng.fork("agreement"), {}};
      sys.entities["do"] = {"do", workflow::Role::kDo, {}, pp,
                            mlabe::key_bundle_from_json(*pp.suite, read_json(do_key))};
      sys.entities["sp"] = {"sp", workflow::Role::kSp, {}, pp,
                            mlabe::key_bundle_from_json(*pp.suite, read_json(sp_key))};
      const auto tr = workflow::run_agreement(sys, "do", "sp", record, tree, opt, rules, stop);
      json result{{"verdict", tr.verdict == workflow::Verdict::kIdentical ? "identical" : "refused"},
                  {"signatures", tr.signature_count()}};
      if (!tr.batch) {
        result["mismatch"] = tr.mismatch;
        out << result.dump(2) << '\n';
        return 3;
      }
      const auto outcome = workflow::submit(sys, tr);
      result["accepted"] = outcome.accepted;
      result["entry_id"] = tr.batch->secret.entry_id;
      result["rows"] = tr.batch->rows.size();
      if (!outcome.accepted) result["reject"] = {{"item", outcome.item}, {"reason", outcome.reason}};
      out << result.dump(2) << '\n';
      return outcome.accepted ? 0 : 3;
    }
    if (*retrieve) {
      const auto pp = load_pp();
      auto rng = make_rng(seed);
      workflow::System sys{pp, {}, tdb::Database::open(pp, rng.fork("tdb"), db_path), {}, rng.fork("du"), {}};
      sys.entities["du"] = {"du", workflow::Role::kDu, {}, pp,
                            mlabe::key_bundle_from_json(*pp.suite, read_json(du_key))};
      json reports = json::array();
      const auto ids = entry.empty() ? sys.tdb->secret_ids() : std::vector<std::string>{entry};
      for (const auto& id : ids) reports.push_back(report_to_json(workflow::phase_retrieval(sys, "du", id, label)));
      out << reports.dump(2) << '\n';
      return 0;
    }
    if (*shuffle) {
      const auto pp = load_pp();
      auto rng = make_rng(seed);
      auto db = tdb::Database::open(pp, rng.fork("tdb"), db_path);
      json result = json::array();
      for (const auto& name : db->table_names()) {
        if (!shuffle_table.empty() && name != shuffle_table) continue;
        const auto before = db->snapshot(name)->order_digest;
        db->shuffle_table(name);
        const auto snap = db->snapshot(name);
        result.push_back({{"table", name},
                          {"rows", snap->rows.size()},
                          {"before", algebra::to_hex(before)},
                          {"after", algebra::to_hex(snap->order_digest)}});
      }
      if (!shuffle_table.empty() && result.empty()) {
        throw Error(ErrorCode::kNotFound, "no table '" + shuffle_table + "'");
      }
      out << result.dump(2) << '\n';
      return 0;
    }
    if (*scenario) {
      const auto result = workflow::run_scenario(read_json(scenario_path));
      out << result.dump(2) << '\n';
      return result.at("passed").get<bool>() ? 0 : 3;
    }
    if (*bench) {
      const auto suite = algebra::suite_from_id(bench_suite);
      const std::uint64_t s = seed.value_or(1);
      std::vector<EncryptRow> enc;
      std::vector<SignRow> sig;
      if (!levels_arg.empty() || !leaves_arg.empty()) {
        enc = bench_encrypt(suite, parse_range(levels_arg.empty() ? "1" : levels_arg),
                            parse_range(leaves_arg.empty() ? "1" : leaves_arg), s);
      }
      if (!signers_arg.empty()) sig = bench_sign(suite, parse_range(signers_arg), s);
      if (enc.empty() && sig.empty()) throw InvalidArgument("bench needs --levels/--leaves or --signers");
      if (csv) {
        write_csv(out, enc, sig);
      } else {
        write_table(out, enc, sig);
      }
      return 0;
    }
  } catch (const Error& e) {
    err << json{{"code", error_code_name(e.code())}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << json{{"code", "internal"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }
  return 0;
}

}  // namespace etenon::cli
