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

#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stop_token>
#include <string>
#include <thread>
#include <vector>

#include "etenon/algebra/hashing.hpp"
#include "etenon/algebra/rng.hpp"
#include "etenon/tdb/records.hpp"

namespace etenon::tdb {

/// Rows in their current order plus H0 over the concatenated row ids.
struct TableSnapshot {
  std::vector<std::shared_ptr<const OpenRow>> rows;
  algebra::Digest order_digest{};

  static algebra::Digest digest_of(const std::vector<std::shared_ptr<const OpenRow>>& rows);
};

/// Uniform permutation of `table`. For two or more rows the result never
/// repeats the input order: a draw with an unchanged order digest is
/// reshuffled. Zero or one row comes back unchanged.
TableSnapshot shuffle(const TableSnapshot& table, algebra::Rng& rng);

struct IngestOutcome {
  bool accepted = false;
  /// Failing item on reject: "row <i>", "secret", "roster <ref>", ...
  std::string item;
  std::string reason;
};

/// The Tenon database. Readers work on immutable snapshots swapped in
/// atomically; ingest, shuffle and roster registration go through one
/// writer lock. With a log path, every accepted change is appended as one
/// JSON line and replayed by open().
class Database {
 public:
  Database(mlabe::PublicParams pp, algebra::Rng rng,
           std::optional<std::filesystem::path> log_path = std::nullopt);
  ~Database();
  Database(const Database&) = delete;
  Database& operator=(const Database&) = delete;

  /// Replays an existing log (if any) and keeps appending to it.
  static std::unique_ptr<Database> open(mlabe::PublicParams pp, algebra::Rng rng,
                                        const std::filesystem::path& log_path);

  /// Throws InvalidArgument for an empty roster or a ref already bound to a
  /// different roster.
  void register_roster(const std::string& ref, const musig::Roster& roster);

  /// Verifies every row signature and the secret entry signature. Accepts
  /// all or nothing, then shuffles the touched table.
  IngestOutcome ingest(const IngestBatch& batch);

  void shuffle_table(const std::string& table);
  void shuffle_all();

  std::shared_ptr<const TableSnapshot> snapshot(const std::string& table) const;
  std::vector<std::string> table_names() const;

  /// Full scan in current order, or the row with `pointer` if given.
  std::vector<OpenRow> read_open(const std::string& table,
                                 const std::optional<Pointer>& pointer = std::nullopt) const;
  /// Every open table, concatenated in table-name order.
  std::vector<OpenRow> read_all_open() const;

  /// Throws Error(kNotFound) for an unknown id, Error(kAccessDenied) on a
  /// label mismatch.
  SecretEntry read_secret(const std::string& entry_id, const std::string& label) const;
  /// The same lookup as a response body. Denied and unknown ids get fixed
  /// bodies whose size does not depend on the entry.
  std::string secret_response(const std::string& entry_id, const std::string& label) const;
  std::vector<std::string> secret_ids() const;

  std::optional<musig::Roster> roster(const std::string& ref) const;
  const mlabe::PublicParams& public_params() const { return pp_; }

  /// Background reshuffle of every table each `interval` until stopped.
  void start_periodic_shuffle(std::chrono::milliseconds interval);
  void stop_periodic_shuffle();

 private:
  struct State {
    std::map<std::string, std::shared_ptr<const TableSnapshot>> tables;
    std::map<std::string, std::shared_ptr<const SecretEntry>> secrets;
    std::map<std::string, musig::Roster> rosters;
    std::set<Pointer> pointers;
  };

  std::shared_ptr<const State> load() const { return std::atomic_load(&state_); }
  IngestOutcome ingest_locked(const IngestBatch& batch, bool persist);
  void register_locked(const std::string& ref, const musig::Roster& roster, bool persist);
  void append_log(const nlohmann::json& line);

  mlabe::PublicParams pp_;
  algebra::Bytes pp_bytes_;
  std::optional<std::filesystem::path> log_path_;
  mutable std::mutex writer_;
  algebra::Rng rng_;
  std::shared_ptr<const State> state_;

  std::mutex timer_mutex_;
  std::condition_variable_any timer_cv_;
  std::jthread shuffler_;
};

}  // namespace etenon::tdb
