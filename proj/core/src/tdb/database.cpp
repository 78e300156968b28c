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

#include "etenon/tdb/database.hpp"

#include <algorithm>
#include <fstream>

#include "etenon/error.hpp"
#include "etenon/mlabe/serialize.hpp"
#include "etenon/musig/digest.hpp"
#include "etenon/musig/json.hpp"

namespace etenon::tdb {

using nlohmann::json;

algebra::Digest TableSnapshot::digest_of(const std::vector<std::shared_ptr<const OpenRow>>& rows) {
  algebra::Bytes ids;
  ids.reserve(rows.size() * Pointer::kBytes);
  for (const auto& r : rows) ids.insert(ids.end(), r->pointer.bytes().begin(), r->pointer.bytes().end());
  return algebra::hash_commit(ids);
}

TableSnapshot shuffle(const TableSnapshot& table, algebra::Rng& rng) {
  if (table.rows.size() <= 1) return table;
  TableSnapshot out{table.rows, {}};
  do {
    std::shuffle(out.rows.begin(), out.rows.end(), rng);
    out.order_digest = TableSnapshot::digest_of(out.rows);
  } while (out.order_digest == table.order_digest);
  return out;
}

Database::Database(mlabe::PublicParams pp, algebra::Rng rng,
                   std::optional<std::filesystem::path> log_path)
    : pp_(std::move(pp)),
      pp_bytes_(pp_.encode()),
      log_path_(std::move(log_path)),
      rng_(std::move(rng)),
      state_(std::make_shared<const State>()) {}

Database::~Database() { stop_periodic_shuffle(); }

std::unique_ptr<Database> Database::open(mlabe::PublicParams pp, algebra::Rng rng,
                                         const std::filesystem::path& log_path) {
  auto db = std::make_unique<Database>(std::move(pp), std::move(rng), log_path);
  std::ifstream in(log_path);
  if (!in) return db;
  const auto& suite = *db->pp_.suite;
  std::lock_guard lock(db->writer_);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json j = json::parse(line);
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "roster") {
        db->register_locked(j.at("ref").get<std::string>(),
                            musig::roster_from_json(suite, j.at("roster")), false);
      } else if (kind == "ingest") {
        const auto outcome = db->ingest_locked(ingest_batch_from_json(suite, j.at("batch")), false);
        if (!outcome.accepted) {
          throw DecodeError("logged ingest no longer verifies: " + outcome.item + ": " + outcome.reason);
        }
      } else {
        throw DecodeError("unknown log record kind '" + kind + "'");
      }
    } catch (const json::exception& e) {
      throw DecodeError("log line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw DecodeError("log line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return db;
}

void Database::append_log(const json& line) {
  if (!log_path_) return;
  std::ofstream out(*log_path_, std::ios::app | std::ios::binary);
  out << line.dump() << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::kIo, "cannot append to " + log_path_->string());
}

void Database::register_roster(const std::string& ref, const musig::Roster& roster) {
  std::lock_guard lock(writer_);
  register_locked(ref, roster, true);
}

void Database::register_locked(const std::string& ref, const musig::Roster& roster, bool persist) {
  if (roster.empty()) throw InvalidArgument("roster is empty");
  auto current = load();
  if (const auto it = current->rosters.find(ref); it != current->rosters.end()) {
    if (it->second == roster) return;
    throw InvalidArgument("roster ref '" + ref + "' already bound");
  }
  if (persist) {
    append_log({{"kind", "roster"}, {"ref", ref}, {"roster", musig::to_json(*pp_.suite, roster)}});
  }
  auto next = std::make_shared<State>(*current);
  next->rosters.emplace(ref, roster);
  std::atomic_store(&state_, std::shared_ptr<const State>(std::move(next)));
}

IngestOutcome Database::ingest(const IngestBatch& batch) {
  std::lock_guard lock(writer_);
  return ingest_locked(batch, true);
}

IngestOutcome Database::ingest_locked(const IngestBatch& batch, bool persist) {
  const auto& suite = *pp_.suite;
  auto current = load();
  auto reject = [](std::string item, std::string reason) {
    return IngestOutcome{false, std::move(item), std::move(reason)};
  };
  auto roster_of = [&](const std::string& ref) -> const musig::Roster* {
    const auto it = current->rosters.find(ref);
    return it == current->rosters.end() ? nullptr : &it->second;
  };

  if (batch.table.empty()) return reject("table", "empty table name");
  std::set<Pointer> fresh;
  for (std::size_t i = 0; i < batch.rows.size(); ++i) {
    const OpenRow& row = batch.rows[i];
    const std::string item = "row " + std::to_string(i);
    if (current->pointers.contains(row.pointer) || !fresh.insert(row.pointer).second) {
      return reject(item, "duplicate pointer " + row.pointer.to_string());
    }
    const auto* roster = roster_of(row.roster_ref);
    if (roster == nullptr) return reject(item, "unknown roster '" + row.roster_ref + "'");
    const auto msg = musig::block_message(algebra::to_bytes(row.block), row.pointer, pp_bytes_, row.timestamp);
    if (!musig::verify(suite, row.sig, *roster, msg)) return reject(item, "signature does not verify");
  }

  const SecretEntry& secret = batch.secret;
  if (secret.entry_id.empty()) return reject("secret", "empty entry id");
  if (current->secrets.contains(secret.entry_id)) {
    return reject("secret", "duplicate entry id '" + secret.entry_id + "'");
  }
  const auto* roster = roster_of(secret.roster_ref);
  if (roster == nullptr) return reject("secret", "unknown roster '" + secret.roster_ref + "'");
  const auto msg = musig::ciphertext_message(mlabe::canonical_bytes(suite, secret.ciphertext),
                                             pp_bytes_, secret.timestamp);
  if (!musig::verify(suite, secret.sig, *roster, msg)) return reject("secret", "signature does not verify");

  if (persist) append_log({{"kind", "ingest"}, {"batch", to_json(suite, batch)}});

  auto next = std::make_shared<State>(*current);
  TableSnapshot table;
  if (const auto it = next->tables.find(batch.table); it != next->tables.end()) table = *it->second;
  for (const auto& row : batch.rows) {
    table.rows.push_back(std::make_shared<const OpenRow>(row));
    next->pointers.insert(row.pointer);
  }
  table.order_digest = TableSnapshot::digest_of(table.rows);
  next->tables[batch.table] = std::make_shared<const TableSnapshot>(shuffle(table, rng_));
  next->secrets.emplace(secret.entry_id, std::make_shared<const SecretEntry>(secret));
  std::atomic_store(&state_, std::shared_ptr<const State>(std::move(next)));
  return {true, {}, {}};
}

void Database::shuffle_table(const std::string& table) {
  std::lock_guard lock(writer_);
  auto current = load();
  const auto it = current->tables.find(table);
  if (it == current->tables.end()) throw Error(ErrorCode::kNotFound, "no table '" + table + "'");
  auto next = std::make_shared<State>(*current);
  next->tables[table] = std::make_shared<const TableSnapshot>(shuffle(*it->second, rng_));
  std::atomic_store(&state_, std::shared_ptr<const State>(std::move(next)));
}

void Database::shuffle_all() {
  std::lock_guard lock(writer_);
  auto current = load();
  auto next = std::make_shared<State>(*current);
  for (auto& [name, table] : next->tables) {
    table = std::make_shared<const TableSnapshot>(shuffle(*table, rng_));
  }
  std::atomic_store(&state_, std::shared_ptr<const State>(std::move(next)));
}

std::shared_ptr<const TableSnapshot> Database::snapshot(const std::string& table) const {
  auto current = load();
  const auto it = current->tables.find(table);
  if (it == current->tables.end()) return std::make_shared<const TableSnapshot>();
  return it->second;
}

std::vector<std::string> Database::table_names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : load()->tables) out.push_back(name);
  return out;
}

std::vector<OpenRow> Database::read_open(const std::string& table,
                                         const std::optional<Pointer>& pointer) const {
  const auto snap = snapshot(table);
  std::vector<OpenRow> out;
  for (const auto& r : snap->rows) {
    if (!pointer || r->pointer == *pointer) out.push_back(*r);
  }
  return out;
}

std::vector<OpenRow> Database::read_all_open() const {
  auto current = load();
  std::vector<OpenRow> out;
  for (const auto& [_, table] : current->tables) {
    for (const auto& r : table->rows) out.push_back(*r);
  }
  return out;
}

SecretEntry Database::read_secret(const std::string& entry_id, const std::string& label) const {
  auto current = load();
  const auto it = current->secrets.find(entry_id);
  if (it == current->secrets.end()) throw Error(ErrorCode::kNotFound, "no such entry");
  if (it->second->access_label != label) throw Error(ErrorCode::kAccessDenied, "access denied");
  return *it->second;
}

std::string Database::secret_response(const std::string& entry_id, const std::string& label) const {
  try {
    return json{{"status", "ok"}, {"entry", to_json(*pp_.suite, read_secret(entry_id, label))}}.dump();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kAccessDenied) return R"({"status":"access_denied"})";
    if (e.code() == ErrorCode::kNotFound) return R"({"status":"not_found"})";
    throw;
  }
}

std::vector<std::string> Database::secret_ids() const {
  std::vector<std::string> out;
  for (const auto& [id, _] : load()->secrets) out.push_back(id);
  return out;
}

std::optional<musig::Roster> Database::roster(const std::string& ref) const {
  auto current = load();
  const auto it = current->rosters.find(ref);
  if (it == current->rosters.end()) return std::nullopt;
  return it->second;
}

void Database::start_periodic_shuffle(std::chrono::milliseconds interval) {
  stop_periodic_shuffle();
  shuffler_ = std::jthread([this, interval](std::stop_token stop) {
    std::unique_lock lock(timer_mutex_);
    while (!stop.stop_requested()) {
      if (timer_cv_.wait_for(lock, stop, interval, [] { return false; })) break;
      if (stop.stop_requested()) break;
      lock.unlock();
      shuffle_all();
      lock.lock();
    }
  });
}

void Database::stop_periodic_shuffle() {
  if (shuffler_.joinable()) {
    shuffler_.request_stop();
    shuffler_.join();
  }
}

}  // namespace etenon::tdb
