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

#include "etenon/tdb/records.hpp"

#include "etenon/error.hpp"
#include "etenon/mlabe/serialize.hpp"
#include "etenon/musig/json.hpp"

namespace etenon::tdb {

using nlohmann::json;

json to_json(const algebra::GroupSuite& suite, const OpenRow& row) {
  return {{"pointer", row.pointer.to_string()},
          {"block", row.block},
          {"sig", musig::to_json(suite, row.sig)},
          {"roster", row.roster_ref},
          {"t", row.timestamp}};
}

OpenRow open_row_from_json(const algebra::GroupSuite& suite, const json& j) {
  try {
    return {Pointer::parse(j.at("pointer").get<std::string>()), j.at("block").get<std::string>(),
            musig::multisig_from_json(suite, j.at("sig")), j.at("roster").get<std::string>(),
            j.at("t").get<std::int64_t>()};
  } catch (const json::exception& e) {
    throw DecodeError(std::string("malformed open row: ") + e.what());
  }
}

json to_json(const algebra::GroupSuite& suite, const SecretEntry& entry) {
  return {{"id", entry.entry_id},
          {"ciphertext", mlabe::to_json(suite, entry.ciphertext)},
          {"sig", musig::to_json(suite, entry.sig)},
          {"roster", entry.roster_ref},
          {"label", entry.access_label},
          {"t", entry.timestamp}};
}

SecretEntry secret_entry_from_json(const algebra::GroupSuite& suite, const json& j) {
  try {
    return {j.at("id").get<std::string>(), mlabe::ciphertext_from_json(suite, j.at("ciphertext")),
            musig::multisig_from_json(suite, j.at("sig")), j.at("roster").get<std::string>(),
            j.at("label").get<std::string>(), j.at("t").get<std::int64_t>()};
  } catch (const json::exception& e) {
    throw DecodeError(std::string("malformed secret entry: ") + e.what());
  }
}

json to_json(const algebra::GroupSuite& suite, const IngestBatch& batch) {
  json rows = json::array();
  for (const auto& r : batch.rows) rows.push_back(to_json(suite, r));
  return {{"table", batch.table}, {"rows", std::move(rows)}, {"secret", to_json(suite, batch.secret)}};
}

IngestBatch ingest_batch_from_json(const algebra::GroupSuite& suite, const json& j) {
  try {
    std::vector<OpenRow> rows;
    for (const auto& r : j.at("rows")) rows.push_back(open_row_from_json(suite, r));
    return IngestBatch{j.at("table").get<std::string>(), std::move(rows),
                       secret_entry_from_json(suite, j.at("secret"))};
  } catch (const json::exception& e) {
    throw DecodeError(std::string("malformed ingest batch: ") + e.what());
  }
}

}  // namespace etenon::tdb
