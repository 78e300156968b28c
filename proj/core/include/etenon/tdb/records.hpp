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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "etenon/mlabe/mlabe.hpp"
#include "etenon/musig/session.hpp"
#include "etenon/tenon/pointer.hpp"

namespace etenon::tdb {

using tenon::Pointer;

/// Public row: a block, its pointer and the co-signature over both.
struct OpenRow {
  Pointer pointer;
  std::string block;
  musig::MultiSig sig;
  std::string roster_ref;
  std::int64_t timestamp = 0;
};

/// Encrypted pointer bundle; readable only under its access label.
struct SecretEntry {
  std::string entry_id;
  mlabe::CiphertextBundle ciphertext;
  musig::MultiSig sig;
  std::string roster_ref;
  std::string access_label;
  std::int64_t timestamp = 0;
};

/// One all-or-nothing ingest.
struct IngestBatch {
  std::string table = "open";
  std::vector<OpenRow> rows;
  SecretEntry secret;
};

nlohmann::json to_json(const algebra::GroupSuite& suite, const OpenRow& row);
OpenRow open_row_from_json(const algebra::GroupSuite& suite, const nlohmann::json& j);
nlohmann::json to_json(const algebra::GroupSuite& suite, const SecretEntry& entry);
SecretEntry secret_entry_from_json(const algebra::GroupSuite& suite, const nlohmann::json& j);
nlohmann::json to_json(const algebra::GroupSuite& suite, const IngestBatch& batch);
IngestBatch ingest_batch_from_json(const algebra::GroupSuite& suite, const nlohmann::json& j);

}  // namespace etenon::tdb
