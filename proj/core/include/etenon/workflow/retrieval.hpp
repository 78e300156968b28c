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

#include <map>
#include <string>
#include <vector>

#include "etenon/workflow/system.hpp"

namespace etenon::workflow {

struct LevelRecovery {
  policy::LevelId level = 0;
  bool decrypted = false;
  std::string column;
  std::vector<std::string> blocks;
  bool complete = false;
};

struct RowCheck {
  tenon::Pointer pointer;
  bool verified = false;
};

struct RetrievalReport {
  std::string entry_id;
  bool secret_verified = false;
  std::map<policy::LevelId, LevelRecovery> levels;  // every declared level
  std::vector<RowCheck> rows;
  std::vector<tenon::Column> identifiable;

  /// Levels whose pointer was decrypted and whose chain reached its end.
  std::size_t chains_recovered() const;
  std::map<std::string, std::string> recovered_text() const;
};

/// DU pipeline: fetch the secret entry, check its signature (throws
/// ProtocolError before any decryption when it fails), decrypt what the
/// DU's attributes allow, verify open rows and join chains from the
/// recovered heads.
RetrievalReport phase_retrieval(System& sys, const std::string& du_name, const std::string& entry_id,
                                const std::string& access_label);

}  // namespace etenon::workflow
