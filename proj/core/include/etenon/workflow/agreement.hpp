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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "etenon/tdb/records.hpp"
#include "etenon/workflow/system.hpp"

namespace etenon::workflow {

enum class Tamper { kNone, kBlockEdit, kReorder, kCiphertextSwap };

std::string_view to_string(Tamper t);
Tamper tamper_from_string(std::string_view s);

/// Attachment labels carried inside the ciphertext.
inline constexpr std::string_view kLinksLabel = "links";
inline constexpr std::string_view kIdentifiableLabel = "identifiable";

struct AgreementOptions {
  /// Each Non-PII column is stored under exactly one level; the mapped
  /// levels must be the policy's levels. Identifiable columns are sealed
  /// under the highest level.
  std::map<std::string, policy::LevelId> column_levels;
  std::string access_label = "default";
  std::string table = "open";
  std::string entry_id;  // derived from the ciphertext digest when empty
  std::int64_t timestamp = 1700000000;
  Tamper tamper = Tamper::kNone;
};

enum class Verdict { kIdentical, kMismatch };

struct StepRecord {
  int step = 0;
  std::string name;
  std::string detail;
};

struct AgreementTranscript {
  std::vector<StepRecord> steps;
  algebra::Digest preprocess_digest{};
  algebra::Digest ciphertext_digest{};
  bool sp_reconstructed = false;
  Verdict verdict = Verdict::kMismatch;
  std::string mismatch;
  /// Present only when the verdict is identical: the co-signed rows and
  /// secret entry, ready for the TDB.
  std::optional<tdb::IngestBatch> batch;
  std::string roster_ref;
  musig::Roster roster;

  std::size_t signature_count() const {
    return batch ? batch->rows.size() + 1 : 0;
  }
};

/// Steps 1-5 between a DO and an SP over `record`. The SP must satisfy
/// every level of the policy (throws Error(kAgreementImpossible)
/// otherwise). A mismatch at step 4 is a refusal with no signature, not an
/// error.
AgreementTranscript run_agreement(System& sys, const std::string& do_name, const std::string& sp_name,
                                  const tenon::EhrRecord& record, const policy::AccessTree& tree,
                                  const AgreementOptions& options,
                                  const tenon::ClassificationRules& rules = tenon::ClassificationRules::defaults(),
                                  const tenon::Stopwords& stopwords = tenon::Stopwords::defaults());

/// Registers the transcript's roster with the TDB and ingests its batch.
/// A refused transcript is rejected without touching the TDB.
tdb::IngestOutcome submit(System& sys, const AgreementTranscript& transcript);

}  // namespace etenon::workflow
