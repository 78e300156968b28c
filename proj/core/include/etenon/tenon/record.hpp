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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace etenon::tenon {

enum class ColumnClass { kIdentifiable, kNonPii };

/// What a rule says about a column. Atomic columns are Non-PII but are
/// never split into blocks.
enum class RuleClass { kIdentifiable, kNonPii, kAtomic };

struct Column {
  std::string name;
  std::string value;
  std::optional<ColumnClass> cls;
  bool atomic = false;

  bool operator==(const Column&) const = default;
};

struct EhrRecord {
  std::vector<Column> columns;

  bool operator==(const EhrRecord&) const = default;
};

/// Ordered "pattern = class" rules. Patterns are shell globs, matched
/// case-insensitively; the first match wins, then the `default` rule.
class ClassificationRules {
 public:
  /// Throws ConfigError on an unknown class or a malformed line.
  static ClassificationRules parse(std::string_view text);
  /// The rules compiled in from config/classification.conf.
  static const ClassificationRules& defaults();

  /// Throws ConfigError when nothing matches and no default is set.
  RuleClass lookup(std::string_view column) const;

  std::size_t size() const { return rules_.size(); }
  bool has_default() const { return default_.has_value(); }

 private:
  std::vector<std::pair<std::string, RuleClass>> rules_;
  std::optional<RuleClass> default_;
};

/// Labels every column. Identifiable columns are later sealed, not tokenized.
EhrRecord classify(EhrRecord record, const ClassificationRules& rules);

std::string_view to_string(RuleClass c);

}  // namespace etenon::tenon
