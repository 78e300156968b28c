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

#include "etenon/tenon/record.hpp"

#include <fnmatch.h>

#include <cctype>

#include "etenon/default_config.hpp"
#include "etenon/error.hpp"

namespace etenon::tenon {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b])) != 0) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])) != 0) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

RuleClass parse_class(const std::string& word, std::size_t line_no) {
  const std::string w = lower(word);
  if (w == "identifiable") return RuleClass::kIdentifiable;
  if (w == "nonpii") return RuleClass::kNonPii;
  if (w == "atomic") return RuleClass::kAtomic;
  throw ConfigError("classification line " + std::to_string(line_no) + ": unknown class '" +
                    word + "'");
}

}  // namespace

std::string_view to_string(RuleClass c) {
  switch (c) {
    case RuleClass::kIdentifiable: return "identifiable";
    case RuleClass::kNonPii: return "nonpii";
    case RuleClass::kAtomic: return "atomic";
  }
  return "?";
}

ClassificationRules ClassificationRules::parse(std::string_view text) {
  ClassificationRules out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.rfind('=');
    if (eq == std::string::npos) {
      throw ConfigError("classification line " + std::to_string(line_no) + ": expected 'pattern = class'");
    }
    const std::string pattern = lower(trim(std::string_view(line).substr(0, eq)));
    const std::string cls = trim(std::string_view(line).substr(eq + 1));
    if (pattern.empty()) {
      throw ConfigError("classification line " + std::to_string(line_no) + ": empty pattern");
    }
    const RuleClass rc = parse_class(cls, line_no);
    if (pattern == "default") {
      if (out.default_) {
        throw ConfigError("classification line " + std::to_string(line_no) + ": second default");
      }
      out.default_ = rc;
    } else {
      out.rules_.emplace_back(pattern, rc);
    }
  }
  return out;
}

const ClassificationRules& ClassificationRules::defaults() {
  static const ClassificationRules rules = parse(detail::kDefaultClassification);
  return rules;
}

RuleClass ClassificationRules::lookup(std::string_view column) const {
  const std::string name = lower(trim(column));
  for (const auto& [pattern, cls] : rules_) {
    if (::fnmatch(pattern.c_str(), name.c_str(), 0) == 0) return cls;
  }
  if (default_) return *default_;
  throw ConfigError("no classification rule matches column '" + std::string(column) + "'");
}

EhrRecord classify(EhrRecord record, const ClassificationRules& rules) {
  for (auto& c : record.columns) {
    const RuleClass rc = rules.lookup(c.name);
    c.cls = rc == RuleClass::kIdentifiable ? ColumnClass::kIdentifiable : ColumnClass::kNonPii;
    c.atomic = rc == RuleClass::kAtomic;
  }
  return record;
}

}  // namespace etenon::tenon
