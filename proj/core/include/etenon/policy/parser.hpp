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

#include <cstddef>
#include <string>
#include <string_view>

#include "etenon/error.hpp"
#include "etenon/policy/access_tree.hpp"

namespace etenon::policy {

/// Policy language:
///
///   # comment
///   level 1 requires [1]
///   level 2 requires [1, 2]
///   tree: threshold(2,
///           threshold(1, attr:doctor, attr:nurse),
///           attr:oncology)
///
/// `tree:` appears exactly once and its root must be a threshold gate; the
/// root's direct children are the indexed sub-trees the levels refer to.
/// Whitespace, including newlines, is insignificant inside the tree.
class PolicyError : public Error {
 public:
  enum class Kind {
    kSyntax,
    kThresholdOutOfRange,
    kUnknownChildIndex,
    kInvalidLevel,
  };

  PolicyError(Kind kind, std::size_t line, std::size_t column, const std::string& message);

  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  Kind kind_;
  std::size_t line_;
  std::size_t column_;
};

AccessTree parse_policy(std::string_view text);

/// Canonical text form; parse_policy(format_policy(t)) == t.
std::string format_policy(const AccessTree& tree);

}  // namespace etenon::policy
