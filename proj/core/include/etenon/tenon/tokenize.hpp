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

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "etenon/tenon/record.hpp"

namespace etenon::tenon {

/// Case-insensitive English function-word list.
class Stopwords {
 public:
  Stopwords() = default;
  explicit Stopwords(std::set<std::string> words);

  /// One word per line; blank lines and '#' comments ignored.
  static Stopwords parse(std::string_view text);
  static const Stopwords& defaults();

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::set<std::string> words_;  // lower-cased
};

/// Trims and collapses whitespace runs to one space.
std::string normalize(std::string_view text);

struct Tokenized {
  std::vector<std::string> blocks;
  /// Set when the text ends in stopwords with no main word after them; those
  /// words were folded into the last block.
  bool trailing_stopwords = false;
};

/// Splits normalized text into blocks of "preceding stopwords + one main
/// word". Joining blocks with single spaces gives normalize(text). Empty
/// input yields no blocks.
Tokenized tokenize(std::string_view text, const Stopwords& stopwords);

/// At least two words and not marked atomic.
bool is_tokenizable(const Column& column);

/// Blocks for one column: tokenized when tokenizable, otherwise the
/// normalized value as a single block (none when empty).
Tokenized column_blocks(const Column& column, const Stopwords& stopwords);

}  // namespace etenon::tenon
