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

#include "etenon/tenon/tokenize.hpp"

#include <cctype>

#include "etenon/default_config.hpp"

namespace etenon::tenon {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string_view> words_of(std::string_view normalized) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < normalized.size()) {
    const std::size_t sp = std::min(normalized.find(' ', pos), normalized.size());
    out.push_back(normalized.substr(pos, sp - pos));
    pos = sp + 1;
  }
  return out;
}

}  // namespace

Stopwords::Stopwords(std::set<std::string> words) {
  for (const auto& w : words) words_.insert(lower(w));
}

Stopwords Stopwords::parse(std::string_view text) {
  std::set<std::string> words;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    const std::string line = normalize(text.substr(pos, nl - pos));
    pos = nl + 1;
    if (line.empty() || line.front() == '#') continue;
    words.insert(line);
  }
  return Stopwords(std::move(words));
}

const Stopwords& Stopwords::defaults() {
  static const Stopwords words = parse(detail::kDefaultStopwords);
  return words;
}

bool Stopwords::contains(std::string_view word) const { return words_.contains(lower(word)); }

std::string normalize(std::string_view text) {
  std::string out;
  bool pending_space = false;
  for (const char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

Tokenized tokenize(std::string_view text, const Stopwords& stopwords) {
  const std::string norm = normalize(text);
  Tokenized out;
  std::string pending;
  for (const auto w : words_of(norm)) {
    if (!pending.empty()) pending.push_back(' ');
    pending.append(w);
    if (!stopwords.contains(w)) {
      out.blocks.push_back(std::move(pending));
      pending.clear();
    }
  }
  if (!pending.empty()) {
    out.trailing_stopwords = true;
    if (out.blocks.empty()) {
      out.blocks.push_back(std::move(pending));
    } else {
      out.blocks.back() += ' ' + pending;
    }
  }
  return out;
}

bool is_tokenizable(const Column& column) {
  if (column.atomic) return false;
  return words_of(normalize(column.value)).size() >= 2;
}

Tokenized column_blocks(const Column& column, const Stopwords& stopwords) {
  if (is_tokenizable(column)) return tokenize(column.value, stopwords);
  Tokenized out;
  std::string norm = normalize(column.value);
  if (!norm.empty()) out.blocks.push_back(std::move(norm));
  return out;
}

}  // namespace etenon::tenon
