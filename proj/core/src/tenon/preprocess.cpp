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

#include "etenon/tenon/preprocess.hpp"

namespace etenon::tenon {

Preprocessed preprocess(const EhrRecord& record, const ClassificationRules& rules,
                        const Stopwords& stopwords, algebra::Rng& rng) {
  const EhrRecord labelled = classify(record, rules);
  Preprocessed out;
  for (const auto& c : labelled.columns) {
    if (c.cls == ColumnClass::kIdentifiable) {
      out.identifiable.push_back(c);
      continue;
    }
    Tokenized t = column_blocks(c, stopwords);
    if (t.blocks.empty()) continue;
    out.chains.push_back({c.name, build_structure(t.blocks, rng), t.trailing_stopwords});
  }
  return out;
}

}  // namespace etenon::tenon
