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

#include <string>
#include <vector>

#include "etenon/algebra/rng.hpp"
#include "etenon/tenon/record.hpp"
#include "etenon/tenon/structure.hpp"
#include "etenon/tenon/tokenize.hpp"

namespace etenon::tenon {

/// One Non-PII column turned into a chain.
struct ColumnChain {
  std::string column;
  TenonStructure structure;
  bool trailing_stopwords = false;
};

struct Preprocessed {
  std::vector<ColumnChain> chains;      // record order, empty values skipped
  std::vector<Column> identifiable;     // sealed separately
};

/// classify -> tokenize -> build_structure for every column.
Preprocessed preprocess(const EhrRecord& record, const ClassificationRules& rules,
                        const Stopwords& stopwords, algebra::Rng& rng);

}  // namespace etenon::tenon
