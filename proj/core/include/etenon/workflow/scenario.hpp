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

#include <nlohmann/json.hpp>

namespace etenon::workflow {

/// Runs a declarative scenario:
///
///   {"suite": "mock", "seed": 7,
///    "entities": [{"name": "cta", "role": "cta"}, ...,
///                 {"name": "nurse", "role": "du", "attributes": ["nurse"]}],
///    "policy": "level 1 requires [1] ...",
///    "record": [["NINO", "QQ123456C"], ["symptom", "pain in the chest"]],
///    "column_levels": {"symptom": 1},
///    "access_label": "ward-7", "timestamp": 1700000000,
///    "agreements": [{"do": "patient", "sp": "device", "tamper": "none",
///                    "expect": "identical"}],
///    "retrievals": [{"du": "nurse", "expect_chains": 2}]}
///
/// Retrievals run against every entry an agreement stored. The result
/// mirrors the input with outcomes and an overall "passed" flag that is
/// false when any stated expectation fails.
nlohmann::json run_scenario(const nlohmann::json& scenario);

}  // namespace etenon::workflow
