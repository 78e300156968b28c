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

#include "etenon/policy/parser.hpp"
#include "etenon/tenon/record.hpp"
#include "etenon/workflow/agreement.hpp"
#include "etenon/workflow/system.hpp"

namespace etenon::testing {

/// Ward fixture: five levels, a doctor who opens all of them, a nurse who
/// opens two and a visitor who opens none.
inline const char* kWardPolicy =
    "level 1 requires [1]\n"
    "level 2 requires [2]\n"
    "level 3 requires [1, 3]\n"
    "level 4 requires [3, 4]\n"
    "level 5 requires [3, 5]\n"
    "tree: threshold(1,\n"
    "  threshold(1, attr:doctor, attr:nurse),\n"
    "  threshold(1, attr:doctor, attr:nurse),\n"
    "  attr:doctor,\n"
    "  threshold(2, attr:doctor, attr:oncology),\n"
    "  attr:doctor)\n";

inline std::vector<workflow::EntitySpec> ward_entities() {
  using workflow::Role;
  return {{"cta", Role::kCta, {}},
          {"aa", Role::kAa, {}},
          {"patient", Role::kDo, {"patient"}},
          {"ward-device", Role::kSp, {"doctor", "nurse", "oncology"}},
          {"tdb", Role::kTdb, {}},
          {"dr-adams", Role::kDu, {"doctor", "oncology"}},
          {"nurse-baker", Role::kDu, {"nurse"}},
          {"visitor", Role::kDu, {"visitor"}}};
}

inline tenon::EhrRecord ward_record() {
  return {{{"NINO", "QQ 12 34 56 C", {}, false},
           {"mobile", "07700 900123", {}, false},
           {"gender", "female", {}, false},
           {"blood pressure", "140 over 90 at rest", {}, false},
           {"symptom", "pain in the chest and  shortness of breath", {}, false},
           {"medical condition", "suspected angina with a history of hypertension", {}, false},
           {"treatment notes", "start a low dose of aspirin and review in two weeks", {}, false}}};
}

inline workflow::AgreementOptions ward_options(workflow::Tamper tamper = workflow::Tamper::kNone) {
  workflow::AgreementOptions o;
  o.column_levels = {{"gender", 1}, {"blood pressure", 2}, {"symptom", 3}, {"medical condition", 4}, {"treatment notes", 5}};
  o.access_label = "cardiology";
  o.tamper = tamper;
  return o;
}

}  // namespace etenon::testing
