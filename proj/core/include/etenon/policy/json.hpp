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

#include "etenon/policy/access_tree.hpp"

namespace etenon::policy {

/// Canonical JSON form shipped inside ciphertext bundles:
/// {"children":[...],"levels":[{"id":1,"requires":[1]}],"root_threshold":1}
/// with nodes {"kind":"gate","threshold":t,"children":[...]} or
/// {"kind":"leaf","attribute":"x"}.
nlohmann::json to_json(const AccessTree& tree);

/// Throws DecodeError on malformed input, InvalidArgument on invalid trees.
AccessTree tree_from_json(const nlohmann::json& j);

}  // namespace etenon::policy
