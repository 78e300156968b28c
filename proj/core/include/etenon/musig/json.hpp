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

#include "etenon/musig/session.hpp"

namespace etenon::musig {

/// {"session_id", "round", "sender", "payload"(base64)}
nlohmann::json to_json(const RoundMessage& m);
RoundMessage round_message_from_json(const nlohmann::json& j);

/// {"rc"(base64), "ms"(base64)}
nlohmann::json to_json(const algebra::GroupSuite& suite, const MultiSig& sig);
MultiSig multisig_from_json(const algebra::GroupSuite& suite, const nlohmann::json& j);

nlohmann::json to_json(const algebra::GroupSuite& suite, const Roster& roster);
Roster roster_from_json(const algebra::GroupSuite& suite, const nlohmann::json& j);

}  // namespace etenon::musig
