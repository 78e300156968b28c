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

#include "etenon/musig/json.hpp"

#include "etenon/error.hpp"

namespace etenon::musig {

using nlohmann::json;

json to_json(const RoundMessage& m) {
  return {{"session_id", m.session_id},
          {"round", static_cast<int>(m.round)},
          {"sender", m.sender},
          {"payload", algebra::base64_encode(m.payload)}};
}

RoundMessage round_message_from_json(const json& j) {
  try {
    const int round = j.at("round").get<int>();
    if (round < 1 || round > 3) throw DecodeError("round out of range");
    return {j.at("session_id").get<std::string>(), static_cast<Round>(round),
            j.at("sender").get<std::size_t>(),
            algebra::base64_decode(j.at("payload").get<std::string>())};
  } catch (const json::exception& e) {
    throw DecodeError(std::string("malformed round message: ") + e.what());
  }
}

json to_json(const algebra::GroupSuite& suite, const MultiSig& sig) {
  return {{"rc", algebra::base64_encode(suite.encode(sig.rc))},
          {"ms", algebra::base64_encode(sig.ms.encode())}};
}

MultiSig multisig_from_json(const algebra::GroupSuite& suite, const json& j) {
  try {
    return {suite.decode_g0(algebra::base64_decode(j.at("rc").get<std::string>())),
            suite.scalars().decode(algebra::base64_decode(j.at("ms").get<std::string>()))};
  } catch (const json::exception& e) {
    throw DecodeError(std::string("malformed signature: ") + e.what());
  }
}

json to_json(const algebra::GroupSuite& suite, const Roster& roster) {
  json out = json::array();
  for (const auto& vk : roster) out.push_back(algebra::base64_encode(suite.encode(vk.point)));
  return out;
}

Roster roster_from_json(const algebra::GroupSuite& suite, const json& j) {
  try {
    Roster out;
    for (const auto& e : j) {
      out.push_back({suite.decode_g0(algebra::base64_decode(e.get<std::string>()))});
    }
    return out;
  } catch (const json::exception& e) {
    throw DecodeError(std::string("malformed roster: ") + e.what());
  }
}

}  // namespace etenon::musig
