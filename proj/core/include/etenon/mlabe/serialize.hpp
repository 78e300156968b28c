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

#include "etenon/mlabe/mlabe.hpp"

namespace etenon::mlabe {

/// Envelope version written into every artifact.
inline constexpr int kEnvelopeVersion = 1;

/// JSON envelopes: {"version", "type", "suite", ...} with base64 group
/// elements and scalars. Objects are emitted with sorted keys and arrays in
/// canonical order (levels ascending, leaves in tree order), so dump() is a
/// stable byte string.
nlohmann::json to_json(const PublicParams& pp);
nlohmann::json to_json(const GroupSuite& suite, const MasterKey& msk);
nlohmann::json to_json(const GroupSuite& suite, const KeyBundle& keys);
nlohmann::json to_json(const GroupSuite& suite, const CiphertextBundle& ct);

/// Decoders throw DecodeError on malformed envelopes, wrong types or a suite
/// mismatch.
PublicParams public_params_from_json(const nlohmann::json& j);
MasterKey master_key_from_json(const GroupSuite& suite, const nlohmann::json& j);
KeyBundle key_bundle_from_json(const GroupSuite& suite, const nlohmann::json& j);
CiphertextBundle ciphertext_from_json(const GroupSuite& suite, const nlohmann::json& j);

/// The byte string E signed over a ciphertext.
Bytes canonical_bytes(const GroupSuite& suite, const CiphertextBundle& ct);

}  // namespace etenon::mlabe
