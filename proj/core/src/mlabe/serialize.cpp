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

#include "etenon/mlabe/serialize.hpp"

#include <algorithm>

#include "etenon/error.hpp"
#include "etenon/policy/json.hpp"

namespace etenon::mlabe {
namespace {

using nlohmann::json;

std::string b64(std::span<const std::uint8_t> bytes) { return algebra::base64_encode(bytes); }

json envelope(std::string_view type, const GroupSuite& suite) {
  return {{"version", kEnvelopeVersion}, {"type", type}, {"suite", suite.id()}};
}

void check_envelope(const json& j, std::string_view type, const GroupSuite* suite) {
  if (!j.is_object()) throw DecodeError("envelope must be a JSON object");
  if (j.at("version").get<int>() != kEnvelopeVersion) {
    throw DecodeError("unsupported envelope version");
  }
  if (j.at("type").get<std::string>() != type) {
    throw DecodeError("expected a " + std::string(type) + " envelope");
  }
  if (suite != nullptr && j.at("suite").get<std::string>() != suite->id()) {
    throw DecodeError("envelope suite '" + j.at("suite").get<std::string>() +
                      "' does not match '" + suite->id() + "'");
  }
}

G0Element g0(const GroupSuite& s, const json& j) {
  return s.decode_g0(algebra::base64_decode(j.get<std::string>()));
}
G1Element g1(const GroupSuite& s, const json& j) {
  return s.decode_g1(algebra::base64_decode(j.get<std::string>()));
}
Scalar scalar(const GroupSuite& s, const json& j) {
  return s.scalars().decode(algebra::base64_decode(j.get<std::string>()));
}

template <std::size_t N>
std::array<std::uint8_t, N> fixed(const json& j) {
  const Bytes raw = algebra::base64_decode(j.get<std::string>());
  if (raw.size() != N) throw DecodeError("fixed-width field has wrong length");
  std::array<std::uint8_t, N> out{};
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw DecodeError(std::string("malformed envelope: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DecodeError(std::string("invalid envelope content: ") + e.what());
  }
}

}  // namespace

json to_json(const PublicParams& pp) {
  json j = envelope("public_params", *pp.suite);
  j["g"] = b64(pp.suite->encode(pp.g));
  j["g_delta"] = b64(pp.suite->encode(pp.g_delta));
  j["egg_gamma"] = b64(pp.suite->encode(pp.egg_gamma));
  return j;
}

json to_json(const GroupSuite& suite, const MasterKey& msk) {
  json j = envelope("master_key", suite);
  j["delta"] = b64(msk.delta.encode());
  j["g_gamma"] = b64(suite.encode(msk.g_gamma));
  return j;
}

json to_json(const GroupSuite& suite, const KeyBundle& keys) {
  json j = envelope("key_bundle", suite);
  j["d"] = b64(suite.encode(keys.dk.d));
  json attrs = json::array();
  for (const auto& [name, ak] : keys.dk.attributes) {
    attrs.push_back({{"name", name},
                     {"d", b64(suite.encode(ak.d))},
                     {"d_prime", b64(suite.encode(ak.d_prime))}});
  }
  j["attributes"] = std::move(attrs);
  j["signing_key"] = b64(keys.signer.sk.secret.encode());
  j["verification_key"] = b64(suite.encode(keys.signer.vk.point));
  return j;
}

json to_json(const GroupSuite& suite, const CiphertextBundle& ct) {
  json j = envelope("ciphertext", suite);
  j["policy"] = policy::to_json(ct.tree);
  json levels = json::array();
  for (const auto& l : ct.levels) {
    levels.push_back({{"id", l.level},
                      {"c", b64(suite.encode(l.c))},
                      {"mask", b64(l.mask)},
                      {"tag", b64(l.tag)}});
  }
  json leaves = json::array();
  for (const auto& y : ct.leaves) {
    leaves.push_back({{"attribute", y.attribute},
                      {"c", b64(suite.encode(y.c))},
                      {"c_prime", b64(suite.encode(y.c_prime))}});
  }
  std::vector<const Attachment*> sorted;
  for (const auto& a : ct.attachments) sorted.push_back(&a);
  std::stable_sort(sorted.begin(), sorted.end(), [](const Attachment* x, const Attachment* y) {
    return std::tie(x->level, x->label) < std::tie(y->level, y->label);
  });
  json attachments = json::array();
  for (const auto* a : sorted) {
    attachments.push_back({{"level", a->level},
                           {"label", a->label},
                           {"sealed", b64(a->sealed)},
                           {"tag", b64(a->tag)}});
  }
  j["levels"] = std::move(levels);
  j["leaves"] = std::move(leaves);
  j["attachments"] = std::move(attachments);
  return j;
}

PublicParams public_params_from_json(const json& j) {
  return guarded([&] {
    check_envelope(j, "public_params", nullptr);
    PublicParams pp;
    try {
      pp.suite = algebra::suite_from_id(j.at("suite").get<std::string>());
    } catch (const InvalidArgument& e) {
      throw DecodeError(e.what());
    }
    pp.g = g0(*pp.suite, j.at("g"));
    pp.g_delta = g0(*pp.suite, j.at("g_delta"));
    pp.egg_gamma = g1(*pp.suite, j.at("egg_gamma"));
    return pp;
  });
}

MasterKey master_key_from_json(const GroupSuite& suite, const json& j) {
  return guarded([&] {
    check_envelope(j, "master_key", &suite);
    MasterKey msk{scalar(suite, j.at("delta")), g0(suite, j.at("g_gamma"))};
    if (msk.delta.is_zero()) throw DecodeError("master key delta is zero");
    return msk;
  });
}

KeyBundle key_bundle_from_json(const GroupSuite& suite, const json& j) {
  return guarded([&] {
    check_envelope(j, "key_bundle", &suite);
    KeyBundle k;
    k.dk.d = g0(suite, j.at("d"));
    for (const auto& a : j.at("attributes")) {
      const auto name = a.at("name").get<std::string>();
      if (!k.dk.attributes.emplace(name, AttributeKey{g0(suite, a.at("d")), g0(suite, a.at("d_prime"))})
               .second) {
        throw DecodeError("attribute '" + name + "' appears twice");
      }
    }
    if (k.dk.attributes.empty()) throw DecodeError("key bundle carries no attribute");
    k.signer.sk.secret = scalar(suite, j.at("signing_key"));
    k.signer.vk.point = g0(suite, j.at("verification_key"));
    return k;
  });
}

CiphertextBundle ciphertext_from_json(const GroupSuite& suite, const json& j) {
  return guarded([&] {
    check_envelope(j, "ciphertext", &suite);
    CiphertextBundle ct{policy::tree_from_json(j.at("policy")), {}, {}, {}};
    for (const auto& l : j.at("levels")) {
      LevelComponent lc;
      lc.level = l.at("id").get<LevelId>();
      lc.c = g0(suite, l.at("c"));
      lc.mask = fixed<Pointer::kBytes>(l.at("mask"));
      lc.tag = fixed<kTagBytes>(l.at("tag"));
      ct.levels.push_back(std::move(lc));
    }
    for (const auto& y : j.at("leaves")) {
      ct.leaves.push_back(
          {y.at("attribute").get<std::string>(), g0(suite, y.at("c")), g0(suite, y.at("c_prime"))});
    }
    for (const auto& a : j.at("attachments")) {
      ct.attachments.push_back({a.at("level").get<LevelId>(), a.at("label").get<std::string>(),
                                algebra::base64_decode(a.at("sealed").get<std::string>()),
                                fixed<kTagBytes>(a.at("tag"))});
    }
    // Reject shape mismatches here rather than at decryption time.
    const auto declared = ct.tree.level_ids();
    std::vector<LevelId> ids;
    for (const auto& l : ct.levels) ids.push_back(l.level);
    if (!std::equal(ids.begin(), ids.end(), declared.begin(), declared.end())) {
      throw DecodeError("ciphertext levels do not match its policy");
    }
    const auto leaves = ct.tree.leaves();
    if (leaves.size() != ct.leaves.size()) throw DecodeError("ciphertext leaf count mismatch");
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (leaves[i]->attribute != ct.leaves[i].attribute) {
        throw DecodeError("ciphertext leaf attribute mismatch");
      }
    }
    return ct;
  });
}

Bytes canonical_bytes(const GroupSuite& suite, const CiphertextBundle& ct) {
  return algebra::to_bytes(to_json(suite, ct).dump());
}

}  // namespace etenon::mlabe
