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

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "etenon/algebra/group.hpp"
#include "etenon/musig/keys.hpp"
#include "etenon/policy/access_tree.hpp"
#include "etenon/policy/shares.hpp"
#include "etenon/tenon/pointer.hpp"

namespace etenon::mlabe {

using algebra::Bytes;
using algebra::G0Element;
using algebra::G1Element;
using algebra::GroupSuite;
using algebra::Scalar;
using policy::LevelId;
using tenon::Pointer;

struct PublicParams {
  algebra::SuitePtr suite;
  G0Element g;
  G0Element g_delta;
  G1Element egg_gamma;

  /// Canonical byte string folded into signed digests as `pp`.
  Bytes encode() const;
};

struct MasterKey {
  Scalar delta;
  G0Element g_gamma;
};

struct AttributeKey {
  G0Element d;        // g^r * H(a)^{r_a}
  G0Element d_prime;  // g^{r_a}
};

struct DecryptionKey {
  G0Element d;  // g^{(gamma + r) / delta}
  std::map<std::string, AttributeKey> attributes;

  policy::AttributeSet attribute_set() const;
};

/// Everything the authority hands one entity: the decryption key plus the
/// signer key pair for co-signing.
struct KeyBundle {
  DecryptionKey dk;
  musig::SignerKeys signer;
};

inline constexpr std::size_t kTagBytes = 16;
using Tag = std::array<std::uint8_t, kTagBytes>;

/// Per-level ciphertext slot. `c` is g^{delta * s_l}; the payload seals the
/// level's pointer under a key derived from e(g,g)^{gamma * s_l}.
struct LevelComponent {
  LevelId level = 0;
  G0Element c;
  std::array<std::uint8_t, Pointer::kBytes> mask{};
  Tag tag{};
};

struct LeafComponent {
  std::string attribute;
  G0Element c;        // g^{q_y(0)}
  G0Element c_prime;  // H(att(y))^{q_y(0)}
};

/// Extra bytes sealed under a level's key (e.g. chain links or identifiable
/// columns). Opened only together with that level.
struct Attachment {
  LevelId level = 0;
  std::string label;
  Bytes sealed;
  Tag tag{};
};

struct CiphertextBundle {
  policy::AccessTree tree;
  std::vector<LevelComponent> levels;  // ascending level id
  std::vector<LeafComponent> leaves;   // AccessTree::leaves() order
  std::vector<Attachment> attachments;

  /// Per-level (C, sealed C~) pairs plus per-leaf (C_y, C'_y) pairs: 2(k + l).
  std::size_t component_count() const { return 2 * (levels.size() + leaves.size()); }
};

/// Variant whose level payload is a target-group element N * e(g,g)^{gamma s_l},
/// the multiplicative form. Shares every other component with CiphertextBundle.
struct GroupCiphertext {
  policy::AccessTree tree;
  std::vector<std::pair<LevelComponent, G1Element>> levels;
  std::vector<LeafComponent> leaves;

  std::size_t group_element_count() const { return 2 * (levels.size() + leaves.size()); }
};

struct AttachmentKey {
  LevelId level;
  std::string label;
  auto operator<=>(const AttachmentKey&) const = default;
};

struct Decrypted {
  std::map<LevelId, Pointer> pointers;
  std::map<AttachmentKey, Bytes> attachments;
};

std::pair<PublicParams, MasterKey> setup(algebra::SuitePtr suite, algebra::Rng& rng);

/// Issues a decryption key over `attributes` plus an independent signer key
/// pair. Throws InvalidArgument on an empty attribute set.
KeyBundle keygen(const PublicParams& pp, const MasterKey& msk,
                 const policy::AttributeSet& attributes, algebra::Rng& rng);

/// `pointers` must name exactly the tree's levels. Attachments must target
/// declared levels. Throws InvalidArgument otherwise. When `plan_out` is
/// given, the drawn share plan is copied there (test instrumentation).
CiphertextBundle encrypt_pointers(const PublicParams& pp, const std::map<LevelId, Pointer>& pointers,
                                  const policy::AccessTree& tree, algebra::Rng& rng,
                                  const std::map<AttachmentKey, Bytes>& attachments = {},
                                  policy::SharePlan* plan_out = nullptr);

GroupCiphertext encrypt_group_elements(const PublicParams& pp,
                                       const std::map<LevelId, G1Element>& messages,
                                       const policy::AccessTree& tree, algebra::Rng& rng,
                                       policy::SharePlan* plan_out = nullptr);

/// e(g,g)^{gamma s_l} rebuilt from the key: e(C_l, D) / F_R. Empty when the
/// key does not satisfy every sub-tree the level names.
std::optional<G1Element> recover_level_key(const PublicParams& pp, const policy::AccessTree& tree,
                                           const LevelComponent& level,
                                           const std::vector<LeafComponent>& leaves,
                                           const DecryptionKey& dk);

/// Unseals one level's pointer with an already known level key. Empty when
/// the integrity tag rejects the result.
std::optional<Pointer> open_level(const PublicParams& pp, const LevelComponent& level,
                                  const G1Element& level_key);

/// Returns pointers (and attachments) for exactly the levels the key opens.
/// Never returns a value whose integrity tag fails. Throws DecodeError only
/// for structurally malformed bundles.
Decrypted decrypt_pointers(const PublicParams& pp, const CiphertextBundle& ct,
                           const DecryptionKey& dk);

std::map<LevelId, G1Element> decrypt_group_elements(const PublicParams& pp,
                                                    const GroupCiphertext& ct,
                                                    const DecryptionKey& dk);

}  // namespace etenon::mlabe
