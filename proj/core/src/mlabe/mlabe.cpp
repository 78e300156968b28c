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

#include "etenon/mlabe/mlabe.hpp"

#include <algorithm>
#include <cstring>
#include <set>

#include "etenon/algebra/counters.hpp"
#include "etenon/error.hpp"

namespace etenon::mlabe {
namespace {

using algebra::Digest;
using algebra::GroupSuite;
using algebra::Sha256;
using policy::AccessTree;
using policy::Node;

// ---- sealing ---------------------------------------------------------------

Digest level_key_material(const GroupSuite& suite, LevelId level, const G1Element& key) {
  Bytes level_be;
  algebra::append_u64(level_be, level);
  return Sha256().update("ETN-KDF").update(level_be).update(suite.encode(key)).finish();
}

Tag truncate_tag(const Digest& d) {
  Tag t{};
  std::copy_n(d.begin(), t.size(), t.begin());
  return t;
}

Tag pointer_tag(const Digest& km, const Pointer& p, LevelId level) {
  Bytes pre(km.begin(), km.end());
  pre.insert(pre.end(), p.bytes().begin(), p.bytes().end());
  algebra::append_u64(pre, level);
  return truncate_tag(algebra::hash_commit(pre));
}

std::array<std::uint8_t, Pointer::kBytes> pointer_pad(const Digest& km) {
  const Digest d = Sha256().update(km).update("pointer-mask").finish();
  std::array<std::uint8_t, Pointer::kBytes> pad{};
  std::copy_n(d.begin(), pad.size(), pad.begin());
  return pad;
}

Bytes keystream_xor(const Digest& km, std::string_view label, std::span<const std::uint8_t> in) {
  Bytes out(in.begin(), in.end());
  std::uint64_t counter = 0;
  for (std::size_t off = 0; off < out.size(); off += 32, ++counter) {
    Bytes ctr;
    algebra::append_u64(ctr, counter);
    const Digest block = Sha256().update(km).update_framed(label).update(ctr).finish();
    for (std::size_t i = 0; i < 32 && off + i < out.size(); ++i) out[off + i] ^= block[i];
  }
  return out;
}

Tag attachment_tag(const Digest& km, std::string_view label, std::span<const std::uint8_t> plain) {
  Bytes pre(km.begin(), km.end());
  algebra::append_framed(pre, algebra::to_bytes(label));
  pre.insert(pre.end(), plain.begin(), plain.end());
  return truncate_tag(algebra::hash_commit(pre));
}

// ---- bundle shape ----------------------------------------------------------

void check_leaves(const AccessTree& tree, const std::vector<LeafComponent>& leaves) {
  const auto nodes = tree.leaves();
  if (nodes.size() != leaves.size()) throw DecodeError("leaf component count mismatch");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i]->attribute != leaves[i].attribute) {
      throw DecodeError("leaf component attribute mismatch");
    }
  }
}

template <typename Levels, typename Project>
void check_levels(const AccessTree& tree, const Levels& levels, Project level_of) {
  std::vector<LevelId> ids;
  for (const auto& l : levels) ids.push_back(level_of(l));
  const auto declared = tree.level_ids();
  if (!std::is_sorted(ids.begin(), ids.end()) ||
      !std::equal(ids.begin(), ids.end(), declared.begin(), declared.end())) {
    throw DecodeError("level components do not match the declared levels");
  }
}

// ---- shared encryption core ------------------------------------------------

struct EncryptionCore {
  std::vector<LevelComponent> levels;
  std::vector<G1Element> level_keys;
  std::vector<LeafComponent> leaves;
};

template <typename Map>
void require_exact_levels(const AccessTree& tree, const Map& payloads) {
  const auto declared = tree.level_ids();
  if (payloads.size() != declared.size() ||
      !std::all_of(payloads.begin(), payloads.end(),
                   [&](const auto& kv) { return declared.contains(kv.first); })) {
    throw InvalidArgument("payload levels must match the levels the access tree declares");
  }
}

EncryptionCore encrypt_core(const PublicParams& pp, const AccessTree& tree, algebra::Rng& rng,
                            policy::SharePlan* plan_out) {
  const GroupSuite& suite = *pp.suite;
  policy::SharePlan plan = policy::assign_shares(tree, suite.scalars(), rng);

  EncryptionCore core;
  for (const auto& [id, secret] : plan.level_secrets) {
    LevelComponent lc;
    lc.level = id;
    lc.c = suite.exp(pp.g_delta, secret);
    core.levels.push_back(std::move(lc));
    core.level_keys.push_back(suite.exp(pp.egg_gamma, secret));
  }

  std::map<std::string, G0Element> hashed;
  const auto leaves = tree.leaves();
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const std::string& attr = leaves[i]->attribute;
    auto it = hashed.find(attr);
    if (it == hashed.end()) it = hashed.emplace(attr, suite.hash_to_group(attr)).first;
    const Scalar& share = plan.leaf_shares[i];
    core.leaves.push_back({attr, suite.exp(pp.g, share), suite.exp(it->second, share)});
  }

  if (plan_out != nullptr) *plan_out = std::move(plan);
  return core;
}

// ---- decryption ------------------------------------------------------------

class NodeDecryptor {
 public:
  NodeDecryptor(const PublicParams& pp, const AccessTree& tree,
                const std::vector<LeafComponent>& leaves, const DecryptionKey& dk)
      : suite_(*pp.suite), tree_(tree), leaves_(leaves), dk_(dk), attrs_(dk.attribute_set()) {
    std::size_t offset = 0;
    for (const auto& c : tree.children()) {
      child_offsets_.push_back(offset);
      offset += c.leaf_count();
    }
  }

  /// e(g,g)^{r * q_r(index)} for root child `index`, or empty if unsatisfied.
  std::optional<G1Element> subtree(std::size_t index) {
    if (auto it = cache_.find(index); it != cache_.end()) return it->second;
    std::optional<G1Element> v;
    if (policy::satisfies(tree_.child(index), attrs_)) {
      v = node(tree_.child(index), child_offsets_[index - 1]);
    }
    cache_.emplace(index, v);
    return v;
  }

  std::optional<G1Element> level_key(const LevelComponent& level) {
    const auto it = tree_.levels().find(level.level);
    if (it == tree_.levels().end()) return std::nullopt;
    std::optional<G1Element> f_r;
    for (auto index : it->second) {
      auto part = subtree(index);
      if (!part) return std::nullopt;
      f_r = f_r ? suite_.mul(*f_r, *part) : *part;
    }
    return suite_.div(suite_.pair(level.c, dk_.d), *f_r);
  }

 private:
  // Caller guarantees `n` is satisfied by the key's attributes.
  G1Element node(const Node& n, std::size_t leaf_offset) {
    if (n.is_leaf()) {
      const LeafComponent& leaf = leaves_[leaf_offset];
      const AttributeKey& ak = dk_.attributes.at(n.attribute);
      return suite_.div(suite_.pair(ak.d, leaf.c), suite_.pair(ak.d_prime, leaf.c_prime));
    }
    // First `threshold` satisfied children in index order.
    std::vector<std::size_t> chosen;
    std::vector<std::size_t> offsets;
    std::size_t offset = leaf_offset;
    for (std::size_t i = 0; i < n.children.size() && chosen.size() < n.threshold; ++i) {
      if (policy::satisfies(n.children[i], attrs_)) {
        chosen.push_back(i + 1);
        offsets.push_back(offset);
      }
      offset += n.children[i].leaf_count();
    }
    std::optional<G1Element> acc;
    for (std::size_t k = 0; k < chosen.size(); ++k) {
      const G1Element value = node(n.children[chosen[k] - 1], offsets[k]);
      const Scalar coeff = policy::lagrange_coefficient(chosen[k], chosen, suite_.scalars());
      const G1Element term = coeff == suite_.scalars().one() ? value : suite_.exp(value, coeff);
      acc = acc ? suite_.mul(*acc, term) : term;
    }
    return *acc;
  }

  const GroupSuite& suite_;
  const AccessTree& tree_;
  const std::vector<LeafComponent>& leaves_;
  const DecryptionKey& dk_;
  policy::AttributeSet attrs_;
  std::vector<std::size_t> child_offsets_;
  std::map<std::size_t, std::optional<G1Element>> cache_;
};

}  // namespace

Bytes PublicParams::encode() const {
  Bytes out;
  algebra::append_framed(out, algebra::to_bytes(suite->id()));
  algebra::append_framed(out, suite->encode(g));
  algebra::append_framed(out, suite->encode(g_delta));
  algebra::append_framed(out, suite->encode(egg_gamma));
  return out;
}

policy::AttributeSet DecryptionKey::attribute_set() const {
  policy::AttributeSet s;
  for (const auto& [name, _] : attributes) s.insert(name);
  return s;
}

std::pair<PublicParams, MasterKey> setup(algebra::SuitePtr suite, algebra::Rng& rng) {
  const auto& field = suite->scalars();
  Scalar gamma = field.random_nonzero(rng);
  const Scalar delta = field.random_nonzero(rng);
  PublicParams pp;
  pp.suite = suite;
  pp.g = suite->generator();
  pp.g_delta = suite->exp(pp.g, delta);
  MasterKey msk{delta, suite->exp(pp.g, gamma)};
  pp.egg_gamma = suite->pair(msk.g_gamma, pp.g);
  gamma = field.zero();
  return {std::move(pp), std::move(msk)};
}

KeyBundle keygen(const PublicParams& pp, const MasterKey& msk,
                 const policy::AttributeSet& attributes, algebra::Rng& rng) {
  if (attributes.empty()) throw InvalidArgument("attribute set must not be empty");
  const GroupSuite& suite = *pp.suite;
  const auto& field = suite.scalars();

  const Scalar r = field.random_nonzero(rng);
  const G0Element g_r = suite.exp(pp.g, r);
  KeyBundle out;
  out.dk.d = suite.exp(suite.mul(msk.g_gamma, g_r), msk.delta.inverse());
  for (const auto& a : attributes) {
    const Scalar r_a = field.random_nonzero(rng);
    out.dk.attributes.emplace(
        a, AttributeKey{suite.mul(g_r, suite.exp(suite.hash_to_group(a), r_a)),
                        suite.exp(pp.g, r_a)});
  }
  const Scalar sk = field.random_nonzero(rng);
  out.signer = {musig::SigningKey{sk}, musig::VerificationKey{suite.exp(pp.g, sk)}};
  return out;
}

CiphertextBundle encrypt_pointers(const PublicParams& pp, const std::map<LevelId, Pointer>& pointers,
                                  const AccessTree& tree, algebra::Rng& rng,
                                  const std::map<AttachmentKey, Bytes>& attachments,
                                  policy::SharePlan* plan_out) {
  require_exact_levels(tree, pointers);
  for (const auto& [key, _] : attachments) {
    if (!pointers.contains(key.level)) {
      throw InvalidArgument("attachment targets undeclared level " + std::to_string(key.level));
    }
  }

  EncryptionCore core = encrypt_core(pp, tree, rng, plan_out);
  CiphertextBundle ct{tree, std::move(core.levels), std::move(core.leaves), {}};
  for (std::size_t i = 0; i < ct.levels.size(); ++i) {
    LevelComponent& lc = ct.levels[i];
    const Pointer& ptr = pointers.at(lc.level);
    const Digest km = level_key_material(*pp.suite, lc.level, core.level_keys[i]);
    const auto pad = pointer_pad(km);
    // The XOR combine stands in for the product N * e(g,g)^{gamma s_l}.
    algebra::count_multiplication();
    for (std::size_t b = 0; b < pad.size(); ++b) lc.mask[b] = ptr.bytes()[b] ^ pad[b];
    lc.tag = pointer_tag(km, ptr, lc.level);

    for (const auto& [key, plain] : attachments) {
      if (key.level != lc.level) continue;
      ct.attachments.push_back(
          {key.level, key.label, keystream_xor(km, key.label, plain), attachment_tag(km, key.label, plain)});
    }
  }
  return ct;
}

GroupCiphertext encrypt_group_elements(const PublicParams& pp,
                                       const std::map<LevelId, G1Element>& messages,
                                       const AccessTree& tree, algebra::Rng& rng,
                                       policy::SharePlan* plan_out) {
  require_exact_levels(tree, messages);
  EncryptionCore core = encrypt_core(pp, tree, rng, plan_out);
  GroupCiphertext ct{tree, {}, std::move(core.leaves)};
  for (std::size_t i = 0; i < core.levels.size(); ++i) {
    const LevelId id = core.levels[i].level;
    G1Element c_tilde = pp.suite->mul(messages.at(id), core.level_keys[i]);
    ct.levels.emplace_back(std::move(core.levels[i]), std::move(c_tilde));
  }
  return ct;
}

std::optional<G1Element> recover_level_key(const PublicParams& pp, const AccessTree& tree,
                                           const LevelComponent& level,
                                           const std::vector<LeafComponent>& leaves,
                                           const DecryptionKey& dk) {
  check_leaves(tree, leaves);
  return NodeDecryptor(pp, tree, leaves, dk).level_key(level);
}

std::optional<Pointer> open_level(const PublicParams& pp, const LevelComponent& lc,
                                  const G1Element& level_key) {
  const Digest km = level_key_material(*pp.suite, lc.level, level_key);
  const auto pad = pointer_pad(km);
  std::array<std::uint8_t, Pointer::kBytes> raw{};
  for (std::size_t b = 0; b < raw.size(); ++b) raw[b] = lc.mask[b] ^ pad[b];
  const Pointer ptr(raw);
  if (pointer_tag(km, ptr, lc.level) != lc.tag) return std::nullopt;
  return ptr;
}

Decrypted decrypt_pointers(const PublicParams& pp, const CiphertextBundle& ct,
                           const DecryptionKey& dk) {
  check_leaves(ct.tree, ct.leaves);
  check_levels(ct.tree, ct.levels, [](const LevelComponent& l) { return l.level; });

  Decrypted out;
  NodeDecryptor decryptor(pp, ct.tree, ct.leaves, dk);
  for (const LevelComponent& lc : ct.levels) {
    const auto key = decryptor.level_key(lc);
    if (!key) continue;
    const auto ptr = open_level(pp, lc, *key);
    if (!ptr) continue;
    out.pointers.emplace(lc.level, *ptr);
    const Digest km = level_key_material(*pp.suite, lc.level, *key);

    for (const Attachment& a : ct.attachments) {
      if (a.level != lc.level) continue;
      Bytes plain = keystream_xor(km, a.label, a.sealed);
      if (attachment_tag(km, a.label, plain) == a.tag) {
        out.attachments.emplace(AttachmentKey{a.level, a.label}, std::move(plain));
      }
    }
  }
  return out;
}

std::map<LevelId, G1Element> decrypt_group_elements(const PublicParams& pp,
                                                    const GroupCiphertext& ct,
                                                    const DecryptionKey& dk) {
  check_leaves(ct.tree, ct.leaves);
  check_levels(ct.tree, ct.levels, [](const auto& l) { return l.first.level; });
  std::map<LevelId, G1Element> out;
  NodeDecryptor decryptor(pp, ct.tree, ct.leaves, dk);
  for (const auto& [lc, c_tilde] : ct.levels) {
    if (auto key = decryptor.level_key(lc)) out.emplace(lc.level, pp.suite->div(c_tilde, *key));
  }
  return out;
}

}  // namespace etenon::mlabe
