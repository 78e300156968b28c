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

#include "etenon/workflow/agreement.hpp"

#include <algorithm>
#include <set>

#include "chains.hpp"
#include "etenon/error.hpp"
#include "etenon/mlabe/serialize.hpp"
#include "etenon/musig/digest.hpp"
#include "etenon/musig/json.hpp"

namespace etenon::workflow {
namespace {

using nlohmann::json;
using policy::LevelId;
using tenon::Pointer;

json record_to_json(const tenon::EhrRecord& r) {
  json out = json::array();
  for (const auto& c : r.columns) out.push_back({c.name, c.value});
  return out;
}

tenon::EhrRecord record_from_json(const json& j) {
  tenon::EhrRecord r;
  for (const auto& c : j) r.columns.push_back({c.at(0).get<std::string>(), c.at(1).get<std::string>(), {}, false});
  return r;
}

algebra::Digest structure_digest(const tenon::Preprocessed& pre) {
  json chains = json::array();
  for (const auto& c : pre.chains) {
    json triples = json::array();
    for (const auto& t : c.structure.triples) {
      triples.push_back({t.self.to_string(), t.block, t.next ? json(t.next->to_string()) : json(nullptr)});
    }
    chains.push_back({{"column", c.column}, {"head", c.structure.head.to_string()}, {"triples", triples}});
  }
  return algebra::sha256(algebra::to_bytes(chains.dump()));
}

tenon::Triple* find_triple(tenon::ColumnChain& chain, const Pointer& p) {
  for (auto& t : chain.structure.triples) {
    if (t.self == p) return &t;
  }
  return nullptr;
}

void apply_block_tamper(tenon::Preprocessed& pre, Tamper tamper) {
  if (tamper == Tamper::kBlockEdit) {
    if (pre.chains.empty()) throw InvalidArgument("block edit needs at least one chain");
    auto& chain = pre.chains.front();
    find_triple(chain, chain.structure.head)->block += " (amended)";
    return;
  }
  if (tamper == Tamper::kReorder) {
    for (auto& chain : pre.chains) {
      auto* first = find_triple(chain, chain.structure.head);
      if (!first->next) continue;
      auto* second = find_triple(chain, *first->next);
      std::swap(first->block, second->block);
      return;
    }
    throw InvalidArgument("reorder needs a chain of at least two blocks");
  }
}

/// Two-party co-signing over the bus. Returns the aggregate both sides
/// computed.
musig::MultiSig co_sign(System& sys, const std::string& a, const mlabe::KeyBundle& ka,
                        const std::string& b, const mlabe::KeyBundle& kb, const musig::Roster& roster,
                        const algebra::Bytes& msg, const std::string& session_id) {
  auto [sa, ma] = musig::SignSession::start(sys.pp.suite, session_id, ka.signer, roster, msg, sys.rng);
  auto [sb, mb] = musig::SignSession::start(sys.pp.suite, session_id, kb.signer, roster, msg, sys.rng);
  sys.bus.send({a, b, "musig", musig::to_json(ma)});
  sys.bus.send({b, a, "musig", musig::to_json(mb)});
  std::optional<musig::MultiSig> sig_a;
  std::optional<musig::MultiSig> sig_b;
  for (int round = 0; round < 3; ++round) {
    const auto in_a = musig::round_message_from_json(sys.bus.expect(a, b, "musig").body);
    const auto in_b = musig::round_message_from_json(sys.bus.expect(b, a, "musig").body);
    auto ra = sa.step(std::span(&in_a, 1));
    auto rb = sb.step(std::span(&in_b, 1));
    if (std::holds_alternative<musig::Abort>(ra) || std::holds_alternative<musig::Abort>(rb)) {
      throw ProtocolError("co-signing session " + session_id + " aborted");
    }
    if (auto* m = std::get_if<musig::RoundMessage>(&ra)) sys.bus.send({a, b, "musig", musig::to_json(*m)});
    if (auto* m = std::get_if<musig::RoundMessage>(&rb)) sys.bus.send({b, a, "musig", musig::to_json(*m)});
    if (auto* s = std::get_if<musig::MultiSig>(&ra)) sig_a = *s;
    if (auto* s = std::get_if<musig::MultiSig>(&rb)) sig_b = *s;
  }
  if (!sig_a || !sig_b || !(sig_a->rc == sig_b->rc) || !(sig_a->ms == sig_b->ms)) {
    throw ProtocolError("co-signing session " + session_id + " did not converge");
  }
  return *sig_a;
}

struct SpView {
  std::map<std::string, std::string> columns;  // column -> joined text
  std::map<std::string, LevelId> placement;    // column -> level it came from
  std::vector<tenon::Column> identifiable;
  std::string problem;
};

SpView sp_reconstruct(const mlabe::PublicParams& pp, const mlabe::CiphertextBundle& ct,
                      const mlabe::DecryptionKey& dk, const std::map<Pointer, std::string>& blocks) {
  SpView view;
  const auto dec = mlabe::decrypt_pointers(pp, ct, dk);
  for (const auto id : ct.tree.level_ids()) {
    const auto head = dec.pointers.find(id);
    const auto links = dec.attachments.find({id, std::string(kLinksLabel)});
    if (head == dec.pointers.end() || links == dec.attachments.end()) {
      view.problem = "level " + std::to_string(id) + " did not decrypt";
      return view;
    }
    const auto set = detail::decode_links(links->second);
    tenon::Reconstruction rec;
    try {
      rec = detail::join(head->second, set, blocks);
    } catch (const StructuralError& e) {
      view.problem = e.what();
      return view;
    }
    if (!rec.complete || rec.blocks.size() != set.links.size()) {
      view.problem = "chain at level " + std::to_string(id) + " is broken";
      return view;
    }
    std::string text;
    for (const auto& b : rec.blocks) text += (text.empty() ? "" : " ") + b;
    view.columns[set.column] = text;
    view.placement[set.column] = id;
  }
  const LevelId top = *ct.tree.level_ids().rbegin();
  if (const auto it = dec.attachments.find({top, std::string(kIdentifiableLabel)}); it != dec.attachments.end()) {
    view.identifiable = detail::decode_columns(it->second);
  }
  return view;
}

std::string compare(const SpView& view, const tenon::EhrRecord& original,
                    const tenon::ClassificationRules& rules,
                    const std::map<std::string, LevelId>& column_levels) {
  if (!view.problem.empty()) return view.problem;
  const auto labelled = tenon::classify(original, rules);
  std::map<std::string, std::string> expected;
  std::vector<std::pair<std::string, std::string>> expected_ident;
  for (const auto& c : labelled.columns) {
    if (c.cls == tenon::ColumnClass::kIdentifiable) {
      expected_ident.emplace_back(c.name, c.value);
    } else if (auto norm = tenon::normalize(c.value); !norm.empty()) {
      expected[c.name] = std::move(norm);
    }
  }
  for (const auto& [name, text] : expected) {
    const auto it = view.columns.find(name);
    if (it == view.columns.end()) return "column '" + name + "' missing";
    if (it->second != text) return "column '" + name + "' differs";
    if (column_levels.at(name) != view.placement.at(name)) {
      return "column '" + name + "' stored under the wrong level";
    }
  }
  if (view.columns.size() != expected.size()) return "unexpected extra column";
  std::vector<std::pair<std::string, std::string>> got;
  for (const auto& c : view.identifiable) got.emplace_back(c.name, c.value);
  if (got != expected_ident) return "identifiable columns differ";
  return {};
}

}  // namespace

std::string_view to_string(Tamper t) {
  switch (t) {
    case Tamper::kNone: return "none";
    case Tamper::kBlockEdit: return "block_edit";
    case Tamper::kReorder: return "reorder";
    case Tamper::kCiphertextSwap: return "ciphertext_swap";
  }
  return "?";
}

Tamper tamper_from_string(std::string_view s) {
  for (Tamper t : {Tamper::kNone, Tamper::kBlockEdit, Tamper::kReorder, Tamper::kCiphertextSwap}) {
    if (to_string(t) == s) return t;
  }
  throw InvalidArgument("unknown tamper mode '" + std::string(s) + "'");
}

AgreementTranscript run_agreement(System& sys, const std::string& do_name, const std::string& sp_name,
                                  const tenon::EhrRecord& record, const policy::AccessTree& tree,
                                  const AgreementOptions& options, const tenon::ClassificationRules& rules,
                                  const tenon::Stopwords& stopwords) {
  const Entity& owner = sys.entity(do_name);
  const Entity& sp = sys.entity(sp_name);
  if (owner.role != Role::kDo || !owner.keys) throw InvalidArgument("'" + do_name + "' is not a keyed DO");
  if (sp.role != Role::kSp || !sp.keys) throw InvalidArgument("'" + sp_name + "' is not a keyed SP");
  if (policy::satisfied_levels(tree, sp.keys->dk.attribute_set()) != tree.level_ids()) {
    throw Error(ErrorCode::kAgreementImpossible,
                "SP '" + sp_name + "' cannot open every level of the policy");
  }
  const auto& pp = *owner.pp;
  AgreementTranscript tr;
  tr.roster = {owner.keys->signer.vk, sp.keys->signer.vk};
  tr.roster_ref = do_name + "+" + sp_name;

  // The SP supplies the record it produced.
  sys.bus.send({sp_name, do_name, "record", record_to_json(record)});
  const auto received = record_from_json(sys.bus.expect(do_name, sp_name, "record").body);

  // Step 1: preprocess and encrypt.
  tenon::Preprocessed pre = tenon::preprocess(received, rules, stopwords, sys.rng);
  std::set<LevelId> mapped;
  for (const auto& chain : pre.chains) {
    const auto it = options.column_levels.find(chain.column);
    if (it == options.column_levels.end()) {
      throw InvalidArgument("column '" + chain.column + "' has no security level");
    }
    if (!mapped.insert(it->second).second) {
      throw InvalidArgument("level " + std::to_string(it->second) + " holds two columns");
    }
  }
  if (mapped != tree.level_ids()) {
    throw InvalidArgument("record columns do not cover exactly the policy's levels");
  }
  apply_block_tamper(pre, options.tamper);
  tr.preprocess_digest = structure_digest(pre);

  std::map<LevelId, Pointer> pointers;
  std::map<mlabe::AttachmentKey, algebra::Bytes> attachments;
  for (const auto& chain : pre.chains) {
    const LevelId level = options.column_levels.at(chain.column);
    pointers[level] = chain.structure.head;
    attachments[{level, std::string(kLinksLabel)}] = detail::encode_links(chain);
  }
  if (options.tamper == Tamper::kCiphertextSwap) {
    if (pointers.size() < 2) throw InvalidArgument("ciphertext swap needs two levels");
    const LevelId a = pointers.begin()->first;
    const LevelId b = std::next(pointers.begin())->first;
    std::swap(pointers[a], pointers[b]);
    std::swap(attachments[{a, std::string(kLinksLabel)}], attachments[{b, std::string(kLinksLabel)}]);
  }
  if (!pre.identifiable.empty()) {
    attachments[{*tree.level_ids().rbegin(), std::string(kIdentifiableLabel)}] =
        detail::encode_columns(pre.identifiable);
  }
  const auto ct = mlabe::encrypt_pointers(pp, pointers, tree, sys.rng, attachments);
  const auto ct_bytes = mlabe::canonical_bytes(*pp.suite, ct);
  tr.ciphertext_digest = algebra::sha256(ct_bytes);
  tr.steps.push_back({1, "preprocess_and_encrypt",
                      std::to_string(pre.chains.size()) + " chains, " + std::to_string(ct.levels.size()) +
                          " levels"});

  // Step 2: structure and ciphertext to the SP.
  json rows = json::array();
  std::vector<const tenon::Triple*> stored;
  for (const auto& chain : pre.chains) {
    for (const auto& t : chain.structure.triples) stored.push_back(&t);
  }
  std::shuffle(stored.begin(), stored.end(), sys.rng);
  for (const auto* t : stored) rows.push_back({t->self.to_string(), t->block});
  sys.bus.send({do_name, sp_name, "structure", rows});
  sys.bus.send({do_name, sp_name, "ciphertext", mlabe::to_json(*pp.suite, ct)});
  tr.steps.push_back({2, "send_to_sp", std::to_string(stored.size()) + " rows"});

  // Step 3: SP decrypts and rebuilds.
  std::map<Pointer, std::string> sp_blocks;
  for (const auto& r : sys.bus.expect(sp_name, do_name, "structure").body) {
    sp_blocks[Pointer::parse(r.at(0).get<std::string>())] = r.at(1).get<std::string>();
  }
  const auto sp_ct = mlabe::ciphertext_from_json(*sp.pp->suite,
                                                 sys.bus.expect(sp_name, do_name, "ciphertext").body);
  const SpView view = sp_reconstruct(*sp.pp, sp_ct, sp.keys->dk, sp_blocks);
  tr.sp_reconstructed = view.problem.empty();
  tr.steps.push_back({3, "sp_reconstruct", tr.sp_reconstructed ? "ok" : view.problem});

  // Step 4: SP compares with the record it supplied.
  tr.mismatch = compare(view, record, rules, options.column_levels);
  tr.verdict = tr.mismatch.empty() ? Verdict::kIdentical : Verdict::kMismatch;
  tr.steps.push_back({4, "compare", tr.mismatch.empty() ? "identical" : tr.mismatch});

  // Step 5: co-sign or refuse.
  if (tr.verdict != Verdict::kIdentical) {
    sys.bus.send({sp_name, do_name, "refuse", {{"reason", tr.mismatch}}});
    sys.bus.expect(do_name, sp_name, "refuse");
    tr.steps.push_back({5, "refuse", tr.mismatch});
    return tr;
  }
  const auto pp_bytes = pp.encode();
  std::vector<tdb::OpenRow> open_rows;
  for (const auto* t : stored) {
    const auto msg = musig::block_message(algebra::to_bytes(t->block), t->self, pp_bytes, options.timestamp);
    auto sig = co_sign(sys, do_name, *owner.keys, sp_name, *sp.keys, tr.roster, msg,
                       "row:" + t->self.to_string());
    open_rows.push_back({t->self, t->block, std::move(sig), tr.roster_ref, options.timestamp});
  }
  const auto ct_msg = musig::ciphertext_message(ct_bytes, pp_bytes, options.timestamp);
  const std::string entry_id = options.entry_id.empty()
                                   ? "entry-" + algebra::to_hex(std::span(tr.ciphertext_digest).first(8))
                                   : options.entry_id;
  auto ct_sig = co_sign(sys, do_name, *owner.keys, sp_name, *sp.keys, tr.roster, ct_msg, "ct:" + entry_id);
  tr.batch = tdb::IngestBatch{options.table, std::move(open_rows),
                              tdb::SecretEntry{entry_id, ct, std::move(ct_sig), tr.roster_ref,
                                               options.access_label, options.timestamp}};
  tr.steps.push_back({5, "co_sign", std::to_string(tr.signature_count()) + " signatures"});
  return tr;
}

tdb::IngestOutcome submit(System& sys, const AgreementTranscript& transcript) {
  if (!transcript.batch) return {false, "transcript", "agreement was refused"};
  sys.tdb->register_roster(transcript.roster_ref, transcript.roster);
  return sys.tdb->ingest(*transcript.batch);
}

}  // namespace etenon::workflow
