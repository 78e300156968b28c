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

#include "etenon/workflow/retrieval.hpp"

#include "chains.hpp"
#include "etenon/error.hpp"
#include "etenon/mlabe/serialize.hpp"
#include "etenon/musig/digest.hpp"
#include "etenon/workflow/agreement.hpp"

namespace etenon::workflow {

std::size_t RetrievalReport::chains_recovered() const {
  std::size_t n = 0;
  for (const auto& [_, l] : levels) n += (l.decrypted && l.complete) ? 1 : 0;
  return n;
}

std::map<std::string, std::string> RetrievalReport::recovered_text() const {
  std::map<std::string, std::string> out;
  for (const auto& [_, l] : levels) {
    if (!l.decrypted || !l.complete) continue;
    std::string text;
    for (const auto& b : l.blocks) text += (text.empty() ? "" : " ") + b;
    out[l.column] = text;
  }
  return out;
}

RetrievalReport phase_retrieval(System& sys, const std::string& du_name, const std::string& entry_id,
                                const std::string& access_label) {
  const Entity& du = sys.entity(du_name);
  if (!du.keys) throw InvalidArgument("'" + du_name + "' holds no decryption key");
  const auto& pp = *du.pp;
  const auto pp_bytes = pp.encode();

  RetrievalReport report;
  report.entry_id = entry_id;
  const tdb::SecretEntry entry = sys.tdb->read_secret(entry_id, access_label);
  const auto roster = sys.tdb->roster(entry.roster_ref);
  const auto ct_msg = musig::ciphertext_message(mlabe::canonical_bytes(*pp.suite, entry.ciphertext),
                                                pp_bytes, entry.timestamp);
  report.secret_verified = roster && musig::verify(*pp.suite, entry.sig, *roster, ct_msg);
  if (!report.secret_verified) {
    throw ProtocolError("secret entry '" + entry_id + "' signature does not verify; retrieval aborted");
  }

  const auto dec = mlabe::decrypt_pointers(pp, entry.ciphertext, du.keys->dk);

  std::map<tenon::Pointer, std::string> blocks;
  for (const auto& row : sys.tdb->read_all_open()) {
    const auto r = sys.tdb->roster(row.roster_ref);
    const bool ok = r && musig::verify(*pp.suite, row.sig, *r,
                                       musig::block_message(algebra::to_bytes(row.block), row.pointer,
                                                            pp_bytes, row.timestamp));
    report.rows.push_back({row.pointer, ok});
    if (ok) blocks.emplace(row.pointer, row.block);
  }

  for (const auto id : entry.ciphertext.tree.level_ids()) {
    LevelRecovery rec;
    rec.level = id;
    const auto head = dec.pointers.find(id);
    const auto links = dec.attachments.find({id, std::string(kLinksLabel)});
    if (head != dec.pointers.end() && links != dec.attachments.end()) {
      rec.decrypted = true;
      const auto set = detail::decode_links(links->second);
      rec.column = set.column;
      const auto joined = detail::join(head->second, set, blocks);
      rec.blocks = joined.blocks;
      rec.complete = joined.complete;
    }
    report.levels.emplace(id, std::move(rec));
  }
  const policy::LevelId top = *entry.ciphertext.tree.level_ids().rbegin();
  if (const auto it = dec.attachments.find({top, std::string(kIdentifiableLabel)}); it != dec.attachments.end()) {
    report.identifiable = detail::decode_columns(it->second);
  }
  return report;
}

}  // namespace etenon::workflow
