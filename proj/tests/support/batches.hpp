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

#include "etenon/mlabe/mlabe.hpp"
#include "etenon/mlabe/serialize.hpp"
#include "etenon/musig/digest.hpp"
#include "etenon/musig/session.hpp"
#include "etenon/policy/parser.hpp"
#include "etenon/tdb/records.hpp"
#include "support/signing.hpp"

namespace etenon::testing {

/// Authority state plus a two-signer roster for building signed batches
/// without going through the agreement protocol.
struct Issuer {
  mlabe::PublicParams pp;
  mlabe::MasterKey msk;
  Signers signers;
  std::string roster_ref = "do+sp";

  Issuer(algebra::SuitePtr suite, algebra::Rng& rng) {
    auto [p, m] = mlabe::setup(std::move(suite), rng);
    pp = std::move(p);
    msk = std::move(m);
    signers = make_signers(*pp.suite, rng, 2);
  }

  tdb::OpenRow row(const std::string& block, algebra::Rng& rng, std::int64_t t = 1700000000) const {
    tdb::OpenRow r;
    r.pointer = tenon::Pointer::generate(rng);
    r.block = block;
    r.roster_ref = roster_ref;
    r.timestamp = t;
    r.sig = musig::sign_locally(pp.suite, signers.keys, signers.roster,
                                musig::block_message(algebra::to_bytes(block), r.pointer, pp.encode(), t), rng);
    return r;
  }

  tdb::SecretEntry secret(const std::string& id, const std::string& label, algebra::Rng& rng,
                          std::int64_t t = 1700000000) const {
    auto tree = policy::parse_policy("level 1 requires [1]\ntree: threshold(1, attr:doctor)");
    tdb::SecretEntry e{id, mlabe::encrypt_pointers(pp, {{1, tenon::Pointer::generate(rng)}}, tree, rng), {}, roster_ref,
                       label, t};
    e.sig = musig::sign_locally(
        pp.suite, signers.keys, signers.roster,
        musig::ciphertext_message(mlabe::canonical_bytes(*pp.suite, e.ciphertext), pp.encode(), t), rng);
    return e;
  }

  tdb::IngestBatch batch(const std::string& id, std::size_t rows, algebra::Rng& rng,
                         const std::string& label = "ward") const {
    std::vector<tdb::OpenRow> out;
    for (std::size_t i = 0; i < rows; ++i) out.push_back(row(id + " block " + std::to_string(i), rng));
    return tdb::IngestBatch{"open", std::move(out), secret(id, label, rng)};
  }
};

}  // namespace etenon::testing
