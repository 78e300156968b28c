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

#include <optional>
#include <vector>

#include "etenon/musig/session.hpp"

namespace etenon::testing {

/// Lockstep driver over explicit SignSession objects, so tests can tamper
/// with messages between rounds.
struct Signers {
  std::vector<musig::SignerKeys> keys;
  musig::Roster roster;
};

inline Signers make_signers(const algebra::GroupSuite& suite, algebra::Rng& rng, std::size_t n) {
  Signers out;
  for (std::size_t i = 0; i < n; ++i) {
    auto sk = suite.scalars().random_nonzero(rng);
    out.keys.push_back({{sk}, {suite.exp_g(sk)}});
    out.roster.push_back(out.keys.back().vk);
  }
  return out;
}

inline std::vector<musig::RoundMessage> others(const std::vector<musig::RoundMessage>& all, std::size_t self) {
  std::vector<musig::RoundMessage> out;
  for (const auto& m : all) {
    if (m.sender != self) out.push_back(m);
  }
  return out;
}

struct Driver {
  std::vector<musig::SignSession> sessions;
  std::vector<musig::RoundMessage> outbox;

  Driver(algebra::SuitePtr suite, const Signers& s, const algebra::Bytes& msg, algebra::Rng& rng,
         const std::string& sid = "sid") {
    for (const auto& k : s.keys) {
      auto [session, first] = musig::SignSession::start(suite, sid, k, s.roster, msg, rng);
      sessions.push_back(std::move(session));
      outbox.push_back(std::move(first));
    }
  }

  /// Steps every session on the current outbox. Returns each signer's result.
  std::vector<musig::StepResult> round() {
    std::vector<musig::StepResult> results;
    std::vector<musig::RoundMessage> next;
    for (std::size_t i = 0; i < sessions.size(); ++i) {
      results.push_back(sessions[i].step(others(outbox, i)));
      if (auto* m = std::get_if<musig::RoundMessage>(&results.back())) next.push_back(*m);
    }
    outbox = std::move(next);
    return results;
  }
};

}  // namespace etenon::testing
