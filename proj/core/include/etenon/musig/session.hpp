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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "etenon/algebra/group.hpp"
#include "etenon/musig/keys.hpp"

namespace etenon::musig {

using algebra::Bytes;
using algebra::G0Element;
using algebra::Scalar;

/// Aggregate signature: one group element and one scalar.
struct MultiSig {
  G0Element rc;  // product of the signers' RC_i
  Scalar ms;     // sum of the partial signatures mod p
};

using Roster = std::vector<VerificationKey>;

enum class Round : std::uint8_t { kCommit = 1, kReveal = 2, kPartial = 3 };

/// One protocol message. Payload is t_i, encode(RC_i) or encode(MS_i)
/// depending on the round.
struct RoundMessage {
  std::string session_id;
  Round round = Round::kCommit;
  std::size_t sender = 0;
  Bytes payload;

  bool operator==(const RoundMessage&) const = default;
};

/// Session stopped because `signer` revealed a nonce that does not open its
/// commitment (or sent an undecodable one).
struct Abort {
  std::size_t signer = 0;
  std::string reason;
};

using StepResult = std::variant<RoundMessage, MultiSig, Abort>;

/// ⟨V⟩: u32 length-prefixed concatenation of the key encodings, in order.
Bytes encode_roster(const algebra::GroupSuite& suite, const Roster& roster);

/// Three-round commit/reveal/sign session for one signer.
///
///   start           -> commitment t_i
///   step(commits)   -> reveal RC_i
///   step(reveals)   -> partial MS_i, or Abort on a bad opening
///   step(partials)  -> MultiSig
///
/// Each step takes exactly one message from every other roster member for
/// the current round. Duplicate, missing, foreign or out-of-phase messages
/// throw ProtocolError and leave the session unchanged.
class SignSession {
 public:
  enum class Phase { kCommit, kReveal, kPartialSign, kDone, kAborted };

  /// Throws InvalidArgument when the roster is empty, holds a duplicate key
  /// or does not contain `keys.vk`.
  static std::pair<SignSession, RoundMessage> start(algebra::SuitePtr suite, std::string session_id,
                                                    const SignerKeys& keys, Roster roster,
                                                    Bytes msg, algebra::Rng& rng);

  StepResult step(std::span<const RoundMessage> incoming);

  Phase phase() const { return phase_; }
  std::size_t index() const { return index_; }
  const Roster& roster() const { return roster_; }
  const Bytes& message() const { return msg_; }
  const std::string& session_id() const { return session_id_; }
  /// True while the per-session nonce is still held.
  bool holds_nonce() const { return nonce_.has_value(); }

  /// Test hook: sign over `msg` in round 3 instead of the session message.
  void substitute_message_for_testing(Bytes msg) { msg_override_ = std::move(msg); }

 private:
  SignSession() = default;

  std::vector<const RoundMessage*> collect(std::span<const RoundMessage> incoming, Round round) const;
  RoundMessage emit(Round round, Bytes payload) const;
  void wipe_nonce();

  algebra::SuitePtr suite_;
  std::string session_id_;
  Phase phase_ = Phase::kCommit;
  std::size_t index_ = 0;
  Roster roster_;
  Bytes msg_;
  std::optional<Bytes> msg_override_;
  Scalar sk_;
  std::optional<Scalar> nonce_;
  G0Element rc_self_;
  std::vector<algebra::Digest> commitments_;
  std::vector<G0Element> reveals_;
  G0Element rc_;
  Scalar ms_self_;
};

/// Challenge ch_i = H1(⟨V⟩ ∥ VK_i ∥ RC ∥ msg).
Scalar challenge(const algebra::GroupSuite& suite, std::span<const std::uint8_t> roster_bytes,
                 const VerificationKey& vk, const G0Element& rc, std::span<const std::uint8_t> msg);

/// g^MS == RC * prod VK_i^{ch_i}. False for an empty roster.
bool verify(const algebra::GroupSuite& suite, const MultiSig& sig, const Roster& roster,
            std::span<const std::uint8_t> msg);

/// Drives one honest session per signer in lockstep. `signers[i]` must hold
/// the key at `roster[i]`.
MultiSig sign_locally(algebra::SuitePtr suite, const std::vector<SignerKeys>& signers,
                      const Roster& roster, const Bytes& msg, algebra::Rng& rng,
                      const std::string& session_id = "local");

}  // namespace etenon::musig
