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

#include "etenon/musig/session.hpp"

#include <algorithm>

#include "etenon/error.hpp"

namespace etenon::musig {
namespace {

const char* round_name(Round r) {
  switch (r) {
    case Round::kCommit: return "commit";
    case Round::kReveal: return "reveal";
    case Round::kPartial: return "partial";
  }
  return "?";
}

}  // namespace

Bytes encode_roster(const algebra::GroupSuite& suite, const Roster& roster) {
  Bytes out;
  for (const auto& vk : roster) algebra::append_framed(out, suite.encode(vk.point));
  return out;
}

Scalar challenge(const algebra::GroupSuite& suite, std::span<const std::uint8_t> roster_bytes,
                 const VerificationKey& vk, const G0Element& rc, std::span<const std::uint8_t> msg) {
  Bytes pre(roster_bytes.begin(), roster_bytes.end());
  algebra::append_framed(pre, suite.encode(vk.point));
  algebra::append_framed(pre, suite.encode(rc));
  pre.insert(pre.end(), msg.begin(), msg.end());
  return suite.hash_challenge(pre);
}

std::pair<SignSession, RoundMessage> SignSession::start(algebra::SuitePtr suite, std::string session_id,
                                                        const SignerKeys& keys, Roster roster,
                                                        Bytes msg, algebra::Rng& rng) {
  if (roster.empty()) throw InvalidArgument("roster is empty");
  for (std::size_t i = 0; i < roster.size(); ++i) {
    for (std::size_t j = i + 1; j < roster.size(); ++j) {
      if (roster[i] == roster[j]) throw InvalidArgument("roster holds a duplicate key");
    }
  }
  const auto self = std::find(roster.begin(), roster.end(), keys.vk);
  if (self == roster.end()) throw InvalidArgument("signer key is not in the roster");

  SignSession s;
  s.suite_ = std::move(suite);
  s.session_id_ = std::move(session_id);
  s.index_ = static_cast<std::size_t>(self - roster.begin());
  s.roster_ = std::move(roster);
  s.msg_ = std::move(msg);
  s.sk_ = keys.sk.secret;
  s.nonce_ = s.suite_->scalars().random_nonzero(rng);
  s.rc_self_ = s.suite_->exp_g(*s.nonce_);
  const auto t = s.suite_->hash_commit(s.suite_->encode(s.rc_self_));
  RoundMessage out = s.emit(Round::kCommit, Bytes(t.begin(), t.end()));
  return {std::move(s), std::move(out)};
}

std::vector<const RoundMessage*> SignSession::collect(std::span<const RoundMessage> incoming,
                                                      Round round) const {
  std::vector<const RoundMessage*> by_sender(roster_.size(), nullptr);
  for (const auto& m : incoming) {
    if (m.session_id != session_id_) throw ProtocolError("message for another session");
    if (m.round != round) {
      throw ProtocolError(std::string("expected ") + round_name(round) + " message, got " +
                          round_name(m.round));
    }
    if (m.sender >= roster_.size()) throw ProtocolError("sender outside the roster");
    if (m.sender == index_) throw ProtocolError("message claims to come from this signer");
    if (by_sender[m.sender] != nullptr) {
      throw ProtocolError("duplicate message from signer " + std::to_string(m.sender));
    }
    by_sender[m.sender] = &m;
  }
  for (std::size_t j = 0; j < roster_.size(); ++j) {
    if (j != index_ && by_sender[j] == nullptr) {
      throw ProtocolError("missing message from signer " + std::to_string(j));
    }
  }
  return by_sender;
}

RoundMessage SignSession::emit(Round round, Bytes payload) const {
  return {session_id_, round, index_, std::move(payload)};
}

void SignSession::wipe_nonce() {
  if (nonce_) *nonce_ = suite_->scalars().zero();
  nonce_.reset();
}

StepResult SignSession::step(std::span<const RoundMessage> incoming) {
  switch (phase_) {
    case Phase::kCommit: {
      const auto msgs = collect(incoming, Round::kCommit);
      std::vector<algebra::Digest> commitments(roster_.size());
      for (std::size_t j = 0; j < roster_.size(); ++j) {
        if (j == index_) continue;
        if (msgs[j]->payload.size() != commitments[j].size()) {
          throw ProtocolError("commitment from signer " + std::to_string(j) + " has wrong size");
        }
        std::copy(msgs[j]->payload.begin(), msgs[j]->payload.end(), commitments[j].begin());
      }
      commitments_ = std::move(commitments);
      phase_ = Phase::kReveal;
      return emit(Round::kReveal, suite_->encode(rc_self_));
    }
    case Phase::kReveal: {
      const auto msgs = collect(incoming, Round::kReveal);
      std::vector<G0Element> reveals(roster_.size());
      reveals[index_] = rc_self_;
      for (std::size_t j = 0; j < roster_.size(); ++j) {
        if (j == index_) continue;
        const auto t = suite_->hash_commit(msgs[j]->payload);
        if (t != commitments_[j]) {
          wipe_nonce();
          phase_ = Phase::kAborted;
          return Abort{j, "reveal does not match commitment"};
        }
        try {
          reveals[j] = suite_->decode_g0(msgs[j]->payload);
        } catch (const DecodeError&) {
          wipe_nonce();
          phase_ = Phase::kAborted;
          return Abort{j, "reveal is not a group element"};
        }
      }
      G0Element rc = reveals[0];
      for (std::size_t j = 1; j < reveals.size(); ++j) rc = suite_->mul(rc, reveals[j]);
      const Bytes& signed_msg = msg_override_ ? *msg_override_ : msg_;
      const Scalar ch = challenge(*suite_, encode_roster(*suite_, roster_), roster_[index_], rc, signed_msg);
      ms_self_ = sk_ * ch + *nonce_;
      wipe_nonce();
      reveals_ = std::move(reveals);
      rc_ = std::move(rc);
      phase_ = Phase::kPartialSign;
      return emit(Round::kPartial, ms_self_.encode());
    }
    case Phase::kPartialSign: {
      const auto msgs = collect(incoming, Round::kPartial);
      Scalar ms = ms_self_;
      for (std::size_t j = 0; j < roster_.size(); ++j) {
        if (j == index_) continue;
        try {
          ms += suite_->scalars().decode(msgs[j]->payload);
        } catch (const DecodeError&) {
          throw ProtocolError("partial signature from signer " + std::to_string(j) + " is malformed");
        }
      }
      phase_ = Phase::kDone;
      sk_ = suite_->scalars().zero();
      return MultiSig{rc_, ms};
    }
    case Phase::kDone:
      throw ProtocolError("session already finished");
    case Phase::kAborted:
      throw ProtocolError("session was aborted");
  }
  throw ProtocolError("unknown phase");
}

bool verify(const algebra::GroupSuite& suite, const MultiSig& sig, const Roster& roster,
            std::span<const std::uint8_t> msg) {
  if (roster.empty() || !sig.ms.valid() || sig.rc.empty()) return false;
  if (sig.ms.field().modulus() != suite.order()) return false;
  const Bytes v = encode_roster(suite, roster);
  G0Element rhs = sig.rc;
  for (const auto& vk : roster) {
    rhs = suite.mul(rhs, suite.exp(vk.point, challenge(suite, v, vk, sig.rc, msg)));
  }
  return suite.exp_g(sig.ms) == rhs;
}

MultiSig sign_locally(algebra::SuitePtr suite, const std::vector<SignerKeys>& signers,
                      const Roster& roster, const Bytes& msg, algebra::Rng& rng,
                      const std::string& session_id) {
  if (signers.size() != roster.size()) throw InvalidArgument("one signer per roster entry");
  std::vector<SignSession> sessions;
  std::vector<RoundMessage> outbox;
  for (const auto& k : signers) {
    auto [s, m] = SignSession::start(suite, session_id, k, roster, msg, rng);
    sessions.push_back(std::move(s));
    outbox.push_back(std::move(m));
  }
  for (int round = 0; round < 3; ++round) {
    std::vector<RoundMessage> next;
    for (auto& s : sessions) {
      std::vector<RoundMessage> in;
      for (const auto& m : outbox) {
        if (m.sender != s.index()) in.push_back(m);
      }
      StepResult r = s.step(in);
      if (auto* m = std::get_if<RoundMessage>(&r)) {
        next.push_back(std::move(*m));
      } else if (auto* sig = std::get_if<MultiSig>(&r)) {
        if (&s == &sessions.back()) return *sig;
      } else {
        throw ProtocolError("honest local session aborted");
      }
    }
    outbox = std::move(next);
  }
  throw ProtocolError("local session did not complete");
}

}  // namespace etenon::musig
