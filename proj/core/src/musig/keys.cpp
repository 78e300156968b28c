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

#include "etenon/musig/keys.hpp"

#include "etenon/error.hpp"

namespace etenon::musig {

SignerKeys self_issue_keys(const algebra::GroupSuite& suite, algebra::Rng& rng,
                           bool trusted_signer) {
  if (!trusted_signer) {
    throw InvalidArgument("only a trusted signer may self-issue signing keys");
  }
  algebra::Scalar sk = suite.scalars().random_nonzero(rng);
  algebra::G0Element vk = suite.exp_g(sk);
  return {SigningKey{std::move(sk)}, VerificationKey{std::move(vk)}};
}

}  // namespace etenon::musig
