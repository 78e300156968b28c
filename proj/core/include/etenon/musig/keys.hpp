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

#include "etenon/algebra/group.hpp"

namespace etenon::musig {

struct SigningKey {
  algebra::Scalar secret;
};

struct VerificationKey {
  algebra::G0Element point;  // g^secret

  bool operator==(const VerificationKey&) const = default;
};

/// A signer's key pair; sessions need the public half to locate themselves
/// in the roster without recomputing g^sk.
struct SignerKeys {
  SigningKey sk;
  VerificationKey vk;
};

/// Self-issued keys, allowed only for a signer the deployment trusts.
/// Everyone else receives keys from the attribute authority (see
/// mlabe::keygen). Throws InvalidArgument when `trusted_signer` is false.
SignerKeys self_issue_keys(const algebra::GroupSuite& suite, algebra::Rng& rng,
                           bool trusted_signer);

}  // namespace etenon::musig
