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

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "etenon/algebra/group.hpp"

namespace etenon::cli {

struct Range {
  std::size_t lo = 1;
  std::size_t hi = 1;
};

/// "5" or "1..5". Throws InvalidArgument.
Range parse_range(const std::string& text);

/// One encryption grid point.
struct EncryptRow {
  std::size_t levels = 0;
  std::size_t leaves = 0;
  std::uint64_t exponentiations = 0;
  std::uint64_t multiplications = 0;
  std::size_t ciphertext_elements = 0;
  double millis = 0;
};

/// One signing grid point.
struct SignRow {
  std::size_t signers = 0;
  std::uint64_t sign_exp_per_signer = 0;
  std::uint64_t verify_exponentiations = 0;
  std::uint64_t verify_hashes = 0;
  std::size_t signature_group_elements = 0;
  std::size_t signature_scalars = 0;
  bool verified = false;
  double millis = 0;
};

/// Tree of `leaves` single-attribute children; level j requires child
/// ((j - 1) mod leaves) + 1.
std::vector<EncryptRow> bench_encrypt(const algebra::SuitePtr& suite, Range levels, Range leaves,
                                      std::uint64_t seed);
std::vector<SignRow> bench_sign(const algebra::SuitePtr& suite, Range signers, std::uint64_t seed);

extern const char* const kBenchCsvHeader;
void write_csv(std::ostream& out, const std::vector<EncryptRow>& enc, const std::vector<SignRow>& sig);
void write_table(std::ostream& out, const std::vector<EncryptRow>& enc, const std::vector<SignRow>& sig);

}  // namespace etenon::cli
