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

#include "etenon/error.hpp"

namespace etenon {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kDecode: return "decode_error";
    case ErrorCode::kParse: return "parse_error";
    case ErrorCode::kConfig: return "config_error";
    case ErrorCode::kProtocol: return "protocol_error";
    case ErrorCode::kStructural: return "structural_error";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kAccessDenied: return "access_denied";
    case ErrorCode::kAgreementImpossible: return "agreement_impossible";
    case ErrorCode::kIo: return "io_error";
  }
  return "unknown";
}

}  // namespace etenon
