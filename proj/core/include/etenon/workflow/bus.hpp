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

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace etenon::workflow {

struct Envelope {
  std::string from;
  std::string to;
  std::string kind;
  nlohmann::json body;
};

/// In-process transport. Each (from, to) channel is a FIFO, so delivery
/// order per channel does not depend on who drains first. Every send is
/// also kept in a log.
class Bus {
 public:
  void send(Envelope e);
  /// Next message on the from->to channel, if any.
  std::optional<Envelope> receive(const std::string& to, const std::string& from);
  /// Like receive but throws ProtocolError when the channel is empty or the
  /// head has a different kind.
  Envelope expect(const std::string& to, const std::string& from, const std::string& kind);
  std::size_t pending() const;
  const std::vector<Envelope>& log() const { return log_; }

 private:
  std::map<std::pair<std::string, std::string>, std::deque<Envelope>> channels_;
  std::vector<Envelope> log_;
};

}  // namespace etenon::workflow
