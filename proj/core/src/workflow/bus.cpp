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

#include "etenon/workflow/bus.hpp"

#include "etenon/error.hpp"

namespace etenon::workflow {

void Bus::send(Envelope e) {
  log_.push_back(e);
  auto key = std::make_pair(e.from, e.to);
  channels_[std::move(key)].push_back(std::move(e));
}

std::optional<Envelope> Bus::receive(const std::string& to, const std::string& from) {
  const auto it = channels_.find({from, to});
  if (it == channels_.end() || it->second.empty()) return std::nullopt;
  Envelope e = std::move(it->second.front());
  it->second.pop_front();
  return e;
}

Envelope Bus::expect(const std::string& to, const std::string& from, const std::string& kind) {
  const auto it = channels_.find({from, to});
  if (it == channels_.end() || it->second.empty()) {
    throw ProtocolError(to + " expected '" + kind + "' from " + from + " but nothing arrived");
  }
  if (it->second.front().kind != kind) {
    throw ProtocolError(to + " expected '" + kind + "' from " + from + ", got '" +
                        it->second.front().kind + "'");
  }
  Envelope e = std::move(it->second.front());
  it->second.pop_front();
  return e;
}

std::size_t Bus::pending() const {
  std::size_t n = 0;
  for (const auto& [_, q] : channels_) n += q.size();
  return n;
}

}  // namespace etenon::workflow
