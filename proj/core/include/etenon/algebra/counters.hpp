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

namespace etenon::algebra {

/// Group-operation tallies. Counted per thread by every GroupSuite call.
struct OpCounters {
  std::uint64_t exponentiations = 0;
  std::uint64_t multiplications = 0;
  std::uint64_t pairings = 0;
  std::uint64_t hashes = 0;

  OpCounters operator-(const OpCounters& o) const {
    return {exponentiations - o.exponentiations, multiplications - o.multiplications,
            pairings - o.pairings, hashes - o.hashes};
  }
  OpCounters operator+(const OpCounters& o) const {
    return {exponentiations + o.exponentiations, multiplications + o.multiplications,
            pairings + o.pairings, hashes + o.hashes};
  }
  bool operator==(const OpCounters&) const = default;
};

/// Running totals for the calling thread.
OpCounters& thread_op_counters() noexcept;

/// Records one target-group style combine performed outside GroupSuite
/// (the pointer-sealing step).
void count_multiplication() noexcept;

/// Measures the operations performed on this thread while it is alive.
class CounterSpan {
 public:
  CounterSpan() : start_(thread_op_counters()) {}
  OpCounters elapsed() const { return thread_op_counters() - start_; }
  void reset() { start_ = thread_op_counters(); }

 private:
  OpCounters start_;
};

}  // namespace etenon::algebra
