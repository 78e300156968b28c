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

#include "etenon/algebra/counters.hpp"

namespace etenon::algebra {

OpCounters& thread_op_counters() noexcept {
  thread_local OpCounters counters;
  return counters;
}

void count_multiplication() noexcept { ++thread_op_counters().multiplications; }

}  // namespace etenon::algebra
