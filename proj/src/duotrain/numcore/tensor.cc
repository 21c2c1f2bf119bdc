// numcore/tensor.cc

// Copyright 2026 The duotrain Authors
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

#include "duotrain/numcore/tensor.h"

#include <atomic>

namespace duotrain::num {

namespace {
std::atomic<bool> g_finite_checks{true};
}

bool FiniteChecksEnabled() { return g_finite_checks.load(std::memory_order_relaxed); }

void SetFiniteChecks(bool enabled) {
  g_finite_checks.store(enabled, std::memory_order_relaxed);
}

}  // namespace duotrain::num
