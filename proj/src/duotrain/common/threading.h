// common/threading.h

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

#ifndef DUOTRAIN_COMMON_THREADING_H_
#define DUOTRAIN_COMMON_THREADING_H_

#include <cstdint>
#include <functional>

namespace duotrain {

// Worker count: DUOTRAIN_THREADS if set, else hardware concurrency.
int NumThreads();

// Runs fn(begin, end) over [0, n) split into contiguous chunks, one per
// worker. The partition depends only on n and the worker count, and each
// chunk owns a disjoint output range, so results are bitwise independent of
// scheduling. Runs inline when n is small or one worker is configured.
void ParallelFor(int64_t n, const std::function<void(int64_t, int64_t)>& fn);

}  // namespace duotrain

#endif  // DUOTRAIN_COMMON_THREADING_H_
