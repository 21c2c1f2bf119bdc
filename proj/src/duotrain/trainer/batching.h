// trainer/batching.h

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

#ifndef DUOTRAIN_TRAINER_BATCHING_H_
#define DUOTRAIN_TRAINER_BATCHING_H_

#include <cstdint>
#include <vector>

#include "duotrain/common/rng.h"

namespace duotrain::train {

// Length-bucketed, budget-capped batches over items with the given lengths.
// The padded cost of a batch (item count x longest item) never exceeds
// `budget`; items longer than the whole budget are skipped with a warning on
// stderr. Items are grouped longest-first, so the grouping is deterministic.
std::vector<std::vector<size_t>> MakeBatches(const std::vector<int64_t>& lengths,
                                             int64_t budget);

// Seeded order shuffle for one epoch (the grouping itself stays fixed).
void ShuffleBatchOrder(std::vector<std::vector<size_t>>& batches, Rng& rng);

}  // namespace duotrain::train

#endif  // DUOTRAIN_TRAINER_BATCHING_H_
