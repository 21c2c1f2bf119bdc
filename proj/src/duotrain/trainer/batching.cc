// trainer/batching.cc

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

#include "duotrain/trainer/batching.h"

#include <algorithm>
#include <iostream>
#include <stdexcept>

namespace duotrain::train {

std::vector<std::vector<size_t>> MakeBatches(const std::vector<int64_t>& lengths,
                                             int64_t budget) {
  if (budget <= 0) throw std::invalid_argument("MakeBatches: budget must be positive");
  std::vector<size_t> order(lengths.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return lengths[a] > lengths[b];
  });

  std::vector<std::vector<size_t>> batches;
  std::vector<size_t> current;
  int64_t current_max = 0;
  for (size_t idx : order) {
    const int64_t len = lengths[idx];
    if (len > budget) {
      std::cerr << "warning: skipping item of length " << len
                << " above the batch budget " << budget << "\n";
      continue;
    }
    const int64_t max_len = std::max(current_max, len);
    if (!current.empty() &&
        static_cast<int64_t>(current.size() + 1) * max_len > budget) {
      batches.push_back(std::move(current));
      current.clear();
      current_max = 0;
    }
    current.push_back(idx);
    current_max = std::max(current_max, len);
  }
  if (!current.empty()) batches.push_back(std::move(current));
  return batches;
}

void ShuffleBatchOrder(std::vector<std::vector<size_t>>& batches, Rng& rng) {
  rng.Shuffle(batches);
}

}  // namespace duotrain::train
