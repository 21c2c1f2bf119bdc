// textpipe/noise.cc

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

#include "duotrain/textpipe/noise.h"

#include <cmath>
#include <stdexcept>

namespace duotrain::text {

std::vector<int> ApplyNoise(const std::vector<int>& tokens, double ratio,
                            Rng& rng, int noise_id) {
  if (ratio < 0.0 || ratio > 1.0) {
    throw std::invalid_argument("ApplyNoise: ratio must be in [0, 1]");
  }
  const size_t n = tokens.size();
  const size_t k = static_cast<size_t>(
      std::lround(ratio * static_cast<double>(n)));
  std::vector<int> out = tokens;
  for (size_t pos : rng.SampleWithoutReplacement(n, k)) {
    out[pos] = noise_id;
  }
  return out;
}

}  // namespace duotrain::text
