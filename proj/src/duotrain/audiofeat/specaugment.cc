// audiofeat/specaugment.cc

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

#include "duotrain/audiofeat/specaugment.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace duotrain::audio {

FeatureMatrix SpecAugment(const FeatureMatrix& feat,
                          const SpecAugmentPolicy& policy, Rng& rng) {
  if (policy.freq_mask_f < 0 || policy.num_freq_masks < 0 ||
      policy.time_mask_t < 0 || policy.num_time_masks < 0 ||
      policy.time_mask_fraction < 0.0 || policy.time_mask_fraction > 1.0) {
    throw std::invalid_argument("SpecAugment: negative or out-of-range policy");
  }
  if (policy.time_warp_w != 0) {
    throw std::invalid_argument(
        "SpecAugment: time warping is not supported; set time_warp_w = 0");
  }

  FeatureMatrix out = feat;
  const int frames = feat.num_frames;
  const int dim = feat.dim;

  for (int i = 0; i < policy.num_freq_masks; ++i) {
    const int width = static_cast<int>(
        rng.UniformInt(static_cast<uint64_t>(policy.freq_mask_f) + 1));
    const int f = std::min(width, dim);
    if (f == 0) continue;
    const int f0 = static_cast<int>(
        rng.UniformInt(static_cast<uint64_t>(dim - f) + 1));
    for (int t = 0; t < frames; ++t) {
      float* row = out.row(t);
      std::fill(row + f0, row + f0 + f, 0.0f);
    }
  }

  const int span_cap = static_cast<int>(
      std::floor(policy.time_mask_fraction * static_cast<double>(frames)));
  for (int i = 0; i < policy.num_time_masks; ++i) {
    const int width = static_cast<int>(
        rng.UniformInt(static_cast<uint64_t>(policy.time_mask_t) + 1));
    const int t_len = std::min({width, span_cap, frames});
    if (t_len == 0) continue;
    const int t0 = static_cast<int>(
        rng.UniformInt(static_cast<uint64_t>(frames - t_len) + 1));
    for (int t = t0; t < t0 + t_len; ++t) {
      std::fill(out.row(t), out.row(t) + dim, 0.0f);
    }
  }
  return out;
}

}  // namespace duotrain::audio
