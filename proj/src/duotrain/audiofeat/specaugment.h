// audiofeat/specaugment.h

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

#ifndef DUOTRAIN_AUDIOFEAT_SPECAUGMENT_H_
#define DUOTRAIN_AUDIOFEAT_SPECAUGMENT_H_

#include "duotrain/audiofeat/features.h"
#include "duotrain/common/rng.h"

namespace duotrain::audio {

// Frequency/time masking policy. Masks fill with 0, the post-CMVN mean.
// time_warp_w is carried for config fidelity but only 0 (off) is supported.
struct SpecAugmentPolicy {
  int time_warp_w = 0;
  int freq_mask_f = 0;
  int num_freq_masks = 0;
  int time_mask_t = 0;
  double time_mask_fraction = 1.0;  // cap on each span as a fraction of frames
  int num_time_masks = 0;
};

// Frequency 27/2, time 100/2 masking budget.
inline SpecAugmentPolicy PolicyLd() { return {0, 27, 2, 100, 1.0, 2}; }
// Frequency 27/1, time 100/1.
inline SpecAugmentPolicy PolicyLb() { return {0, 27, 1, 100, 1.0, 1}; }

// Applies num_freq_masks bands of width ~U[0, F] and num_time_masks spans of
// width ~U[0, T] (capped at fraction * frames), all zero-filled; shape is
// preserved and unmasked cells are untouched. Deterministic given the
// generator state.
FeatureMatrix SpecAugment(const FeatureMatrix& feat,
                          const SpecAugmentPolicy& policy, Rng& rng);

}  // namespace duotrain::audio

#endif  // DUOTRAIN_AUDIOFEAT_SPECAUGMENT_H_
