// textpipe/noise.h

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

#ifndef DUOTRAIN_TEXTPIPE_NOISE_H_
#define DUOTRAIN_TEXTPIPE_NOISE_H_

#include <cstdint>
#include <vector>

#include "duotrain/common/rng.h"
#include "duotrain/textpipe/phonemize.h"

namespace duotrain::text {

// Replaces exactly round(ratio * len) positions, drawn uniformly without
// replacement, with the <NOISE> token. Deterministic given the generator
// state; ratio 0 is the identity and ratio 1 masks everything.
std::vector<int> ApplyNoise(const std::vector<int>& tokens, double ratio,
                            Rng& rng, int noise_id = PhonemeVocab::kNoise);

inline std::vector<int> ApplyNoise(const std::vector<int>& tokens, double ratio,
                                   uint64_t seed,
                                   int noise_id = PhonemeVocab::kNoise) {
  Rng rng(seed);
  return ApplyNoise(tokens, ratio, rng, noise_id);
}

}  // namespace duotrain::text

#endif  // DUOTRAIN_TEXTPIPE_NOISE_H_
