// audiofeat/features.h

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

#ifndef DUOTRAIN_AUDIOFEAT_FEATURES_H_
#define DUOTRAIN_AUDIOFEAT_FEATURES_H_

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace duotrain::audio {

// Row-major [num_frames x dim] feature matrix.
struct FeatureMatrix {
  int num_frames = 0;
  int dim = 0;
  std::vector<float> data;

  FeatureMatrix() = default;
  FeatureMatrix(int frames, int d)
      : num_frames(frames), dim(d),
        data(static_cast<size_t>(frames) * static_cast<size_t>(d), 0.0f) {}

  float& at(int t, int d) { return data[static_cast<size_t>(t) * dim + d]; }
  float at(int t, int d) const { return data[static_cast<size_t>(t) * dim + d]; }
  const float* row(int t) const { return data.data() + static_cast<size_t>(t) * dim; }
  float* row(int t) { return data.data() + static_cast<size_t>(t) * dim; }
};

struct Waveform {
  std::vector<float> samples;  // in [-1, 1]
  int sample_rate = 16000;
};

}  // namespace duotrain::audio

#endif  // DUOTRAIN_AUDIOFEAT_FEATURES_H_
