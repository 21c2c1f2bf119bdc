// audiofeat/logmel.h

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

#ifndef DUOTRAIN_AUDIOFEAT_LOGMEL_H_
#define DUOTRAIN_AUDIOFEAT_LOGMEL_H_

#include "duotrain/audiofeat/features.h"

namespace duotrain::audio {

// 10 ms shift / 25 ms window at 16 kHz, Hann window, 512-point FFT, 80
// triangular mel filters over 20 Hz - 8 kHz, natural log with a floor.
// Window/FFT/mel-range values are configuration, not contract.
struct LogMelConfig {
  int sample_rate = 16000;
  int frame_length = 400;  // 25 ms
  int frame_shift = 160;   // 10 ms
  int fft_size = 512;
  int num_mels = 80;
  double fmin_hz = 20.0;
  double fmax_hz = 8000.0;
  double floor = 1e-10;
};

// Frame count is floor((len - frame_length) / frame_shift) + 1; inputs
// shorter than one window are rejected.
FeatureMatrix LogMel(const Waveform& wav, const LogMelConfig& config = {});

inline int64_t LogMelFrameCount(int64_t num_samples, const LogMelConfig& config = {}) {
  return (num_samples - config.frame_length) / config.frame_shift + 1;
}

// Center frequency (Hz) of each triangular filter.
std::vector<double> MelFilterCenters(const LogMelConfig& config = {});

}  // namespace duotrain::audio

#endif  // DUOTRAIN_AUDIOFEAT_LOGMEL_H_
