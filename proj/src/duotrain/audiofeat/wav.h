// audiofeat/wav.h

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

#ifndef DUOTRAIN_AUDIOFEAT_WAV_H_
#define DUOTRAIN_AUDIOFEAT_WAV_H_

#include <string>

#include "duotrain/audiofeat/features.h"

namespace duotrain::audio {

// Reads RIFF/WAVE, PCM 16-bit, mono, 16 kHz; samples are scaled by 1/32768.
// Anything else (format, channel count, rate, bit depth) is rejected with a
// descriptive error; there is no silent resampling.
Waveform ReadWav(const std::string& path);

// PCM16 mono writer for fixtures and synthetic data. Values are clipped to
// [-1, 1] and quantized by 32768.
void WriteWav(const std::string& path, const Waveform& wav);

}  // namespace duotrain::audio

#endif  // DUOTRAIN_AUDIOFEAT_WAV_H_
