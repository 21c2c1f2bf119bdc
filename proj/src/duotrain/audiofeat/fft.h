// audiofeat/fft.h

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

#ifndef DUOTRAIN_AUDIOFEAT_FFT_H_
#define DUOTRAIN_AUDIOFEAT_FFT_H_

#include <vector>

namespace duotrain::audio {

// In-place iterative radix-2 complex FFT. Size must be a power of two.
void ComplexFft(std::vector<double>& re, std::vector<double>& im);

// Magnitude-squared spectrum of a real frame, bins 0..n/2 inclusive.
// The frame is zero-padded to fft_size (a power of two).
std::vector<double> PowerSpectrum(const std::vector<double>& frame,
                                  int fft_size);

}  // namespace duotrain::audio

#endif  // DUOTRAIN_AUDIOFEAT_FFT_H_
