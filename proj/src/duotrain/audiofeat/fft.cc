// audiofeat/fft.cc

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

#include "duotrain/audiofeat/fft.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace duotrain::audio {

void ComplexFft(std::vector<double>& re, std::vector<double>& im) {
  const size_t n = re.size();
  if (n == 0 || (n & (n - 1)) != 0 || im.size() != n) {
    throw std::invalid_argument("ComplexFft: size must be a power of two");
  }

  // Bit reversal permutation.
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) {
      std::swap(re[i], re[j]);
      std::swap(im[i], im[j]);
    }
  }

  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const double wr = std::cos(ang), wi = std::sin(ang);
    for (size_t i = 0; i < n; i += len) {
      double cur_r = 1.0, cur_i = 0.0;
      for (size_t k = 0; k < len / 2; ++k) {
        const size_t a = i + k, b = i + k + len / 2;
        const double tr = re[b] * cur_r - im[b] * cur_i;
        const double ti = re[b] * cur_i + im[b] * cur_r;
        re[b] = re[a] - tr;
        im[b] = im[a] - ti;
        re[a] += tr;
        im[a] += ti;
        const double nr = cur_r * wr - cur_i * wi;
        cur_i = cur_r * wi + cur_i * wr;
        cur_r = nr;
      }
    }
  }
}

std::vector<double> PowerSpectrum(const std::vector<double>& frame,
                                  int fft_size) {
  if (static_cast<int>(frame.size()) > fft_size) {
    throw std::invalid_argument("PowerSpectrum: frame longer than fft size");
  }
  std::vector<double> re(static_cast<size_t>(fft_size), 0.0);
  std::vector<double> im(static_cast<size_t>(fft_size), 0.0);
  std::copy(frame.begin(), frame.end(), re.begin());
  ComplexFft(re, im);
  std::vector<double> power(static_cast<size_t>(fft_size / 2 + 1));
  for (size_t k = 0; k < power.size(); ++k) {
    power[k] = re[k] * re[k] + im[k] * im[k];
  }
  return power;
}

}  // namespace duotrain::audio
