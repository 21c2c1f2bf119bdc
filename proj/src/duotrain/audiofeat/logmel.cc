// audiofeat/logmel.cc

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

#include "duotrain/audiofeat/logmel.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "duotrain/audiofeat/fft.h"

namespace duotrain::audio {

namespace {

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

// num_mels + 2 boundary points, equally spaced on the mel scale.
std::vector<double> MelPointsHz(const LogMelConfig& cfg) {
  const double lo = HzToMel(cfg.fmin_hz), hi = HzToMel(cfg.fmax_hz);
  std::vector<double> pts(static_cast<size_t>(cfg.num_mels) + 2);
  for (size_t i = 0; i < pts.size(); ++i) {
    pts[i] = MelToHz(lo + (hi - lo) * static_cast<double>(i) /
                              static_cast<double>(cfg.num_mels + 1));
  }
  return pts;
}

}  // namespace

std::vector<double> MelFilterCenters(const LogMelConfig& config) {
  auto pts = MelPointsHz(config);
  return std::vector<double>(pts.begin() + 1, pts.end() - 1);
}

FeatureMatrix LogMel(const Waveform& wav, const LogMelConfig& cfg) {
  const int64_t len = static_cast<int64_t>(wav.samples.size());
  if (len < cfg.frame_length) {
    throw std::invalid_argument(
        "LogMel: input has " + std::to_string(len) + " samples, below one " +
        std::to_string(cfg.frame_length) + "-sample window");
  }
  if (wav.sample_rate != cfg.sample_rate) {
    throw std::invalid_argument("LogMel: sample rate mismatch");
  }

  const int64_t num_frames = LogMelFrameCount(len, cfg);
  const int num_bins = cfg.fft_size / 2 + 1;

  // Hann window.
  std::vector<double> window(static_cast<size_t>(cfg.frame_length));
  for (int i = 0; i < cfg.frame_length; ++i) {
    window[static_cast<size_t>(i)] =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / (cfg.frame_length - 1));
  }

  // Triangular filters as (start_bin, weights) pairs.
  const auto pts = MelPointsHz(cfg);
  const double bin_hz = static_cast<double>(cfg.sample_rate) / cfg.fft_size;
  std::vector<int> filter_start(static_cast<size_t>(cfg.num_mels));
  std::vector<std::vector<double>> filter_weights(static_cast<size_t>(cfg.num_mels));
  for (int m = 0; m < cfg.num_mels; ++m) {
    const double left = pts[static_cast<size_t>(m)];
    const double center = pts[static_cast<size_t>(m) + 1];
    const double right = pts[static_cast<size_t>(m) + 2];
    int start = -1;
    std::vector<double> w;
    for (int k = 0; k < num_bins; ++k) {
      const double f = k * bin_hz;
      if (f <= left || f >= right) continue;
      const double weight =
          f <= center ? (f - left) / (center - left) : (right - f) / (right - center);
      if (start < 0) start = k;
      w.push_back(weight);
    }
    filter_start[static_cast<size_t>(m)] = start < 0 ? 0 : start;
    filter_weights[static_cast<size_t>(m)] = std::move(w);
  }

  FeatureMatrix feat(static_cast<int>(num_frames), cfg.num_mels);
  std::vector<double> frame(static_cast<size_t>(cfg.frame_length));
  for (int64_t t = 0; t < num_frames; ++t) {
    const float* src = wav.samples.data() + t * cfg.frame_shift;
    for (int i = 0; i < cfg.frame_length; ++i) {
      frame[static_cast<size_t>(i)] = src[i] * window[static_cast<size_t>(i)];
    }
    const auto power = PowerSpectrum(frame, cfg.fft_size);
    float* out = feat.row(static_cast<int>(t));
    for (int m = 0; m < cfg.num_mels; ++m) {
      double acc = 0.0;
      const auto& w = filter_weights[static_cast<size_t>(m)];
      const int start = filter_start[static_cast<size_t>(m)];
      for (size_t j = 0; j < w.size(); ++j) {
        acc += w[j] * power[static_cast<size_t>(start) + j];
      }
      out[m] = static_cast<float>(std::log(std::max(acc, cfg.floor)));
    }
  }
  return feat;
}

}  // namespace duotrain::audio
