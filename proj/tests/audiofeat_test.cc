// tests/audiofeat_test.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

#include "duotrain/audiofeat/cmvn.h"
#include "duotrain/audiofeat/featfile.h"
#include "duotrain/audiofeat/fft.h"
#include "duotrain/audiofeat/logmel.h"
#include "duotrain/audiofeat/specaugment.h"
#include "duotrain/audiofeat/wav.h"
#include "duotrain/common/io.h"
#include "duotrain/common/rng.h"
#include "testutil.h"

using namespace duotrain;
using namespace duotrain::audio;

namespace {

// Minimal PCM16 writer with explicit control of header fields, for
// constructing both valid and deliberately broken fixtures.
void WriteRawWav(const std::string& path, const std::vector<int16_t>& samples,
                 uint16_t channels, uint32_t rate, uint16_t bits = 16,
                 uint16_t format = 1) {
  std::ofstream os(path, std::ios::binary);
  auto u32 = [&](uint32_t v) { os.write(reinterpret_cast<char*>(&v), 4); };
  auto u16 = [&](uint16_t v) { os.write(reinterpret_cast<char*>(&v), 2); };
  const uint32_t data_len = static_cast<uint32_t>(samples.size() * 2);
  os.write("RIFF", 4);
  u32(36 + data_len);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  u32(16);
  u16(format);
  u16(channels);
  u32(rate);
  u32(rate * channels * bits / 8);
  u16(static_cast<uint16_t>(channels * bits / 8));
  u16(bits);
  os.write("data", 4);
  u32(data_len);
  for (int16_t s : samples) os.write(reinterpret_cast<char*>(&s), 2);
}

}  // namespace

TEST_CASE("wav reader scales silence and square waves exactly") {
  testutil::TempDir tmp("wav");
  SUBCASE("one second of silence") {
    WriteRawWav(tmp.File("silence.wav"), std::vector<int16_t>(16000, 0), 1, 16000);
    Waveform w = ReadWav(tmp.File("silence.wav"));
    REQUIRE(w.samples.size() == 16000);
    for (float v : w.samples) CHECK(v == 0.0f);
  }
  SUBCASE("full-scale square wave") {
    std::vector<int16_t> sq(800);
    for (size_t i = 0; i < sq.size(); ++i) sq[i] = i % 2 == 0 ? 32767 : -32767;
    WriteRawWav(tmp.File("square.wav"), sq, 1, 16000);
    Waveform w = ReadWav(tmp.File("square.wav"));
    for (size_t i = 0; i < w.samples.size(); ++i) {
      const float expect = (i % 2 == 0 ? 1.0f : -1.0f) * 32767.0f / 32768.0f;
      CHECK(w.samples[i] == expect);
    }
  }
}

TEST_CASE("wav reader rejects non-conforming files descriptively") {
  testutil::TempDir tmp("badwav");
  std::vector<int16_t> samples(100, 0);
  WriteRawWav(tmp.File("stereo.wav"), samples, 2, 16000);
  CHECK_THROWS_WITH_AS(ReadWav(tmp.File("stereo.wav")),
                       doctest::Contains("mono required"), std::runtime_error);
  WriteRawWav(tmp.File("rate.wav"), samples, 1, 44100);
  CHECK_THROWS_WITH_AS(ReadWav(tmp.File("rate.wav")),
                       doctest::Contains("16 kHz required"), std::runtime_error);
  WriteRawWav(tmp.File("8bit.wav"), samples, 1, 16000, 8);
  CHECK_THROWS_AS(ReadWav(tmp.File("8bit.wav")), std::runtime_error);
  WriteRawWav(tmp.File("float.wav"), samples, 1, 16000, 16, 3);
  CHECK_THROWS_WITH_AS(ReadWav(tmp.File("float.wav")),
                       doctest::Contains("PCM required"), std::runtime_error);
  WriteStringToFile(tmp.File("junk.wav"), "definitely not a wav file");
  CHECK_THROWS_AS(ReadWav(tmp.File("junk.wav")), std::runtime_error);
}

TEST_CASE("wav writer round-trips through the reader") {
  testutil::TempDir tmp("wavrt");
  Waveform orig;
  Rng rng(3);
  orig.samples.resize(500);
  for (auto& v : orig.samples) v = static_cast<float>(rng.Uniform() * 1.8 - 0.9);
  WriteWav(tmp.File("rt.wav"), orig);
  Waveform back = ReadWav(tmp.File("rt.wav"));
  REQUIRE(back.samples.size() == orig.samples.size());
  for (size_t i = 0; i < back.samples.size(); ++i) {
    CHECK(back.samples[i] == doctest::Approx(orig.samples[i]).epsilon(1e-3));
  }
}

TEST_CASE("fft matches a naive DFT") {
  Rng rng(17);
  const int n = 512;
  std::vector<double> re(n), im(n, 0.0);
  for (auto& v : re) v = rng.Uniform() * 2 - 1;
  std::vector<double> re_in = re, im_in = im;
  ComplexFft(re, im);
  // Independent quadratic-time reference.
  for (int k = 0; k < n; k += 37) {  // spot-check bins
    double rr = 0, ii = 0;
    for (int t = 0; t < n; ++t) {
      const double ang = -2.0 * std::numbers::pi * k * t / n;
      rr += re_in[t] * std::cos(ang) - im_in[t] * std::sin(ang);
      ii += re_in[t] * std::sin(ang) + im_in[t] * std::cos(ang);
    }
    CHECK(re[k] == doctest::Approx(rr).epsilon(1e-9));
    CHECK(im[k] == doctest::Approx(ii).epsilon(1e-9));
  }
  CHECK_THROWS_AS(([] {
                    std::vector<double> a(300), b(300);
                    ComplexFft(a, b);
                  })(),
                  std::invalid_argument);
}

TEST_CASE("log-mel frame count follows the shift/window formula") {
  Waveform w;
  w.samples.assign(16000, 0.0f);
  FeatureMatrix f = LogMel(w);
  CHECK(f.num_frames == 98);
  CHECK(f.dim == 80);

  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    const int64_t len = 400 + static_cast<int64_t>(rng.UniformInt(30000));
    Waveform wi;
    wi.samples.assign(static_cast<size_t>(len), 0.0f);
    CHECK(LogMel(wi).num_frames == (len - 400) / 160 + 1);
  }
  Waveform too_short;
  too_short.samples.assign(399, 0.0f);
  CHECK_THROWS_AS(LogMel(too_short), std::invalid_argument);
}

TEST_CASE("log-mel of silence is the log floor everywhere") {
  Waveform w;
  w.samples.assign(2000, 0.0f);
  FeatureMatrix f = LogMel(w);
  const float expect = std::log(1e-10f);
  for (float v : f.data) CHECK(v == doctest::Approx(expect));
}

TEST_CASE("pure tone lands in the filter whose center is nearest") {
  const double freq = 1000.0;
  Waveform w;
  w.samples.resize(16000);
  for (size_t i = 0; i < w.samples.size(); ++i) {
    w.samples[i] = static_cast<float>(
        0.5 * std::sin(2.0 * std::numbers::pi * freq * i / 16000.0));
  }
  FeatureMatrix f = LogMel(w);

  // Independent recomputation of the filter centers: 82 points equally
  // spaced on mel(20)..mel(8000), mel(f) = 2595 log10(1 + f/700).
  auto mel = [](double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); };
  auto hz = [](double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); };
  int nearest = 0;
  double best = 1e18;
  for (int m = 0; m < 80; ++m) {
    const double center =
        hz(mel(20.0) + (mel(8000.0) - mel(20.0)) * (m + 1) / 81.0);
    if (std::abs(center - freq) < best) {
      best = std::abs(center - freq);
      nearest = m;
    }
  }
  for (int t = 0; t < f.num_frames; ++t) {
    int argmax = 0;
    for (int d = 1; d < 80; ++d) {
      if (f.at(t, d) > f.at(t, argmax)) argmax = d;
    }
    CHECK(argmax == nearest);
  }
}

TEST_CASE("cmvn standardizes its own fitting corpus") {
  Rng rng(21);
  std::vector<FeatureMatrix> corpus;
  for (int i = 0; i < 3; ++i) {
    FeatureMatrix f(40 + i * 13, 80);
    for (auto& v : f.data) {
      v = static_cast<float>(rng.Gaussian() * 2.0 + 5.0);
    }
    corpus.push_back(std::move(f));
  }
  // Make one dimension constant to exercise the epsilon guard.
  for (auto& f : corpus) {
    for (int t = 0; t < f.num_frames; ++t) f.at(t, 7) = 3.25f;
  }
  CmvnStats stats = FitCmvn(corpus);
  std::vector<double> mean(80, 0.0), var(80, 0.0);
  int64_t count = 0;
  for (const auto& f : corpus) {
    FeatureMatrix n = ApplyCmvn(f, stats);
    for (int t = 0; t < n.num_frames; ++t) {
      for (int d = 0; d < 80; ++d) mean[d] += n.at(t, d);
    }
    count += n.num_frames;
  }
  for (auto& m : mean) m /= static_cast<double>(count);
  for (const auto& f : corpus) {
    FeatureMatrix n = ApplyCmvn(f, stats);
    for (int t = 0; t < n.num_frames; ++t) {
      for (int d = 0; d < 80; ++d) {
        var[d] += (n.at(t, d) - mean[d]) * (n.at(t, d) - mean[d]);
      }
    }
  }
  for (auto& v : var) v /= static_cast<double>(count);
  for (int d = 0; d < 80; ++d) {
    CHECK(std::abs(mean[d]) < 1e-6);
    if (d == 7) {
      CHECK(var[d] == 0.0);  // constant dimension collapses to zero
    } else {
      CHECK(std::abs(var[d] - 1.0) < 1e-4);
    }
  }
}

TEST_CASE("cmvn hand case: frames 0 and 2 normalize to -1 and +1") {
  FeatureMatrix a(1, 1), b(1, 1);
  a.at(0, 0) = 0.0f;
  b.at(0, 0) = 2.0f;
  CmvnStats stats = FitCmvn({a, b});
  CHECK(stats.mean[0] == doctest::Approx(1.0));
  CHECK(stats.var[0] == doctest::Approx(1.0));
  CHECK(ApplyCmvn(a, stats).at(0, 0) == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(ApplyCmvn(b, stats).at(0, 0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("cmvn rejects empty or single-frame corpora") {
  CHECK_THROWS_AS(FitCmvn({}), std::invalid_argument);
  FeatureMatrix one(1, 4);
  CHECK_THROWS_AS(FitCmvn({one}), std::invalid_argument);
}

TEST_CASE("cmvn application is invertible given the stats") {
  Rng rng(31);
  FeatureMatrix f(60, 80);
  for (auto& v : f.data) v = static_cast<float>(rng.Gaussian() * 3 - 1);
  FeatureMatrix g(55, 80);
  for (auto& v : g.data) v = static_cast<float>(rng.Gaussian() * 3 - 1);
  CmvnStats stats = FitCmvn({f, g});
  FeatureMatrix n = ApplyCmvn(f, stats);
  for (int t = 0; t < f.num_frames; ++t) {
    for (int d = 0; d < 80; ++d) {
      const double back =
          n.at(t, d) * std::sqrt(stats.var[d] + 1e-8) + stats.mean[d];
      const double denom = std::max(1.0, std::abs(static_cast<double>(f.at(t, d))));
      CHECK(std::abs(back - f.at(t, d)) / denom < 1e-5);
    }
  }
}

TEST_CASE("specaugment: zero policy is identity, masks stay within budget") {
  FeatureMatrix f(98, 80);
  for (auto& v : f.data) v = 1.0f;

  Rng rng(5);
  FeatureMatrix same = SpecAugment(f, SpecAugmentPolicy{}, rng);
  CHECK(same.data == f.data);

  SpecAugmentPolicy zero_width{0, 0, 1, 0, 1.0, 0};
  FeatureMatrix same2 = SpecAugment(f, zero_width, rng);
  CHECK(same2.data == f.data);

  // Frequency and time budgets, each mechanism isolated so the other's
  // masks cannot inflate the count.
  SpecAugmentPolicy freq_only{0, 27, 2, 0, 1.0, 0};
  SpecAugmentPolicy time_only{0, 0, 0, 100, 1.0, 2};
  for (uint64_t seed = 0; seed < 100; ++seed) {
    Rng rf(seed);
    FeatureMatrix aug_f = SpecAugment(f, freq_only, rf);
    int zero_rows = 0;  // frequency bands zeroed across all frames
    for (int d = 0; d < 80; ++d) {
      bool all = true;
      for (int t = 0; t < aug_f.num_frames && all; ++t) all = aug_f.at(t, d) == 0.0f;
      zero_rows += all ? 1 : 0;
    }
    CHECK(zero_rows <= 54);  // 2 masks x width <= 27

    Rng rt(seed);
    FeatureMatrix aug_t = SpecAugment(f, time_only, rt);
    int zero_cols = 0;  // fully zeroed time steps
    for (int t = 0; t < aug_t.num_frames; ++t) {
      bool all = true;
      for (int d = 0; d < 80 && all; ++d) all = aug_t.at(t, d) == 0.0f;
      zero_cols += all ? 1 : 0;
    }
    CHECK(zero_cols <= 200);  // 2 masks x width <= 100

    // Unmasked cells are bitwise untouched.
    for (float v : aug_f.data) CHECK((v == 1.0f || v == 0.0f));
  }

  SpecAugmentPolicy ld = PolicyLd();
  Rng r1(77), r2(77);
  CHECK(SpecAugment(f, ld, r1).data == SpecAugment(f, ld, r2).data);

  SpecAugmentPolicy warp = PolicyLd();
  warp.time_warp_w = 80;
  Rng r3(1);
  CHECK_THROWS_AS(SpecAugment(f, warp, r3), std::invalid_argument);
}

TEST_CASE("feature cache round-trips bitwise") {
  testutil::TempDir tmp("feat");
  Rng rng(41);
  FeatureMatrix f(23, 80);
  for (auto& v : f.data) v = static_cast<float>(rng.Gaussian());
  WriteFeatures(tmp.File("x.feat"), f);
  FeatureMatrix back = ReadFeatures(tmp.File("x.feat"));
  CHECK(back.num_frames == f.num_frames);
  CHECK(back.dim == f.dim);
  CHECK(std::memcmp(back.data.data(), f.data.data(),
                    f.data.size() * sizeof(float)) == 0);
  WriteStringToFile(tmp.File("bad.feat"), "XXXXXXXX\0\0\0\0");
  CHECK_THROWS_AS(ReadFeatures(tmp.File("bad.feat")), std::runtime_error);
}
