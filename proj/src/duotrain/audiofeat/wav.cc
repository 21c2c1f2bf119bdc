// audiofeat/wav.cc

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

#include "duotrain/audiofeat/wav.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "duotrain/common/io.h"

namespace duotrain::audio {

namespace {

uint16_t ReadU16At(const std::string& buf, size_t pos) {
  uint16_t v;
  std::memcpy(&v, buf.data() + pos, 2);
  return v;
}

uint32_t ReadU32At(const std::string& buf, size_t pos) {
  uint32_t v;
  std::memcpy(&v, buf.data() + pos, 4);
  return v;
}

}  // namespace

Waveform ReadWav(const std::string& path) {
  const std::string buf = ReadFileToString(path);
  if (buf.size() < 44 || buf.compare(0, 4, "RIFF") != 0 ||
      buf.compare(8, 4, "WAVE") != 0) {
    throw std::runtime_error(path + ": not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t rate = 0;
  size_t data_pos = 0, data_len = 0;

  size_t pos = 12;
  while (pos + 8 <= buf.size()) {
    const std::string id = buf.substr(pos, 4);
    const uint32_t len = ReadU32At(buf, pos + 4);
    const size_t body = pos + 8;
    if (body + len > buf.size()) {
      throw std::runtime_error(path + ": truncated chunk '" + id + "'");
    }
    if (id == "fmt ") {
      if (len < 16) throw std::runtime_error(path + ": short fmt chunk");
      format = ReadU16At(buf, body);
      channels = ReadU16At(buf, body + 2);
      rate = ReadU32At(buf, body + 4);
      bits = ReadU16At(buf, body + 14);
      have_fmt = true;
    } else if (id == "data") {
      data_pos = body;
      data_len = len;
    }
    pos = body + len + (len % 2);  // chunks are word-aligned
  }

  if (!have_fmt || data_pos == 0) {
    throw std::runtime_error(path + ": missing fmt or data chunk");
  }
  if (format != 1) throw std::runtime_error(path + ": PCM required");
  if (channels != 1) throw std::runtime_error(path + ": mono required");
  if (bits != 16) throw std::runtime_error(path + ": 16-bit samples required");
  if (rate != 16000) {
    throw std::runtime_error(path + ": 16 kHz required, got " +
                             std::to_string(rate) + " Hz (no resampling)");
  }

  Waveform wav;
  wav.sample_rate = 16000;
  const size_t n = data_len / 2;
  if (n == 0) throw std::runtime_error(path + ": empty data chunk");
  wav.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    int16_t s;
    std::memcpy(&s, buf.data() + data_pos + 2 * i, 2);
    wav.samples[i] = static_cast<float>(s) / 32768.0f;
  }
  return wav;
}

void WriteWav(const std::string& path, const Waveform& wav) {
  const uint32_t n = static_cast<uint32_t>(wav.samples.size());
  const uint32_t data_len = n * 2;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write wav: " + path);

  os.write("RIFF", 4);
  WriteU32(os, 36 + data_len);
  os.write("WAVE", 4);
  os.write("fmt ", 4);
  WriteU32(os, 16);
  const uint16_t format = 1, channels = 1, bits = 16;
  const uint32_t rate = static_cast<uint32_t>(wav.sample_rate);
  const uint32_t byte_rate = rate * channels * bits / 8;
  const uint16_t block_align = channels * bits / 8;
  WriteBytes(os, &format, 2);
  WriteBytes(os, &channels, 2);
  WriteU32(os, rate);
  WriteU32(os, byte_rate);
  WriteBytes(os, &block_align, 2);
  WriteBytes(os, &bits, 2);
  os.write("data", 4);
  WriteU32(os, data_len);
  for (float v : wav.samples) {
    const float clipped = std::clamp(v, -1.0f, 1.0f);
    const int16_t s = static_cast<int16_t>(
        std::clamp(std::lround(clipped * 32768.0f), -32768L, 32767L));
    WriteBytes(os, &s, 2);
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

}  // namespace duotrain::audio
