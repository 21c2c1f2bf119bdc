// audiofeat/featfile.cc

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

#include "duotrain/audiofeat/featfile.h"

#include <fstream>
#include <stdexcept>

#include "duotrain/common/io.h"

namespace duotrain::audio {

namespace {
constexpr char kMagic[] = "DTFEAT01";
}

void WriteFeatures(const std::string& path, const FeatureMatrix& feat) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write features: " + path);
  os.write(kMagic, 8);
  WriteU32(os, static_cast<uint32_t>(feat.num_frames));
  WriteU32(os, static_cast<uint32_t>(feat.dim));
  WriteF32Array(os, feat.data.data(), feat.data.size());
  if (!os) throw std::runtime_error("write failed: " + path);
}

FeatureMatrix ReadFeatures(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open features: " + path);
  char magic[8];
  ReadBytes(is, magic, 8);
  if (std::string(magic, 8) != kMagic) {
    throw std::runtime_error(path + ": bad feature file magic");
  }
  const uint32_t frames = ReadU32(is);
  const uint32_t dim = ReadU32(is);
  FeatureMatrix feat(static_cast<int>(frames), static_cast<int>(dim));
  ReadF32Array(is, feat.data.data(), feat.data.size());
  return feat;
}

}  // namespace duotrain::audio
