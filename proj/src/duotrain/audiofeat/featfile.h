// audiofeat/featfile.h

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

#ifndef DUOTRAIN_AUDIOFEAT_FEATFILE_H_
#define DUOTRAIN_AUDIOFEAT_FEATFILE_H_

#include <string>

#include "duotrain/audiofeat/features.h"

namespace duotrain::audio {

// Binary feature cache: magic "DTFEAT01", u32 frames, u32 dim
// (little-endian), then row-major f32 values.
void WriteFeatures(const std::string& path, const FeatureMatrix& feat);
FeatureMatrix ReadFeatures(const std::string& path);

}  // namespace duotrain::audio

#endif  // DUOTRAIN_AUDIOFEAT_FEATFILE_H_
