// audiofeat/cmvn.h

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

#ifndef DUOTRAIN_AUDIOFEAT_CMVN_H_
#define DUOTRAIN_AUDIOFEAT_CMVN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "duotrain/audiofeat/features.h"

namespace duotrain::audio {

// Global per-coefficient mean/variance over a feature corpus.
struct CmvnStats {
  std::vector<double> mean;
  std::vector<double> var;  // population variance, >= 0
  int64_t count = 0;        // total frames
};

// Single global pass (sum / sum-of-squares in double). Throws on an empty
// corpus or fewer than two total frames.
CmvnStats FitCmvn(const std::vector<FeatureMatrix>& corpus);

// (x - mean) / sqrt(var + 1e-8); shape preserved.
FeatureMatrix ApplyCmvn(const FeatureMatrix& feat, const CmvnStats& stats);

void SaveCmvn(const CmvnStats& stats, const std::string& path);
CmvnStats LoadCmvn(const std::string& path);

}  // namespace duotrain::audio

#endif  // DUOTRAIN_AUDIOFEAT_CMVN_H_
