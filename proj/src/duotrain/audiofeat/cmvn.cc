// audiofeat/cmvn.cc

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

#include "duotrain/audiofeat/cmvn.h"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "duotrain/common/io.h"

namespace duotrain::audio {

CmvnStats FitCmvn(const std::vector<FeatureMatrix>& corpus) {
  if (corpus.empty()) throw std::invalid_argument("FitCmvn: empty corpus");
  const int dim = corpus.front().dim;
  CmvnStats stats;
  stats.mean.assign(static_cast<size_t>(dim), 0.0);
  stats.var.assign(static_cast<size_t>(dim), 0.0);
  std::vector<double> sum(static_cast<size_t>(dim), 0.0);
  std::vector<double> sumsq(static_cast<size_t>(dim), 0.0);
  for (const auto& feat : corpus) {
    if (feat.dim != dim) throw std::invalid_argument("FitCmvn: dim mismatch");
    for (int t = 0; t < feat.num_frames; ++t) {
      const float* row = feat.row(t);
      for (int d = 0; d < dim; ++d) {
        sum[static_cast<size_t>(d)] += row[d];
        sumsq[static_cast<size_t>(d)] += static_cast<double>(row[d]) * row[d];
      }
    }
    stats.count += feat.num_frames;
  }
  if (stats.count < 2) {
    throw std::invalid_argument("FitCmvn: needs at least two frames");
  }
  for (int d = 0; d < dim; ++d) {
    const double m = sum[static_cast<size_t>(d)] / static_cast<double>(stats.count);
    double v = sumsq[static_cast<size_t>(d)] / static_cast<double>(stats.count) - m * m;
    stats.mean[static_cast<size_t>(d)] = m;
    stats.var[static_cast<size_t>(d)] = std::max(v, 0.0);
  }
  return stats;
}

FeatureMatrix ApplyCmvn(const FeatureMatrix& feat, const CmvnStats& stats) {
  if (static_cast<size_t>(feat.dim) != stats.mean.size()) {
    throw std::invalid_argument("ApplyCmvn: dim mismatch");
  }
  FeatureMatrix out(feat.num_frames, feat.dim);
  std::vector<float> scale(static_cast<size_t>(feat.dim));
  std::vector<float> shift(static_cast<size_t>(feat.dim));
  for (int d = 0; d < feat.dim; ++d) {
    scale[static_cast<size_t>(d)] =
        static_cast<float>(1.0 / std::sqrt(stats.var[static_cast<size_t>(d)] + 1e-8));
    shift[static_cast<size_t>(d)] = static_cast<float>(stats.mean[static_cast<size_t>(d)]);
  }
  for (int t = 0; t < feat.num_frames; ++t) {
    const float* src = feat.row(t);
    float* dst = out.row(t);
    for (int d = 0; d < feat.dim; ++d) {
      dst[d] = (src[d] - shift[static_cast<size_t>(d)]) * scale[static_cast<size_t>(d)];
    }
  }
  return out;
}

void SaveCmvn(const CmvnStats& stats, const std::string& path) {
  nlohmann::json j;
  j["count"] = stats.count;
  j["mean"] = stats.mean;
  j["var"] = stats.var;
  WriteStringToFile(path, j.dump(2) + "\n");
}

CmvnStats LoadCmvn(const std::string& path) {
  auto j = nlohmann::json::parse(ReadFileToString(path));
  CmvnStats stats;
  stats.count = j.at("count").get<int64_t>();
  stats.mean = j.at("mean").get<std::vector<double>>();
  stats.var = j.at("var").get<std::vector<double>>();
  if (stats.mean.size() != stats.var.size() || stats.count <= 0) {
    throw std::runtime_error("LoadCmvn: malformed stats in " + path);
  }
  return stats;
}

}  // namespace duotrain::audio
