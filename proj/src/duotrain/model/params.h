// model/params.h

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

#ifndef DUOTRAIN_MODEL_PARAMS_H_
#define DUOTRAIN_MODEL_PARAMS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "duotrain/common/rng.h"
#include "duotrain/model/config.h"
#include "duotrain/numcore/tensor.h"

namespace duotrain::nn {

// Parameter component prefixes. The speech encoder owns the conv subsampler;
// each encoder/decoder owns its embedding table (the decoder's is tied
// input/output).
inline constexpr char kSpeechPrefix[] = "speech_encoder.";
inline constexpr char kTextPrefix[] = "text_encoder.";
inline constexpr char kDecoderPrefix[] = "decoder.";

// Named tensor collection. Under tie_top6 the text-encoder layer names alias
// the same tensors as the top speech-encoder layers: both names map to one
// storage, and `tying` records the (text name, speech name) pairs.
template <typename T>
struct ParametersT {
  ModelConfig config;
  std::map<std::string, num::TensorT<T>> named;
  std::vector<std::pair<std::string, std::string>> tying;

  const num::TensorT<T>& at(const std::string& name) const {
    auto it = named.find(name);
    if (it == named.end()) {
      throw std::out_of_range("no parameter named '" + name + "'");
    }
    return it->second;
  }

  // Deduplicated (storage-unique) parameters in name order; a tied tensor
  // appears once, under its first (speech-side) name.
  std::vector<std::pair<std::string, num::TensorT<T>>> UniqueParams() const;

  // Unique parameters reachable from the given component prefixes.
  std::vector<std::pair<std::string, num::TensorT<T>>> ComponentParams(
      const std::vector<std::string>& prefixes) const;

  int64_t CountParams(const std::vector<std::string>& prefixes) const;
  int64_t TotalParams() const;
};

using ModelParameters = ParametersT<float>;

// Pre-layer-norm transformer parameters, Xavier-uniform initialized;
// biases and layer-norm offsets start at zero, layer-norm gains at one.
ModelParameters BuildModel(const ModelConfig& config, uint64_t seed);

// Exact copy in double precision (fresh storage, tying preserved), for the
// finite-difference checks.
ParametersT<double> ToDouble(const ModelParameters& params);

extern template struct ParametersT<float>;
extern template struct ParametersT<double>;

}  // namespace duotrain::nn

#endif  // DUOTRAIN_MODEL_PARAMS_H_
