// evaldecode/beam.h

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

#ifndef DUOTRAIN_EVALDECODE_BEAM_H_
#define DUOTRAIN_EVALDECODE_BEAM_H_

#include <vector>

#include "duotrain/model/net.h"
#include "duotrain/model/params.h"

namespace duotrain::eval {

struct Hypothesis {
  std::vector<int> tokens;   // generated tokens, <eos>-terminated, no <bos>
  double score = 0.0;        // sum of token log-probabilities
  double normalized_score = 0.0;  // score / tokens.size()
};

struct BeamConfig {
  int beam_size = 5;
  double max_len_factor = 1.0;  // cap = factor * memory length + 10
  int max_len_override = 0;     // > 0 replaces the formula (tests, toys)
};

// Length-normalized beam search over one encoded utterance. Candidates are
// ranked by raw score during expansion; a hypothesis finalizes when <eos> is
// selected (hypotheses that reach the length cap finalize with a scored
// <eos>), and the best normalized_score wins. Deterministic: ties break on
// (parent index, token id). The text encoder plays no part here.
Hypothesis BeamSearch(const nn::ModelParameters& params,
                      const nn::Encoded<float>& memory,
                      const BeamConfig& config = {});

// Convenience wrapper: encode one utterance's features, then search.
Hypothesis BeamSearchFeatures(const nn::ModelParameters& params,
                              const num::Tensor& features,  // [1, frames, dim]
                              const BeamConfig& config = {});

}  // namespace duotrain::eval

#endif  // DUOTRAIN_EVALDECODE_BEAM_H_
