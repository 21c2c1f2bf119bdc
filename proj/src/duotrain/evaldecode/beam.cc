// evaldecode/beam.cc

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

#include "duotrain/evaldecode/beam.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "duotrain/textpipe/subword.h"

namespace duotrain::eval {

namespace {

using num::Tensor;

struct LiveHyp {
  std::vector<int> tokens;  // generated so far (no <bos>, no <eos>)
  double score = 0.0;
};

// Replicates a [1, len, dim] memory across a beam of size n.
nn::Encoded<float> ReplicateMemory(const nn::Encoded<float>& memory, int n) {
  const int len = memory.memory.dim(1), dim = memory.memory.dim(2);
  Tensor out = Tensor::Zeros({n, len, dim});
  auto src = memory.memory.values();
  auto dst = out.values();
  for (int i = 0; i < n; ++i) {
    std::copy(src.begin(), src.end(), dst.begin() + static_cast<int64_t>(i) * len * dim);
  }
  return {out, std::vector<int>(static_cast<size_t>(n), memory.lengths[0])};
}

// Log-softmax of one logits row, accumulated in double.
std::vector<double> LogProbs(const float* row, int vocab) {
  double mx = row[0];
  for (int v = 1; v < vocab; ++v) mx = std::max(mx, static_cast<double>(row[v]));
  double denom = 0.0;
  for (int v = 0; v < vocab; ++v) denom += std::exp(row[v] - mx);
  const double lse = mx + std::log(denom);
  std::vector<double> lp(static_cast<size_t>(vocab));
  for (int v = 0; v < vocab; ++v) lp[static_cast<size_t>(v)] = row[v] - lse;
  return lp;
}

}  // namespace

Hypothesis BeamSearch(const nn::ModelParameters& params,
                      const nn::Encoded<float>& memory,
                      const BeamConfig& config) {
  if (config.beam_size < 1) {
    throw std::invalid_argument("BeamSearch: beam size must be >= 1");
  }
  if (!memory.memory.defined() || memory.memory.dim(0) != 1) {
    throw std::invalid_argument("BeamSearch: expects a single encoded utterance");
  }
  const int vocab = params.config.subword_vocab_size;
  const int bos = text::SubwordVocab::kBos;
  const int eos = text::SubwordVocab::kEos;
  const int max_len =
      config.max_len_override > 0
          ? config.max_len_override
          : static_cast<int>(std::lround(config.max_len_factor *
                                         memory.lengths[0])) + 10;

  std::vector<LiveHyp> live(1);
  std::vector<Hypothesis> finished;

  for (int step = 0; step < max_len && !live.empty(); ++step) {
    const int prefix_len = step + 1;
    const int n = static_cast<int>(live.size());
    std::vector<int> prefix(static_cast<size_t>(n) * prefix_len);
    for (int i = 0; i < n; ++i) {
      prefix[static_cast<size_t>(i) * prefix_len] = bos;
      std::copy(live[static_cast<size_t>(i)].tokens.begin(),
                live[static_cast<size_t>(i)].tokens.end(),
                prefix.begin() + static_cast<int64_t>(i) * prefix_len + 1);
    }
    auto mem = n == 1 && memory.memory.dim(0) == 1 ? memory
                                                   : ReplicateMemory(memory, n);
    Tensor logits = nn::DecodeLogits(params, mem, prefix, n, prefix_len);

    struct Candidate {
      double score;
      int parent;
      int token;
    };
    std::vector<Candidate> candidates;
    const bool last_step = step == max_len - 1;
    for (int i = 0; i < n; ++i) {
      const float* row =
          logits.values().data() +
          (static_cast<int64_t>(i) * prefix_len + (prefix_len - 1)) * vocab;
      const auto lp = LogProbs(row, vocab);
      if (last_step) {
        // Length cap: every survivor finalizes with a scored <eos>.
        candidates.push_back({live[static_cast<size_t>(i)].score + lp[eos], i, eos});
      } else {
        for (int v = 0; v < vocab; ++v) {
          candidates.push_back({live[static_cast<size_t>(i)].score + lp[v], i, v});
        }
      }
    }
    const size_t keep = std::min<size_t>(candidates.size(),
                                         static_cast<size_t>(config.beam_size));
    std::partial_sort(candidates.begin(), candidates.begin() + keep,
                      candidates.end(), [](const Candidate& a, const Candidate& b) {
                        if (a.score != b.score) return a.score > b.score;
                        if (a.parent != b.parent) return a.parent < b.parent;
                        return a.token < b.token;
                      });
    candidates.resize(keep);

    std::vector<LiveHyp> next;
    for (const auto& cand : candidates) {
      if (cand.token == eos) {
        Hypothesis h;
        h.tokens = live[static_cast<size_t>(cand.parent)].tokens;
        h.tokens.push_back(eos);
        h.score = cand.score;
        h.normalized_score = cand.score / static_cast<double>(h.tokens.size());
        finished.push_back(std::move(h));
      } else {
        LiveHyp h;
        h.tokens = live[static_cast<size_t>(cand.parent)].tokens;
        h.tokens.push_back(cand.token);
        h.score = cand.score;
        next.push_back(std::move(h));
      }
    }
    live = std::move(next);
  }

  if (finished.empty()) {
    throw std::runtime_error("BeamSearch: no hypothesis finished");
  }
  auto best = std::min_element(
      finished.begin(), finished.end(), [](const Hypothesis& a, const Hypothesis& b) {
        if (a.normalized_score != b.normalized_score) {
          return a.normalized_score > b.normalized_score;
        }
        if (a.tokens.size() != b.tokens.size()) {
          return a.tokens.size() < b.tokens.size();
        }
        return a.tokens < b.tokens;
      });
  return *best;
}

Hypothesis BeamSearchFeatures(const nn::ModelParameters& params,
                              const num::Tensor& features,
                              const BeamConfig& config) {
  if (features.rank() != 3 || features.dim(0) != 1) {
    throw std::invalid_argument("BeamSearchFeatures: features must be [1, frames, dim]");
  }
  auto memory = nn::EncodeSpeech(params, features, {features.dim(1)});
  return BeamSearch(params, memory, config);
}

}  // namespace duotrain::eval
