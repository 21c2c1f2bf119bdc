// tests/oracles.h

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

// Reference implementations kept deliberately independent of the library
// code they check: different algorithms, different data layouts.

#ifndef DUOTRAIN_TESTS_ORACLES_H_
#define DUOTRAIN_TESTS_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "duotrain/evaldecode/beam.h"
#include "duotrain/model/net.h"

namespace duotrain::oracle {

// Edit distance via a rolling one-row DP (no backtrace).
inline int EditDistance(const std::vector<std::string>& a,
                        const std::vector<std::string>& b) {
  std::vector<int> row(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) row[j] = static_cast<int>(j);
  for (size_t i = 1; i <= a.size(); ++i) {
    int diag = row[0];
    row[0] = static_cast<int>(i);
    for (size_t j = 1; j <= b.size(); ++j) {
      const int sub = diag + (a[i - 1] == b[j - 1] ? 0 : 1);
      diag = row[j];
      row[j] = std::min({sub, diag + 1, row[j - 1] + 1});
    }
  }
  return row[b.size()];
}

// Corpus BLEU recomputed from scratch: n-grams as joined strings, clipped
// counts via sorted-vector intersection, log-space accumulation.
inline double BleuScore(const std::vector<std::vector<std::string>>& refs,
                        const std::vector<std::vector<std::string>>& hyps) {
  auto ngrams = [](const std::vector<std::string>& toks, int n) {
    std::vector<std::string> out;
    for (size_t i = 0; i + n <= toks.size(); ++i) {
      std::string g;
      for (int k = 0; k < n; ++k) {
        g += toks[i + k];
        g.push_back('\x01');
      }
      out.push_back(std::move(g));
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  long long ref_len = 0, hyp_len = 0;
  double log_p = 0.0;
  double smooth = 1.0;
  int orders = 0;
  for (int n = 1; n <= 4; ++n) {
    long long match = 0, total = 0;
    for (size_t s = 0; s < refs.size(); ++s) {
      auto rg = ngrams(refs[s], n);
      auto hg = ngrams(hyps[s], n);
      total += static_cast<long long>(hg.size());
      // Multiset intersection size by merging the sorted runs.
      size_t i = 0, j = 0;
      while (i < rg.size() && j < hg.size()) {
        if (rg[i] < hg[j]) {
          ++i;
        } else if (hg[j] < rg[i]) {
          ++j;
        } else {
          ++match;
          ++i;
          ++j;
        }
      }
      if (n == 1) {
        ref_len += static_cast<long long>(rg.size());
        hyp_len += static_cast<long long>(hg.size());
      }
    }
    if (total == 0) break;
    ++orders;
    if (match == 0) {
      smooth *= 2.0;
      log_p += std::log(100.0 / (smooth * static_cast<double>(total)));
    } else {
      log_p += std::log(100.0 * static_cast<double>(match) /
                        static_cast<double>(total));
    }
  }
  if (orders == 0 || hyp_len == 0) return 0.0;
  const double bp = hyp_len >= ref_len
                        ? 1.0
                        : std::exp(1.0 - static_cast<double>(ref_len) /
                                             static_cast<double>(hyp_len));
  return bp * std::exp(log_p / orders);
}

// Exhaustive search over every token sequence of generated length <= max_len
// that ends with the first <eos>; mirrors the decoder's scoring exactly
// (same forward, same double log-softmax, same tie-breaking).
inline eval::Hypothesis BestByEnumeration(const nn::ModelParameters& params,
                                          const nn::Encoded<float>& memory,
                                          int max_len) {
  const int vocab = params.config.subword_vocab_size;
  const int bos = 2, eos = 3;
  eval::Hypothesis best;
  bool have_best = false;

  auto better = [](const eval::Hypothesis& a, const eval::Hypothesis& b) {
    if (a.normalized_score != b.normalized_score) {
      return a.normalized_score > b.normalized_score;
    }
    if (a.tokens.size() != b.tokens.size()) return a.tokens.size() < b.tokens.size();
    return a.tokens < b.tokens;
  };

  std::vector<int> prefix = {bos};
  std::function<void(double)> walk = [&](double score) {
    const int gen = static_cast<int>(prefix.size()) - 1;
    if (gen >= max_len) return;
    auto logits = nn::DecodeLogits(params, memory, prefix,
                                   1, static_cast<int>(prefix.size()));
    const float* row = logits.values().data() +
                       static_cast<int64_t>(prefix.size() - 1) * vocab;
    double mx = row[0];
    for (int v = 1; v < vocab; ++v) mx = std::max(mx, static_cast<double>(row[v]));
    double denom = 0;
    for (int v = 0; v < vocab; ++v) denom += std::exp(row[v] - mx);
    const double lse = mx + std::log(denom);

    // Terminate here.
    {
      eval::Hypothesis h;
      h.tokens.assign(prefix.begin() + 1, prefix.end());
      h.tokens.push_back(eos);
      h.score = score + (row[eos] - lse);
      h.normalized_score = h.score / static_cast<double>(h.tokens.size());
      if (!have_best || better(h, best)) {
        best = h;
        have_best = true;
      }
    }
    // Or continue with any non-eos token.
    for (int v = 0; v < vocab; ++v) {
      if (v == eos) continue;
      prefix.push_back(v);
      walk(score + (row[v] - lse));
      prefix.pop_back();
    }
  };
  walk(0.0);
  return best;
}

}  // namespace duotrain::oracle

#endif  // DUOTRAIN_TESTS_ORACLES_H_
