// evaldecode/bleu.h

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

#ifndef DUOTRAIN_EVALDECODE_BLEU_H_
#define DUOTRAIN_EVALDECODE_BLEU_H_

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace duotrain::eval {

struct BleuBreakdown {
  double bleu = 0.0;  // 0..100
  std::array<double, 4> precisions{};  // percent, per n-gram order
  double brevity_penalty = 1.0;
  int64_t hypothesis_length = 0;
  int64_t reference_length = 0;
};

// Case-sensitive corpus BLEU-4 with the international punctuation-splitting
// tokenization and exponential smoothing for zero n-gram counts (each empty
// order halves again: p_n = 100 / (2^k * total_n)).
BleuBreakdown CorpusBleuDetail(const std::vector<std::string>& references,
                               const std::vector<std::string>& hypotheses);

double CorpusBleu(const std::vector<std::string>& references,
                  const std::vector<std::string>& hypotheses);

// Punctuation-splitting tokenizer used by the scorer; exposed for tests.
std::vector<std::string> BleuTokenize(const std::string& text);

}  // namespace duotrain::eval

#endif  // DUOTRAIN_EVALDECODE_BLEU_H_
