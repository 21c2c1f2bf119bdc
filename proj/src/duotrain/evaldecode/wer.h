// evaldecode/wer.h

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

#ifndef DUOTRAIN_EVALDECODE_WER_H_
#define DUOTRAIN_EVALDECODE_WER_H_

#include <cstdint>
#include <string>
#include <vector>

namespace duotrain::eval {

struct WerBreakdown {
  int64_t substitutions = 0;
  int64_t deletions = 0;
  int64_t insertions = 0;
  int64_t reference_words = 0;

  double wer() const {
    return static_cast<double>(substitutions + deletions + insertions) /
           static_cast<double>(reference_words);
  }

  WerBreakdown& operator+=(const WerBreakdown& other) {
    substitutions += other.substitutions;
    deletions += other.deletions;
    insertions += other.insertions;
    reference_words += other.reference_words;
    return *this;
  }
};

// Word-level Levenshtein alignment with unit costs, case-insensitive over
// whitespace tokens. Among equal-cost alignments, substitutions are
// preferred to insertion+deletion pairs. Throws on an empty reference.
WerBreakdown Wer(const std::string& reference, const std::string& hypothesis);

// Sums the alignment counts over a corpus of line pairs.
WerBreakdown CorpusWer(const std::vector<std::string>& references,
                       const std::vector<std::string>& hypotheses);

// Scoring-side text normalization (configuration, not contract): lowercase,
// strip punctuation except apostrophes.
std::string NormalizeForWer(const std::string& text);

}  // namespace duotrain::eval

#endif  // DUOTRAIN_EVALDECODE_WER_H_
