// evaldecode/wer.cc

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

#include "duotrain/evaldecode/wer.h"

#include <cctype>
#include <stdexcept>

#include "duotrain/common/io.h"

namespace duotrain::eval {

WerBreakdown Wer(const std::string& reference, const std::string& hypothesis) {
  const auto ref = SplitWhitespace(ToLowerAscii(reference));
  const auto hyp = SplitWhitespace(ToLowerAscii(hypothesis));
  if (ref.empty()) throw std::invalid_argument("Wer: empty reference");

  const size_t nr = ref.size(), nh = hyp.size();
  // cost[i][j]: edits aligning ref[0..i) with hyp[0..j).
  std::vector<std::vector<int>> cost(nr + 1, std::vector<int>(nh + 1, 0));
  for (size_t i = 1; i <= nr; ++i) cost[i][0] = static_cast<int>(i);
  for (size_t j = 1; j <= nh; ++j) cost[0][j] = static_cast<int>(j);
  for (size_t i = 1; i <= nr; ++i) {
    for (size_t j = 1; j <= nh; ++j) {
      const int sub = cost[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      const int del = cost[i - 1][j] + 1;
      const int ins = cost[i][j - 1] + 1;
      cost[i][j] = std::min({sub, del, ins});
    }
  }

  // Backtrace, preferring the diagonal (match/substitution) on ties.
  WerBreakdown out;
  out.reference_words = static_cast<int64_t>(nr);
  size_t i = nr, j = nh;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const int diag = cost[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      if (diag == cost[i][j]) {
        if (ref[i - 1] != hyp[j - 1]) ++out.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && cost[i - 1][j] + 1 == cost[i][j]) {
      ++out.deletions;
      --i;
    } else {
      ++out.insertions;
      --j;
    }
  }
  return out;
}

WerBreakdown CorpusWer(const std::vector<std::string>& references,
                       const std::vector<std::string>& hypotheses) {
  if (references.size() != hypotheses.size()) {
    throw std::invalid_argument("CorpusWer: reference/hypothesis count mismatch");
  }
  if (references.empty()) throw std::invalid_argument("CorpusWer: empty corpus");
  WerBreakdown total;
  for (size_t i = 0; i < references.size(); ++i) {
    total += Wer(references[i], hypotheses[i]);
  }
  return total;
}

std::string NormalizeForWer(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    const unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || c == '\'' || std::isspace(u)) {
      out.push_back(static_cast<char>(std::tolower(u)));
    }
  }
  return out;
}

}  // namespace duotrain::eval
