// evaldecode/bleu.cc

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

#include "duotrain/evaldecode/bleu.h"

#include <cctype>
#include <cmath>
#include <map>
#include <stdexcept>

#include "duotrain/common/io.h"

namespace duotrain::eval {

namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

// Symbols padded with spaces unconditionally. Periods, commas and dashes get
// contextual treatment below; apostrophes stay attached.
bool IsPadChar(char c) {
  return (c >= '{' && c <= '~') || (c >= '[' && c <= '`') ||
         (c >= ' ' && c <= '&') || (c >= '(' && c <= '+') ||
         (c >= ':' && c <= '@') || c == '/';
}

}  // namespace

std::vector<std::string> BleuTokenize(const std::string& text) {
  std::string padded;
  padded.reserve(text.size() * 2);
  const size_t n = text.size();
  for (size_t i = 0; i < n; ++i) {
    const char c = text[i];
    const char prev = i > 0 ? text[i - 1] : ' ';
    const char next = i + 1 < n ? text[i + 1] : ' ';
    if (c == '.' || c == ',') {
      // Keep decimal-style "3.5" together; split everything else.
      if (IsDigit(prev) && IsDigit(next)) {
        padded.push_back(c);
      } else {
        padded.push_back(' ');
        padded.push_back(c);
        padded.push_back(' ');
      }
    } else if (c == '-' && IsDigit(prev)) {
      padded.push_back(' ');
      padded.push_back(c);
      padded.push_back(' ');
    } else if (IsPadChar(c)) {
      padded.push_back(' ');
      padded.push_back(c);
      padded.push_back(' ');
    } else {
      padded.push_back(c);
    }
  }
  return SplitWhitespace(padded);
}

BleuBreakdown CorpusBleuDetail(const std::vector<std::string>& references,
                               const std::vector<std::string>& hypotheses) {
  if (references.size() != hypotheses.size()) {
    throw std::invalid_argument("CorpusBleu: reference/hypothesis count mismatch");
  }
  if (references.empty()) throw std::invalid_argument("CorpusBleu: empty corpus");

  std::array<int64_t, 4> matched{};
  std::array<int64_t, 4> total{};
  BleuBreakdown out;

  for (size_t s = 0; s < references.size(); ++s) {
    const auto ref = BleuTokenize(references[s]);
    const auto hyp = BleuTokenize(hypotheses[s]);
    out.reference_length += static_cast<int64_t>(ref.size());
    out.hypothesis_length += static_cast<int64_t>(hyp.size());
    for (int order = 1; order <= 4; ++order) {
      std::map<std::vector<std::string>, int64_t> ref_counts;
      for (size_t i = 0; i + order <= ref.size(); ++i) {
        ++ref_counts[{ref.begin() + i, ref.begin() + i + order}];
      }
      std::map<std::vector<std::string>, int64_t> hyp_counts;
      for (size_t i = 0; i + order <= hyp.size(); ++i) {
        ++hyp_counts[{hyp.begin() + i, hyp.begin() + i + order}];
      }
      for (const auto& [gram, count] : hyp_counts) {
        total[order - 1] += count;
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end()) {
          matched[order - 1] += std::min(count, it->second);
        }
      }
    }
  }

  // Effective order shrinks when the corpus has no n-grams of high orders.
  int effective_order = 0;
  for (int k = 0; k < 4; ++k) {
    if (total[k] > 0) effective_order = k + 1;
  }
  if (effective_order == 0 || out.hypothesis_length == 0) {
    out.bleu = 0.0;
    out.brevity_penalty = 0.0;
    return out;
  }

  double smooth = 1.0;
  double log_sum = 0.0;
  for (int k = 0; k < effective_order; ++k) {
    double precision;
    if (matched[k] == 0) {
      smooth *= 2.0;
      precision = 100.0 / (smooth * static_cast<double>(total[k]));
    } else {
      precision = 100.0 * static_cast<double>(matched[k]) /
                  static_cast<double>(total[k]);
    }
    out.precisions[static_cast<size_t>(k)] = precision;
    log_sum += std::log(precision);
  }

  out.brevity_penalty =
      out.hypothesis_length >= out.reference_length
          ? 1.0
          : std::exp(1.0 - static_cast<double>(out.reference_length) /
                               static_cast<double>(out.hypothesis_length));
  out.bleu = out.brevity_penalty *
             std::exp(log_sum / static_cast<double>(effective_order));
  return out;
}

double CorpusBleu(const std::vector<std::string>& references,
                  const std::vector<std::string>& hypotheses) {
  return CorpusBleuDetail(references, hypotheses).bleu;
}

}  // namespace duotrain::eval
