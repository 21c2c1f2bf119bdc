// textpipe/phonemize.h

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

#ifndef DUOTRAIN_TEXTPIPE_PHONEMIZE_H_
#define DUOTRAIN_TEXTPIPE_PHONEMIZE_H_

#include <string>
#include <unordered_map>
#include <vector>

#include "duotrain/textpipe/lexicon.h"

namespace duotrain::text {

// Vocabulary over spoken-form input tokens: stress-marked phonemes, their
// word-initial "_"-prefixed variants, and the four specials. Also used for
// the character-level input ablation (tokens are then characters instead of
// phonemes). Immutable after construction.
struct PhonemeVocab {
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kEos = 2;
  static constexpr int kNoise = 3;

  std::vector<std::string> tokens;
  std::unordered_map<std::string, int> index;

  int size() const { return static_cast<int>(tokens.size()); }
  bool Contains(const std::string& token) const { return index.count(token) > 0; }
  // <unk> for anything unmapped.
  int IdOrUnk(const std::string& token) const;
  const std::string& Token(int id) const;
};

// Specials first, then the sorted union of every stress-suffixed phoneme
// occurring in the lexicon plus, when marking is on, a "_"-prefixed variant
// of every phoneme that occurs word-initially.
PhonemeVocab BuildPhonemeVocab(const Lexicon& lexicon, bool marking = true);

// Character-input counterpart: tokens are the characters of the corpus plus
// "_"-prefixed variants of word-initial characters.
PhonemeVocab BuildCharVocab(const std::vector<std::string>& corpus_lines,
                            bool marking = true);

struct PhonemizeResult {
  std::vector<int> ids;
  int oov_words = 0;  // words resolved by the letter-spelling fallback
};

// Spoken-form conversion: per word, the first pronunciation from the
// lexicon, with the word's first phoneme "_"-marked. Out-of-lexicon words
// are spelled out letter by letter (each letter acting as a spoken word).
// Throws on an empty sentence or when no word can be mapped.
PhonemizeResult Phonemize(const std::string& sentence, const Lexicon& lexicon,
                          const PhonemeVocab& vocab);

// Character-mode tokenization of a sentence under a BuildCharVocab vocab.
PhonemizeResult CharTokenize(const std::string& sentence,
                             const PhonemeVocab& vocab);

std::string RenderTokens(const std::vector<int>& ids, const PhonemeVocab& vocab);

void SaveVocab(const PhonemeVocab& vocab, const std::string& path);
PhonemeVocab LoadVocab(const std::string& path);

}  // namespace duotrain::text

#endif  // DUOTRAIN_TEXTPIPE_PHONEMIZE_H_
