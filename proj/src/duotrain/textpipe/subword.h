// textpipe/subword.h

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

#ifndef DUOTRAIN_TEXTPIPE_SUBWORD_H_
#define DUOTRAIN_TEXTPIPE_SUBWORD_H_

#include <string>
#include <unordered_map>
#include <vector>

namespace duotrain::text {

// Byte-pair subword model learned by greedy pair merging over
// word-boundary-marked character sequences: a word contributes the symbols
// ["_c0", "c1", ..., "ck"], so every token spelling a word start carries a
// leading "_". Full character coverage: every corpus character (and its
// word-initial form) is a base token, so covered text round-trips exactly.
//
// Raw '_' characters in input text are treated as whitespace; the marker
// would otherwise be ambiguous.
struct SubwordVocab {
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kBos = 2;
  static constexpr int kEos = 3;

  std::vector<std::string> tokens;  // specials, base symbols, merge products
  std::unordered_map<std::string, int> index;
  std::vector<std::pair<std::string, std::string>> merges;  // in merge order

  int size() const { return static_cast<int>(tokens.size()); }
  const std::string& Token(int id) const;
};

// Greedy pair-merge learning until the vocabulary reaches target_size (or no
// pair is left to merge). Ties break on (count, pair) so learning is
// deterministic. Throws when target_size cannot even hold the base symbols,
// naming the minimum.
SubwordVocab LearnSubwords(const std::vector<std::string>& corpus_lines,
                           int target_size);

// Applies the learned merges to each word; characters outside the base
// inventory surface as <unk> ids.
std::vector<int> EncodeSubwords(const std::string& sentence,
                                const SubwordVocab& vocab);

// Inverse of EncodeSubwords on covered text. Specials are dropped except
// <unk>, which renders literally.
std::string DecodeSubwords(const std::vector<int>& ids,
                           const SubwordVocab& vocab);

void SaveSubwords(const SubwordVocab& vocab, const std::string& vocab_path,
                  const std::string& merges_path);
SubwordVocab LoadSubwords(const std::string& vocab_path,
                          const std::string& merges_path);

}  // namespace duotrain::text

#endif  // DUOTRAIN_TEXTPIPE_SUBWORD_H_
