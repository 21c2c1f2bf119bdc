// textpipe/lexicon.h

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

#ifndef DUOTRAIN_TEXTPIPE_LEXICON_H_
#define DUOTRAIN_TEXTPIPE_LEXICON_H_

#include <map>
#include <string>
#include <vector>

namespace duotrain::text {

using Pronunciation = std::vector<std::string>;

// Pronunciation dictionary in the classic CMU text format:
//   WORD  PH1 PH2 ...
// with alternates written WORD(2), WORD(3), ... and ;;; comment lines.
// Phoneme tokens are one of the 39 base phonemes with an optional lexical
// stress digit 0/1/2. Immutable after parsing.
struct Lexicon {
  // uppercase word -> pronunciations in file order (first one is canonical)
  std::map<std::string, std::vector<Pronunciation>> entries;

  const std::vector<Pronunciation>* Find(const std::string& upper_word) const {
    auto it = entries.find(upper_word);
    return it == entries.end() ? nullptr : &it->second;
  }
};

// True for BASE or BASE+digit where BASE is one of the 39 phonemes.
bool IsValidPhonemeToken(const std::string& token);

// Throws std::runtime_error naming the offending line on unknown phonemes or
// entries without phonemes.
Lexicon ParseLexicon(const std::string& dictionary_text);
Lexicon ParseLexiconFile(const std::string& path);

// Round-trips through ParseLexicon to the identical entry map.
std::string SerializeLexicon(const Lexicon& lexicon);

}  // namespace duotrain::text

#endif  // DUOTRAIN_TEXTPIPE_LEXICON_H_
