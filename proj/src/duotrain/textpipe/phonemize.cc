// textpipe/phonemize.cc

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

#include "duotrain/textpipe/phonemize.h"

#include <cctype>
#include <set>
#include <stdexcept>

#include "duotrain/common/io.h"

namespace duotrain::text {

namespace {

const std::vector<std::string>& Specials() {
  static const std::vector<std::string> kSpecials = {"<pad>", "<unk>", "<eos>",
                                                     "<NOISE>"};
  return kSpecials;
}

PhonemeVocab FromTokenSet(const std::set<std::string>& sorted_tokens) {
  PhonemeVocab vocab;
  vocab.tokens = Specials();
  vocab.tokens.insert(vocab.tokens.end(), sorted_tokens.begin(),
                      sorted_tokens.end());
  for (size_t i = 0; i < vocab.tokens.size(); ++i) {
    vocab.index[vocab.tokens[i]] = static_cast<int>(i);
  }
  return vocab;
}

// Spoken names of the letters, used for the out-of-lexicon spelling
// fallback when the lexicon itself has no entry for the letter.
const std::map<char, Pronunciation>& LetterNames() {
  static const std::map<char, Pronunciation> kLetters = {
      {'A', {"EY1"}},
      {'B', {"B", "IY1"}},
      {'C', {"S", "IY1"}},
      {'D', {"D", "IY1"}},
      {'E', {"IY1"}},
      {'F', {"EH1", "F"}},
      {'G', {"JH", "IY1"}},
      {'H', {"EY1", "CH"}},
      {'I', {"AY1"}},
      {'J', {"JH", "EY1"}},
      {'K', {"K", "EY1"}},
      {'L', {"EH1", "L"}},
      {'M', {"EH1", "M"}},
      {'N', {"EH1", "N"}},
      {'O', {"OW1"}},
      {'P', {"P", "IY1"}},
      {'Q', {"K", "Y", "UW1"}},
      {'R', {"AA1", "R"}},
      {'S', {"EH1", "S"}},
      {'T', {"T", "IY1"}},
      {'U', {"Y", "UW1"}},
      {'V', {"V", "IY1"}},
      {'W', {"D", "AH1", "B", "AH0", "L", "Y", "UW0"}},
      {'X', {"EH1", "K", "S"}},
      {'Y', {"W", "AY1"}},
      {'Z', {"Z", "IY1"}},
  };
  return kLetters;
}

// Uppercase; strip everything except letters, digits and apostrophes.
std::string NormalizeWord(const std::string& word) {
  std::string out;
  for (char c : word) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || c == '\'') {
      out.push_back(static_cast<char>(std::toupper(u)));
    }
  }
  return out;
}

// Appends a word's phonemes with the first one "_"-marked (falling back to
// the unmarked form when the vocabulary was built without marking).
void EmitWord(const Pronunciation& pron, const PhonemeVocab& vocab,
              std::vector<int>* ids) {
  for (size_t i = 0; i < pron.size(); ++i) {
    if (i == 0 && vocab.Contains("_" + pron[i])) {
      ids->push_back(vocab.index.at("_" + pron[i]));
    } else {
      ids->push_back(vocab.IdOrUnk(pron[i]));
    }
  }
}

}  // namespace

int PhonemeVocab::IdOrUnk(const std::string& token) const {
  auto it = index.find(token);
  return it == index.end() ? kUnk : it->second;
}

const std::string& PhonemeVocab::Token(int id) const {
  if (id < 0 || id >= size()) throw std::out_of_range("PhonemeVocab: bad id");
  return tokens[static_cast<size_t>(id)];
}

PhonemeVocab BuildPhonemeVocab(const Lexicon& lexicon, bool marking) {
  std::set<std::string> toks;
  for (const auto& [word, prons] : lexicon.entries) {
    for (const auto& pron : prons) {
      for (size_t i = 0; i < pron.size(); ++i) {
        toks.insert(pron[i]);
        if (marking && i == 0) toks.insert("_" + pron[i]);
      }
    }
  }
  return FromTokenSet(toks);
}

PhonemeVocab BuildCharVocab(const std::vector<std::string>& corpus_lines,
                            bool marking) {
  std::set<std::string> toks;
  for (const auto& line : corpus_lines) {
    for (const auto& word : SplitWhitespace(line)) {
      std::string norm = NormalizeWord(word);
      for (size_t i = 0; i < norm.size(); ++i) {
        toks.insert(std::string(1, norm[i]));
        if (marking && i == 0) toks.insert("_" + std::string(1, norm[i]));
      }
    }
  }
  return FromTokenSet(toks);
}

PhonemizeResult Phonemize(const std::string& sentence, const Lexicon& lexicon,
                          const PhonemeVocab& vocab) {
  auto words = SplitWhitespace(sentence);
  if (words.empty()) throw std::invalid_argument("Phonemize: empty sentence");
  PhonemizeResult res;
  int mapped_words = 0;
  for (const auto& raw : words) {
    std::string word = NormalizeWord(raw);
    if (word.empty()) continue;
    if (const auto* prons = lexicon.Find(word)) {
      EmitWord(prons->front(), vocab, &res.ids);
      ++mapped_words;
      continue;
    }
    // Letter-spelling fallback; each letter behaves as a spoken word.
    bool any_letter = false;
    for (char c : word) {
      if (!std::isalpha(static_cast<unsigned char>(c))) continue;
      const std::string letter(1, c);
      if (const auto* prons = lexicon.Find(letter)) {
        EmitWord(prons->front(), vocab, &res.ids);
      } else {
        EmitWord(LetterNames().at(c), vocab, &res.ids);
      }
      any_letter = true;
    }
    if (any_letter) {
      ++res.oov_words;
      ++mapped_words;
    }
  }
  if (mapped_words == 0) {
    throw std::runtime_error("Phonemize: no word in '" + sentence +
                             "' could be mapped");
  }
  return res;
}

PhonemizeResult CharTokenize(const std::string& sentence,
                             const PhonemeVocab& vocab) {
  auto words = SplitWhitespace(sentence);
  if (words.empty()) throw std::invalid_argument("CharTokenize: empty sentence");
  PhonemizeResult res;
  int mapped_words = 0;
  for (const auto& raw : words) {
    std::string word = NormalizeWord(raw);
    if (word.empty()) continue;
    for (size_t i = 0; i < word.size(); ++i) {
      const std::string c(1, word[i]);
      if (i == 0 && vocab.Contains("_" + c)) {
        res.ids.push_back(vocab.index.at("_" + c));
      } else {
        res.ids.push_back(vocab.IdOrUnk(c));
      }
    }
    ++mapped_words;
  }
  if (mapped_words == 0) {
    throw std::runtime_error("CharTokenize: no word in '" + sentence +
                             "' could be mapped");
  }
  return res;
}

std::string RenderTokens(const std::vector<int>& ids, const PhonemeVocab& vocab) {
  std::string out;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += vocab.Token(ids[i]);
  }
  return out;
}

void SaveVocab(const PhonemeVocab& vocab, const std::string& path) {
  std::string out;
  for (const auto& t : vocab.tokens) {
    out += t;
    out.push_back('\n');
  }
  WriteStringToFile(path, out);
}

PhonemeVocab LoadVocab(const std::string& path) {
  PhonemeVocab vocab;
  vocab.tokens = ReadLines(path);
  while (!vocab.tokens.empty() && vocab.tokens.back().empty()) {
    vocab.tokens.pop_back();
  }
  if (vocab.tokens.size() < Specials().size()) {
    throw std::runtime_error("vocab file too small: " + path);
  }
  for (size_t i = 0; i < Specials().size(); ++i) {
    if (vocab.tokens[i] != Specials()[i]) {
      throw std::runtime_error("vocab file " + path +
                               ": specials must lead, found '" +
                               vocab.tokens[i] + "'");
    }
  }
  for (size_t i = 0; i < vocab.tokens.size(); ++i) {
    vocab.index[vocab.tokens[i]] = static_cast<int>(i);
  }
  return vocab;
}

}  // namespace duotrain::text
