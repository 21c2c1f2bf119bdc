// textpipe/lexicon.cc

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

#include "duotrain/textpipe/lexicon.h"

#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

#include "duotrain/common/io.h"

namespace duotrain::text {

namespace {

const std::set<std::string>& BasePhonemes() {
  static const std::set<std::string> kBase = {
      "AA", "AE", "AH", "AO", "AW", "AY", "B",  "CH", "D",  "DH",
      "EH", "ER", "EY", "F",  "G",  "HH", "IH", "IY", "JH", "K",
      "L",  "M",  "N",  "NG", "OW", "OY", "P",  "R",  "S",  "SH",
      "T",  "TH", "UH", "UW", "V",  "W",  "Y",  "Z",  "ZH"};
  return kBase;
}

// Strips a trailing "(n)" alternate marker; returns the variant index
// (0 for the base form).
std::string StripAlternate(const std::string& word, int* variant) {
  *variant = 0;
  if (word.size() < 3 || word.back() != ')') return word;
  size_t open = word.rfind('(');
  if (open == std::string::npos || open + 2 > word.size()) return word;
  for (size_t i = open + 1; i + 1 < word.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(word[i]))) return word;
  }
  *variant = std::stoi(word.substr(open + 1, word.size() - open - 2));
  return word.substr(0, open);
}

}  // namespace

bool IsValidPhonemeToken(const std::string& token) {
  std::string base = token;
  if (!base.empty() && std::isdigit(static_cast<unsigned char>(base.back()))) {
    char d = base.back();
    if (d != '0' && d != '1' && d != '2') return false;
    base.pop_back();
  }
  return BasePhonemes().count(base) > 0;
}

Lexicon ParseLexicon(const std::string& dictionary_text) {
  Lexicon lex;
  std::istringstream is(dictionary_text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind(";;;", 0) == 0) continue;
    auto fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    int variant = 0;
    std::string word = ToUpperAscii(StripAlternate(fields[0], &variant));
    if (fields.size() < 2) {
      throw std::runtime_error("lexicon line " + std::to_string(line_no) +
                               ": entry '" + word + "' has no phonemes");
    }
    Pronunciation pron(fields.begin() + 1, fields.end());
    for (const auto& ph : pron) {
      if (!IsValidPhonemeToken(ph)) {
        throw std::runtime_error("lexicon line " + std::to_string(line_no) +
                                 ": unknown phoneme token '" + ph + "'");
      }
    }
    lex.entries[word].push_back(std::move(pron));
  }
  return lex;
}

Lexicon ParseLexiconFile(const std::string& path) {
  return ParseLexicon(ReadFileToString(path));
}

std::string SerializeLexicon(const Lexicon& lexicon) {
  std::ostringstream os;
  for (const auto& [word, prons] : lexicon.entries) {
    for (size_t i = 0; i < prons.size(); ++i) {
      os << word;
      if (i > 0) os << '(' << i + 1 << ')';
      for (const auto& ph : prons[i]) os << ' ' << ph;
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace duotrain::text
