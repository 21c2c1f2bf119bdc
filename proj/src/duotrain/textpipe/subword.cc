// textpipe/subword.cc

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

#include "duotrain/textpipe/subword.h"

#include <map>
#include <set>
#include <stdexcept>

#include "duotrain/common/io.h"

namespace duotrain::text {

namespace {

const std::vector<std::string>& Specials() {
  static const std::vector<std::string> kSpecials = {"<pad>", "<unk>", "<bos>",
                                                     "<eos>"};
  return kSpecials;
}

std::string SanitizeUnderscores(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c == '_') c = ' ';
  }
  return out;
}

std::vector<std::string> WordToSymbols(const std::string& word) {
  std::vector<std::string> symbols;
  symbols.reserve(word.size());
  for (size_t i = 0; i < word.size(); ++i) {
    std::string s(1, word[i]);
    symbols.push_back(i == 0 ? "_" + s : s);
  }
  return symbols;
}

// Left-to-right, non-overlapping replacement of (left, right) by left+right.
void MergeInPlace(std::vector<std::string>& symbols, const std::string& left,
                  const std::string& right) {
  size_t w = 0;
  for (size_t r = 0; r < symbols.size();) {
    if (r + 1 < symbols.size() && symbols[r] == left && symbols[r + 1] == right) {
      symbols[w++] = left + right;
      r += 2;
    } else {
      if (w != r) symbols[w] = std::move(symbols[r]);
      ++w;
      r += 1;
    }
  }
  symbols.resize(w);
}

std::vector<std::string> SegmentWord(const std::string& word,
                                     const SubwordVocab& vocab) {
  std::vector<std::string> symbols = WordToSymbols(word);
  for (const auto& [left, right] : vocab.merges) {
    MergeInPlace(symbols, left, right);
  }
  return symbols;
}

}  // namespace

const std::string& SubwordVocab::Token(int id) const {
  if (id < 0 || id >= size()) throw std::out_of_range("SubwordVocab: bad id");
  return tokens[static_cast<size_t>(id)];
}

SubwordVocab LearnSubwords(const std::vector<std::string>& corpus_lines,
                           int target_size) {
  // Word frequencies; std::map keeps every later scan deterministic.
  std::map<std::string, int64_t> word_freq;
  for (const auto& line : corpus_lines) {
    for (const auto& w : SplitWhitespace(SanitizeUnderscores(line))) {
      ++word_freq[w];
    }
  }
  if (word_freq.empty()) {
    throw std::invalid_argument("LearnSubwords: empty corpus");
  }

  std::vector<std::pair<std::vector<std::string>, int64_t>> words;
  words.reserve(word_freq.size());
  std::set<std::string> base;
  for (const auto& [w, f] : word_freq) {
    auto symbols = WordToSymbols(w);
    for (const auto& s : symbols) base.insert(s);
    words.emplace_back(std::move(symbols), f);
  }

  const int min_size = static_cast<int>(Specials().size() + base.size());
  if (target_size < min_size) {
    throw std::invalid_argument(
        "LearnSubwords: target_size " + std::to_string(target_size) +
        " below minimum " + std::to_string(min_size) +
        " (specials + base characters)");
  }

  SubwordVocab vocab;
  vocab.tokens = Specials();
  vocab.tokens.insert(vocab.tokens.end(), base.begin(), base.end());

  while (static_cast<int>(vocab.tokens.size()) < target_size) {
    std::map<std::pair<std::string, std::string>, int64_t> pair_counts;
    for (const auto& [symbols, freq] : words) {
      for (size_t i = 0; i + 1 < symbols.size(); ++i) {
        pair_counts[{symbols[i], symbols[i + 1]}] += freq;
      }
    }
    if (pair_counts.empty()) break;  // nothing left to merge
    auto best = pair_counts.begin();
    for (auto it = std::next(pair_counts.begin()); it != pair_counts.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    const auto [left, right] = best->first;
    vocab.merges.emplace_back(left, right);
    vocab.tokens.push_back(left + right);
    for (auto& [symbols, freq] : words) MergeInPlace(symbols, left, right);
  }

  for (size_t i = 0; i < vocab.tokens.size(); ++i) {
    vocab.index[vocab.tokens[i]] = static_cast<int>(i);
  }
  return vocab;
}

std::vector<int> EncodeSubwords(const std::string& sentence,
                                const SubwordVocab& vocab) {
  std::vector<int> ids;
  for (const auto& word : SplitWhitespace(SanitizeUnderscores(sentence))) {
    for (const auto& sym : SegmentWord(word, vocab)) {
      auto it = vocab.index.find(sym);
      ids.push_back(it == vocab.index.end() ? SubwordVocab::kUnk : it->second);
    }
  }
  return ids;
}

std::string DecodeSubwords(const std::vector<int>& ids,
                           const SubwordVocab& vocab) {
  std::string out;
  for (int id : ids) {
    if (id == SubwordVocab::kPad || id == SubwordVocab::kBos ||
        id == SubwordVocab::kEos) {
      continue;
    }
    const std::string& tok = vocab.Token(id);
    if (!tok.empty() && tok[0] == '_') {
      if (!out.empty()) out.push_back(' ');
      out += tok.substr(1);
    } else {
      out += tok;
    }
  }
  return out;
}

void SaveSubwords(const SubwordVocab& vocab, const std::string& vocab_path,
                  const std::string& merges_path) {
  std::string toks;
  for (const auto& t : vocab.tokens) {
    toks += t;
    toks.push_back('\n');
  }
  WriteStringToFile(vocab_path, toks);
  std::string merges;
  for (const auto& [l, r] : vocab.merges) {
    merges += l;
    merges.push_back(' ');
    merges += r;
    merges.push_back('\n');
  }
  WriteStringToFile(merges_path, merges);
}

SubwordVocab LoadSubwords(const std::string& vocab_path,
                          const std::string& merges_path) {
  SubwordVocab vocab;
  vocab.tokens = ReadLines(vocab_path);
  while (!vocab.tokens.empty() && vocab.tokens.back().empty()) {
    vocab.tokens.pop_back();
  }
  if (vocab.tokens.size() < Specials().size()) {
    throw std::runtime_error("subword vocab file too small: " + vocab_path);
  }
  for (size_t i = 0; i < Specials().size(); ++i) {
    if (vocab.tokens[i] != Specials()[i]) {
      throw std::runtime_error("subword vocab " + vocab_path +
                               ": specials must lead");
    }
  }
  for (size_t i = 0; i < vocab.tokens.size(); ++i) {
    vocab.index[vocab.tokens[i]] = static_cast<int>(i);
  }
  for (const auto& line : ReadLines(merges_path)) {
    if (line.empty()) continue;
    size_t sp = line.find(' ');
    if (sp == std::string::npos) {
      throw std::runtime_error("merge file " + merges_path + ": bad line '" +
                               line + "'");
    }
    vocab.merges.emplace_back(line.substr(0, sp), line.substr(sp + 1));
  }
  return vocab;
}

}  // namespace duotrain::text
