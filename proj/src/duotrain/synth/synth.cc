// synth/synth.cc

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

#include "duotrain/synth/synth.h"

#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>

#include "duotrain/audiofeat/featfile.h"
#include "duotrain/audiofeat/features.h"
#include "duotrain/common/io.h"
#include "duotrain/common/rng.h"
#include "duotrain/trainer/data.h"

namespace duotrain::synth {

namespace {

struct Inventory {
  std::vector<std::pair<std::string, std::string>> consonants;  // phoneme, letter
  std::vector<std::pair<std::string, std::string>> vowels;
  std::map<std::string, int> template_index;  // phoneme -> feature slot
};

Inventory MakeInventory() {
  Inventory inv;
  inv.consonants = {{"B", "b"}, {"D", "d"}, {"F", "f"}, {"G", "g"},
                    {"K", "k"}, {"L", "l"}, {"M", "m"}, {"N", "n"},
                    {"P", "p"}, {"S", "s"}, {"T", "t"}, {"Z", "z"}};
  inv.vowels = {{"AA1", "a"}, {"EH1", "e"}, {"IY1", "i"},
                {"OW1", "o"}, {"UW1", "u"}, {"AE1", "y"}};
  int slot = 0;
  for (const auto& [ph, letter] : inv.consonants) inv.template_index[ph] = slot++;
  for (const auto& [ph, letter] : inv.vowels) inv.template_index[ph] = slot++;
  return inv;
}

struct Word {
  std::string spelling;  // lowercase
  std::vector<std::string> phonemes;
};

// CV(C) syllables; spellings start as phoneme letters. Most words spell
// deterministically from their phonemes, a sixth get an irregular twist
// (silent 'e' or a doubled letter), roughly like English.
Word MakeWord(const Inventory& inv, Rng& rng) {
  Word w;
  const int syllables = 1 + static_cast<int>(rng.UniformInt(2));
  for (int s = 0; s < syllables; ++s) {
    const auto& c = inv.consonants[rng.UniformInt(inv.consonants.size())];
    const auto& v = inv.vowels[rng.UniformInt(inv.vowels.size())];
    w.phonemes.push_back(c.first);
    w.spelling += c.second;
    w.phonemes.push_back(v.first);
    w.spelling += v.second;
    if (rng.UniformInt(2) == 0) {
      const auto& coda = inv.consonants[rng.UniformInt(inv.consonants.size())];
      w.phonemes.push_back(coda.first);
      w.spelling += coda.second;
    }
  }
  switch (rng.UniformInt(12)) {
    case 0:
      w.spelling += 'e';  // silent e
      break;
    case 1:
      w.spelling += w.spelling.back();  // doubled final letter
      break;
    default:
      break;
  }
  return w;
}

audio::FeatureMatrix RenderUtterance(const std::vector<const Word*>& words,
                                     const Inventory& inv, double sigma,
                                     Rng& rng) {
  std::vector<int> slots;
  for (const Word* w : words) {
    for (const auto& ph : w->phonemes) slots.push_back(inv.template_index.at(ph));
  }
  audio::FeatureMatrix feat(static_cast<int>(slots.size()) * 4, 80);
  int t = 0;
  for (int slot : slots) {
    const int center = 2 + slot * 4;
    for (int rep = 0; rep < 4; ++rep, ++t) {
      float* row = feat.row(t);
      for (int d = 0; d < 80; ++d) {
        row[d] = static_cast<float>(rng.Gaussian() * sigma);
      }
      row[center - 1] += 1.0f;
      row[center] += 2.0f;
      row[center + 1] += 1.0f;
    }
  }
  return feat;
}

std::string Sentence(const std::vector<const Word*>& words) {
  std::string s;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i > 0) s.push_back(' ');
    s += words[i]->spelling;
  }
  return s;
}

}  // namespace

SynthOutput Generate(const SynthConfig& cfg) {
  if (cfg.lexicon_words < 1 || cfg.heldout_words < 0 ||
      cfg.min_sentence_words < 1 ||
      cfg.max_sentence_words < cfg.min_sentence_words) {
    throw std::invalid_argument("Generate: bad synthetic corpus configuration");
  }
  EnsureDir(cfg.out_dir);
  EnsureDir(cfg.out_dir + "/feats");

  const Inventory inv = MakeInventory();
  Rng rng(cfg.seed);

  // Distinct-spelling word list; the tail `heldout_words` entries never
  // appear in paired training sentences.
  std::vector<Word> vocabulary;
  std::set<std::string> seen;
  while (static_cast<int>(vocabulary.size()) <
         cfg.lexicon_words + cfg.heldout_words) {
    Word w = MakeWord(inv, rng);
    if (seen.insert(w.spelling).second) vocabulary.push_back(std::move(w));
  }

  SynthOutput out;
  {
    std::string lex;
    std::map<std::string, const Word*> sorted;
    for (const auto& w : vocabulary) sorted[ToUpperAscii(w.spelling)] = &w;
    for (const auto& [upper, w] : sorted) {
      lex += upper;
      for (const auto& ph : w->phonemes) {
        lex.push_back(' ');
        lex += ph;
      }
      lex.push_back('\n');
    }
    out.lexicon_path = cfg.out_dir + "/lexicon.txt";
    WriteStringToFile(out.lexicon_path, lex);
  }

  // The toy language has bigram structure: each word allows a fixed handful
  // of successors. Text-only data then carries transferable sequence
  // statistics, the way natural language does.
  const size_t vocab_size = vocabulary.size();
  std::vector<std::vector<size_t>> successors(vocab_size);
  for (size_t w = 0; w < vocab_size; ++w) {
    for (int k = 0; k < 4; ++k) {
      successors[w].push_back(rng.UniformInt(vocab_size));
    }
  }

  auto pick_sentence = [&](bool allow_heldout, bool force_heldout) {
    const size_t limit = allow_heldout
                             ? vocab_size
                             : static_cast<size_t>(cfg.lexicon_words);
    const int len = cfg.min_sentence_words +
                    static_cast<int>(rng.UniformInt(
                        cfg.max_sentence_words - cfg.min_sentence_words + 1));
    std::vector<const Word*> words;
    std::vector<size_t> ids;
    size_t current = rng.UniformInt(limit);
    for (int i = 0; i < len; ++i) {
      words.push_back(&vocabulary[current]);
      ids.push_back(current);
      // Walk the chain, resampling while the successor is disallowed.
      size_t next = successors[current][rng.UniformInt(successors[current].size())];
      while (next >= limit) next = rng.UniformInt(limit);
      current = next;
    }
    if (force_heldout && cfg.heldout_words > 0) {
      const size_t pos = rng.UniformInt(words.size());
      words[pos] = &vocabulary[static_cast<size_t>(cfg.lexicon_words) +
                               rng.UniformInt(cfg.heldout_words)];
    }
    return words;
  };

  auto emit_split = [&](const std::string& split, int count, bool heldout_mix) {
    std::vector<train::ManifestEntry> entries;
    for (int i = 0; i < count; ++i) {
      // Half of a held-out-aware split is guaranteed a held-out word.
      const bool force = heldout_mix && i % 2 == 0;
      const auto words = pick_sentence(heldout_mix, force);
      char id[32];
      std::snprintf(id, sizeof(id), "%s_%04d", split.c_str(), i);
      Rng feat_rng(cfg.seed ^ (0x9e3779b97f4a7c15ull * (i + 1)) ^
                   (split == "test" ? 0x7f4a7c15ull : 0ull));
      const auto feat = RenderUtterance(words, inv, cfg.noise_sigma, feat_rng);
      const std::string rel_path = std::string("feats/") + id + ".feat";
      audio::WriteFeatures(cfg.out_dir + "/" + rel_path, feat);
      train::ManifestEntry e;
      e.id = id;
      e.audio = rel_path;
      e.n_frames = feat.num_frames;
      e.transcript = Sentence(words);
      entries.push_back(std::move(e));
    }
    const std::string path = cfg.out_dir + "/" + split + ".tsv";
    train::WriteManifest(path, entries);
    return path;
  };

  out.train_manifest = emit_split("train", cfg.train_utterances, false);
  if (cfg.test_utterances > 0) {
    out.test_manifest = emit_split("test", cfg.test_utterances, true);
  }

  if (cfg.text_sentences > 0) {
    std::string corpus;
    for (int i = 0; i < cfg.text_sentences; ++i) {
      corpus += Sentence(pick_sentence(true, i % 4 == 0));
      corpus.push_back('\n');
    }
    out.text_corpus = cfg.out_dir + "/text.txt";
    WriteStringToFile(out.text_corpus, corpus);
  }

  if (cfg.heldout_words > 0) {
    std::string held;
    for (int i = 0; i < cfg.heldout_words; ++i) {
      held += vocabulary[static_cast<size_t>(cfg.lexicon_words) + i].spelling;
      held.push_back('\n');
    }
    out.heldout_list = cfg.out_dir + "/heldout_words.txt";
    WriteStringToFile(out.heldout_list, held);
  }
  return out;
}

}  // namespace duotrain::synth
