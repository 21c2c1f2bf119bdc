// trainer/data.h

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

#ifndef DUOTRAIN_TRAINER_DATA_H_
#define DUOTRAIN_TRAINER_DATA_H_

#include <optional>
#include <string>
#include <vector>

#include "duotrain/audiofeat/cmvn.h"
#include "duotrain/audiofeat/features.h"
#include "duotrain/audiofeat/logmel.h"
#include "duotrain/textpipe/lexicon.h"
#include "duotrain/textpipe/phonemize.h"
#include "duotrain/textpipe/subword.h"

namespace duotrain::train {

// One row of the speech manifest TSV:
//   id <TAB> audio <TAB> n_frames <TAB> transcript <TAB> translation
// The audio column may point at a wav file or a cached feature file; the
// translation column is empty for recognition-only data. Relative audio
// paths are resolved against the manifest's directory when reading, so a
// data directory is relocatable byte-for-byte.
struct ManifestEntry {
  std::string id;
  std::string audio;
  int64_t n_frames = 0;
  std::string transcript;
  std::string translation;
};

std::vector<ManifestEntry> ReadManifest(const std::string& path);
void WriteManifest(const std::string& path,
                   const std::vector<ManifestEntry>& entries);

// Loads features for an entry: feature-cache files are read directly, wav
// files go through the log-mel front end.
audio::FeatureMatrix LoadUtteranceFeatures(
    const ManifestEntry& entry, const audio::LogMelConfig& logmel = {});

// Speech-side training example: normalized features plus the subword target
// (<eos>-terminated).
struct Utterance {
  std::string id;
  audio::FeatureMatrix features;
  std::vector<int> target;
};

// use_translation selects the translation column (speech translation mode)
// instead of the transcript.
std::vector<Utterance> BuildSpeechDataset(
    const std::vector<ManifestEntry>& manifest,
    const std::optional<audio::CmvnStats>& cmvn,
    const text::SubwordVocab& subwords, bool use_translation);

// Text-side training example: spoken-form source ids (<eos>-terminated,
// pre-noise) and subword target ids (<eos>-terminated).
struct TextExample {
  std::vector<int> source;
  std::vector<int> target;
};

// Monolingual corpus (one sentence per line): source is the spoken form of
// the line, target its subwords. Parallel corpus (source TAB target):
// source is the spoken form of the source side, target the subwords of the
// target side. text_vocab is either the phoneme vocabulary (with lexicon)
// or a character vocabulary (lexicon unused).
std::vector<TextExample> BuildTextDataset(
    const std::vector<std::string>& corpus_lines, const text::Lexicon& lexicon,
    const text::PhonemeVocab& text_vocab, const text::SubwordVocab& subwords,
    bool parallel, bool character_input);

}  // namespace duotrain::train

#endif  // DUOTRAIN_TRAINER_DATA_H_
