// trainer/data.cc

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

#include "duotrain/trainer/data.h"

#include <filesystem>
#include <stdexcept>

#include "duotrain/audiofeat/featfile.h"
#include "duotrain/audiofeat/logmel.h"
#include "duotrain/audiofeat/wav.h"
#include "duotrain/common/io.h"

namespace duotrain::train {

namespace {
constexpr char kHeader[] = "id\taudio\tn_frames\ttranscript\ttranslation";

bool EndsWith(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}
}  // namespace

std::vector<ManifestEntry> ReadManifest(const std::string& path) {
  const auto lines = ReadLines(path);
  if (lines.empty() || SplitTabs(lines[0]).size() != 5) {
    throw std::runtime_error("manifest " + path + ": missing 5-column header");
  }
  std::vector<ManifestEntry> entries;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    auto cols = SplitTabs(lines[i]);
    if (cols.size() != 5) {
      throw std::runtime_error("manifest " + path + " line " +
                               std::to_string(i + 1) + ": expected 5 columns");
    }
    ManifestEntry e;
    e.id = cols[0];
    e.audio = cols[1];
    if (!e.audio.empty() && e.audio[0] != '/') {
      const auto base = std::filesystem::path(path).parent_path();
      e.audio = (base.empty() ? std::filesystem::path(".") : base) / e.audio;
    }
    e.n_frames = cols[2].empty() ? 0 : std::stoll(cols[2]);
    e.transcript = cols[3];
    e.translation = cols[4];
    entries.push_back(std::move(e));
  }
  return entries;
}

void WriteManifest(const std::string& path,
                   const std::vector<ManifestEntry>& entries) {
  std::string out = kHeader;
  out.push_back('\n');
  for (const auto& e : entries) {
    out += e.id;
    out.push_back('\t');
    out += e.audio;
    out.push_back('\t');
    out += std::to_string(e.n_frames);
    out.push_back('\t');
    out += e.transcript;
    out.push_back('\t');
    out += e.translation;
    out.push_back('\n');
  }
  WriteStringToFile(path, out);
}

audio::FeatureMatrix LoadUtteranceFeatures(const ManifestEntry& entry,
                                           const audio::LogMelConfig& logmel) {
  if (EndsWith(entry.audio, ".feat")) {
    return audio::ReadFeatures(entry.audio);
  }
  return audio::LogMel(audio::ReadWav(entry.audio), logmel);
}

std::vector<Utterance> BuildSpeechDataset(
    const std::vector<ManifestEntry>& manifest,
    const std::optional<audio::CmvnStats>& cmvn,
    const text::SubwordVocab& subwords, bool use_translation) {
  std::vector<Utterance> utts;
  utts.reserve(manifest.size());
  for (const auto& entry : manifest) {
    const std::string& target_text =
        use_translation ? entry.translation : entry.transcript;
    if (target_text.empty()) {
      throw std::runtime_error("utterance " + entry.id + ": empty " +
                               (use_translation ? "translation" : "transcript"));
    }
    Utterance u;
    u.id = entry.id;
    u.features = LoadUtteranceFeatures(entry);
    if (cmvn) u.features = audio::ApplyCmvn(u.features, *cmvn);
    u.target = text::EncodeSubwords(target_text, subwords);
    u.target.push_back(text::SubwordVocab::kEos);
    utts.push_back(std::move(u));
  }
  return utts;
}

std::vector<TextExample> BuildTextDataset(
    const std::vector<std::string>& corpus_lines, const text::Lexicon& lexicon,
    const text::PhonemeVocab& text_vocab, const text::SubwordVocab& subwords,
    bool parallel, bool character_input) {
  std::vector<TextExample> examples;
  examples.reserve(corpus_lines.size());
  for (const auto& line : corpus_lines) {
    if (line.empty()) continue;
    std::string source_text = line, target_text = line;
    if (parallel) {
      auto cols = SplitTabs(line);
      if (cols.size() != 2 || cols[0].empty() || cols[1].empty()) {
        throw std::runtime_error("parallel corpus line is not 'source<TAB>target': " +
                                 line);
      }
      source_text = cols[0];
      target_text = cols[1];
    }
    TextExample ex;
    ex.source = character_input
                    ? text::CharTokenize(source_text, text_vocab).ids
                    : text::Phonemize(source_text, lexicon, text_vocab).ids;
    ex.source.push_back(text::PhonemeVocab::kEos);
    ex.target = text::EncodeSubwords(target_text, subwords);
    ex.target.push_back(text::SubwordVocab::kEos);
    examples.push_back(std::move(ex));
  }
  if (examples.empty()) {
    throw std::runtime_error("text corpus is empty");
  }
  return examples;
}

}  // namespace duotrain::train
