// synth/synth.h

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

#ifndef DUOTRAIN_SYNTH_SYNTH_H_
#define DUOTRAIN_SYNTH_SYNTH_H_

#include <cstdint>
#include <string>
#include <vector>

namespace duotrain::synth {

// Deterministic toy corpus: a small lexicon of pronounceable words (some
// with irregular spellings), sentences over it, and pseudo-speech features
// where each phoneme renders as 4 frames of its fixed 80-d template plus
// seeded Gaussian noise. A slice of the vocabulary can be held out of the
// paired training data while remaining in the text-only corpus and the test
// set, for knowledge-transfer experiments.
struct SynthConfig {
  uint64_t seed = 1;
  int lexicon_words = 30;      // words usable in paired training data
  int heldout_words = 0;       // extra words absent from paired training
  int train_utterances = 200;
  int test_utterances = 0;
  int text_sentences = 0;      // text-only corpus lines (use full vocabulary)
  int min_sentence_words = 3;
  int max_sentence_words = 8;
  double noise_sigma = 0.1;
  std::string out_dir;
};

struct SynthOutput {
  std::string lexicon_path;
  std::string train_manifest;
  std::string test_manifest;   // empty when test_utterances == 0
  std::string text_corpus;     // empty when text_sentences == 0
  std::string heldout_list;    // empty when heldout_words == 0
};

SynthOutput Generate(const SynthConfig& config);

}  // namespace duotrain::synth

#endif  // DUOTRAIN_SYNTH_SYNTH_H_
