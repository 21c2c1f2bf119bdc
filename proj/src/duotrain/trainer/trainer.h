// trainer/trainer.h

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

#ifndef DUOTRAIN_TRAINER_TRAINER_H_
#define DUOTRAIN_TRAINER_TRAINER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "duotrain/audiofeat/specaugment.h"
#include "duotrain/model/params.h"
#include "duotrain/trainer/data.h"

namespace duotrain::train {

enum class PrimaryTask { kAsr, kSt };
enum class TextTask { kNone, kDenoise, kMt, kPassthrough };
enum class TextRepr { kPhoneme, kCharacter };

PrimaryTask PrimaryTaskFromString(const std::string& s);
TextTask TextTaskFromString(const std::string& s);
TextRepr TextReprFromString(const std::string& s);
std::string ToString(PrimaryTask t);
std::string ToString(TextTask t);
std::string ToString(TextRepr t);

// Which pair of objectives a run optimizes, and how the text side is fed.
struct TaskMode {
  PrimaryTask primary_task = PrimaryTask::kAsr;
  TextTask text_task = TextTask::kNone;
  double mask_ratio = 0.2;
  TextRepr text_input_repr = TextRepr::kPhoneme;
};

struct TrainConfig {
  int epochs = 1;
  int64_t speech_batch_frames = 40000;  // padded frames per speech batch
  int64_t text_batch_tokens = 20000;    // padded source tokens per text batch
  float lr = 1e-3f;
  int warmup_steps = 4000;  // linear warmup, 0 disables
  uint64_t seed = 1;
  std::string checkpoint_dir;
  int average_last = 10;
  std::string init_encoder_ckpt;  // optional pretrained speech encoder
  std::string init_decoder_ckpt;  // optional pretrained decoder
  std::string specaugment = "none";  // none|ld|lb, speech batches only
  bool log_to_stderr = false;
};

struct TrainResult {
  std::vector<std::string> checkpoint_paths;  // one per epoch
  std::vector<double> epoch_mean_loss;
  int64_t steps = 0;
  int64_t text_source_tokens = 0;  // pre-noise source tokens seen by text steps
  int64_t text_masked_tokens = 0;  // of which replaced by <NOISE>
};

// Alternating optimization: one Adam step on a speech batch, then one on a
// text batch (when a text task is active), repeating until the speech
// stream finishes the epoch; the text stream cycles. Each step updates only
// the parameters of the components in its own loss. Deterministic given
// (config, seed, data order); divergence aborts with the step number.
TrainResult Train(const TrainConfig& cfg, const TaskMode& mode,
                  nn::ModelParameters& model,
                  const std::vector<Utterance>& speech_data,
                  const std::vector<TextExample>& text_data);

// Loads pretrained components by name: the speech encoder (with its conv
// subsampler) and/or the decoder (with its embedding). Unlisted components
// keep their fresh initialization.
void InitFromPretrained(nn::ModelParameters& model,
                        const std::string& encoder_ckpt,
                        const std::string& decoder_ckpt);

// Pads a set of utterances into a [batch, frames, dim] tensor with true
// lengths; optionally masks each item with the augmentation policy first.
std::pair<num::Tensor, std::vector<int>> PackFeatures(
    const std::vector<Utterance>& utts, const std::vector<size_t>& indices,
    const audio::SpecAugmentPolicy* policy, Rng* rng);

}  // namespace duotrain::train

#endif  // DUOTRAIN_TRAINER_TRAINER_H_
