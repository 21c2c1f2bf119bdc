// model/config.h

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

#ifndef DUOTRAIN_MODEL_CONFIG_H_
#define DUOTRAIN_MODEL_CONFIG_H_

#include <string>

#include <json.hpp>

namespace duotrain::nn {

// tie_top6 aliases the text-encoder layers onto the same number of topmost
// speech-encoder layers (layers 7-12 in the default 12/6 stack), so text
// batches update them too.
enum class ShareMode { kNone, kTieTop6 };

std::string ToString(ShareMode mode);
ShareMode ShareModeFromString(const std::string& s);

struct ModelConfig {
  int embed_dim = 512;
  int ffn_dim = 2048;
  int speech_layers = 12;
  int text_layers = 6;
  int decoder_layers = 6;
  int heads = 8;
  float dropout = 0.1f;
  float label_smoothing = 0.1f;
  ShareMode share_mode = ShareMode::kNone;
  int phoneme_vocab_size = 0;
  int subword_vocab_size = 0;
  std::string size_preset;  // "S", "M", "L", or empty for custom
  int conv_channels_in = 80;
  int max_target_len = 1024;

  // S: 256/2048 (4 heads), M: 512/2048 (8), L: 768/3072 (12).
  static ModelConfig Preset(const std::string& size, int phoneme_vocab,
                            int subword_vocab, ShareMode share);

  void Validate() const;

  nlohmann::json ToJson() const;
  static ModelConfig FromJson(const nlohmann::json& j);

  bool operator==(const ModelConfig&) const = default;
};

}  // namespace duotrain::nn

#endif  // DUOTRAIN_MODEL_CONFIG_H_
