// model/config.cc

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

#include "duotrain/model/config.h"

#include <stdexcept>

namespace duotrain::nn {

std::string ToString(ShareMode mode) {
  return mode == ShareMode::kTieTop6 ? "tie_top6" : "none";
}

ShareMode ShareModeFromString(const std::string& s) {
  if (s == "none") return ShareMode::kNone;
  if (s == "tie_top6") return ShareMode::kTieTop6;
  throw std::invalid_argument("unknown share_mode '" + s +
                              "' (expected none|tie_top6)");
}

ModelConfig ModelConfig::Preset(const std::string& size, int phoneme_vocab,
                                int subword_vocab, ShareMode share) {
  ModelConfig cfg;
  if (size == "S") {
    cfg.embed_dim = 256;
    cfg.ffn_dim = 2048;
    cfg.heads = 4;
  } else if (size == "M") {
    cfg.embed_dim = 512;
    cfg.ffn_dim = 2048;
    cfg.heads = 8;
  } else if (size == "L") {
    cfg.embed_dim = 768;
    cfg.ffn_dim = 3072;
    cfg.heads = 12;
  } else {
    throw std::invalid_argument("unknown size preset '" + size + "'");
  }
  cfg.size_preset = size;
  cfg.phoneme_vocab_size = phoneme_vocab;
  cfg.subword_vocab_size = subword_vocab;
  cfg.share_mode = share;
  cfg.Validate();
  return cfg;
}

void ModelConfig::Validate() const {
  if (embed_dim <= 0 || ffn_dim <= 0 || speech_layers <= 0 ||
      text_layers <= 0 || decoder_layers <= 0 || heads <= 0) {
    throw std::invalid_argument("ModelConfig: dimensions must be positive");
  }
  if (embed_dim % heads != 0) {
    throw std::invalid_argument("ModelConfig: embed_dim " +
                                std::to_string(embed_dim) +
                                " not divisible by heads " +
                                std::to_string(heads));
  }
  if (share_mode == ShareMode::kTieTop6 && text_layers > speech_layers) {
    throw std::invalid_argument(
        "ModelConfig: tie_top6 requires text_layers <= speech_layers");
  }
  if (phoneme_vocab_size < 4 || subword_vocab_size < 4) {
    throw std::invalid_argument("ModelConfig: vocabulary sizes must cover the specials");
  }
  if (dropout < 0.0f || dropout >= 1.0f || label_smoothing < 0.0f ||
      label_smoothing >= 1.0f) {
    throw std::invalid_argument("ModelConfig: dropout/label_smoothing out of range");
  }
  if (conv_channels_in <= 0 || max_target_len <= 0) {
    throw std::invalid_argument("ModelConfig: bad feature dim or target cap");
  }
}

nlohmann::json ModelConfig::ToJson() const {
  return nlohmann::json{{"embed_dim", embed_dim},
                        {"ffn_dim", ffn_dim},
                        {"speech_layers", speech_layers},
                        {"text_layers", text_layers},
                        {"decoder_layers", decoder_layers},
                        {"heads", heads},
                        {"dropout", dropout},
                        {"label_smoothing", label_smoothing},
                        {"share_mode", ToString(share_mode)},
                        {"phoneme_vocab_size", phoneme_vocab_size},
                        {"subword_vocab_size", subword_vocab_size},
                        {"size_preset", size_preset},
                        {"conv_channels_in", conv_channels_in},
                        {"max_target_len", max_target_len}};
}

ModelConfig ModelConfig::FromJson(const nlohmann::json& j) {
  ModelConfig cfg;
  cfg.embed_dim = j.at("embed_dim").get<int>();
  cfg.ffn_dim = j.at("ffn_dim").get<int>();
  cfg.speech_layers = j.at("speech_layers").get<int>();
  cfg.text_layers = j.at("text_layers").get<int>();
  cfg.decoder_layers = j.at("decoder_layers").get<int>();
  cfg.heads = j.at("heads").get<int>();
  cfg.dropout = j.at("dropout").get<float>();
  cfg.label_smoothing = j.at("label_smoothing").get<float>();
  cfg.share_mode = ShareModeFromString(j.at("share_mode").get<std::string>());
  cfg.phoneme_vocab_size = j.at("phoneme_vocab_size").get<int>();
  cfg.subword_vocab_size = j.at("subword_vocab_size").get<int>();
  cfg.size_preset = j.value("size_preset", "");
  cfg.conv_channels_in = j.value("conv_channels_in", 80);
  cfg.max_target_len = j.value("max_target_len", 1024);
  cfg.Validate();
  return cfg;
}

}  // namespace duotrain::nn
