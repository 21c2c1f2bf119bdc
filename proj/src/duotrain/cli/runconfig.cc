// cli/runconfig.cc

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

#include "duotrain/cli/runconfig.h"

#include "duotrain/common/io.h"

namespace duotrain::cli {

namespace {

void ValidateKeys(const nlohmann::json& schema, const nlohmann::json& user,
                  const std::string& prefix) {
  if (!user.is_object()) {
    throw ConfigError("config: '" + (prefix.empty() ? "<root>" : prefix) +
                      "' must be an object");
  }
  for (const auto& [key, value] : user.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!schema.contains(key)) {
      throw ConfigError("config: unknown key '" + path + "'");
    }
    if (schema.at(key).is_object()) {
      ValidateKeys(schema.at(key), value, path);
    }
  }
}

void Merge(nlohmann::json& base, const nlohmann::json& overlay) {
  for (const auto& [key, value] : overlay.items()) {
    if (value.is_object() && base.contains(key) && base.at(key).is_object()) {
      Merge(base.at(key), value);
    } else {
      base[key] = value;
    }
  }
}

std::vector<std::string> SplitDots(const std::string& path) {
  std::vector<std::string> parts;
  size_t start = 0;
  for (;;) {
    const size_t dot = path.find('.', start);
    if (dot == std::string::npos) {
      parts.push_back(path.substr(start));
      return parts;
    }
    parts.push_back(path.substr(start, dot - start));
    start = dot + 1;
  }
}

}  // namespace

nlohmann::json RunConfig::Schema() {
  return nlohmann::json{
      {"paths",
       {{"lexicon", ""},
        {"corpus", ""},
        {"manifest", ""},
        {"out_dir", ""},
        {"cmvn", ""},
        {"input_vocab", ""},
        {"subword_vocab", ""},
        {"subword_merges", ""},
        {"checkpoint", ""},
        {"checkpoint_dir", ""},
        {"out_checkpoint", ""},
        {"ref", ""},
        {"hyp", ""},
        {"decode_out", ""}}},
      {"model",
       {{"embed_dim", 512},
        {"ffn_dim", 2048},
        {"speech_layers", 12},
        {"text_layers", 6},
        {"decoder_layers", 6},
        {"heads", 8},
        {"dropout", 0.1},
        {"label_smoothing", 0.1},
        {"share_mode", "none"},
        {"size_preset", ""},
        {"conv_channels_in", 80},
        {"max_target_len", 1024}}},
      {"train",
       {{"epochs", 1},
        {"speech_batch_frames", 40000},
        {"text_batch_tokens", 20000},
        {"lr", 0.001},
        {"warmup_steps", 4000},
        {"seed", 1},
        {"average_last", 10},
        {"init_encoder_ckpt", ""},
        {"init_decoder_ckpt", ""},
        {"specaugment", "none"},
        {"log_to_stderr", false}}},
      {"task",
       {{"primary_task", "asr"},
        {"text_task", "none"},
        {"mask_ratio", 0.2},
        {"text_input_repr", "phoneme"}}},
      {"prepare", {{"subword_vocab_size", 10000}}},
      {"features",
       {{"frame_length", 400},
        {"frame_shift", 160},
        {"fft_size", 512},
        {"num_mels", 80},
        {"fmin_hz", 20.0},
        {"fmax_hz", 8000.0},
        {"log_floor", 1e-10}}},
      {"decode", {{"beam_size", 5}, {"max_len_factor", 1.0}}},
      {"score", {{"metric", "wer"}, {"format", "plain"}, {"normalize", true}}},
      {"synth",
       {{"seed", 1},
        {"lexicon_words", 30},
        {"heldout_words", 0},
        {"train_utterances", 200},
        {"test_utterances", 0},
        {"text_sentences", 0},
        {"min_sentence_words", 3},
        {"max_sentence_words", 8},
        {"noise_sigma", 0.1}}}};
}

RunConfig RunConfig::Load(
    const std::string& config_path,
    const std::vector<std::pair<std::string, std::string>>& overrides) {
  RunConfig cfg;
  cfg.root = Schema();
  if (!config_path.empty()) {
    if (!FileExists(config_path)) {
      throw ConfigError("config file not found: " + config_path);
    }
    nlohmann::json user;
    try {
      user = nlohmann::json::parse(ReadFileToString(config_path));
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("config file " + config_path + ": " + e.what());
    }
    ValidateKeys(cfg.root, user, "");
    Merge(cfg.root, user);
  }
  for (const auto& [dot_path, raw] : overrides) {
    auto parts = SplitDots(dot_path);
    nlohmann::json* schema_node = &cfg.root;
    for (size_t i = 0; i + 1 < parts.size(); ++i) {
      if (!schema_node->contains(parts[i])) {
        throw ConfigError("config: unknown key '" + dot_path + "'");
      }
      schema_node = &schema_node->at(parts[i]);
    }
    if (!schema_node->contains(parts.back())) {
      throw ConfigError("config: unknown key '" + dot_path + "'");
    }
    nlohmann::json& slot = schema_node->at(parts.back());
    // Interpret the override with the field's own type; fall back to string.
    nlohmann::json parsed = nlohmann::json::parse(raw, nullptr, false);
    if (!parsed.is_discarded() && !slot.is_string()) {
      slot = parsed;
    } else {
      slot = raw;
    }
  }
  return cfg;
}

const nlohmann::json& RunConfig::At(const std::string& dot_path) const {
  const nlohmann::json* node = &root;
  for (const auto& part : SplitDots(dot_path)) {
    if (!node->contains(part)) {
      throw ConfigError("config: missing key '" + dot_path + "'");
    }
    node = &node->at(part);
  }
  return *node;
}

std::string RunConfig::PathValue(const std::string& dot_path) const {
  const auto& v = At(dot_path);
  if (!v.is_string()) throw ConfigError("config: '" + dot_path + "' must be a string");
  return v.get<std::string>();
}

std::string RunConfig::RequiredValue(const std::string& dot_path) const {
  std::string v = PathValue(dot_path);
  if (v.empty()) throw ConfigError("config: '" + dot_path + "' is required");
  return v;
}

std::string RunConfig::RequiredFile(const std::string& dot_path) const {
  std::string v = RequiredValue(dot_path);
  if (!FileExists(v)) {
    throw ConfigError("config: '" + dot_path + "' file not found: " + v);
  }
  return v;
}

}  // namespace duotrain::cli
