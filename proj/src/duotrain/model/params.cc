// model/params.cc

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

#include "duotrain/model/params.h"

#include <cmath>
#include <set>
#include <unordered_set>

namespace duotrain::nn {

namespace {

using num::Tensor;

Tensor XavierUniform(std::vector<int> shape, int64_t fan_in, int64_t fan_out,
                     Rng& rng) {
  Tensor t = Tensor::Zeros(std::move(shape), true);
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
  for (auto& v : t.values()) {
    v = static_cast<float>((rng.Uniform() * 2.0 - 1.0) * limit);
  }
  return t;
}

// One self-attention + FFN parameter set under `prefix.`.
void AddEncoderLayer(ModelParameters& p, const std::string& prefix, int d,
                     int ffn, Rng& rng) {
  auto& m = p.named;
  for (const char* w : {"self_attn.wq", "self_attn.wk", "self_attn.wv",
                        "self_attn.wo"}) {
    m[prefix + w] = XavierUniform({d, d}, d, d, rng);
  }
  for (const char* b : {"self_attn.bq", "self_attn.bk", "self_attn.bv",
                        "self_attn.bo"}) {
    m[prefix + b] = Tensor::Zeros({d}, true);
  }
  m[prefix + "ln1.gamma"] = Tensor::Full({d}, 1.0f, true);
  m[prefix + "ln1.beta"] = Tensor::Zeros({d}, true);
  m[prefix + "ffn.w1"] = XavierUniform({d, ffn}, d, ffn, rng);
  m[prefix + "ffn.b1"] = Tensor::Zeros({ffn}, true);
  m[prefix + "ffn.w2"] = XavierUniform({ffn, d}, ffn, d, rng);
  m[prefix + "ffn.b2"] = Tensor::Zeros({d}, true);
  m[prefix + "ln2.gamma"] = Tensor::Full({d}, 1.0f, true);
  m[prefix + "ln2.beta"] = Tensor::Zeros({d}, true);
}

void AddCrossAttention(ModelParameters& p, const std::string& prefix, int d,
                       Rng& rng) {
  auto& m = p.named;
  for (const char* w : {"cross_attn.wq", "cross_attn.wk", "cross_attn.wv",
                        "cross_attn.wo"}) {
    m[prefix + w] = XavierUniform({d, d}, d, d, rng);
  }
  for (const char* b : {"cross_attn.bq", "cross_attn.bk", "cross_attn.bv",
                        "cross_attn.bo"}) {
    m[prefix + b] = Tensor::Zeros({d}, true);
  }
  m[prefix + "ln3.gamma"] = Tensor::Full({d}, 1.0f, true);
  m[prefix + "ln3.beta"] = Tensor::Zeros({d}, true);
}

}  // namespace

template <typename T>
std::vector<std::pair<std::string, num::TensorT<T>>>
ParametersT<T>::UniqueParams() const {
  std::vector<std::pair<std::string, num::TensorT<T>>> out;
  std::unordered_set<const void*> seen;
  for (const auto& [name, tensor] : named) {
    if (seen.insert(tensor.raw()).second) out.emplace_back(name, tensor);
  }
  return out;
}

template <typename T>
std::vector<std::pair<std::string, num::TensorT<T>>>
ParametersT<T>::ComponentParams(const std::vector<std::string>& prefixes) const {
  // Collect storage reachable from the prefixes, then emit canonical-named
  // unique params so tied tensors keep one optimizer slot across tasks.
  std::unordered_set<const void*> wanted;
  for (const auto& [name, tensor] : named) {
    for (const auto& prefix : prefixes) {
      if (name.rfind(prefix, 0) == 0) {
        wanted.insert(tensor.raw());
        break;
      }
    }
  }
  std::vector<std::pair<std::string, num::TensorT<T>>> out;
  for (const auto& [name, tensor] : UniqueParams()) {
    if (wanted.count(tensor.raw())) out.emplace_back(name, tensor);
  }
  return out;
}

template <typename T>
int64_t ParametersT<T>::CountParams(const std::vector<std::string>& prefixes) const {
  int64_t total = 0;
  for (const auto& [name, tensor] : ComponentParams(prefixes)) {
    total += tensor.numel();
  }
  return total;
}

template <typename T>
int64_t ParametersT<T>::TotalParams() const {
  int64_t total = 0;
  for (const auto& [name, tensor] : UniqueParams()) total += tensor.numel();
  return total;
}

template struct ParametersT<float>;
template struct ParametersT<double>;

ModelParameters BuildModel(const ModelConfig& config, uint64_t seed) {
  config.Validate();
  Rng rng(seed);
  ModelParameters p;
  p.config = config;
  auto& m = p.named;
  const int d = config.embed_dim;
  const int ffn = config.ffn_dim;

  // Speech encoder: two stride-2 subsampling convolutions, then the stack.
  m["speech_encoder.conv1.weight"] = XavierUniform(
      {3, config.conv_channels_in, d}, 3ll * config.conv_channels_in, 3ll * d, rng);
  m["speech_encoder.conv1.bias"] = Tensor::Zeros({d}, true);
  m["speech_encoder.conv2.weight"] = XavierUniform({3, d, d}, 3ll * d, 3ll * d, rng);
  m["speech_encoder.conv2.bias"] = Tensor::Zeros({d}, true);
  for (int i = 0; i < config.speech_layers; ++i) {
    AddEncoderLayer(p, "speech_encoder.layers." + std::to_string(i) + ".", d,
                    ffn, rng);
  }
  m["speech_encoder.final_ln.gamma"] = Tensor::Full({d}, 1.0f, true);
  m["speech_encoder.final_ln.beta"] = Tensor::Zeros({d}, true);

  // Text encoder: phoneme embedding plus its stack (possibly tied).
  m["text_encoder.embed.table"] = XavierUniform(
      {config.phoneme_vocab_size, d}, config.phoneme_vocab_size, d, rng);
  if (config.share_mode == ShareMode::kTieTop6) {
    const int offset = config.speech_layers - config.text_layers;
    for (int i = 0; i < config.text_layers; ++i) {
      const std::string text_prefix = "text_encoder.layers." + std::to_string(i) + ".";
      const std::string speech_prefix =
          "speech_encoder.layers." + std::to_string(offset + i) + ".";
      // Alias every tensor of the speech layer under the text name.
      for (const auto& [name, tensor] : m) {
        if (name.rfind(speech_prefix, 0) == 0) {
          p.tying.emplace_back(text_prefix + name.substr(speech_prefix.size()),
                               name);
        }
      }
    }
    for (const auto& [text_name, speech_name] : p.tying) {
      m[text_name] = m.at(speech_name);
    }
  } else {
    for (int i = 0; i < config.text_layers; ++i) {
      AddEncoderLayer(p, "text_encoder.layers." + std::to_string(i) + ".", d,
                      ffn, rng);
    }
  }
  m["text_encoder.final_ln.gamma"] = Tensor::Full({d}, 1.0f, true);
  m["text_encoder.final_ln.beta"] = Tensor::Zeros({d}, true);

  // Decoder: tied input/output embedding, self+cross attention layers.
  m["decoder.embed.table"] = XavierUniform(
      {config.subword_vocab_size, d}, config.subword_vocab_size, d, rng);
  for (int i = 0; i < config.decoder_layers; ++i) {
    const std::string prefix = "decoder.layers." + std::to_string(i) + ".";
    AddEncoderLayer(p, prefix, d, ffn, rng);
    AddCrossAttention(p, prefix, d, rng);
  }
  m["decoder.final_ln.gamma"] = Tensor::Full({d}, 1.0f, true);
  m["decoder.final_ln.beta"] = Tensor::Zeros({d}, true);

  return p;
}

ParametersT<double> ToDouble(const ModelParameters& params) {
  ParametersT<double> out;
  out.config = params.config;
  out.tying = params.tying;
  std::map<const void*, num::TensorT<double>> converted;
  for (const auto& [name, tensor] : params.named) {
    auto it = converted.find(tensor.raw());
    if (it == converted.end()) {
      auto dt = num::TensorT<double>::Zeros(tensor.shape(), tensor.requires_grad());
      auto src = tensor.values();
      auto dst = dt.values();
      for (size_t i = 0; i < src.size(); ++i) dst[i] = static_cast<double>(src[i]);
      it = converted.emplace(tensor.raw(), dt).first;
    }
    out.named[name] = it->second;
  }
  return out;
}

}  // namespace duotrain::nn
