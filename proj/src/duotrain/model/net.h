// model/net.h

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

// Forward passes for the three-component network: conv-subsampled speech
// encoder, phoneme text encoder, shared decoder. Pre-layer-norm blocks with
// a final layer norm; the speech and text paths produce interchangeable
// memories for one decoder. Templated so the whole model can run in double
// for gradient checks.

#ifndef DUOTRAIN_MODEL_NET_H_
#define DUOTRAIN_MODEL_NET_H_

#include <cmath>
#include <string>
#include <vector>

#include "duotrain/common/rng.h"
#include "duotrain/model/params.h"
#include "duotrain/numcore/autodiff.h"

namespace duotrain::nn {

struct ForwardOptions {
  bool training = false;
  Rng* rng = nullptr;  // dropout stream; dropout is active iff training && rng
};

template <typename T>
struct Encoded {
  num::TensorT<T> memory;    // [batch, length, embed_dim]
  std::vector<int> lengths;  // valid positions per item
};

inline int SubsampledLength(int frames) { return ((frames + 1) / 2 + 1) / 2; }

namespace netdetail {

constexpr double kMaskValue = -1e9;

template <typename T>
num::TensorT<T> Linear(const num::TensorT<T>& x_flat,
                       const num::TensorT<T>& w, const num::TensorT<T>& b) {
  return num::Add(num::MatMul(x_flat, w), b);
}

// 0/1 row mask [batch, len, dim] from per-item valid lengths.
template <typename T>
num::TensorT<T> RowMask(int batch, int len, int dim,
                        const std::vector<int>& lengths) {
  auto mask = num::TensorT<T>::Zeros({batch, len, dim});
  auto v = mask.values();
  for (int b = 0; b < batch; ++b) {
    const int valid = std::min(lengths[static_cast<size_t>(b)], len);
    std::fill(v.begin() + static_cast<int64_t>(b) * len * dim,
              v.begin() + (static_cast<int64_t>(b) * len + valid) * dim, T(1));
  }
  return mask;
}

// Additive key-padding mask [batch*heads, q_len, k_len].
template <typename T>
num::TensorT<T> KeyPaddingMask(int batch, int heads, int q_len, int k_len,
                               const std::vector<int>& key_lengths) {
  auto mask = num::TensorT<T>::Zeros({batch * heads, q_len, k_len});
  auto v = mask.values();
  for (int b = 0; b < batch; ++b) {
    const int valid = std::min(key_lengths[static_cast<size_t>(b)], k_len);
    if (valid >= k_len) continue;
    for (int h = 0; h < heads; ++h) {
      T* base = v.data() + (static_cast<int64_t>(b) * heads + h) * q_len * k_len;
      for (int q = 0; q < q_len; ++q) {
        for (int k = valid; k < k_len; ++k) {
          base[static_cast<int64_t>(q) * k_len + k] = T(kMaskValue);
        }
      }
    }
  }
  return mask;
}

template <typename T>
num::TensorT<T> CausalMask(int len) {
  auto mask = num::TensorT<T>::Zeros({len, len});
  auto v = mask.values();
  for (int q = 0; q < len; ++q) {
    for (int k = q + 1; k < len; ++k) {
      v[static_cast<int64_t>(q) * len + k] = T(kMaskValue);
    }
  }
  return mask;
}

// [batch, len, dim] -> [batch*heads, len, dim/heads]
template <typename T>
num::TensorT<T> SplitHeads(const num::TensorT<T>& x, int heads) {
  const int batch = x.dim(0), len = x.dim(1), dim = x.dim(2);
  auto r = num::Reshape(x, {batch, len, heads, dim / heads});
  auto t = num::Transpose(r, 1, 2);
  return num::Reshape(t, {batch * heads, len, dim / heads});
}

template <typename T>
num::TensorT<T> MergeHeads(const num::TensorT<T>& x, int batch, int heads) {
  const int len = x.dim(1), head_dim = x.dim(2);
  auto r = num::Reshape(x, {batch, heads, len, head_dim});
  auto t = num::Transpose(r, 1, 2);
  return num::Reshape(t, {batch, len, heads * head_dim});
}

template <typename T>
num::TensorT<T> MaybeDropout(const num::TensorT<T>& x, const ParametersT<T>& p,
                             const ForwardOptions& opts) {
  if (!opts.training || opts.rng == nullptr || p.config.dropout == 0.0f) return x;
  return num::Dropout(x, static_cast<double>(p.config.dropout), opts.rng);
}

// Masked scaled-dot-product attention composite under `prefix` (which names
// wq/bq, wk/bk, wv/bv, wo/bo). mask may be undefined, [q,k], or [b*h, q, k].
template <typename T>
num::TensorT<T> MultiHeadAttention(const ParametersT<T>& p,
                                   const std::string& prefix,
                                   const num::TensorT<T>& q_in,
                                   const num::TensorT<T>& kv_in,
                                   const num::TensorT<T>& mask,
                                   const ForwardOptions& opts) {
  const int heads = p.config.heads;
  const int batch = q_in.dim(0), q_len = q_in.dim(1), dim = q_in.dim(2);
  const int k_len = kv_in.dim(1);
  auto q_flat = num::Reshape(q_in, {batch * q_len, dim});
  auto kv_flat = num::Reshape(kv_in, {batch * k_len, dim});
  auto q = Linear(q_flat, p.at(prefix + "wq"), p.at(prefix + "bq"));
  auto k = Linear(kv_flat, p.at(prefix + "wk"), p.at(prefix + "bk"));
  auto v = Linear(kv_flat, p.at(prefix + "wv"), p.at(prefix + "bv"));
  auto qh = SplitHeads(num::Reshape(q, {batch, q_len, dim}), heads);
  auto kh = SplitHeads(num::Reshape(k, {batch, k_len, dim}), heads);
  auto vh = SplitHeads(num::Reshape(v, {batch, k_len, dim}), heads);

  auto scores = num::Scale(num::BatchMatMul(qh, kh, /*transpose_b=*/true),
                           T(1.0 / std::sqrt(static_cast<double>(dim / heads))));
  if (mask.defined()) scores = num::Add(scores, mask);
  auto probs = num::Softmax(scores);
  auto ctx = MergeHeads(num::BatchMatMul(probs, vh), batch, heads);
  auto out = Linear(num::Reshape(ctx, {batch * q_len, dim}),
                    p.at(prefix + "wo"), p.at(prefix + "bo"));
  return num::Reshape(out, {batch, q_len, dim});
}

template <typename T>
num::TensorT<T> FeedForward(const ParametersT<T>& p, const std::string& prefix,
                            const num::TensorT<T>& x) {
  const int batch = x.dim(0), len = x.dim(1), dim = x.dim(2);
  auto flat = num::Reshape(x, {batch * len, dim});
  auto h = num::Relu(Linear(flat, p.at(prefix + "ffn.w1"), p.at(prefix + "ffn.b1")));
  auto out = Linear(h, p.at(prefix + "ffn.w2"), p.at(prefix + "ffn.b2"));
  return num::Reshape(out, {batch, len, dim});
}

template <typename T>
num::TensorT<T> LayerNormed(const ParametersT<T>& p, const std::string& prefix,
                            const num::TensorT<T>& x) {
  return num::LayerNorm(x, p.at(prefix + "gamma"), p.at(prefix + "beta"));
}

}  // namespace netdetail

// One pre-LN encoder block: x + Drop(Attn(LN1 x)), then x + Drop(FFN(LN2 x)).
template <typename T>
num::TensorT<T> EncoderLayerForward(const ParametersT<T>& p,
                                    const std::string& layer_prefix,
                                    const num::TensorT<T>& x,
                                    const num::TensorT<T>& mask,
                                    const ForwardOptions& opts) {
  using namespace netdetail;
  auto normed = LayerNormed(p, layer_prefix + "ln1.", x);
  auto attn = MultiHeadAttention(p, layer_prefix + "self_attn.", normed, normed,
                                 mask, opts);
  auto h = num::Add(x, MaybeDropout(attn, p, opts));
  auto ffn = FeedForward(p, layer_prefix, LayerNormed(p, layer_prefix + "ln2.", h));
  return num::Add(h, MaybeDropout(ffn, p, opts));
}

template <typename T>
num::TensorT<T> DecoderLayerForward(const ParametersT<T>& p,
                                    const std::string& layer_prefix,
                                    const num::TensorT<T>& x,
                                    const num::TensorT<T>& causal_mask,
                                    const num::TensorT<T>& memory,
                                    const num::TensorT<T>& memory_mask,
                                    const ForwardOptions& opts) {
  using namespace netdetail;
  auto self_in = LayerNormed(p, layer_prefix + "ln1.", x);
  auto self_attn = MultiHeadAttention(p, layer_prefix + "self_attn.", self_in,
                                      self_in, causal_mask, opts);
  auto h = num::Add(x, MaybeDropout(self_attn, p, opts));
  auto cross_attn = MultiHeadAttention(p, layer_prefix + "cross_attn.",
                                       LayerNormed(p, layer_prefix + "ln2.", h),
                                       memory, memory_mask, opts);
  h = num::Add(h, MaybeDropout(cross_attn, p, opts));
  auto ffn = FeedForward(p, layer_prefix, LayerNormed(p, layer_prefix + "ln3.", h));
  return num::Add(h, MaybeDropout(ffn, p, opts));
}

// Speech path: padded features [batch, frames, feat_dim] with true per-item
// frame counts. Two stride-2 convolutions (ReLU between) subsample to
// ceil(frames/4); padding is re-zeroed around each conv so padded frames
// can never leak into valid positions.
template <typename T>
Encoded<T> EncodeSpeech(const ParametersT<T>& p, const num::TensorT<T>& features,
                        const std::vector<int>& lengths,
                        const ForwardOptions& opts = {}) {
  using namespace netdetail;
  const auto& cfg = p.config;
  if (features.rank() != 3 || features.dim(2) != cfg.conv_channels_in) {
    throw std::invalid_argument("EncodeSpeech: features must be [batch, frames, " +
                                std::to_string(cfg.conv_channels_in) + "]");
  }
  const int batch = features.dim(0), frames = features.dim(1);
  if (static_cast<int>(lengths.size()) != batch) {
    throw std::invalid_argument("EncodeSpeech: lengths/batch mismatch");
  }
  for (int len : lengths) {
    if (len <= 0 || len > frames) {
      throw std::invalid_argument("EncodeSpeech: item with invalid length " +
                                  std::to_string(len));
    }
  }

  auto x = num::Mul(features, RowMask<T>(batch, frames, cfg.conv_channels_in, lengths));
  x = num::Conv1d(x, p.at("speech_encoder.conv1.weight"),
                  p.at("speech_encoder.conv1.bias"), 2, 1);
  x = num::Relu(x);
  std::vector<int> half(lengths.size());
  for (size_t i = 0; i < lengths.size(); ++i) half[i] = (lengths[i] + 1) / 2;
  x = num::Mul(x, RowMask<T>(batch, x.dim(1), cfg.embed_dim, half));
  x = num::Conv1d(x, p.at("speech_encoder.conv2.weight"),
                  p.at("speech_encoder.conv2.bias"), 2, 1);
  std::vector<int> sub(lengths.size());
  for (size_t i = 0; i < lengths.size(); ++i) sub[i] = (half[i] + 1) / 2;
  const int out_len = x.dim(1);
  x = num::Mul(x, RowMask<T>(batch, out_len, cfg.embed_dim, sub));

  x = num::Add(x, num::SinusoidalPositions<T>(out_len, cfg.embed_dim));
  x = MaybeDropout(x, p, opts);

  bool all_full = true;
  for (int s : sub) all_full = all_full && s == out_len;
  num::TensorT<T> mask;
  if (!all_full) {
    mask = KeyPaddingMask<T>(batch, cfg.heads, out_len, out_len, sub);
  }
  for (int i = 0; i < cfg.speech_layers; ++i) {
    x = EncoderLayerForward(p, "speech_encoder.layers." + std::to_string(i) + ".",
                            x, mask, opts);
  }
  x = LayerNormed(p, "speech_encoder.final_ln.", x);
  return {x, sub};
}

// Text path: padded token ids [batch, len] (<pad> = 0) with true lengths;
// output length equals input length.
template <typename T>
Encoded<T> EncodeText(const ParametersT<T>& p, const std::vector<int>& ids,
                      int batch, int len, const std::vector<int>& lengths,
                      const ForwardOptions& opts = {}) {
  using namespace netdetail;
  const auto& cfg = p.config;
  if (batch <= 0 || len <= 0 ||
      static_cast<int64_t>(batch) * len != static_cast<int64_t>(ids.size())) {
    throw std::invalid_argument("EncodeText: ids must be laid out [batch, len]");
  }
  if (static_cast<int>(lengths.size()) != batch) {
    throw std::invalid_argument("EncodeText: lengths/batch mismatch");
  }
  for (int l : lengths) {
    if (l <= 0 || l > len) {
      throw std::invalid_argument("EncodeText: item with invalid length");
    }
  }

  auto x = num::Embedding(p.at("text_encoder.embed.table"), ids, {batch, len});
  x = num::Scale(x, T(std::sqrt(static_cast<double>(cfg.embed_dim))));
  x = num::Add(x, num::SinusoidalPositions<T>(len, cfg.embed_dim));
  x = MaybeDropout(x, p, opts);

  bool all_full = true;
  for (int l : lengths) all_full = all_full && l == len;
  num::TensorT<T> mask;
  if (!all_full) mask = KeyPaddingMask<T>(batch, cfg.heads, len, len, lengths);
  for (int i = 0; i < cfg.text_layers; ++i) {
    x = EncoderLayerForward(p, "text_encoder.layers." + std::to_string(i) + ".",
                            x, mask, opts);
  }
  x = LayerNormed(p, "text_encoder.final_ln.", x);
  return {x, lengths};
}

// Shared decoder: causal self-attention over the <bos>-led prefix, cross
// attention over either encoder's memory, logits through the tied embedding.
template <typename T>
num::TensorT<T> DecodeLogits(const ParametersT<T>& p, const Encoded<T>& memory,
                             const std::vector<int>& prefix_ids, int batch,
                             int prefix_len, const ForwardOptions& opts = {}) {
  using namespace netdetail;
  const auto& cfg = p.config;
  if (batch <= 0 || prefix_len <= 0 ||
      static_cast<int64_t>(batch) * prefix_len !=
          static_cast<int64_t>(prefix_ids.size())) {
    throw std::invalid_argument("DecodeLogits: prefix must be laid out [batch, len]");
  }
  if (prefix_len > cfg.max_target_len) {
    throw std::invalid_argument("DecodeLogits: prefix length " +
                                std::to_string(prefix_len) + " exceeds cap " +
                                std::to_string(cfg.max_target_len));
  }
  if (!memory.memory.defined() || memory.memory.dim(1) < 1) {
    throw std::invalid_argument("DecodeLogits: zero-length memory");
  }
  if (memory.memory.dim(0) != batch) {
    throw std::invalid_argument("DecodeLogits: memory batch mismatch");
  }
  for (int l : memory.lengths) {
    if (l < 1) throw std::invalid_argument("DecodeLogits: zero-length memory item");
  }

  const auto& table = p.at("decoder.embed.table");
  auto x = num::Embedding(table, prefix_ids, {batch, prefix_len});
  x = num::Scale(x, T(std::sqrt(static_cast<double>(cfg.embed_dim))));
  x = num::Add(x, num::SinusoidalPositions<T>(prefix_len, cfg.embed_dim));
  x = MaybeDropout(x, p, opts);

  auto causal = CausalMask<T>(prefix_len);
  const int mem_len = memory.memory.dim(1);
  bool all_full = true;
  for (int l : memory.lengths) all_full = all_full && l == mem_len;
  num::TensorT<T> mem_mask;
  if (!all_full) {
    mem_mask = KeyPaddingMask<T>(batch, cfg.heads, prefix_len, mem_len,
                                 memory.lengths);
  }
  for (int i = 0; i < cfg.decoder_layers; ++i) {
    x = DecoderLayerForward(p, "decoder.layers." + std::to_string(i) + ".", x,
                            causal, memory.memory, mem_mask, opts);
  }
  x = LayerNormed(p, "decoder.final_ln.", x);

  auto flat = num::Reshape(x, {batch * prefix_len, cfg.embed_dim});
  auto logits = num::MatMul(flat, num::Transpose(table, 0, 1));
  return num::Reshape(logits, {batch, prefix_len, cfg.subword_vocab_size});
}

// Mean label-smoothed cross entropy over non-pad targets.
template <typename T>
num::TensorT<T> LabelSmoothedLoss(const num::TensorT<T>& logits,
                                  const std::vector<int>& targets, int pad_id,
                                  double smoothing, int64_t* token_count = nullptr) {
  if (logits.rank() != 3) {
    throw std::invalid_argument("LabelSmoothedLoss: logits must be [batch, len, vocab]");
  }
  auto flat = num::Reshape(logits, {logits.dim(0) * logits.dim(1), logits.dim(2)});
  return num::CrossEntropySmoothed(flat, targets, pad_id, smoothing, token_count);
}

}  // namespace duotrain::nn

#endif  // DUOTRAIN_MODEL_NET_H_
