// trainer/trainer.cc

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

#include "duotrain/trainer/trainer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include <json.hpp>

#include "duotrain/common/io.h"
#include "duotrain/model/net.h"
#include "duotrain/textpipe/noise.h"
#include "duotrain/trainer/batching.h"
#include "duotrain/trainer/checkpoint.h"

namespace duotrain::train {

namespace {

using num::Tensor;

struct PackedTargets {
  std::vector<int> prefix;   // [batch, len], <bos>-led
  std::vector<int> targets;  // [batch, len], <eos>-terminated, <pad>-filled
  int batch = 0;
  int len = 0;
};

PackedTargets PackTargets(const std::vector<const std::vector<int>*>& targets) {
  PackedTargets out;
  out.batch = static_cast<int>(targets.size());
  size_t max_len = 0;
  for (const auto* t : targets) max_len = std::max(max_len, t->size());
  out.len = static_cast<int>(max_len);
  out.prefix.assign(static_cast<size_t>(out.batch) * max_len,
                    text::SubwordVocab::kPad);
  out.targets.assign(static_cast<size_t>(out.batch) * max_len,
                     text::SubwordVocab::kPad);
  for (int b = 0; b < out.batch; ++b) {
    const auto& t = *targets[static_cast<size_t>(b)];
    const size_t base = static_cast<size_t>(b) * max_len;
    out.prefix[base] = text::SubwordVocab::kBos;
    for (size_t j = 0; j < t.size(); ++j) {
      out.targets[base + j] = t[j];
      if (j + 1 < t.size()) out.prefix[base + j + 1] = t[j];
    }
  }
  return out;
}

struct PackedSource {
  std::vector<int> ids;  // [batch, len]
  std::vector<int> lengths;
  int batch = 0;
  int len = 0;
};

PackedSource PackSource(const std::vector<std::vector<int>>& sources) {
  PackedSource out;
  out.batch = static_cast<int>(sources.size());
  size_t max_len = 0;
  for (const auto& s : sources) max_len = std::max(max_len, s.size());
  out.len = static_cast<int>(max_len);
  out.ids.assign(static_cast<size_t>(out.batch) * max_len,
                 text::PhonemeVocab::kPad);
  for (int b = 0; b < out.batch; ++b) {
    const auto& s = sources[static_cast<size_t>(b)];
    std::copy(s.begin(), s.end(),
              out.ids.begin() + static_cast<int64_t>(b) * out.len);
    out.lengths.push_back(static_cast<int>(s.size()));
  }
  return out;
}

class JsonlLogger {
 public:
  JsonlLogger(const std::string& path, bool echo) : echo_(echo) {
    if (!path.empty()) {
      os_.open(path, std::ios::trunc);
      if (!os_) throw std::runtime_error("cannot write training log: " + path);
    }
  }

  void Log(int64_t step, const char* task, double loss, double lr,
           int64_t tokens) {
    nlohmann::json j{{"step", step},
                     {"task", task},
                     {"loss", loss},
                     {"lr", lr},
                     {"tokens", tokens}};
    if (os_.is_open()) os_ << j.dump() << "\n";
    if (echo_) std::cerr << j.dump() << "\n";
  }

  void Flush() {
    if (os_.is_open()) os_.flush();
  }

 private:
  std::ofstream os_;
  bool echo_;
};

}  // namespace

PrimaryTask PrimaryTaskFromString(const std::string& s) {
  if (s == "asr") return PrimaryTask::kAsr;
  if (s == "st") return PrimaryTask::kSt;
  throw std::invalid_argument("unknown primary_task '" + s + "' (asr|st)");
}

TextTask TextTaskFromString(const std::string& s) {
  if (s == "none") return TextTask::kNone;
  if (s == "denoise") return TextTask::kDenoise;
  if (s == "mt") return TextTask::kMt;
  if (s == "passthrough") return TextTask::kPassthrough;
  throw std::invalid_argument("unknown text_task '" + s +
                              "' (none|denoise|mt|passthrough)");
}

TextRepr TextReprFromString(const std::string& s) {
  if (s == "phoneme") return TextRepr::kPhoneme;
  if (s == "character") return TextRepr::kCharacter;
  throw std::invalid_argument("unknown text_input_repr '" + s +
                              "' (phoneme|character)");
}

std::string ToString(PrimaryTask t) {
  return t == PrimaryTask::kAsr ? "asr" : "st";
}

std::string ToString(TextTask t) {
  switch (t) {
    case TextTask::kNone: return "none";
    case TextTask::kDenoise: return "denoise";
    case TextTask::kMt: return "mt";
    case TextTask::kPassthrough: return "passthrough";
  }
  return "none";
}

std::string ToString(TextRepr t) {
  return t == TextRepr::kPhoneme ? "phoneme" : "character";
}

std::pair<Tensor, std::vector<int>> PackFeatures(
    const std::vector<Utterance>& utts, const std::vector<size_t>& indices,
    const audio::SpecAugmentPolicy* policy, Rng* rng) {
  int max_frames = 0, dim = 0;
  for (size_t idx : indices) {
    max_frames = std::max(max_frames, utts[idx].features.num_frames);
    dim = utts[idx].features.dim;
  }
  Tensor packed = Tensor::Zeros({static_cast<int>(indices.size()), max_frames, dim});
  std::vector<int> lengths;
  lengths.reserve(indices.size());
  auto dst = packed.values();
  for (size_t b = 0; b < indices.size(); ++b) {
    const Utterance& utt = utts[indices[b]];
    audio::FeatureMatrix feat =
        policy != nullptr && rng != nullptr
            ? audio::SpecAugment(utt.features, *policy, *rng)
            : utt.features;
    std::copy(feat.data.begin(), feat.data.end(),
              dst.begin() + static_cast<int64_t>(b) * max_frames * dim);
    lengths.push_back(feat.num_frames);
  }
  return {packed, lengths};
}

TrainResult Train(const TrainConfig& cfg, const TaskMode& mode,
                  nn::ModelParameters& model,
                  const std::vector<Utterance>& speech_data,
                  const std::vector<TextExample>& text_data) {
  if (speech_data.empty()) {
    throw std::invalid_argument("Train: speech data is empty");
  }
  const bool text_active = mode.text_task != TextTask::kNone;
  if (text_active && text_data.empty()) {
    throw std::invalid_argument("Train: text task '" + ToString(mode.text_task) +
                                "' requires text data");
  }
  if (cfg.epochs < 1 || cfg.speech_batch_frames < 1 || cfg.text_batch_tokens < 1) {
    throw std::invalid_argument("Train: non-positive budgets");
  }
  if (mode.mask_ratio < 0.0 || mode.mask_ratio > 1.0) {
    throw std::invalid_argument("Train: mask_ratio out of [0,1]");
  }
  EnsureDir(cfg.checkpoint_dir);

  if (!cfg.init_encoder_ckpt.empty() || !cfg.init_decoder_ckpt.empty()) {
    InitFromPretrained(model, cfg.init_encoder_ckpt, cfg.init_decoder_ckpt);
  }

  // Independent deterministic streams, all derived from the run seed.
  Rng batch_rng(cfg.seed ^ 0xba7c4e5dull);
  Rng dropout_rng(cfg.seed ^ 0xd20b0342ull);
  Rng noise_rng(cfg.seed ^ 0x0153e52aull);
  Rng spec_rng(cfg.seed ^ 0x5bec41f7ull);

  const audio::SpecAugmentPolicy* policy = nullptr;
  audio::SpecAugmentPolicy policy_storage;
  if (cfg.specaugment == "ld") {
    policy_storage = audio::PolicyLd();
    policy = &policy_storage;
  } else if (cfg.specaugment == "lb") {
    policy_storage = audio::PolicyLb();
    policy = &policy_storage;
  } else if (cfg.specaugment != "none") {
    throw std::invalid_argument("Train: unknown specaugment policy '" +
                                cfg.specaugment + "'");
  }

  std::vector<int64_t> speech_lengths;
  speech_lengths.reserve(speech_data.size());
  for (const auto& u : speech_data) {
    speech_lengths.push_back(u.features.num_frames);
  }
  const auto speech_batches = MakeBatches(speech_lengths, cfg.speech_batch_frames);
  if (speech_batches.empty()) {
    throw std::invalid_argument("Train: every speech item exceeds the batch budget");
  }

  std::vector<std::vector<size_t>> text_batches;
  if (text_active) {
    std::vector<int64_t> text_lengths;
    text_lengths.reserve(text_data.size());
    for (const auto& ex : text_data) {
      text_lengths.push_back(static_cast<int64_t>(ex.source.size()));
    }
    text_batches = MakeBatches(text_lengths, cfg.text_batch_tokens);
    if (text_batches.empty()) {
      throw std::invalid_argument("Train: every text item exceeds the batch budget");
    }
  }

  const auto speech_params =
      model.ComponentParams({nn::kSpeechPrefix, nn::kDecoderPrefix});
  const auto text_params =
      model.ComponentParams({nn::kTextPrefix, nn::kDecoderPrefix});

  num::AdamState adam;
  adam.config.lr = cfg.lr;
  JsonlLogger logger(cfg.checkpoint_dir.empty()
                         ? ""
                         : cfg.checkpoint_dir + "/train.log.jsonl",
                     cfg.log_to_stderr);

  TrainResult result;
  int64_t step = 0;
  size_t text_cursor = 0;
  const nn::ForwardOptions train_opts{true, &dropout_rng};

  auto lr_at = [&](int64_t s) {
    if (cfg.warmup_steps <= 0) return static_cast<double>(cfg.lr);
    return cfg.lr * std::min(1.0, static_cast<double>(s + 1) / cfg.warmup_steps);
  };

  auto run_step = [&](bool speech_task, const std::vector<size_t>& batch) {
    const auto& params = speech_task ? speech_params : text_params;
    for (const auto& [name, t] : params) {
      Tensor tt = t;
      tt.ZeroGrad();
    }
    Tensor loss;
    int64_t tokens = 0;
    if (speech_task) {
      auto [feats, lengths] = PackFeatures(speech_data, batch, policy, &spec_rng);
      std::vector<const std::vector<int>*> targets;
      targets.reserve(batch.size());
      for (size_t idx : batch) targets.push_back(&speech_data[idx].target);
      auto packed = PackTargets(targets);
      auto memory = nn::EncodeSpeech(model, feats, lengths, train_opts);
      auto logits = nn::DecodeLogits(model, memory, packed.prefix, packed.batch,
                                     packed.len, train_opts);
      loss = nn::LabelSmoothedLoss(logits, packed.targets,
                                   text::SubwordVocab::kPad,
                                   model.config.label_smoothing, &tokens);
    } else {
      const double ratio =
          mode.text_task == TextTask::kDenoise ? mode.mask_ratio : 0.0;
      std::vector<std::vector<int>> sources;
      std::vector<const std::vector<int>*> targets;
      sources.reserve(batch.size());
      targets.reserve(batch.size());
      for (size_t idx : batch) {
        sources.push_back(
            text::ApplyNoise(text_data[idx].source, ratio, noise_rng));
        targets.push_back(&text_data[idx].target);
        result.text_source_tokens +=
            static_cast<int64_t>(text_data[idx].source.size());
        for (size_t j = 0; j < sources.back().size(); ++j) {
          if (sources.back()[j] == text::PhonemeVocab::kNoise &&
              text_data[idx].source[j] != text::PhonemeVocab::kNoise) {
            ++result.text_masked_tokens;
          }
        }
      }
      auto packed_src = PackSource(sources);
      auto packed_tgt = PackTargets(targets);
      auto memory = nn::EncodeText(model, packed_src.ids, packed_src.batch,
                                   packed_src.len, packed_src.lengths, train_opts);
      auto logits = nn::DecodeLogits(model, memory, packed_tgt.prefix,
                                     packed_tgt.batch, packed_tgt.len, train_opts);
      loss = nn::LabelSmoothedLoss(logits, packed_tgt.targets,
                                   text::SubwordVocab::kPad,
                                   model.config.label_smoothing, &tokens);
    }
    const double loss_value = loss.item();
    if (!std::isfinite(loss_value)) {
      throw num::NonFiniteError("loss is not finite");
    }
    num::Backward(loss);
    adam.config.lr = static_cast<float>(lr_at(step));
    AdamStep(params, adam);
    logger.Log(step, speech_task ? "speech" : "text", loss_value,
               adam.config.lr, tokens);
    ++step;
    return loss_value;
  };

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    auto epoch_batches = speech_batches;
    ShuffleBatchOrder(epoch_batches, batch_rng);
    double loss_sum = 0.0;
    int64_t loss_count = 0;
    for (const auto& batch : epoch_batches) {
      try {
        loss_sum += run_step(true, batch);
        ++loss_count;
        if (text_active) {
          loss_sum += run_step(false, text_batches[text_cursor]);
          ++loss_count;
          text_cursor = (text_cursor + 1) % text_batches.size();
        }
      } catch (const num::NonFiniteError& e) {
        throw std::runtime_error("training diverged at step " +
                                 std::to_string(step) + ": " + e.what());
      }
    }
    result.epoch_mean_loss.push_back(loss_sum / static_cast<double>(loss_count));

    char name[32];
    std::snprintf(name, sizeof(name), "epoch_%04d.dtckpt", epoch);
    const std::string path = cfg.checkpoint_dir + "/" + name;
    Checkpoint ckpt = Checkpoint::FromModel(model, &adam, epoch, step,
                                            batch_rng.StateHex());
    SaveCheckpoint(ckpt, path);
    result.checkpoint_paths.push_back(path);
    logger.Flush();
  }
  result.steps = step;
  return result;
}

void InitFromPretrained(nn::ModelParameters& model,
                        const std::string& encoder_ckpt,
                        const std::string& decoder_ckpt) {
  if (!encoder_ckpt.empty()) {
    Checkpoint ckpt = LoadCheckpoint(encoder_ckpt);
    ckpt.ApplyComponents(model, {nn::kSpeechPrefix});
  }
  if (!decoder_ckpt.empty()) {
    Checkpoint ckpt = LoadCheckpoint(decoder_ckpt);
    ckpt.ApplyComponents(model, {nn::kDecoderPrefix});
  }
}

}  // namespace duotrain::train
