// cli/commands.cc

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

#include "duotrain/cli/commands.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>

#include "duotrain/audiofeat/cmvn.h"
#include "duotrain/audiofeat/featfile.h"
#include "duotrain/common/io.h"
#include "duotrain/evaldecode/beam.h"
#include "duotrain/evaldecode/bleu.h"
#include "duotrain/evaldecode/wer.h"
#include "duotrain/model/net.h"
#include "duotrain/synth/synth.h"
#include "duotrain/textpipe/lexicon.h"
#include "duotrain/textpipe/phonemize.h"
#include "duotrain/textpipe/subword.h"
#include "duotrain/trainer/checkpoint.h"
#include "duotrain/trainer/data.h"
#include "duotrain/trainer/trainer.h"

namespace duotrain::cli {

namespace {

nn::ModelConfig ModelConfigFromRun(const RunConfig& cfg, int input_vocab_size,
                                   int subword_vocab_size) {
  const auto& m = cfg.At("model");
  nn::ModelConfig out;
  const std::string preset = m.at("size_preset").get<std::string>();
  const nn::ShareMode share =
      nn::ShareModeFromString(m.at("share_mode").get<std::string>());
  if (!preset.empty()) {
    out = nn::ModelConfig::Preset(preset, input_vocab_size, subword_vocab_size,
                                  share);
  } else {
    out.embed_dim = m.at("embed_dim").get<int>();
    out.ffn_dim = m.at("ffn_dim").get<int>();
    out.speech_layers = m.at("speech_layers").get<int>();
    out.text_layers = m.at("text_layers").get<int>();
    out.decoder_layers = m.at("decoder_layers").get<int>();
    out.heads = m.at("heads").get<int>();
    out.share_mode = share;
    out.phoneme_vocab_size = input_vocab_size;
    out.subword_vocab_size = subword_vocab_size;
  }
  out.dropout = m.at("dropout").get<float>();
  out.label_smoothing = m.at("label_smoothing").get<float>();
  out.conv_channels_in = m.at("conv_channels_in").get<int>();
  out.max_target_len = m.at("max_target_len").get<int>();
  try {
    out.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: model: ") + e.what());
  }
  return out;
}

train::TrainConfig TrainConfigFromRun(const RunConfig& cfg) {
  const auto& t = cfg.At("train");
  train::TrainConfig out;
  out.epochs = t.at("epochs").get<int>();
  out.speech_batch_frames = t.at("speech_batch_frames").get<int64_t>();
  out.text_batch_tokens = t.at("text_batch_tokens").get<int64_t>();
  out.lr = t.at("lr").get<float>();
  out.warmup_steps = t.at("warmup_steps").get<int>();
  out.seed = t.at("seed").get<uint64_t>();
  out.checkpoint_dir = cfg.RequiredValue("paths.checkpoint_dir");
  out.average_last = t.at("average_last").get<int>();
  out.init_encoder_ckpt = t.at("init_encoder_ckpt").get<std::string>();
  out.init_decoder_ckpt = t.at("init_decoder_ckpt").get<std::string>();
  out.specaugment = t.at("specaugment").get<std::string>();
  out.log_to_stderr = t.at("log_to_stderr").get<bool>();
  return out;
}

train::TaskMode TaskModeFromRun(const RunConfig& cfg) {
  const auto& t = cfg.At("task");
  train::TaskMode mode;
  try {
    mode.primary_task =
        train::PrimaryTaskFromString(t.at("primary_task").get<std::string>());
    mode.text_task = train::TextTaskFromString(t.at("text_task").get<std::string>());
    mode.text_input_repr =
        train::TextReprFromString(t.at("text_input_repr").get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: task: ") + e.what());
  }
  mode.mask_ratio = t.at("mask_ratio").get<double>();
  return mode;
}

audio::LogMelConfig LogMelFromRun(const RunConfig& cfg) {
  const auto& f = cfg.At("features");
  audio::LogMelConfig out;
  out.frame_length = f.at("frame_length").get<int>();
  out.frame_shift = f.at("frame_shift").get<int>();
  out.fft_size = f.at("fft_size").get<int>();
  out.num_mels = f.at("num_mels").get<int>();
  out.fmin_hz = f.at("fmin_hz").get<double>();
  out.fmax_hz = f.at("fmax_hz").get<double>();
  out.floor = f.at("log_floor").get<double>();
  if (out.frame_length < 1 || out.frame_shift < 1 || out.num_mels < 1 ||
      out.fft_size < out.frame_length ||
      (out.fft_size & (out.fft_size - 1)) != 0) {
    throw ConfigError("config: features: invalid frame/fft geometry");
  }
  return out;
}

std::optional<audio::CmvnStats> MaybeCmvn(const RunConfig& cfg) {
  const std::string path = cfg.PathValue("paths.cmvn");
  if (path.empty()) return std::nullopt;
  if (!FileExists(path)) {
    throw ConfigError("config: 'paths.cmvn' file not found: " + path);
  }
  return audio::LoadCmvn(path);
}

std::vector<std::string> ListEpochCheckpoints(const std::string& dir) {
  std::vector<std::string> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("epoch_", 0) == 0 && name.size() > 7 &&
        name.substr(name.size() - 7) == ".dtckpt") {
      paths.push_back(entry.path().string());
    }
  }
  std::sort(paths.begin(), paths.end());
  return paths;
}

void CmdPrepareText(const RunConfig& cfg) {
  const std::string out_dir = cfg.RequiredValue("paths.out_dir");
  const std::string corpus_path = cfg.RequiredFile("paths.corpus");
  const auto mode = TaskModeFromRun(cfg);
  EnsureDir(out_dir);
  const auto lines = ReadLines(corpus_path);

  // Target-side text for the subword learner (translation side of a
  // parallel corpus, the lines themselves otherwise).
  std::vector<std::string> target_lines;
  std::vector<std::string> source_lines;
  if (mode.text_task == train::TextTask::kMt) {
    for (const auto& line : lines) {
      if (line.empty()) continue;
      auto cols = SplitTabs(line);
      if (cols.size() != 2) {
        throw ConfigError("parallel corpus line is not 'source<TAB>target': " + line);
      }
      source_lines.push_back(cols[0]);
      target_lines.push_back(cols[1]);
    }
  } else {
    for (const auto& line : lines) {
      if (!line.empty()) target_lines.push_back(line);
    }
    source_lines = target_lines;
  }

  text::PhonemeVocab input_vocab;
  if (mode.text_input_repr == train::TextRepr::kCharacter) {
    input_vocab = text::BuildCharVocab(source_lines);
  } else {
    const std::string lexicon_path = cfg.RequiredFile("paths.lexicon");
    input_vocab = text::BuildPhonemeVocab(text::ParseLexiconFile(lexicon_path));
  }
  text::SaveVocab(input_vocab, out_dir + "/input_vocab.txt");

  const int target_size = cfg.At("prepare.subword_vocab_size").get<int>();
  text::SubwordVocab subwords;
  try {
    subwords = text::LearnSubwords(target_lines, target_size);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: prepare: ") + e.what());
  }
  text::SaveSubwords(subwords, out_dir + "/subword_vocab.txt",
                     out_dir + "/subword_merges.txt");

  std::cout << "input vocabulary: " << input_vocab.size() << " tokens -> "
            << out_dir << "/input_vocab.txt\n"
            << "subword vocabulary: " << subwords.size() << " tokens, "
            << subwords.merges.size() << " merges -> " << out_dir
            << "/subword_vocab.txt\n";
}

void CmdPrepareAudio(const RunConfig& cfg) {
  const std::string manifest_path = cfg.RequiredFile("paths.manifest");
  const std::string out_dir = cfg.RequiredValue("paths.out_dir");
  EnsureDir(out_dir);
  EnsureDir(out_dir + "/feats");

  auto manifest = train::ReadManifest(manifest_path);
  const audio::LogMelConfig logmel = LogMelFromRun(cfg);
  std::vector<audio::FeatureMatrix> corpus;
  corpus.reserve(manifest.size());
  for (auto& entry : manifest) {
    audio::FeatureMatrix feat = train::LoadUtteranceFeatures(entry, logmel);
    const std::string rel_path = "feats/" + entry.id + ".feat";
    audio::WriteFeatures(out_dir + "/" + rel_path, feat);
    entry.audio = rel_path;
    entry.n_frames = feat.num_frames;
    corpus.push_back(std::move(feat));
  }
  const audio::CmvnStats stats = audio::FitCmvn(corpus);
  audio::SaveCmvn(stats, out_dir + "/cmvn.json");
  train::WriteManifest(out_dir + "/manifest.tsv", manifest);
  std::cout << "cached " << manifest.size() << " utterances ("
            << stats.count << " frames) -> " << out_dir << "\n";
}

void CmdTrain(const RunConfig& cfg) {
  const auto mode = TaskModeFromRun(cfg);
  const auto manifest = train::ReadManifest(cfg.RequiredFile("paths.manifest"));
  const auto input_vocab = text::LoadVocab(cfg.RequiredFile("paths.input_vocab"));
  const auto subwords =
      text::LoadSubwords(cfg.RequiredFile("paths.subword_vocab"),
                         cfg.RequiredFile("paths.subword_merges"));
  const auto cmvn = MaybeCmvn(cfg);

  const bool text_active = mode.text_task != train::TextTask::kNone;
  text::Lexicon lexicon;
  std::vector<train::TextExample> text_data;
  if (text_active) {
    const auto corpus = ReadLines(cfg.RequiredFile("paths.corpus"));
    if (mode.text_input_repr == train::TextRepr::kPhoneme) {
      lexicon = text::ParseLexiconFile(cfg.RequiredFile("paths.lexicon"));
    }
    text_data = train::BuildTextDataset(
        corpus, lexicon, input_vocab, subwords,
        mode.text_task == train::TextTask::kMt,
        mode.text_input_repr == train::TextRepr::kCharacter);
  }

  auto speech_data = train::BuildSpeechDataset(
      manifest, cmvn, subwords, mode.primary_task == train::PrimaryTask::kSt);

  const auto train_cfg = TrainConfigFromRun(cfg);
  nn::ModelConfig model_cfg =
      ModelConfigFromRun(cfg, input_vocab.size(), subwords.size());
  nn::ModelParameters model = nn::BuildModel(model_cfg, train_cfg.seed);

  const auto result = train::Train(train_cfg, mode, model, speech_data, text_data);
  std::cout << "trained " << result.steps << " steps over "
            << result.checkpoint_paths.size() << " epochs; last checkpoint "
            << result.checkpoint_paths.back() << "\n";
}

void CmdAverage(const RunConfig& cfg) {
  const std::string dir = cfg.RequiredValue("paths.checkpoint_dir");
  if (!FileExists(dir)) throw ConfigError("config: 'paths.checkpoint_dir' not found: " + dir);
  auto paths = ListEpochCheckpoints(dir);
  if (paths.empty()) {
    throw ConfigError("no epoch checkpoints under " + dir);
  }
  const int last = cfg.At("train.average_last").get<int>();
  if (last < 1) throw ConfigError("config: 'train.average_last' must be >= 1");
  if (static_cast<int>(paths.size()) > last) {
    paths.erase(paths.begin(), paths.end() - last);
  }
  const auto averaged = train::AverageCheckpoints(paths);
  std::string out = cfg.PathValue("paths.out_checkpoint");
  if (out.empty()) out = dir + "/averaged.dtckpt";
  train::SaveCheckpoint(averaged, out);
  std::cout << "averaged " << paths.size() << " checkpoints -> " << out << "\n";
}

void CmdDecode(const RunConfig& cfg) {
  const auto manifest = train::ReadManifest(cfg.RequiredFile("paths.manifest"));
  const auto subwords =
      text::LoadSubwords(cfg.RequiredFile("paths.subword_vocab"),
                         cfg.RequiredFile("paths.subword_merges"));
  const auto cmvn = MaybeCmvn(cfg);
  const auto ckpt = train::LoadCheckpoint(cfg.RequiredFile("paths.checkpoint"));
  nn::ModelParameters model = nn::BuildModel(ckpt.config, 0);
  ckpt.ApplyToModel(model);

  eval::BeamConfig beam;
  beam.beam_size = cfg.At("decode.beam_size").get<int>();
  beam.max_len_factor = cfg.At("decode.max_len_factor").get<double>();
  if (beam.beam_size < 1) throw ConfigError("config: 'decode.beam_size' must be >= 1");

  std::string out_path = cfg.PathValue("paths.decode_out");
  if (out_path.empty()) {
    const std::string out_dir = cfg.RequiredValue("paths.out_dir");
    EnsureDir(out_dir);
    out_path = out_dir + "/decode.tsv";
  }

  const audio::LogMelConfig logmel = LogMelFromRun(cfg);
  std::string out;
  for (const auto& entry : manifest) {
    audio::FeatureMatrix feat = train::LoadUtteranceFeatures(entry, logmel);
    if (cmvn) feat = audio::ApplyCmvn(feat, *cmvn);
    num::Tensor packed = num::Tensor::Zeros({1, feat.num_frames, feat.dim});
    std::copy(feat.data.begin(), feat.data.end(), packed.values().begin());
    const auto hyp = eval::BeamSearchFeatures(model, packed, beam);
    char score[32];
    std::snprintf(score, sizeof(score), "%.6f", hyp.normalized_score);
    out += entry.id;
    out.push_back('\t');
    out += text::DecodeSubwords(hyp.tokens, subwords);
    out.push_back('\t');
    out += score;
    out.push_back('\n');
  }
  WriteStringToFile(out_path, out);
  std::cout << "decoded " << manifest.size() << " utterances -> " << out_path << "\n";
}

// Reads scoring text: plain line-aligned files, id<TAB>text files, or a
// speech manifest (detected by its header), keyed by id when available.
std::map<std::string, std::string> ReadScoreFile(const std::string& path,
                                                 const std::string& format) {
  std::map<std::string, std::string> out;
  const auto lines = ReadLines(path);
  if (!lines.empty() && SplitTabs(lines[0]).size() == 5 &&
      SplitTabs(lines[0])[0] == "id") {
    const auto manifest = train::ReadManifest(path);
    for (const auto& e : manifest) out[e.id] = e.transcript;
    return out;
  }
  if (format == "tsv") {
    for (const auto& line : lines) {
      if (line.empty()) continue;
      auto cols = SplitTabs(line);
      if (cols.size() < 2) {
        throw ConfigError("score: tsv line without id<TAB>text: " + line);
      }
      out[cols[0]] = cols[1];
    }
    return out;
  }
  int64_t i = 0;
  for (const auto& line : lines) {
    char key[24];
    std::snprintf(key, sizeof(key), "line_%012lld", static_cast<long long>(i++));
    out[key] = line;
  }
  return out;
}

void CmdScore(const RunConfig& cfg) {
  const std::string metric = cfg.At("score.metric").get<std::string>();
  const std::string format = cfg.At("score.format").get<std::string>();
  const bool normalize = cfg.At("score.normalize").get<bool>();
  const auto refs = ReadScoreFile(cfg.RequiredFile("paths.ref"), format);
  const auto hyps = ReadScoreFile(cfg.RequiredFile("paths.hyp"), format);

  std::vector<std::string> ref_texts, hyp_texts;
  for (const auto& [id, ref] : refs) {
    auto it = hyps.find(id);
    if (it == hyps.end()) {
      throw ConfigError("score: hypothesis missing for id '" + id + "'");
    }
    ref_texts.push_back(ref);
    hyp_texts.push_back(it->second);
  }
  if (ref_texts.empty()) throw ConfigError("score: empty reference set");

  nlohmann::json report;
  if (metric == "wer") {
    if (normalize) {
      for (auto& s : ref_texts) s = eval::NormalizeForWer(s);
      for (auto& s : hyp_texts) s = eval::NormalizeForWer(s);
    }
    const auto breakdown = eval::CorpusWer(ref_texts, hyp_texts);
    report = {{"metric", "wer"},
              {"value", breakdown.wer()},
              {"breakdown",
               {{"substitutions", breakdown.substitutions},
                {"deletions", breakdown.deletions},
                {"insertions", breakdown.insertions},
                {"reference_words", breakdown.reference_words}}}};
  } else if (metric == "bleu") {
    const auto detail = eval::CorpusBleuDetail(ref_texts, hyp_texts);
    report = {{"metric", "bleu"},
              {"value", detail.bleu},
              {"breakdown",
               {{"precisions", detail.precisions},
                {"brevity_penalty", detail.brevity_penalty},
                {"hypothesis_length", detail.hypothesis_length},
                {"reference_length", detail.reference_length}}}};
  } else {
    throw ConfigError("config: 'score.metric' must be wer or bleu");
  }
  std::cout << report.dump(2) << "\n";
}

void CmdGenSynth(const RunConfig& cfg) {
  const auto& s = cfg.At("synth");
  synth::SynthConfig synth_cfg;
  synth_cfg.seed = s.at("seed").get<uint64_t>();
  synth_cfg.lexicon_words = s.at("lexicon_words").get<int>();
  synth_cfg.heldout_words = s.at("heldout_words").get<int>();
  synth_cfg.train_utterances = s.at("train_utterances").get<int>();
  synth_cfg.test_utterances = s.at("test_utterances").get<int>();
  synth_cfg.text_sentences = s.at("text_sentences").get<int>();
  synth_cfg.min_sentence_words = s.at("min_sentence_words").get<int>();
  synth_cfg.max_sentence_words = s.at("max_sentence_words").get<int>();
  synth_cfg.noise_sigma = s.at("noise_sigma").get<double>();
  synth_cfg.out_dir = cfg.RequiredValue("paths.out_dir");
  try {
    const auto out = synth::Generate(synth_cfg);
    std::cout << "synthetic corpus -> " << synth_cfg.out_dir << " (lexicon "
              << out.lexicon_path << ", train " << out.train_manifest << ")\n";
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: synth: ") + e.what());
  }
}

}  // namespace

void RunCommand(const std::string& subcommand, const RunConfig& cfg) {
  if (subcommand == "prepare-text") {
    CmdPrepareText(cfg);
  } else if (subcommand == "prepare-audio") {
    CmdPrepareAudio(cfg);
  } else if (subcommand == "train") {
    CmdTrain(cfg);
  } else if (subcommand == "average") {
    CmdAverage(cfg);
  } else if (subcommand == "decode") {
    CmdDecode(cfg);
  } else if (subcommand == "score") {
    CmdScore(cfg);
  } else if (subcommand == "gen-synth") {
    CmdGenSynth(cfg);
  } else {
    throw ConfigError("unknown subcommand '" + subcommand + "'\n" + UsageText());
  }
}

std::string UsageText() {
  return
      "usage: duotrain <subcommand> [--config run.json] [--<dot.path> value ...]\n"
      "\n"
      "subcommands:\n"
      "  prepare-text   build input vocabulary and subword model from a corpus\n"
      "  prepare-audio  extract and cache log-mel features, fit global CMVN\n"
      "  train          run alternating speech/text training\n"
      "  average        average the last N epoch checkpoints\n"
      "  decode         beam-search decode a manifest with a checkpoint\n"
      "  score          compute WER or BLEU and print a JSON report\n"
      "  gen-synth      generate the deterministic synthetic corpus\n"
      "\n"
      "Any config key can be overridden with --<dot.path> <value>, e.g.\n"
      "  duotrain train --config run.json --train.lr 0.0005 --task.mask_ratio 0.2\n"
      "Unknown keys are rejected. DUOTRAIN_THREADS caps worker threads.\n"
      "Exit codes: 0 success, 1 configuration/validation error, 2 runtime failure.\n";
}

}  // namespace duotrain::cli
