// tests/cli_test.cc

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

// End-to-end coverage of the command-line driver, run as a subprocess.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <string>

#include <json.hpp>

#include "duotrain/common/io.h"
#include "duotrain/textpipe/lexicon.h"
#include "duotrain/trainer/checkpoint.h"
#include "duotrain/trainer/data.h"
#include "testutil.h"

using namespace duotrain;

namespace {

std::string Binary() {
  const char* bin = std::getenv("DUOTRAIN_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "DUOTRAIN_BIN must point at the duotrain binary");
  return bin;
}

// Runs the binary, returns the exit code, captures stdout+stderr to a file.
int Run(const std::string& args, const std::string& capture_path = "/dev/null") {
  const std::string cmd = Binary() + " " + args + " > " + capture_path + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("driver basics: help, unknown subcommand, unknown keys") {
  testutil::TempDir tmp("cli_basics");
  CHECK(Run("--help") == 0);
  CHECK(Run("", tmp.File("noargs.txt")) == 1);
  CHECK(Run("frobnicate") == 1);
  CHECK(Run("score --no.such.key 1", tmp.File("unknown.txt")) == 1);
  CHECK(ReadFileToString(tmp.File("unknown.txt")).find("no.such.key") !=
        std::string::npos);
  // Malformed config file with an unknown section.
  WriteStringToFile(tmp.File("bad.json"), "{\"scored\": {}}");
  CHECK(Run("score --config " + tmp.File("bad.json"), tmp.File("badcfg.txt")) == 1);
  CHECK(ReadFileToString(tmp.File("badcfg.txt")).find("scored") != std::string::npos);
  // Missing required inputs are validation errors, not crashes.
  CHECK(Run("score --score.metric wer") == 1);
  CHECK(Run("decode") == 1);
}

TEST_CASE("score: identical files give wer 0 and exit 0") {
  testutil::TempDir tmp("cli_score");
  WriteStringToFile(tmp.File("ref.txt"), "good day\nit's delightful\n");
  WriteStringToFile(tmp.File("hyp.txt"), "good day\nit's delightful\n");
  const int code = Run("score --score.metric wer --paths.ref " + tmp.File("ref.txt") +
                           " --paths.hyp " + tmp.File("hyp.txt"),
                       tmp.File("out.json"));
  CHECK(code == 0);
  auto report = nlohmann::json::parse(ReadFileToString(tmp.File("out.json")));
  CHECK(report.at("metric") == "wer");
  CHECK(report.at("value").get<double>() == 0.0);

  // BLEU on the same files is 100.
  CHECK(Run("score --score.metric bleu --paths.ref " + tmp.File("ref.txt") +
                " --paths.hyp " + tmp.File("hyp.txt"),
            tmp.File("bleu.json")) == 0);
  auto bleu = nlohmann::json::parse(ReadFileToString(tmp.File("bleu.json")));
  CHECK(bleu.at("value").get<double>() == doctest::Approx(100.0));
}

TEST_CASE("gen-synth: size zero, determinism, frame counts") {
  testutil::TempDir tmp("cli_synth");
  SUBCASE("size zero writes an empty manifest with a valid header") {
    CHECK(Run("gen-synth --paths.out_dir " + tmp.File("empty") +
              " --synth.train_utterances 0") == 0);
    auto manifest = train::ReadManifest(tmp.File("empty") + "/train.tsv");
    CHECK(manifest.empty());
  }
  SUBCASE("the same seed produces identical bytes") {
    CHECK(Run("gen-synth --paths.out_dir " + tmp.File("a") +
              " --synth.train_utterances 5 --synth.seed 9") == 0);
    CHECK(Run("gen-synth --paths.out_dir " + tmp.File("b") +
              " --synth.train_utterances 5 --synth.seed 9") == 0);
    for (const std::string name :
         {"/lexicon.txt", "/train.tsv", "/feats/train_0003.feat"}) {
      CHECK(ReadFileToString(tmp.File("a") + name) ==
            ReadFileToString(tmp.File("b") + name));
    }
    CHECK(Run("gen-synth --paths.out_dir " + tmp.File("c") +
              " --synth.train_utterances 5 --synth.seed 10") == 0);
    CHECK(ReadFileToString(tmp.File("a") + "/train.tsv") !=
          ReadFileToString(tmp.File("c") + "/train.tsv"));
  }
  SUBCASE("each utterance has 4 frames per phoneme") {
    CHECK(Run("gen-synth --paths.out_dir " + tmp.File("d") +
              " --synth.train_utterances 6 --synth.seed 3") == 0);
    auto lex = text::ParseLexiconFile(tmp.File("d") + "/lexicon.txt");
    for (const auto& entry : train::ReadManifest(tmp.File("d") + "/train.tsv")) {
      int64_t phonemes = 0;
      for (const auto& word : SplitWhitespace(entry.transcript)) {
        phonemes += static_cast<int64_t>(
            lex.entries.at(ToUpperAscii(word)).front().size());
      }
      CHECK(entry.n_frames == 4 * phonemes);
      CHECK(train::LoadUtteranceFeatures(entry).num_frames == entry.n_frames);
    }
  }
}

TEST_CASE("full pipeline: synth -> prepare -> train -> average -> decode -> score") {
  testutil::TempDir tmp("cli_pipe");
  const std::string data = tmp.File("data");
  REQUIRE(Run("gen-synth --paths.out_dir " + data +
              " --synth.train_utterances 8 --synth.text_sentences 12"
              " --synth.lexicon_words 12 --synth.max_sentence_words 4"
              " --synth.seed 21") == 0);

  // Text artifacts from the synthetic text corpus.
  REQUIRE(Run("prepare-text --paths.out_dir " + tmp.File("text") +
              " --paths.lexicon " + data + "/lexicon.txt" +
              " --paths.corpus " + data + "/text.txt" +
              " --prepare.subword_vocab_size 64") == 0);
  CHECK(FileExists(tmp.File("text") + "/input_vocab.txt"));
  CHECK(FileExists(tmp.File("text") + "/subword_vocab.txt"));
  CHECK(FileExists(tmp.File("text") + "/subword_merges.txt"));

  // Feature cache + CMVN over the synthetic features.
  REQUIRE(Run("prepare-audio --paths.manifest " + data + "/train.tsv" +
              " --paths.out_dir " + tmp.File("audio")) == 0);
  CHECK(FileExists(tmp.File("audio") + "/cmvn.json"));
  CHECK(FileExists(tmp.File("audio") + "/manifest.tsv"));

  const std::string common_flags =
      " --paths.manifest " + tmp.File("audio") + "/manifest.tsv" +
      " --paths.cmvn " + tmp.File("audio") + "/cmvn.json" +
      " --paths.input_vocab " + tmp.File("text") + "/input_vocab.txt" +
      " --paths.subword_vocab " + tmp.File("text") + "/subword_vocab.txt" +
      " --paths.subword_merges " + tmp.File("text") + "/subword_merges.txt" +
      " --model.embed_dim 16 --model.ffn_dim 32 --model.heads 2"
      " --model.speech_layers 2 --model.text_layers 2 --model.decoder_layers 2";

  const std::string train_flags =
      "train" + common_flags + " --paths.lexicon " + data + "/lexicon.txt" +
      " --paths.corpus " + data + "/text.txt" +
      " --task.text_task denoise --task.mask_ratio 0.2"
      " --train.epochs 2 --train.warmup_steps 0 --train.seed 33";

  REQUIRE(Run(train_flags + " --paths.checkpoint_dir " + tmp.File("run1"),
              tmp.File("train1.log")) == 0);
  CHECK(FileExists(tmp.File("run1") + "/epoch_0001.dtckpt"));
  CHECK(FileExists(tmp.File("run1") + "/epoch_0002.dtckpt"));
  CHECK(FileExists(tmp.File("run1") + "/train.log.jsonl"));

  // Determinism across identically seeded runs, at the file-byte level.
  REQUIRE(Run(train_flags + " --paths.checkpoint_dir " + tmp.File("run2"),
              tmp.File("train2.log")) == 0);
  CHECK(ReadFileToString(tmp.File("run1") + "/epoch_0001.dtckpt") ==
        ReadFileToString(tmp.File("run2") + "/epoch_0001.dtckpt"));

  // Averaging identical checkpoints reproduces their parameters.
  const std::string avg_dir = tmp.File("avg");
  EnsureDir(avg_dir);
  const std::string e1 = ReadFileToString(tmp.File("run1") + "/epoch_0001.dtckpt");
  for (int i = 1; i <= 10; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "/epoch_%04d.dtckpt", i);
    WriteStringToFile(avg_dir + name, e1);
  }
  REQUIRE(Run("average --paths.checkpoint_dir " + avg_dir +
              " --train.average_last 10") == 0);
  auto averaged = train::LoadCheckpoint(avg_dir + "/averaged.dtckpt");
  auto original = train::LoadCheckpoint(tmp.File("run1") + "/epoch_0001.dtckpt");
  REQUIRE(averaged.tensors.size() == original.tensors.size());
  for (const auto& [name, tensor] : original.tensors) {
    CHECK(averaged.tensors.at(name).values == tensor.values);
  }
  CHECK(averaged.optimizer.empty());

  // Decode the training manifest and score it against the references.
  REQUIRE(Run("decode" + common_flags +
              " --paths.checkpoint " + avg_dir + "/averaged.dtckpt" +
              " --paths.decode_out " + tmp.File("decode.tsv") +
              " --decode.beam_size 3") == 0);
  const auto decoded = ReadLines(tmp.File("decode.tsv"));
  CHECK(decoded.size() == 8);
  for (const auto& line : decoded) CHECK(SplitTabs(line).size() == 3);

  REQUIRE(Run("score --score.metric wer --score.format tsv"
              " --paths.ref " + tmp.File("audio") + "/manifest.tsv" +
              " --paths.hyp " + tmp.File("decode.tsv"),
              tmp.File("score.json")) == 0);
  auto report = nlohmann::json::parse(ReadFileToString(tmp.File("score.json")));
  CHECK(report.at("metric") == "wer");
  CHECK(report.at("value").get<double>() >= 0.0);
}
