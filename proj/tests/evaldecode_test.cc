// tests/evaldecode_test.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "duotrain/common/rng.h"
#include "duotrain/evaldecode/beam.h"
#include "duotrain/evaldecode/bleu.h"
#include "duotrain/evaldecode/wer.h"
#include "duotrain/model/net.h"
#include "oracles.h"

using namespace duotrain;
using namespace duotrain::eval;
using duotrain::num::Tensor;

namespace {

// Tiny random model + encoded memory for decoding tests.
struct Toy {
  nn::ModelParameters params;
  nn::Encoded<float> memory;
};

Toy MakeToy(uint64_t seed, int vocab = 6) {
  nn::ModelConfig cfg;
  cfg.embed_dim = 8;
  cfg.ffn_dim = 16;
  cfg.heads = 2;
  cfg.speech_layers = 1;
  cfg.text_layers = 1;
  cfg.decoder_layers = 1;
  cfg.dropout = 0.0f;
  cfg.phoneme_vocab_size = 5;
  cfg.subword_vocab_size = vocab;
  cfg.conv_channels_in = 4;
  Toy toy{nn::BuildModel(cfg, seed), {}};
  Rng rng(seed + 1);
  Tensor feats = Tensor::Zeros({1, 8, 4});
  for (auto& v : feats.values()) v = static_cast<float>(rng.Gaussian());
  toy.memory = nn::EncodeSpeech(toy.params, feats, {8});
  return toy;
}

// Greedy argmax decoding, mirroring the search's cap rule: the last step
// must emit <eos>.
std::vector<int> GreedyDecode(const nn::ModelParameters& params,
                              const nn::Encoded<float>& memory, int max_len) {
  const int vocab = params.config.subword_vocab_size;
  std::vector<int> prefix = {2};
  std::vector<int> out;
  for (int step = 0; step < max_len; ++step) {
    auto logits = nn::DecodeLogits(params, memory, prefix, 1,
                                   static_cast<int>(prefix.size()));
    const float* row = logits.values().data() +
                       static_cast<int64_t>(prefix.size() - 1) * vocab;
    int arg = 0;
    for (int v = 1; v < vocab; ++v) {
      if (row[v] > row[arg]) arg = v;
    }
    if (step == max_len - 1) arg = 3;
    out.push_back(arg);
    if (arg == 3) break;
    prefix.push_back(arg);
  }
  return out;
}

}  // namespace

TEST_CASE("beam size one reproduces greedy decoding token for token") {
  for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
    Toy toy = MakeToy(seed);
    BeamConfig cfg;
    cfg.beam_size = 1;
    cfg.max_len_override = 12;
    Hypothesis hyp = BeamSearch(toy.params, toy.memory, cfg);
    CHECK(hyp.tokens == GreedyDecode(toy.params, toy.memory, 12));
  }
}

TEST_CASE("beam search is deterministic across repeated calls") {
  Toy toy = MakeToy(11);
  BeamConfig cfg;
  cfg.beam_size = 5;
  cfg.max_len_override = 8;
  Hypothesis a = BeamSearch(toy.params, toy.memory, cfg);
  Hypothesis b = BeamSearch(toy.params, toy.memory, cfg);
  CHECK(a.tokens == b.tokens);
  CHECK(a.score == b.score);
  CHECK(a.normalized_score == b.normalized_score);
  CHECK(a.tokens.back() == 3);
  CHECK(a.score <= 0.0);
  CHECK_THROWS_AS(BeamSearch(toy.params, toy.memory, {0, 1.0, 4}),
                  std::invalid_argument);
}

TEST_CASE("wide beam equals exhaustive enumeration on toy models") {
  for (uint64_t seed = 100; seed < 110; ++seed) {
    Toy toy = MakeToy(seed, 5);
    const int max_len = 4;
    BeamConfig cfg;
    cfg.beam_size = 1000;  // wider than the whole candidate tree: no pruning
    cfg.max_len_override = max_len;
    Hypothesis beam = BeamSearch(toy.params, toy.memory, cfg);
    Hypothesis exact = oracle::BestByEnumeration(toy.params, toy.memory, max_len);
    CHECK(beam.tokens == exact.tokens);
    CHECK(beam.normalized_score == doctest::Approx(exact.normalized_score).epsilon(1e-9));
  }
}

TEST_CASE("wider beams do not lose normalized score (statistically)") {
  int regressions = 0, trials = 0;
  for (uint64_t seed = 200; seed < 240; ++seed) {
    Toy toy = MakeToy(seed);
    BeamConfig narrow{2, 1.0, 6};
    BeamConfig wide{8, 1.0, 6};
    const double s_narrow = BeamSearch(toy.params, toy.memory, narrow).normalized_score;
    const double s_wide = BeamSearch(toy.params, toy.memory, wide).normalized_score;
    ++trials;
    if (s_wide < s_narrow - 1e-12) ++regressions;
  }
  CHECK(trials == 40);
  CHECK(regressions <= 2);  // >= 95%
}

TEST_CASE("wer hand-aligned cases") {
  WerBreakdown zero = Wer("it's delightful", "it's delightful");
  CHECK(zero.wer() == 0.0);
  CHECK(zero.substitutions == 0);
  CHECK(zero.reference_words == 2);

  // Case-insensitive comparison.
  CHECK(Wer("Good Day", "good day").wer() == 0.0);

  WerBreakdown sub = Wer("it's delightful", "its delightful");
  CHECK(sub.substitutions == 1);
  CHECK(sub.deletions == 0);
  CHECK(sub.insertions == 0);
  CHECK(sub.wer() == doctest::Approx(0.5));

  WerBreakdown del = Wer("a b c", "a c");
  CHECK(del.deletions == 1);
  CHECK(del.substitutions == 0);
  CHECK(del.insertions == 0);
  CHECK(del.wer() == doctest::Approx(1.0 / 3));

  CHECK_THROWS_AS(Wer("", "something"), std::invalid_argument);
  // WER can exceed 1.
  CHECK(Wer("a", "x y z").wer() > 1.0);
}

TEST_CASE("wer swaps deletions and insertions under ref/hyp exchange") {
  Rng rng(31);
  const std::vector<std::string> words = {"a", "b", "c", "d"};
  for (int trial = 0; trial < 50; ++trial) {
    auto make = [&](size_t len) {
      std::string s;
      for (size_t i = 0; i < len; ++i) {
        s += words[rng.UniformInt(words.size())];
        s.push_back(' ');
      }
      return s;
    };
    const std::string x = make(1 + rng.UniformInt(8));
    const std::string y = make(1 + rng.UniformInt(8));
    WerBreakdown xy = Wer(x, y);
    WerBreakdown yx = Wer(y, x);
    CHECK(xy.substitutions == yx.substitutions);
    CHECK(xy.deletions == yx.insertions);
    CHECK(xy.insertions == yx.deletions);
  }
}

TEST_CASE("wer totals match an independent edit-distance computation") {
  Rng rng(37);
  const std::vector<std::string> words = {"aa", "bb", "cc", "dd", "ee"};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> r, h;
    const size_t nr = 1 + rng.UniformInt(10), nh = rng.UniformInt(10);
    for (size_t i = 0; i < nr; ++i) r.push_back(words[rng.UniformInt(words.size())]);
    for (size_t i = 0; i < nh; ++i) h.push_back(words[rng.UniformInt(words.size())]);
    std::string rs, hs;
    for (const auto& w : r) rs += w + " ";
    for (const auto& w : h) hs += w + " ";
    WerBreakdown b = Wer(rs, hs);
    CHECK(b.substitutions + b.deletions + b.insertions == oracle::EditDistance(r, h));
  }
}

TEST_CASE("wer normalization keeps apostrophes, strips other punctuation") {
  CHECK(NormalizeForWer("It's DELIGHTFUL!") == "it's delightful");
  CHECK(Wer(NormalizeForWer("It's fine."), NormalizeForWer("it's fine")).wer() == 0.0);
}

TEST_CASE("bleu identities and smoothing behavior") {
  const std::vector<std::string> refs = {
      "the cat sat on the mat",
      "a quick brown fox jumps over the lazy dog",
      "it is a delightful day today",
      "speech maps to text",
      "numbers like 3.5 stay whole"};
  SUBCASE("perfect hypotheses score 100") {
    CHECK(CorpusBleu(refs, refs) == doctest::Approx(100.0));
  }
  SUBCASE("zero 4-gram overlap stays positive but small under smoothing") {
    const std::vector<std::string> hyps = {
        "cat the on sat mat the",
        "fox brown quick a dog lazy the over jumps",
        "day delightful a is it today",
        "text to maps speech",
        "whole stay 3.5 like numbers"};
    const double score = CorpusBleu(refs, hyps);
    CHECK(score > 0.0);
    CHECK(score < 5.0);
  }
  SUBCASE("doubling the corpus leaves the score unchanged") {
    std::vector<std::string> hyps = {
        "the cat sat on a mat",
        "a quick brown fox jumped over the lazy dog",
        "it is delightful today",
        "speech maps into text",
        "numbers like 3.5 stay"};
    const double once = CorpusBleu(refs, hyps);
    std::vector<std::string> r2 = refs, h2 = hyps;
    r2.insert(r2.end(), refs.begin(), refs.end());
    h2.insert(h2.end(), hyps.begin(), hyps.end());
    CHECK(CorpusBleu(r2, h2) == doctest::Approx(once).epsilon(1e-12));
  }
  SUBCASE("sentence order does not matter") {
    std::vector<std::string> hyps = {
        "the cat sat on a mat",
        "a quick brown fox jumped over the lazy dog",
        "it is delightful today",
        "speech maps into text",
        "numbers like 3.5 stay"};
    std::vector<std::string> r2 = refs, h2 = hyps;
    std::swap(r2[0], r2[3]);
    std::swap(h2[0], h2[3]);
    CHECK(CorpusBleu(r2, h2) == doctest::Approx(CorpusBleu(refs, hyps)).epsilon(1e-12));
  }
  SUBCASE("empty corpus is rejected") {
    CHECK_THROWS_AS(CorpusBleu({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(CorpusBleu(refs, {"one"}), std::invalid_argument);
  }
}

TEST_CASE("bleu tokenizer splits punctuation but not decimals or apostrophes") {
  auto toks = BleuTokenize("It's 3.5 degrees, \"cold\" today.");
  const std::vector<std::string> expect = {"It's", "3.5", "degrees", ",", "\"",
                                           "cold", "\"", "today", "."};
  CHECK(toks == expect);
}

TEST_CASE("bleu matches the independent scorer within 0.1 on a fixture") {
  const std::vector<std::string> refs = {
      "the meeting starts at nine",
      "she bought three apples and a pear",
      "rain is expected later tonight",
      "the model decodes speech into text",
      "he plays the violin very well",
      "this road leads to the harbor",
      "the cat slept on the warm stone",
      "we measured the error rate twice",
      "a long sentence with many common words in it",
      "short one",
      "the train was delayed by snow",
      "children were reading in the library",
      "the recipe needs two eggs",
      "her answer was mostly correct",
      "the bridge opened last summer",
      "masks hide part of the input",
      "the committee approved the plan",
      "wind turbines stood along the coast",
      "the translation improved with more data",
      "every word counts in the final score"};
  std::vector<std::string> hyps = {
      "the meeting starts at ten",
      "she bought three apples and pears",
      "rain expected later tonight",
      "the model decodes speech to text",
      "he plays violin very well",
      "this road leads to a harbor",
      "a cat slept on the warm stone",
      "we measured error rates twice",
      "a long sentence with many words in it",
      "short one",
      "the train was delayed by the snow",
      "children read in the library",
      "the recipe needs two eggs",
      "her answer was mostly right",
      "the bridge opened in summer",
      "masks hide parts of the input",
      "the committee has approved the plan",
      "wind turbines stand along the coast",
      "the translation improves with more data",
      "every word counts in the score"};
  const double ours = CorpusBleu(refs, hyps);
  std::vector<std::vector<std::string>> rt, ht;
  for (const auto& r : refs) rt.push_back(BleuTokenize(r));
  for (const auto& h : hyps) ht.push_back(BleuTokenize(h));
  const double reference = oracle::BleuScore(rt, ht);
  CHECK(std::abs(ours - reference) < 0.1);
  CHECK(ours > 20.0);
  CHECK(ours < 80.0);
}
