// tests/textpipe_test.cc

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
#include <set>

#include "duotrain/textpipe/lexicon.h"
#include "duotrain/textpipe/noise.h"
#include "duotrain/textpipe/phonemize.h"
#include "duotrain/textpipe/subword.h"
#include "testutil.h"

using namespace duotrain;
using namespace duotrain::text;

namespace {

Lexicon MiniLexicon() {
  return ParseLexiconFile(testutil::FixturePath("mini_lexicon.txt"));
}

}  // namespace

TEST_CASE("lexicon parses plain entries, comments and alternates") {
  Lexicon lex = ParseLexicon(
      ";;; a comment line\n"
      "DELIGHTFUL  D IH0 L AY1 T F AH0 L\n"
      "A  AH0\n"
      "A(2)  EY1\n");
  REQUIRE(lex.entries.count("DELIGHTFUL") == 1);
  CHECK(lex.entries.at("DELIGHTFUL") ==
        std::vector<Pronunciation>{{"D", "IH0", "L", "AY1", "T", "F", "AH0", "L"}});
  // Alternates append in file order to the same word.
  CHECK(lex.entries.at("A") == std::vector<Pronunciation>{{"AH0"}, {"EY1"}});
  CHECK(lex.entries.size() == 2);
}

TEST_CASE("lexicon rejects unknown phonemes and empty pronunciations") {
  CHECK_THROWS_WITH_AS(ParseLexicon("GOOD  G UH1 D\nBAD  QX1\n"),
                       doctest::Contains("line 2"), std::runtime_error);
  CHECK_THROWS_AS(ParseLexicon("EMPTY\n"), std::runtime_error);
  // Stress digits other than 0/1/2 are not phonemes.
  CHECK_THROWS_AS(ParseLexicon("X  AH3\n"), std::runtime_error);
}

TEST_CASE("lexicon parse is idempotent through serialization") {
  Lexicon first = MiniLexicon();
  Lexicon second = ParseLexicon(SerializeLexicon(first));
  CHECK(first.entries == second.entries);
}

TEST_CASE("phonemize produces the stress-marked, word-initial-marked form") {
  Lexicon lex = MiniLexicon();
  PhonemeVocab vocab = BuildPhonemeVocab(lex);
  auto res = Phonemize("It's delightful", lex, vocab);
  CHECK(RenderTokens(res.ids, vocab) == "_IH1 T S _D IH0 L AY1 T F AH0 L");
  CHECK(res.oov_words == 0);
}

TEST_CASE("phonemize marks single-phoneme words and uses first pronunciations") {
  Lexicon lex = MiniLexicon();
  PhonemeVocab vocab = BuildPhonemeVocab(lex);
  auto res = Phonemize("A", lex, vocab);
  CHECK(RenderTokens(res.ids, vocab) == "_AH0");
}

TEST_CASE("phonemize of a repeated word is the single-word output repeated") {
  Lexicon lex = MiniLexicon();
  PhonemeVocab vocab = BuildPhonemeVocab(lex);
  auto once = Phonemize("delightful", lex, vocab).ids;
  auto twice = Phonemize("delightful delightful", lex, vocab).ids;
  std::vector<int> expected = once;
  expected.insert(expected.end(), once.begin(), once.end());
  CHECK(twice == expected);
}

TEST_CASE("phonemize falls back to letter spelling for unknown words") {
  Lexicon lex = MiniLexicon();
  PhonemeVocab vocab = BuildPhonemeVocab(lex);
  // "CB" is not a word in the fixture, but C and B are.
  auto res = Phonemize("cb", lex, vocab);
  CHECK(res.oov_words == 1);
  CHECK(RenderTokens(res.ids, vocab) == "_S IY1 _B IY1");
}

TEST_CASE("phonemize rejects empty and fully unmappable input") {
  Lexicon lex = MiniLexicon();
  PhonemeVocab vocab = BuildPhonemeVocab(lex);
  CHECK_THROWS_AS(Phonemize("", lex, vocab), std::invalid_argument);
  CHECK_THROWS_AS(Phonemize("123 456", lex, vocab), std::runtime_error);
}

TEST_CASE("phonemize marks a token iff it starts a word") {
  Lexicon lex = MiniLexicon();
  PhonemeVocab vocab = BuildPhonemeVocab(lex);
  const std::string sentence = "good morning it's a very delightful day today";
  auto res = Phonemize(sentence, lex, vocab);
  // Build the expected mark positions straight from the lexicon.
  std::vector<bool> expect_marked;
  for (const auto& w : {"GOOD", "MORNING", "IT'S", "A", "VERY", "DELIGHTFUL",
                        "DAY", "TODAY"}) {
    const auto& pron = lex.entries.at(w).front();
    for (size_t i = 0; i < pron.size(); ++i) expect_marked.push_back(i == 0);
  }
  REQUIRE(res.ids.size() == expect_marked.size());
  for (size_t i = 0; i < res.ids.size(); ++i) {
    const std::string& tok = vocab.Token(res.ids[i]);
    CHECK(expect_marked[i] == (tok[0] == '_'));
  }
}

TEST_CASE("phoneme vocabulary: specials, occurrence set, word-initial marks") {
  SUBCASE("empty lexicon yields exactly the specials") {
    PhonemeVocab v = BuildPhonemeVocab(Lexicon{});
    CHECK(v.tokens == std::vector<std::string>{"<pad>", "<unk>", "<eos>", "<NOISE>"});
  }
  SUBCASE("single entry adds the phoneme and its marked variant") {
    PhonemeVocab v = BuildPhonemeVocab(ParseLexicon("A  AH0\n"));
    CHECK(v.size() == 6);
    CHECK(v.Contains("AH0"));
    CHECK(v.Contains("_AH0"));
  }
  SUBCASE("only word-initial phonemes get marked variants") {
    PhonemeVocab v = BuildPhonemeVocab(ParseLexicon("AB  AH0 B\n"));
    // B never starts a word here, so no _B.
    CHECK(v.Contains("_AH0"));
    CHECK(v.Contains("B"));
    CHECK(!v.Contains("_B"));
    CHECK(v.size() == 7);
  }
  SUBCASE("marking can be disabled") {
    PhonemeVocab v = BuildPhonemeVocab(ParseLexicon("A  AH0\n"), false);
    CHECK(v.size() == 5);
    CHECK(!v.Contains("_AH0"));
  }
  SUBCASE("ids are a bijection with specials leading") {
    PhonemeVocab v = BuildPhonemeVocab(MiniLexicon());
    CHECK(v.index.at("<pad>") == 0);
    CHECK(v.index.at("<unk>") == 1);
    CHECK(v.index.at("<eos>") == 2);
    CHECK(v.index.at("<NOISE>") == 3);
    for (int i = 0; i < v.size(); ++i) CHECK(v.index.at(v.Token(i)) == i);
  }
}

TEST_CASE("vocab files round-trip one token per line") {
  testutil::TempDir tmp("vocab");
  PhonemeVocab v = BuildPhonemeVocab(MiniLexicon());
  SaveVocab(v, tmp.File("phoneme_vocab.txt"));
  PhonemeVocab loaded = LoadVocab(tmp.File("phoneme_vocab.txt"));
  CHECK(loaded.tokens == v.tokens);
}

TEST_CASE("subword learning reproduces the hand-run merge order") {
  // "aaaa aaaa": pair (a,a) dominates with count 4, then (_a,aa) wins the
  // tie against (aa,a) lexicographically.
  SubwordVocab v = LearnSubwords({"aaaa aaaa"}, 8);
  REQUIRE(v.merges.size() == 2);
  CHECK(v.merges[0] == std::pair<std::string, std::string>{"a", "a"});
  CHECK(v.merges[1] == std::pair<std::string, std::string>{"_a", "aa"});
  CHECK(v.size() == 8);
  // "aa" exists before any "aaa"-family token.
  auto pos = [&](const std::string& t) {
    return std::find(v.tokens.begin(), v.tokens.end(), t) - v.tokens.begin();
  };
  CHECK(pos("aa") < pos("_aaa"));
}

TEST_CASE("subword encode/decode round-trips covered text") {
  SubwordVocab v = LearnSubwords({"It's delightful", "a delightful day"}, 60);
  for (const std::string s : {"It's delightful", "delightful day", "a day",
                              "It's a delightful delightful day"}) {
    CHECK(DecodeSubwords(EncodeSubwords(s, v), v) == s);
  }
  CHECK(EncodeSubwords("", v).empty());
  CHECK(DecodeSubwords({}, v).empty());
}

TEST_CASE("subword tokens carry the word-start mark convention") {
  SubwordVocab v = LearnSubwords({"IT ' S DELIGHTFUL", "IT IS DELIGHTFUL"}, 40);
  auto ids = EncodeSubwords("IT ' S DELIGHTFUL", v);
  // Exactly one leading-underscore token per input word.
  int word_starts = 0;
  for (int id : ids) {
    if (v.Token(id)[0] == '_') ++word_starts;
  }
  CHECK(word_starts == 4);
  CHECK(v.Token(ids[0])[0] == '_');
}

TEST_CASE("subword learner rejects impossible sizes, naming the minimum") {
  CHECK_THROWS_WITH_AS(LearnSubwords({"ab"}, 5), doctest::Contains("minimum"),
                       std::invalid_argument);
  CHECK_THROWS_AS(LearnSubwords({" "}, 50), std::invalid_argument);
}

TEST_CASE("characters absent from training surface as <unk> and are flagged") {
  SubwordVocab v = LearnSubwords({"abc abd"}, 20);
  auto ids = EncodeSubwords("abz", v);
  CHECK(std::count(ids.begin(), ids.end(), SubwordVocab::kUnk) == 1);
  // The round trip breaks, visibly.
  CHECK(DecodeSubwords(ids, v) != "abz");
}

TEST_CASE("subword segmentation is deterministic and batch-independent") {
  SubwordVocab v = LearnSubwords({"the good day", "the good morning"}, 40);
  auto joint = EncodeSubwords("the good", v);
  auto a = EncodeSubwords("the", v);
  auto b = EncodeSubwords("good", v);
  std::vector<int> stitched = a;
  stitched.insert(stitched.end(), b.begin(), b.end());
  CHECK(joint == stitched);
  CHECK(EncodeSubwords("the good", v) == joint);
}

TEST_CASE("subword files round-trip") {
  testutil::TempDir tmp("subword");
  SubwordVocab v = LearnSubwords({"It's delightful", "a delightful day"}, 50);
  SaveSubwords(v, tmp.File("subwords.txt"), tmp.File("merges.txt"));
  SubwordVocab loaded = LoadSubwords(tmp.File("subwords.txt"), tmp.File("merges.txt"));
  CHECK(loaded.tokens == v.tokens);
  CHECK(loaded.merges == v.merges);
  CHECK(DecodeSubwords(EncodeSubwords("It's delightful", loaded), loaded) ==
        "It's delightful");
}

TEST_CASE("character-input mode tokenizes with the same marking scheme") {
  PhonemeVocab v = BuildCharVocab({"good day", "dog"});
  auto res = CharTokenize("good dog", v);
  CHECK(RenderTokens(res.ids, v) == "_G O O D _D O G");
}

TEST_CASE("noise masks the worked example position") {
  Lexicon lex = MiniLexicon();
  PhonemeVocab vocab = BuildPhonemeVocab(lex);
  auto seq = Phonemize("It's delightful", lex, vocab).ids;
  REQUIRE(seq.size() == 11);
  // One masked token out of eleven; find a seed that draws the AY1 slot.
  bool found = false;
  for (uint64_t seed = 0; seed < 2000 && !found; ++seed) {
    auto noised = ApplyNoise(seq, 1.0 / 11.0, seed);
    if (RenderTokens(noised, vocab) ==
        "_IH1 T S _D IH0 L <NOISE> T F AH0 L") {
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("noise count is exact for every seed and ratio") {
  std::vector<int> seq(10, 7);
  for (uint64_t seed = 0; seed < 100; ++seed) {
    auto out = ApplyNoise(seq, 0.2, seed);
    CHECK(std::count(out.begin(), out.end(), PhonemeVocab::kNoise) == 2);
  }
  // round() semantics at the boundary: 0.25 * 10 = 2.5 rounds away from zero.
  auto boundary = ApplyNoise(seq, 0.25, uint64_t{1});
  CHECK(std::count(boundary.begin(), boundary.end(), PhonemeVocab::kNoise) == 3);
  CHECK(ApplyNoise(seq, 0.0, uint64_t{5}) == seq);
  auto all = ApplyNoise(seq, 1.0, uint64_t{5});
  CHECK(std::count(all.begin(), all.end(), PhonemeVocab::kNoise) == 10);
}

TEST_CASE("noise is deterministic given the seed and preserves other tokens") {
  std::vector<int> seq = {4, 5, 6, 7, 8, 9, 10, 11, 12, 13};
  auto a = ApplyNoise(seq, 0.3, uint64_t{77});
  auto b = ApplyNoise(seq, 0.3, uint64_t{77});
  CHECK(a == b);
  for (size_t i = 0; i < seq.size(); ++i) {
    if (a[i] != PhonemeVocab::kNoise) CHECK(a[i] == seq[i]);
  }
}

TEST_CASE("noise selection is uniform across positions") {
  std::vector<int> seq(10, 20);
  std::vector<int> hits(10, 0);
  const int kDraws = 10000;
  Rng rng(123);
  for (int d = 0; d < kDraws; ++d) {
    auto out = ApplyNoise(seq, 0.1, rng);
    for (size_t i = 0; i < out.size(); ++i) {
      if (out[i] == PhonemeVocab::kNoise) ++hits[i];
    }
  }
  const double p = 0.1;
  const double sigma = std::sqrt(p * (1 - p) / kDraws);
  for (int h : hits) {
    const double freq = static_cast<double>(h) / kDraws;
    CHECK(std::abs(freq - p) <= 3 * sigma);
  }
}
