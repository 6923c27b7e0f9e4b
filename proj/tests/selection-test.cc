// tests/selection-test.cc

// Copyright 2026  The langsel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABILITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "langsel/selection.h"

#include <gtest/gtest.h>

#include "langsel/am-surrogate.h"
#include "langsel/eval.h"
#include "test-util.h"

namespace langsel {
namespace {

using testing::EnumeratePaths;

Corpus EnglishLike() {
  return {{"the", "cat", "sat"}, {"the", "dog", "ran"}, {"a", "cat", "ran"},
          {"the", "cat", "ran", "home"}, {"a", "dog", "sat"}};
}

Corpus VietLike() {
  return {{"toi", "di", "hoc"}, {"ban", "di", "lam"}, {"toi", "an", "com"},
          {"ban", "an", "com", "chua"}, {"toi", "di", "lam"}};
}

PipelineConfig TwoLanguages() {
  auto lm1 = std::make_shared<LanguageModel>(TrainWittenBell(EnglishLike(), 3));
  auto lm2 = std::make_shared<LanguageModel>(TrainWittenBell(VietLike(), 3));
  PipelineConfig cfg;
  cfg.lm0 = std::make_shared<LanguageModel>(Interpolate(*lm1, *lm2, 0.5));
  cfg.lms = {lm1, lm2};
  return cfg;
}

Lattice Clean(const Sentence &words) {
  GeneratorConfig g;
  std::set<std::string> v(words.begin(), words.end());
  g.vocabulary.assign(v.begin(), v.end());
  return GenerateLattice(words, ConfusionModel{}, g, "clean");
}

Candidate Cand(size_t id, double score, size_t len = 3) {
  Candidate c;
  c.language_id = id;
  c.language_score = score;
  c.words.assign(len, "w");
  return c;
}

TEST(SelectTest, Argmax) {
  std::vector<Candidate> c{Cand(0, -12.0), Cand(1, -7.5)};
  EXPECT_EQ(SelectCandidate(c).language_id, 1u);
}

TEST(SelectTest, TieGoesToFirstLanguage) {
  std::vector<Candidate> c{Cand(0, -5.0), Cand(1, -5.0)};
  EXPECT_EQ(SelectCandidate(c).language_id, 0u);
  std::vector<Candidate> reversed{Cand(1, -5.0), Cand(0, -5.0)};
  EXPECT_EQ(SelectCandidate(reversed).language_id, 0u);
}

TEST(SelectTest, InvariantUnderShiftAndMonotoneMaps) {
  Rng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Candidate> c;
    for (size_t i = 0; i < 4; ++i) c.push_back(Cand(i, -20.0 * rng.NextDouble()));
    size_t base = SelectCandidate(c).language_id;
    double shift = 50.0 * rng.NextSymmetric();
    std::vector<Candidate> shifted = c, mapped = c;
    for (Candidate &x : shifted) x.language_score += shift;
    for (Candidate &x : mapped) x.language_score = std::exp(0.1 * x.language_score);
    EXPECT_EQ(SelectCandidate(shifted).language_id, base);
    EXPECT_EQ(SelectCandidate(mapped).language_id, base);
  }
}

TEST(SelectTest, NormalizationFlag) {
  // Raw: -6 beats -8.  Per word: -8/8 = -1 beats -6/3 = -2.
  std::vector<Candidate> c{Cand(0, -6.0, 2), Cand(1, -8.0, 7)};
  EXPECT_EQ(SelectCandidate(c, false).language_id, 0u);
  EXPECT_EQ(SelectCandidate(c, true).language_id, 1u);
}

TEST(SelectTest, EmptyList) { EXPECT_THROW(SelectCandidate({}), Error); }

TEST(CandidatesTest, SingleModelEqualsPlainRescoring) {
  PipelineConfig cfg = TwoLanguages();
  cfg.lms.resize(1);
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    Lattice lat = testing::RandomLattice(rng, 6, 6, {"the", "cat", "toi", "di"});
    Lattice first = FirstPass(lat, cfg);
    std::vector<Candidate> c = MakeCandidates(first, cfg);
    ASSERT_EQ(c.size(), 1u);
    Path plain = BestPath(Rescore(first, *cfg.lms[0]), {});
    EXPECT_EQ(c[0].words, plain.words);
    DecodeResult r = Decode(lat, cfg);
    EXPECT_EQ(r.selected.words, plain.words);
    EXPECT_DOUBLE_EQ(r.margin, 0.0);
  }
}

TEST(CandidatesTest, LanguageScoresAreSentenceLogProbs) {
  PipelineConfig cfg = TwoLanguages();
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    Lattice lat = testing::RandomLattice(rng, 6, 6, {"the", "cat", "toi", "di"});
    for (const Candidate &c : MakeCandidates(FirstPass(lat, cfg), cfg))
      EXPECT_NEAR(c.language_score, cfg.lms[c.language_id]->SentenceLogProb(c.words), 1e-9);
  }
}

TEST(CandidatesTest, DisjointVocabulariesAndUnknownPenalty) {
  PipelineConfig cfg = TwoLanguages();
  std::vector<Candidate> c = MakeCandidates(FirstPass(Clean({"the", "cat", "sat"}), cfg), cfg);
  ASSERT_EQ(c.size(), 2u);
  for (const std::string &w : c[0].words) EXPECT_TRUE(cfg.lms[0]->Vocab().Contains(w));
  EXPECT_GT(c[0].language_score, c[1].language_score + 3.0);
}

TEST(CandidatesTest, OrderOfModelsDoesNotMatter) {
  PipelineConfig cfg = TwoLanguages();
  PipelineConfig swapped = cfg;
  std::swap(swapped.lms[0], swapped.lms[1]);
  Lattice first = FirstPass(Clean({"toi", "di", "hoc"}), cfg);
  auto a = MakeCandidates(first, cfg), b = MakeCandidates(first, swapped);
  EXPECT_EQ(a[0].words, b[1].words);
  EXPECT_EQ(a[1].words, b[0].words);
  EXPECT_EQ(a[0].language_score, b[1].language_score);
}

TEST(CandidatesTest, ParallelMatchesSequential) {
  PipelineConfig cfg = TwoLanguages();
  PipelineConfig par = cfg;
  par.parallel_languages = true;
  Rng rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    Lattice lat = testing::RandomLattice(rng, 7, 8, {"the", "cat", "toi", "di"});
    DecodeResult a = Decode(lat, cfg), b = Decode(lat, par);
    ASSERT_EQ(a.all_candidates.size(), b.all_candidates.size());
    for (size_t i = 0; i < a.all_candidates.size(); ++i) {
      EXPECT_EQ(a.all_candidates[i].words, b.all_candidates[i].words);
      EXPECT_EQ(a.all_candidates[i].language_score, b.all_candidates[i].language_score);
    }
  }
}

TEST(DecodeTest, CleanLatticeSelectsItsLanguage) {
  PipelineConfig cfg = TwoLanguages();
  Sentence ref{"the", "dog", "ran"};
  DecodeResult r = Decode(Clean(ref), cfg);
  EXPECT_EQ(r.selected.language_id, 0u);
  EXPECT_EQ(r.selected.words, ref);
  EXPECT_EQ(r.first_pass_words, ref);
  EXPECT_FALSE(r.low_margin);
  Sentence viet{"ban", "an", "com"};
  EXPECT_EQ(Decode(Clean(viet), cfg).selected.language_id, 1u);
}

TEST(DecodeTest, SelectedIsAmongCandidatesAndDeterministic) {
  PipelineConfig cfg = TwoLanguages();
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    Lattice lat = testing::RandomLattice(rng, 6, 6, {"the", "cat", "toi", "di"});
    DecodeResult a = Decode(lat, cfg), b = Decode(lat, cfg);
    EXPECT_EQ(a.selected.words, b.selected.words);
    EXPECT_EQ(a.selected.language_score, b.selected.language_score);
    bool member = false;
    for (const Candidate &c : a.all_candidates) {
      member |= c.language_id == a.selected.language_id && c.words == a.selected.words;
      EXPECT_LE(c.language_score, a.selected.language_score);
    }
    EXPECT_TRUE(member);
  }
}

TEST(DecodeTest, MoreFrequentCorpusWins) {
  // Shared vocabulary; the sentence is 5x more frequent in corpus 1.
  Corpus c1, c2;
  Sentence s{"p", "q", "r"};
  for (int i = 0; i < 5; ++i) c1.push_back(s);
  c2.push_back(s);
  Corpus filler{{"r", "q", "p"}, {"q", "p"}, {"p", "r"}, {"r", "r", "q"}};
  for (const Sentence &f : filler) {
    c1.push_back(f);
    c2.push_back(f);
    c2.push_back(f);
  }
  auto lm1 = std::make_shared<LanguageModel>(TrainWittenBell(c1, 3));
  auto lm2 = std::make_shared<LanguageModel>(TrainWittenBell(c2, 3));
  EXPECT_GT(lm1->SentenceLogProb(s), lm2->SentenceLogProb(s));
  PipelineConfig cfg;
  cfg.lm0 = std::make_shared<LanguageModel>(Interpolate(*lm1, *lm2, 0.5));
  cfg.lms = {lm1, lm2};
  EXPECT_EQ(Decode(Clean(s), cfg).selected.language_id, 0u);
}

TEST(DecodeTest, HomographTiesToFirstLanguageWithLowMargin) {
  Corpus c1{{"ok"}, {"e1", "e2"}}, c2{{"ok"}, {"v1", "v2"}};
  auto lm1 = std::make_shared<LanguageModel>(TrainWittenBell(c1, 2));
  auto lm2 = std::make_shared<LanguageModel>(TrainWittenBell(c2, 2));
  PipelineConfig cfg;
  cfg.lm0 = std::make_shared<LanguageModel>(Interpolate(*lm1, *lm2, 0.5));
  cfg.lms = {lm1, lm2};
  DecodeResult r = Decode(Clean({"ok"}), cfg);
  EXPECT_EQ(r.all_candidates[0].language_score, r.all_candidates[1].language_score);
  EXPECT_EQ(r.selected.language_id, 0u);
  EXPECT_TRUE(r.low_margin);
}

TEST(DecodeTest, FirstPassIsRescoreWithLm0) {
  PipelineConfig cfg = TwoLanguages();
  Lattice lat = Clean({"the", "cat", "sat"});
  Lattice once = FirstPass(lat, cfg);
  Lattice twice = FirstPass(once, cfg);
  auto p1 = EnumeratePaths(once), p2 = EnumeratePaths(twice);
  ASSERT_EQ(p1.size(), p2.size());
  for (size_t i = 0; i < p1.size(); ++i) EXPECT_NEAR(p1[i].lm, p2[i].lm, 1e-9);
}

TEST(DecodeTest, KnownLanguage) {
  PipelineConfig cfg = TwoLanguages();
  Lattice lat = Clean({"toi", "an", "com"});
  DecodeResult r = DecodeKnownLanguage(lat, cfg, 1);
  ASSERT_EQ(r.all_candidates.size(), 1u);
  EXPECT_EQ(r.selected.language_id, 1u);
  EXPECT_THROW(DecodeKnownLanguage(lat, cfg, 2), Error);
}

TEST(DecodeTest, ConfigChecked) {
  PipelineConfig cfg = TwoLanguages();
  cfg.lms.clear();
  EXPECT_THROW(Decode(Clean({"the"}), cfg), Error);
}

TEST(DecodeTest, RecordFormat) {
  DecodeResult r;
  r.utt_id = "u1";
  r.selected = Cand(1, -3.5, 0);
  r.selected.words = {"x", "y"};
  r.all_candidates = {Cand(0, -7.25), r.selected};
  EXPECT_EQ(FormatDecodeRecord(r, {"en", "vi"}), "u1 vi -7.250000,-3.500000 x y");
}

TEST(DecodeTest, BorrowedWordsNeedTheOtherLanguage) {
  // "email" and "ok" occur in the matrix language only through the lattice;
  // "imeo" and "oke" are native look-alikes.
  Corpus vi{{"toi", "gui", "thu"}, {"toi", "gui", "imeo"}, {"ban", "gui", "thu"},
            {"imeo", "dep"}, {"oke", "ban"}, {"toi", "oke"}};
  Corpus en{{"send", "email"}, {"check", "email"}, {"email", "ok"}, {"ok", "send", "email"}};
  auto lm_vi = std::make_shared<LanguageModel>(TrainWittenBell(vi, 2));
  auto lm_en = std::make_shared<LanguageModel>(TrainWittenBell(en, 2));
  auto mixed = std::make_shared<LanguageModel>(Interpolate(*lm_vi, *lm_en, 0.5));

  ConfusionModel noise;
  noise.Add("email", "imeo", -0.1);
  noise.Add("ok", "oke", -0.1);
  noise.substitution_rate = 1.0;
  GeneratorConfig g;
  g.max_alternatives = 2;
  for (const auto &l : {vi, en})
    for (const Sentence &s : l) g.vocabulary.insert(g.vocabulary.end(), s.begin(), s.end());
  std::sort(g.vocabulary.begin(), g.vocabulary.end());
  g.vocabulary.erase(std::unique(g.vocabulary.begin(), g.vocabulary.end()), g.vocabulary.end());

  std::vector<Sentence> refs{{"toi", "gui", "email"}, {"email", "ok"}, {"ban", "gui", "email", "ok"}};
  std::vector<Sentence> hyp_mono, hyp_mixed;
  for (const Sentence &ref : refs) {
    Lattice lat = GenerateLattice(ref, noise, g);
    PipelineConfig cfg;
    cfg.lm0 = mixed;
    cfg.lms = {lm_vi};
    hyp_mono.push_back(DecodeKnownLanguage(lat, cfg, 0).selected.words);
    cfg.lms = {mixed};
    hyp_mixed.push_back(DecodeKnownLanguage(lat, cfg, 0).selected.words);
  }
  std::set<std::string> foreign{"email", "ok"};
  ForeignWordStats mono = ForeignWordAccuracy(refs, hyp_mono, foreign);
  ForeignWordStats both = ForeignWordAccuracy(refs, hyp_mixed, foreign);
  EXPECT_EQ(mono.total, 5);
  EXPECT_EQ(mono.correct, 0);
  EXPECT_EQ(both.correct, 5);
}

}  // namespace
}  // namespace langsel
