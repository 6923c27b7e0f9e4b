// tests/simulation.cc

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


#include "simulation.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "langsel/rng.h"

namespace langsel::testing {

LanguageModel SourceBigram(const std::vector<std::string> &words,
                           double end_prob, uint64_t seed) {
  constexpr int kFavoured = 6;
  constexpr double kFavouredMass = 0.75;
  Rng rng(seed);
  Vocabulary vocab(words);
  std::vector<NGramTable> tables(2);
  double word_mass = (1.0 - end_prob) / static_cast<double>(words.size());
  tables[0][{Vocabulary::kBosId}] = {kLogProbFloor, std::nullopt};
  tables[0][{Vocabulary::kEosId}] = {std::log10(end_prob), std::nullopt};
  tables[0][{Vocabulary::kUnkId}] = {kLogProbFloor, std::nullopt};
  for (const std::string &w : words)
    tables[0][{vocab.Id(w)}] = {std::log10(word_mass), std::nullopt};

  std::vector<WordId> contexts{Vocabulary::kBosId};
  for (const std::string &w : words) contexts.push_back(vocab.Id(w));
  for (WordId h : contexts) {
    bool begin = h == Vocabulary::kBosId;
    tables[1][{h, Vocabulary::kEosId}] = {
        begin ? kLogProbFloor : std::log10(end_prob), std::nullopt};
    std::vector<WordId> pool;
    for (const std::string &w : words) pool.push_back(vocab.Id(w));
    std::vector<double> weight(kFavoured);
    double total = 0.0;
    for (double &x : weight) total += (x = 0.2 + rng.NextDouble());
    double mass = begin ? kFavouredMass : kFavouredMass * (1.0 - end_prob);
    for (int k = 0; k < kFavoured; ++k) {
      size_t r = k + rng.NextBelow(pool.size() - k);
      std::swap(pool[k], pool[r]);
      tables[1][{h, pool[k]}] = {std::log10(mass * weight[k] / total), std::nullopt};
    }
  }
  return LanguageModel::FromProbabilities(2, vocab, std::move(tables), "source");
}

PipelineConfig Simulation::Pipeline() const {
  PipelineConfig cfg;
  cfg.lm0 = lm0;
  cfg.lms = lms;
  return cfg;
}

std::string Simulation::ReferenceText() const {
  std::string out;
  for (const SimUtterance &u : utterances) out += u.id + " " + JoinWords(u.reference) + "\n";
  return out;
}

std::string Simulation::ConfusionText() const {
  std::ostringstream os;
  for (const auto &[word, conf] : noise.table)
    for (const Confusable &c : conf) os << word << ' ' << c.word << ' ' << c.penalty << '\n';
  return os.str();
}

Simulation BuildSimulation(const SimulationOptions &opts) {
  Simulation sim;
  sim.names = {"en", "vi"};
  sim.words.resize(2);
  const char prefix[2] = {'e', 'v'};
  for (size_t l = 0; l < 2; ++l) {
    for (int k = 0; k < opts.words_per_language; ++k) {
      char buf[16];
      std::snprintf(buf, sizeof(buf), "%c%02d", prefix[l], k);
      sim.words[l].push_back(buf);
    }
  }

  for (size_t l = 0; l < 2; ++l) {
    LanguageModel source = SourceBigram(sim.words[l], 0.2, UtteranceSeed(opts.seed, 100 + l));
    sim.train.push_back(
        SampleSentences(source, opts.train_sentences, UtteranceSeed(opts.seed, 200 + l)));
    sim.test.push_back(
        SampleSentences(source, opts.test_sentences, UtteranceSeed(opts.seed, 300 + l)));
    auto lm = std::make_shared<LanguageModel>(TrainWittenBell(sim.train[l], opts.order));
    lm->SetName(sim.names[l]);
    sim.lms.push_back(lm);
  }
  sim.lm0 = std::make_shared<LanguageModel>(Interpolate(*sim.lms[0], *sim.lms[1], 0.5));

  const int n = opts.words_per_language;
  for (size_t l = 0; l < 2; ++l) {
    for (int k = 0; k < n; ++k) {
      const std::string &w = sim.words[l][k];
      sim.noise.Add(w, sim.words[l][(k + 1) % n], opts.confusion_penalty);
      sim.noise.Add(w, sim.words[1 - l][k], opts.confusion_penalty);
    }
  }
  sim.noise.substitution_rate = opts.substitution_rate;
  sim.noise.noise_spread = opts.noise_spread;

  GeneratorConfig gen;
  gen.max_alternatives = opts.max_alternatives;
  for (const auto &ws : sim.words) gen.vocabulary.insert(gen.vocabulary.end(), ws.begin(), ws.end());
  std::sort(gen.vocabulary.begin(), gen.vocabulary.end());
  uint64_t index = 0;
  for (size_t l = 0; l < 2; ++l) {
    for (size_t i = 0; i < sim.test[l].size(); ++i, ++index) {
      SimUtterance u;
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%s-%03zu", sim.names[l].c_str(), i);
      u.id = buf;
      u.reference = sim.test[l][i];
      u.language = l;
      gen.seed = UtteranceSeed(opts.seed, index);
      u.lattice = GenerateLattice(u.reference, sim.noise, gen, u.id);
      sim.utterances.push_back(std::move(u));
    }
  }
  return sim;
}

}  // namespace langsel::testing
