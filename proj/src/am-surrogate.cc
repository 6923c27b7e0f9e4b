// am-surrogate.cc

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

#include "langsel/am-surrogate.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "langsel/rng.h"

namespace langsel {

void ConfusionModel::Add(const std::string &word, const std::string &confusable,
                         double penalty) {
  if (!std::isfinite(penalty) || penalty > 0.0)
    throw Error("confusion penalty for '" + word + "' -> '" + confusable +
                "' must be finite and <= 0");
  if (word == confusable) return;
  std::vector<Confusable> &list = table[word];
  for (const Confusable &c : list)
    if (c.word == confusable) return;
  list.push_back(Confusable{confusable, penalty});
}

void ConfusionModel::Check(const std::set<std::string> &vocab) const {
  for (double rate : {substitution_rate, insertion_rate, deletion_rate})
    if (!(rate >= 0.0 && rate <= 1.0))
      throw Error("noise rates must lie in [0, 1]");
  if (!(noise_spread >= 0.0) || !std::isfinite(noise_spread))
    throw Error("noise spread must be finite and >= 0");
  if (deletion_penalty > 0.0 || insertion_penalty > 0.0)
    throw Error("deletion/insertion penalties must be <= 0");
  for (const auto &[word, list] : table) {
    for (const Confusable &c : list) {
      if (c.penalty > 0.0) throw Error("positive confusion penalty");
      if (!vocab.empty() && vocab.count(c.word) == 0)
        throw Error("confusable '" + c.word + "' of '" + word +
                    "' is not in the generator vocabulary");
    }
  }
}

ConfusionModel ReadConfusionTable(std::istream &is) {
  ConfusionModel model;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::vector<std::string> f = SplitWhitespace(line);
    if (f.empty() || f[0][0] == '#') continue;
    if (f.size() != 3)
      throw ParseError("expected 'word confusable penalty'", line_no);
    double penalty = 0.0;
    const std::string &p = f[2];
    auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), penalty);
    if (ec != std::errc() || ptr != p.data() + p.size())
      throw ParseError("non-numeric penalty '" + p + "'", line_no);
    try {
      model.Add(f[0], f[1], penalty);
    } catch (const Error &e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return model;
}

Lattice GenerateLattice(const Sentence &reference, const ConfusionModel &noise,
                        const GeneratorConfig &cfg, const std::string &utt_id) {
  if (reference.empty()) throw Error("cannot generate a lattice for an empty reference");
  if (cfg.max_alternatives < 1) throw Error("max_alternatives must be >= 1");
  for (const std::string &w : reference)
    if (!std::binary_search(cfg.vocabulary.begin(), cfg.vocabulary.end(), w))
      throw Error("reference word '" + w + "' is not in the generator vocabulary");

  Rng rng(cfg.seed);
  const auto n = static_cast<NodeId>(reference.size());
  Lattice lat;
  lat.utt_id = utt_id;
  lat.num_nodes = n + 1;
  lat.start = 0;
  lat.finals = {n};
  auto noise_draw = [&]() { return noise.noise_spread * rng.NextSymmetric(); };
  auto add_arc = [&](NodeId from, NodeId to, const std::string &word, double am) {
    lat.arcs.push_back(LatticeArc{from, to, word, am, 0.0});
  };

  static const std::vector<Confusable> kNone;
  for (NodeId j = 0; j < n; ++j) {
    const std::string &word = reference[j];
    double u_sub = rng.NextDouble();
    double ref_am = noise_draw();
    add_arc(j, j + 1, word, ref_am);

    if (u_sub < noise.substitution_rate) {
      auto it = noise.table.find(word);
      const std::vector<Confusable> &conf = it == noise.table.end() ? kNone : it->second;
      size_t k = std::min(static_cast<size_t>(cfg.max_alternatives - 1), conf.size());
      std::vector<size_t> idx(conf.size());
      std::iota(idx.begin(), idx.end(), 0);
      for (size_t t = 0; t < k; ++t) {
        size_t r = t + rng.NextBelow(idx.size() - t);
        std::swap(idx[t], idx[r]);
      }
      for (size_t t = 0; t < k; ++t) {
        const Confusable &c = conf[idx[t]];
        add_arc(j, j + 1, c.word, c.penalty + noise_draw());
      }
    }

    double u_del = rng.NextDouble();
    if (u_del < noise.deletion_rate && n > 1) {
      double am = noise.deletion_penalty + noise_draw();
      if (j + 1 < n)
        add_arc(j, j + 2, reference[j + 1], am);
      else
        add_arc(j - 1, j + 1, reference[j - 1], am);
    }

    double u_ins = rng.NextDouble();
    if (u_ins < noise.insertion_rate && !cfg.vocabulary.empty()) {
      const std::string &inserted = cfg.vocabulary[rng.NextBelow(cfg.vocabulary.size())];
      NodeId mid = lat.num_nodes++;
      add_arc(j, mid, word, ref_am);
      add_arc(mid, j + 1, inserted, noise.insertion_penalty + noise_draw());
    }
  }
  return lat;
}

uint64_t UtteranceSeed(uint64_t seed, uint64_t index) {
  uint64_t state = seed ^ (index * 0xd1342543de82ef95ULL);
  return SplitMix64(&state);
}

std::vector<Sentence> SampleSentences(const LanguageModel &lm, int n,
                                      uint64_t seed) {
  constexpr int kMaxWords = 50;
  Rng rng(seed);
  const Vocabulary &vocab = lm.Vocab();
  std::vector<Sentence> out;
  std::vector<double> probs(vocab.Size());
  for (int s = 0; s < n; ++s) {
    std::vector<WordId> history{Vocabulary::kBosId};
    Sentence sentence;
    while (static_cast<int>(sentence.size()) < kMaxWords) {
      double total = 0.0;
      for (WordId w = 0; w < static_cast<WordId>(vocab.Size()); ++w) {
        probs[w] = w == Vocabulary::kBosId
                       ? 0.0
                       : std::pow(10.0, lm.CondLogProb(w, history));
        total += probs[w];
      }
      double u = rng.NextDouble() * total;
      WordId pick = Vocabulary::kEosId;
      double acc = 0.0;
      for (WordId w = 1; w < static_cast<WordId>(vocab.Size()); ++w) {
        if (probs[w] <= 0.0) continue;
        acc += probs[w];
        pick = w;
        if (u < acc) break;
      }
      if (pick == Vocabulary::kEosId) break;
      sentence.push_back(vocab.Word(pick));
      history.push_back(pick);
    }
    out.push_back(std::move(sentence));
  }
  return out;
}

}  // namespace langsel
