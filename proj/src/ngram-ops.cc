// ngram-ops.cc

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

// Interpolation and pruning of backoff models.

#include <cmath>
#include <set>

#include "langsel/ngram-lm.h"

namespace langsel {

namespace {

// Probability of `ngram` (ids in the union vocabulary) under one component.
// A predicted word the component has never heard of gets zero; history words
// it does not know fall back to its <unk> as usual.
double ComponentProb(const LanguageModel &lm, const Vocabulary &union_vocab,
                     const NGram &ngram) {
  const std::string &word = union_vocab.Word(ngram.back());
  std::optional<WordId> word_id = lm.Vocab().Find(word);
  if (!word_id) return 0.0;
  if (*word_id == Vocabulary::kBosId) return 0.0;
  std::vector<WordId> history;
  history.reserve(ngram.size() - 1);
  for (size_t i = 0; i + 1 < ngram.size(); ++i)
    history.push_back(lm.Vocab().Id(union_vocab.Word(ngram[i])));
  return std::pow(10.0, lm.CondLogProb(*word_id, history));
}

void CollectNGrams(const LanguageModel &lm, const Vocabulary &union_vocab,
                   std::vector<std::set<NGram>> *out) {
  for (int k = 1; k <= lm.Order(); ++k) {
    for (const auto &[ngram, entry] : lm.Table(k)) {
      NGram mapped;
      mapped.reserve(ngram.size());
      for (WordId id : ngram)
        mapped.push_back(*union_vocab.Find(lm.Vocab().Word(id)));
      (*out)[k - 1].insert(std::move(mapped));
    }
  }
}

}  // namespace

LanguageModel Interpolate(const LanguageModel &a, const LanguageModel &b,
                          double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw Error("interpolation weight must be in [0, 1], got " +
                std::to_string(alpha));
  Vocabulary vocab = UnionVocabulary(a.Vocab(), b.Vocab());
  const int order = std::max(a.Order(), b.Order());

  std::vector<std::set<NGram>> ngrams(order);
  CollectNGrams(a, vocab, &ngrams);
  CollectNGrams(b, vocab, &ngrams);
  // Every word of the union is a unigram.
  for (WordId w = 0; w < static_cast<WordId>(vocab.Size()); ++w)
    ngrams[0].insert(NGram{w});

  std::vector<NGramTable> tables(order);
  for (int k = 1; k <= order; ++k) {
    for (const NGram &ngram : ngrams[k - 1]) {
      double prob = 0.0;
      if (ngram.back() != Vocabulary::kBosId) {
        double pa = alpha > 0.0 ? ComponentProb(a, vocab, ngram) : 0.0;
        double pb = alpha < 1.0 ? ComponentProb(b, vocab, ngram) : 0.0;
        prob = alpha * pa + (1.0 - alpha) * pb;
      }
      double log_prob =
          prob > 0.0 ? std::max(std::log10(prob), kLogProbFloor) : kLogProbFloor;
      tables[k - 1].emplace(ngram, NGramEntry{log_prob, std::nullopt});
    }
  }
  std::string name = a.Name().empty() && b.Name().empty()
                         ? std::string()
                         : a.Name() + "+" + b.Name();
  return LanguageModel::FromProbabilities(order, std::move(vocab),
                                          std::move(tables), std::move(name));
}

LanguageModel Prune(const LanguageModel &lm, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0))
    throw Error("pruning threshold must be in (0, 1), got " +
                std::to_string(threshold));
  const double log_threshold = std::log10(threshold);
  const int order = lm.Order();

  std::vector<NGramTable> tables(order);
  tables[0] = lm.Table(1);
  std::set<NGram, NGramLess> lost_extension;
  // Highest order first, so that an entry still needed as a context is known
  // before its own fate is decided.
  std::set<NGram, NGramLess> needed_contexts;
  for (int k = order; k >= 2; --k) {
    std::set<NGram, NGramLess> next_needed;
    for (const auto &[ngram, entry] : lm.Table(k)) {
      bool keep = entry.log_prob >= log_threshold ||
                  needed_contexts.count(ngram) > 0;
      if (!keep) {
        lost_extension.emplace(ngram.begin(), ngram.end() - 1);
        continue;
      }
      tables[k - 1].emplace(ngram, entry);
      next_needed.emplace(ngram.begin(), ngram.end() - 1);
    }
    needed_contexts = std::move(next_needed);
  }
  if (lost_extension.empty()) return lm;

  // A weight must be recomputed when its context lost an extension or when
  // the distribution of any shorter context it backs off to changed.
  std::set<NGram, NGramLess> stale;
  for (int k = 1; k < order; ++k) {
    for (auto &[ngram, entry] : tables[k - 1]) {
      bool dirty = lost_extension.count(ngram) > 0;
      for (size_t skip = 1; !dirty && skip < ngram.size(); ++skip)
        dirty = stale.count(std::span<const WordId>(ngram).subspan(skip)) > 0;
      if (!dirty) continue;
      stale.insert(ngram);
      entry.backoff.reset();
    }
  }
  return LanguageModel::CompleteBackoffs(order, lm.Vocab(), std::move(tables),
                                         lm.Name());
}

}  // namespace langsel
