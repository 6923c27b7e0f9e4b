// ngram-train.cc

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

#include <cmath>
#include <set>

#include "langsel/ngram-lm.h"

namespace langsel {

namespace {

using CountTable = std::map<NGram, int64_t, NGramLess>;

struct ContextCounts {
  int64_t total = 0;     // c(h)
  int64_t distinct = 0;  // T(h)
};

void CheckTokens(const Corpus &corpus) {
  for (const Sentence &sentence : corpus) {
    for (const std::string &token : sentence) {
      if (!IsValidToken(token))
        throw Error("invalid token '" + token + "' in training corpus");
      if (Vocabulary::IsReserved(token))
        throw Error("reserved symbol '" + token + "' in training corpus");
    }
  }
}

}  // namespace

LanguageModel TrainWittenBell(const Corpus &corpus, int order,
                              const Vocabulary *vocab, CorpusStats *stats) {
  if (order < 1) throw Error("n-gram order must be >= 1");
  if (corpus.empty()) throw Error("cannot train on an empty corpus");
  CheckTokens(corpus);

  Vocabulary built;
  if (vocab == nullptr) {
    std::vector<std::string> words;
    for (const Sentence &sentence : corpus)
      words.insert(words.end(), sentence.begin(), sentence.end());
    built = Vocabulary(words);
    vocab = &built;
  }

  // counts[k - 1][ngram] over predicted positions, <s> never predicted.
  std::vector<CountTable> counts(order);
  CorpusStats local;
  for (const Sentence &sentence : corpus) {
    std::vector<WordId> ids;
    ids.reserve(sentence.size() + 2);
    ids.push_back(Vocabulary::kBosId);
    for (const std::string &token : sentence) {
      WordId id = vocab->Id(token);
      if (id == Vocabulary::kUnkId) ++local.oov_tokens;
      ids.push_back(id);
    }
    ids.push_back(Vocabulary::kEosId);
    ++local.sentences;
    local.tokens += static_cast<int64_t>(sentence.size());
    for (size_t i = 1; i < ids.size(); ++i) {
      for (int k = 1; k <= order && static_cast<size_t>(k) <= i + 1; ++k) {
        NGram ngram(ids.begin() + (i + 1 - k), ids.begin() + i + 1);
        ++counts[k - 1][ngram];
      }
    }
  }
  for (const CountTable &table : counts)
    local.ngram_types.push_back(static_cast<int64_t>(table.size()));

  std::vector<NGramTable> tables(order);

  // Unigrams: interpolate with the uniform distribution over every
  // predictable word.
  {
    ContextCounts ctx;
    for (const auto &[ngram, count] : counts[0]) {
      ctx.total += count;
      ++ctx.distinct;
    }
    const double uniform = 1.0 / static_cast<double>(vocab->Size() - 1);
    const double denom = static_cast<double>(ctx.total + ctx.distinct);
    for (WordId w = 0; w < static_cast<WordId>(vocab->Size()); ++w) {
      NGram key{w};
      if (w == Vocabulary::kBosId) {
        tables[0][key].log_prob = kLogProbFloor;
        continue;
      }
      auto it = counts[0].find(key);
      double count = it == counts[0].end() ? 0.0 : static_cast<double>(it->second);
      double prob = (count + ctx.distinct * uniform) / denom;
      tables[0][key].log_prob = std::log10(prob);
    }
  }

  for (int k = 2; k <= order; ++k) {
    const CountTable &table = counts[k - 1];
    auto it = table.begin();
    while (it != table.end()) {
      std::span<const WordId> context(it->first.data(), k - 1);
      ContextCounts ctx;
      auto group_end = it;
      for (; group_end != table.end() &&
             std::equal(context.begin(), context.end(),
                        group_end->first.begin());
           ++group_end) {
        ctx.total += group_end->second;
        ++ctx.distinct;
      }
      const double denom = static_cast<double>(ctx.total + ctx.distinct);
      for (auto g = it; g != group_end; ++g) {
        // (h', w) is always stored one order down: it was counted at the
        // same position.
        std::span<const WordId> lower(g->first.data() + 1, k - 1);
        double lower_prob =
            std::pow(10.0, tables[k - 2].find(lower)->second.log_prob);
        double prob = (static_cast<double>(g->second) + ctx.distinct * lower_prob) /
                      denom;
        tables[k - 1][g->first].log_prob = std::log10(prob);
      }
      it = group_end;
    }
  }

  if (stats != nullptr) *stats = std::move(local);
  return LanguageModel::FromProbabilities(order, *vocab, std::move(tables));
}

PerplexityResult ComputePerplexity(const LanguageModel &lm,
                                   const Corpus &corpus,
                                   const PerplexityOptions &opts) {
  PerplexityResult result;
  CorpusStats &stats = result.stats;
  const int order = lm.Order();
  std::vector<std::set<NGram>> types(order);
  for (const Sentence &sentence : corpus) {
    std::vector<WordId> ids;
    ids.reserve(sentence.size() + 2);
    ids.push_back(Vocabulary::kBosId);
    for (const std::string &token : sentence) ids.push_back(lm.Vocab().Id(token));
    ids.push_back(Vocabulary::kEosId);
    ++stats.sentences;
    stats.tokens += static_cast<int64_t>(sentence.size());
    std::span<const WordId> all(ids);
    for (size_t i = 1; i < ids.size(); ++i) {
      for (int k = 1; k <= order && static_cast<size_t>(k) <= i + 1; ++k)
        types[k - 1].emplace(ids.begin() + (i + 1 - k), ids.begin() + i + 1);
      bool is_oov = ids[i] == Vocabulary::kUnkId &&
                    sentence[i - 1] != kUnknownWord;
      if (is_oov) ++stats.oov_tokens;
      if (is_oov && !opts.include_oov) continue;
      result.total_log_prob += lm.CondLogProb(ids[i], all.first(i));
      ++result.events;
    }
  }
  for (const auto &t : types)
    stats.ngram_types.push_back(static_cast<int64_t>(t.size()));
  if (result.events == 0) throw Error("perplexity: corpus has no scored events");
  result.perplexity =
      std::pow(10.0, -result.total_log_prob / static_cast<double>(result.events));
  return result;
}

}  // namespace langsel
