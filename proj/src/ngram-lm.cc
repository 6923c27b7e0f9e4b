// ngram-lm.cc

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

#include "langsel/ngram-lm.h"

#include <cmath>

namespace langsel {

LanguageModel::LanguageModel(int order, Vocabulary vocab,
                             std::vector<NGramTable> tables, std::string name)
    : order_(order),
      vocab_(std::move(vocab)),
      tables_(std::move(tables)),
      name_(std::move(name)) {
  CheckStructure();
}

LanguageModel LanguageModel::FromProbabilities(int order, Vocabulary vocab,
                                               std::vector<NGramTable> tables,
                                               std::string name) {
  LanguageModel lm;
  lm.order_ = order;
  lm.vocab_ = std::move(vocab);
  lm.tables_ = std::move(tables);
  lm.name_ = std::move(name);
  lm.CheckStructure();
  lm.RecomputeBackoffs();
  return lm;
}

void LanguageModel::CheckStructure() const {
  if (order_ < 1) throw Error("language model order must be >= 1");
  if (static_cast<int>(tables_.size()) != order_)
    throw Error("expected " + std::to_string(order_) + " n-gram tables, got " +
                std::to_string(tables_.size()));
  const auto vocab_size = static_cast<WordId>(vocab_.Size());
  for (int k = 1; k <= order_; ++k) {
    for (const auto &[ngram, entry] : tables_[k - 1]) {
      if (static_cast<int>(ngram.size()) != k)
        throw Error("n-gram of length " + std::to_string(ngram.size()) +
                    " stored in the " + std::to_string(k) + "-gram table");
      for (WordId id : ngram)
        if (id < 0 || id >= vocab_size)
          throw Error("word id " + std::to_string(id) + " outside vocabulary");
      if (!std::isfinite(entry.log_prob) ||
          (entry.backoff && !std::isfinite(*entry.backoff)))
        throw Error("non-finite score in " + std::to_string(k) + "-gram table");
      if (k > 1) {
        std::span<const WordId> context(ngram.data(), k - 1);
        if (tables_[k - 2].find(context) == tables_[k - 2].end()) {
          std::string words;
          for (WordId id : ngram) words += " " + vocab_.Word(id);
          throw Error("context of" + words + " is not a stored " +
                      std::to_string(k - 1) + "-gram");
        }
      }
    }
  }
}

LanguageModel LanguageModel::CompleteBackoffs(int order, Vocabulary vocab,
                                              std::vector<NGramTable> tables,
                                              std::string name) {
  LanguageModel lm;
  lm.order_ = order;
  lm.vocab_ = std::move(vocab);
  lm.tables_ = std::move(tables);
  lm.name_ = std::move(name);
  lm.CheckStructure();
  lm.RecomputeBackoffs(true);
  return lm;
}

void LanguageModel::RecomputeBackoffs(bool keep_given) {
  for (int k = 1; k <= order_; ++k) {
    for (auto &[ngram, entry] : tables_[k - 1]) {
      if (!keep_given || k == order_) {
        entry.backoff.reset();
        continue;
      }
      // Contexts sort first among their extensions.
      auto next = tables_[k].lower_bound(ngram);
      bool is_context = next != tables_[k].end() &&
                        std::equal(ngram.begin(), ngram.end(), next->first.begin());
      if (!is_context) entry.backoff.reset();
    }
  }

  for (int k = 2; k <= order_; ++k) {
    const NGramTable &table = tables_[k - 1];
    auto it = table.begin();
    while (it != table.end()) {
      std::span<const WordId> context(it->first.data(), k - 1);
      std::span<const WordId> shorter = context.subspan(1);
      NGramEntry &context_entry = tables_[k - 2].find(context)->second;
      if (context_entry.backoff) {
        while (it != table.end() &&
               std::equal(context.begin(), context.end(), it->first.begin()))
          ++it;
        continue;
      }
      double hi_mass = 0.0, lo_mass = 0.0;
      auto group_end = it;
      for (; group_end != table.end() &&
             std::equal(context.begin(), context.end(),
                        group_end->first.begin());
           ++group_end) {
        WordId word = group_end->first.back();
        hi_mass += std::pow(10.0, group_end->second.log_prob);
        lo_mass += std::pow(10.0, CondLogProb(word, shorter));
      }
      double numerator = 1.0 - hi_mass;
      double denominator = 1.0 - lo_mass;
      double backoff;
      if (denominator <= 1e-12) {
        // Every word with lower-order mass is explicit here; nothing to
        // redistribute.
        backoff = 0.0;
      } else if (numerator <= 0.0) {
        backoff = kLogProbFloor;
      } else {
        backoff = std::max(std::log10(numerator / denominator), kLogProbFloor);
      }
      context_entry.backoff = backoff;
      it = group_end;
    }
  }
}

size_t LanguageModel::TotalEntries() const {
  size_t total = 0;
  for (const auto &table : tables_) total += table.size();
  return total;
}

const NGramEntry *LanguageModel::Find(std::span<const WordId> ngram) const {
  if (ngram.empty() || static_cast<int>(ngram.size()) > order_) return nullptr;
  const NGramTable &table = tables_[ngram.size() - 1];
  auto it = table.find(ngram);
  return it == table.end() ? nullptr : &it->second;
}

double LanguageModel::CondLogProb(WordId word,
                                  std::span<const WordId> history) const {
  size_t context_len =
      std::min(history.size(), static_cast<size_t>(order_ - 1));
  std::span<const WordId> context = history.last(context_len);
  // Key buffer: context followed by the word.
  WordId buf[64];
  std::vector<WordId> heap_buf;
  WordId *key = buf;
  if (context_len + 1 > std::size(buf)) {
    heap_buf.resize(context_len + 1);
    key = heap_buf.data();
  }
  double backoff_sum = 0.0;
  for (size_t len = context_len;; --len) {
    std::span<const WordId> ctx = context.last(len);
    std::copy(ctx.begin(), ctx.end(), key);
    key[len] = word;
    if (const NGramEntry *e = Find(std::span<const WordId>(key, len + 1)))
      return backoff_sum + e->log_prob;
    if (len == 0) return backoff_sum + kLogProbFloor;
    if (const NGramEntry *c = Find(ctx); c != nullptr && c->backoff)
      backoff_sum += *c->backoff;
  }
}

double LanguageModel::CondLogProb(std::string_view word,
                                  std::span<const std::string> history) const {
  std::vector<WordId> ids = vocab_.Map(history);
  return CondLogProb(vocab_.Id(word), ids);
}

double LanguageModel::SentenceLogProb(
    std::span<const std::string> sentence) const {
  return SentenceLogProb(vocab_.Map(sentence));
}

double LanguageModel::SentenceLogProb(std::span<const WordId> sentence) const {
  std::vector<WordId> ids;
  ids.reserve(sentence.size() + 2);
  ids.push_back(Vocabulary::kBosId);
  ids.insert(ids.end(), sentence.begin(), sentence.end());
  ids.push_back(Vocabulary::kEosId);
  double total = 0.0;
  std::span<const WordId> all(ids);
  for (size_t i = 1; i < ids.size(); ++i)
    total += CondLogProb(ids[i], all.first(i));
  return total;
}

}  // namespace langsel
