// langsel/ngram-lm.h

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

#ifndef LANGSEL_NGRAM_LM_H_
#define LANGSEL_NGRAM_LM_H_

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "langsel/text-utils.h"
#include "langsel/vocabulary.h"

namespace langsel {

/// Context words followed by the predicted word.
using NGram = std::vector<WordId>;

/// Log10 value written for impossible events (ARPA convention).
inline constexpr double kLogProbFloor = -99.0;

struct NGramEntry {
  double log_prob = 0.0;
  // Set only when the n-gram is itself the context of a longer entry.
  std::optional<double> backoff;

  bool operator==(const NGramEntry &) const = default;
};

/// Lexicographic order on id sequences; transparent so that lookups can use a
/// span without building a key vector.
struct NGramLess {
  using is_transparent = void;
  bool operator()(std::span<const WordId> a, std::span<const WordId> b) const {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

using NGramTable = std::map<NGram, NGramEntry, NGramLess>;

/// Backoff n-gram language model in log10 space.
///
/// p(w | h) is the stored probability of (h, w) when present, otherwise
/// backoff(h) * p(w | h') where h' drops the oldest word of h and backoff(h)
/// is taken as 1 when h stores no backoff weight.  The recursion always ends
/// at the unigram table.
///
/// Instances are immutable once constructed (apart from the name tag), so
/// const queries are safe from any number of threads.
class LanguageModel {
 public:
  /// Uses the tables as given; tables[k - 1] holds the k-grams. Throws Error
  /// if an entry has the wrong length, an id outside the vocabulary, a
  /// non-finite score, or a k-gram (k > 1) whose context is not stored.
  LanguageModel(int order, Vocabulary vocab, std::vector<NGramTable> tables,
                std::string name = "");

  /// Builds a model from conditional log-probabilities.  Any backoff weights
  /// in `tables` are discarded; a weight is attached to every entry that is a
  /// context of a longer entry, chosen so that the context's distribution
  /// over the vocabulary (sentence-begin excluded) sums to one.
  static LanguageModel FromProbabilities(int order, Vocabulary vocab,
                                         std::vector<NGramTable> tables,
                                         std::string name = "");

  /// As FromProbabilities, but backoff weights already present on context
  /// entries are kept; only the missing ones are computed.  Weights on
  /// entries that are no longer contexts are dropped.
  static LanguageModel CompleteBackoffs(int order, Vocabulary vocab,
                                        std::vector<NGramTable> tables,
                                        std::string name = "");

  int Order() const { return order_; }
  const Vocabulary &Vocab() const { return vocab_; }
  const std::string &Name() const { return name_; }
  void SetName(std::string name) { name_ = std::move(name); }

  /// k-grams, k in [1, Order()].
  const NGramTable &Table(int k) const { return tables_.at(k - 1); }
  size_t NumEntries(int k) const { return Table(k).size(); }
  size_t TotalEntries() const;

  const NGramEntry *Find(std::span<const WordId> ngram) const;

  /// log10 p(word | history).  Only the last Order() - 1 history ids are
  /// used.  Total: every id resolves through the unigram table.
  double CondLogProb(WordId word, std::span<const WordId> history) const;

  /// String form; OOV tokens in word or history map to <unk>.
  double CondLogProb(std::string_view word,
                     std::span<const std::string> history) const;

  /// Sum of CondLogProb over the sentence with <s> padding, plus the </s>
  /// transition.  The empty sentence scores log10 p(</s> | <s>).
  double SentenceLogProb(std::span<const std::string> sentence) const;
  double SentenceLogProb(std::span<const WordId> sentence) const;

  bool operator==(const LanguageModel &other) const {
    return order_ == other.order_ && vocab_ == other.vocab_ &&
           tables_ == other.tables_;
  }

 private:
  LanguageModel() = default;
  void CheckStructure() const;
  void RecomputeBackoffs(bool keep_given = false);

  int order_ = 0;
  Vocabulary vocab_;
  std::vector<NGramTable> tables_;
  std::string name_;
};

/// Counts gathered while training or evaluating.
struct CorpusStats {
  int64_t sentences = 0;
  int64_t tokens = 0;
  int64_t oov_tokens = 0;
  // ngram_types[k - 1] = number of distinct k-grams seen (with <s>/</s>
  // padding).
  std::vector<int64_t> ngram_types;
};

/// Trains an interpolated Witten-Bell model:
///   p(w|h) = (c(h,w) + T(h) p(w|h')) / (c(h) + T(h)),
/// where T(h) is the number of distinct words seen after h.  The unigram
/// level interpolates with the uniform distribution over the vocabulary
/// (<unk> included, <s> excluded).  When `vocab` is null it is built from
/// the corpus; otherwise tokens outside it are counted as <unk>.
///
/// Throws Error for an empty corpus, order < 1, or a reserved/invalid token.
LanguageModel TrainWittenBell(const Corpus &corpus, int order,
                              const Vocabulary *vocab = nullptr,
                              CorpusStats *stats = nullptr);

struct PerplexityOptions {
  // When false, OOV tokens are neither scored nor counted as events.
  bool include_oov = true;
};

struct PerplexityResult {
  double perplexity = 0.0;
  double total_log_prob = 0.0;  // log10
  int64_t events = 0;           // scored tokens plus one </s> per sentence
  CorpusStats stats;
};

/// ppl = 10^(-L / N).  Throws Error if there is nothing to score.
PerplexityResult ComputePerplexity(const LanguageModel &lm,
                                   const Corpus &corpus,
                                   const PerplexityOptions &opts = {});

/// Static linear interpolation alpha * a + (1 - alpha) * b.  The result has
/// the union vocabulary, order max(a, b) and one entry per n-gram stored in
/// either input; each entry holds the exact mixture of the two models' full
/// backoff estimates.  A word outside one model's vocabulary receives zero
/// probability from that model (its <unk> mass stays on <unk>).  Backoff
/// weights are recomputed, so queries at non-stored n-grams are the usual
/// backoff approximation of the mixture.
///
/// Throws Error when alpha is outside [0, 1].
LanguageModel Interpolate(const LanguageModel &a, const LanguageModel &b,
                          double alpha);

/// Removes every entry of order >= 2 whose stored conditional probability is
/// below `threshold`, unless it is still the context of a surviving longer
/// entry.  Unigrams are kept.  Backoff weights of the surviving contexts are
/// recomputed; when nothing is removed the model is returned unchanged.
///
/// Throws Error when threshold is outside (0, 1).
LanguageModel Prune(const LanguageModel &lm, double threshold);

}  // namespace langsel

#endif  // LANGSEL_NGRAM_LM_H_
