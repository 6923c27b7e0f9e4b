// langsel/am-surrogate.h

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

#ifndef LANGSEL_AM_SURROGATE_H_
#define LANGSEL_AM_SURROGATE_H_

// Synthetic stand-in for an acoustic model plus first-pass decoder: turns a
// reference transcript into a noisy "sausage" lattice.

#include <cstdint>
#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "langsel/lattice.h"
#include "langsel/ngram-lm.h"

namespace langsel {

struct Confusable {
  std::string word;
  double penalty = 0.0;  // log10, <= 0

  bool operator==(const Confusable &) const = default;
};

struct ConfusionModel {
  // word -> acoustically confusable words, in file order, no duplicates.
  std::map<std::string, std::vector<Confusable>> table;
  double substitution_rate = 0.0;
  double insertion_rate = 0.0;
  double deletion_rate = 0.0;
  // Half-width of the uniform perturbation added to every acoustic score.
  double noise_spread = 0.0;
  double deletion_penalty = -1.0;
  double insertion_penalty = -1.0;

  /// Adds `confusable` for `word`; repeats and self-confusions are ignored.
  /// Throws Error on a positive or non-finite penalty.
  void Add(const std::string &word, const std::string &confusable,
           double penalty);

  /// Throws Error when a rate is outside [0, 1], the spread is negative, a
  /// penalty is positive, or (if `vocab` is non-empty) a confusable word is
  /// not in `vocab`.
  void Check(const std::set<std::string> &vocab) const;
};

/// Reads `word confusable penalty` lines; blank lines and lines starting
/// with '#' are skipped.  Rates are left at zero.
ConfusionModel ReadConfusionTable(std::istream &is);

struct GeneratorConfig {
  uint64_t seed = 0;
  int max_alternatives = 3;  // words per position, reference included
  // Reference words must come from here; insertions are drawn from it.
  std::vector<std::string> vocabulary;  // sorted, unique
};

/// Builds a sausage lattice for `reference`.  Nodes 0..n sit between the
/// reference words (start 0, final n); insertion nodes follow.  Random draws
/// per position j, in this order:
///
///   1. u_sub = NextDouble()
///   2. noise for the reference arc
///   3. if u_sub < substitution_rate: a partial Fisher-Yates pick of
///      k = min(max_alternatives - 1, #confusables) confusables
///      (one NextBelow per pick), then one noise draw per pick
///   4. u_del = NextDouble(); if u_del < deletion_rate and n > 1: one noise
///      draw for the skip arc
///   5. u_ins = NextDouble(); if u_ins < insertion_rate: NextBelow(|vocab|)
///      for the inserted word, then one noise draw
///
/// where noise = noise_spread * NextSymmetric().  A deletion of word j is an
/// arc j -> j+2 carrying word j+1 (or, for the last word, n-2 -> n carrying
/// word n-2), so no epsilon arcs are needed.  An insertion after word j is a
/// detour j -> m -> j+1 reading word j then the inserted word.  The
/// reference is always a complete path; LM scores are zero.
///
/// Throws Error for an empty reference, an out-of-vocabulary reference word,
/// or max_alternatives < 1.
Lattice GenerateLattice(const Sentence &reference, const ConfusionModel &noise,
                        const GeneratorConfig &cfg,
                        const std::string &utt_id = "utt");

/// Seed for utterance `index` of a batch drawn with `seed`.
uint64_t UtteranceSeed(uint64_t seed, uint64_t index);

/// Draws sentences from the model word by word until </s>, stopping after
/// 50 words at the latest.  <s> is never drawn.
std::vector<Sentence> SampleSentences(const LanguageModel &lm, int n,
                                      uint64_t seed);

}  // namespace langsel

#endif  // LANGSEL_AM_SURROGATE_H_
