// langsel/eval.h

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

#ifndef LANGSEL_EVAL_H_
#define LANGSEL_EVAL_H_

#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "langsel/text-utils.h"

namespace langsel {

enum class EditOp { kMatch, kSubstitution, kInsertion, kDeletion };

struct AlignedPair {
  EditOp op;
  int32_t ref_index;  // -1 for insertions
  int32_t hyp_index;  // -1 for deletions
};

struct WerBreakdown {
  int64_t substitutions = 0;
  int64_t insertions = 0;
  int64_t deletions = 0;
  int64_t ref_length = 0;

  int64_t Errors() const { return substitutions + insertions + deletions; }
  /// 100 * errors / reference length (0 for an empty reference).
  double Wer() const;
  WerBreakdown &operator+=(const WerBreakdown &o);
};

/// Minimum edit distance alignment with unit costs.  Among minimal
/// alignments the one with fewest substitutions, then fewest deletions, is
/// chosen.
std::vector<AlignedPair> Align(const Sentence &ref, const Sentence &hyp);

/// Throws Error for an empty reference.
WerBreakdown ComputeWer(const Sentence &ref, const Sentence &hyp,
                        std::vector<AlignedPair> *alignment = nullptr);

struct ForeignWordStats {
  int64_t correct = 0;
  int64_t total = 0;
  /// correct / total; 1 when there are no foreign tokens.
  double Rate() const;
};

/// Counts reference tokens listed in `foreign` and how many of them align to
/// an identical hypothesis token.  Throws Error when the lists differ in
/// length.
ForeignWordStats ForeignWordAccuracy(const std::vector<Sentence> &refs,
                                     const std::vector<Sentence> &hyps,
                                     const std::set<std::string> &foreign);

struct SelectionAccuracy {
  int64_t correct = 0;
  int64_t total = 0;
  // confusion[truth][selected]
  std::vector<std::vector<int64_t>> confusion;
  double Accuracy() const {
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  }
};

/// Throws Error on a length mismatch or a language id >= num_languages.
SelectionAccuracy ComputeSelectionAccuracy(const std::vector<size_t> &selected,
                                           const std::vector<size_t> &truth,
                                           size_t num_languages);

struct UtteranceScore {
  std::string utt_id;
  WerBreakdown wer;
  std::optional<std::string> selected_language;
  std::optional<std::string> truth_language;
};

struct EvalReport {
  std::vector<UtteranceScore> rows;
  WerBreakdown total;  // pooled over rows
  std::optional<double> selection_accuracy;
  std::optional<ForeignWordStats> foreign_words;

  double AggregateWer() const { return total.Wer(); }
  /// Aligned columns, one line per utterance, followed by the summary.
  void WriteTable(std::ostream &os) const;
  /// TSV with header: utt-id ref-len S I D wer selected-language
  /// truth-language ("-" where unknown).
  void WriteRows(std::ostream &os) const;
};

}  // namespace langsel

#endif  // LANGSEL_EVAL_H_
