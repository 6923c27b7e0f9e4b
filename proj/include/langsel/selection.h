// langsel/selection.h

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

#ifndef LANGSEL_SELECTION_H_
#define LANGSEL_SELECTION_H_

// Identifier-free multilingual decoding:
//
//   1. first pass: the input lattice is scored with the multilingual model;
//   2. for every language model i, the first-pass lattice is rescored and
//      its best path becomes candidate i;
//   3. the output is the candidate whose sentence has the highest log
//      probability under its own language model.
//
// No language identifier is involved at any point.

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "langsel/lattice.h"
#include "langsel/ngram-lm.h"

namespace langsel {

struct Candidate {
  size_t language_id = 0;
  Sentence words;
  double language_score = 0.0;  // log10 P(words | LM_i), </s> included
  double combined_lattice_score = 0.0;
};

struct PipelineConfig {
  std::shared_ptr<const LanguageModel> lm0;
  std::vector<std::shared_ptr<const LanguageModel>> lms;
  ScoreConfig first_pass_scores;
  ScoreConfig rescore_scores;
  // Compare language_score / (words + 1) instead of the raw score.
  bool normalize_by_length = false;
  // Results whose top two compared scores differ by less than this are
  // flagged as low-margin.
  double low_margin_threshold = 1.0;
  // Rescore the languages on separate threads.
  bool parallel_languages = false;

  /// Throws Error when a model is missing or a score config is invalid.
  void Check() const;
};

struct StageTimings {
  double first_pass_ms = 0.0;
  double rescoring_ms = 0.0;
  double selection_ms = 0.0;
};

struct DecodeResult {
  std::string utt_id;
  Candidate selected;
  std::vector<Candidate> all_candidates;
  Sentence first_pass_words;
  double margin = 0.0;  // best minus runner-up compared score; 0 if M = 1
  bool low_margin = false;
  StageTimings timings;
};

/// Rescoring with LM0; stands in for the first decoding pass.
Lattice FirstPass(const Lattice &lat, const PipelineConfig &cfg);

/// One candidate per language model, in model order.
std::vector<Candidate> MakeCandidates(const Lattice &first_pass,
                                      const PipelineConfig &cfg);

/// Score used to compare candidates.
double ComparedScore(const Candidate &c, bool normalize_by_length);

/// Highest compared score; ties go to the smallest language id.  Throws
/// Error on an empty list.
const Candidate &SelectCandidate(const std::vector<Candidate> &candidates,
                                 bool normalize_by_length = false);

/// Full pipeline for one lattice.
DecodeResult Decode(const Lattice &lat, const PipelineConfig &cfg);

/// Rescoring with the model of a language known in advance (the oracle the
/// automatic selection is compared against).  The result has one candidate.
DecodeResult DecodeKnownLanguage(const Lattice &lat, const PipelineConfig &cfg,
                                 size_t language_id);

/// `<utt-id> <selected-language> <score,score,...> <words...>`
std::string FormatDecodeRecord(const DecodeResult &result,
                               const std::vector<std::string> &language_names);

}  // namespace langsel

#endif  // LANGSEL_SELECTION_H_
