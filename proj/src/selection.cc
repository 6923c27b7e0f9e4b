// selection.cc

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

#include <chrono>
#include <future>
#include <limits>

namespace langsel {

namespace {

using Clock = std::chrono::steady_clock;

double MillisSince(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Candidate RescoreCandidate(const Lattice &first_pass, const LanguageModel &lm,
                           size_t language_id, const ScoreConfig &scores) {
  Lattice rescored = Rescore(first_pass, lm);
  Path best = BestPath(rescored, scores);
  Candidate c;
  c.language_id = language_id;
  c.language_score = lm.SentenceLogProb(best.words);
  c.combined_lattice_score = best.combined;
  c.words = std::move(best.words);
  return c;
}

}  // namespace

void PipelineConfig::Check() const {
  if (!lm0) throw Error("pipeline: missing first-pass language model");
  if (lms.empty()) throw Error("pipeline: no per-language models");
  for (const auto &lm : lms)
    if (!lm) throw Error("pipeline: null per-language model");
  first_pass_scores.Check();
  rescore_scores.Check();
}

Lattice FirstPass(const Lattice &lat, const PipelineConfig &cfg) {
  return Rescore(lat, *cfg.lm0);
}

std::vector<Candidate> MakeCandidates(const Lattice &first_pass,
                                      const PipelineConfig &cfg) {
  cfg.Check();
  std::vector<Candidate> out(cfg.lms.size());
  if (cfg.parallel_languages && cfg.lms.size() > 1) {
    std::vector<std::future<Candidate>> jobs;
    for (size_t i = 0; i < cfg.lms.size(); ++i)
      jobs.push_back(std::async(std::launch::async, RescoreCandidate,
                                std::cref(first_pass), std::cref(*cfg.lms[i]), i,
                                std::cref(cfg.rescore_scores)));
    for (size_t i = 0; i < jobs.size(); ++i) out[i] = jobs[i].get();
  } else {
    for (size_t i = 0; i < cfg.lms.size(); ++i)
      out[i] = RescoreCandidate(first_pass, *cfg.lms[i], i, cfg.rescore_scores);
  }
  return out;
}

double ComparedScore(const Candidate &c, bool normalize_by_length) {
  if (!normalize_by_length) return c.language_score;
  return c.language_score / static_cast<double>(c.words.size() + 1);
}

const Candidate &SelectCandidate(const std::vector<Candidate> &candidates,
                                 bool normalize_by_length) {
  if (candidates.empty()) throw Error("cannot select from an empty candidate list");
  const Candidate *best = &candidates.front();
  for (const Candidate &c : candidates) {
    double s = ComparedScore(c, normalize_by_length);
    double b = ComparedScore(*best, normalize_by_length);
    if (s > b || (s == b && c.language_id < best->language_id)) best = &c;
  }
  return *best;
}

DecodeResult Decode(const Lattice &lat, const PipelineConfig &cfg) {
  cfg.Check();
  DecodeResult result;
  result.utt_id = lat.utt_id;

  auto t0 = Clock::now();
  Lattice first = FirstPass(lat, cfg);
  result.first_pass_words = BestPath(first, cfg.first_pass_scores).words;
  result.timings.first_pass_ms = MillisSince(t0);

  t0 = Clock::now();
  result.all_candidates = MakeCandidates(first, cfg);
  result.timings.rescoring_ms = MillisSince(t0);

  t0 = Clock::now();
  const Candidate &best = SelectCandidate(result.all_candidates, cfg.normalize_by_length);
  result.selected = best;
  if (result.all_candidates.size() > 1) {
    double runner_up = -std::numeric_limits<double>::infinity();
    for (const Candidate &c : result.all_candidates)
      if (c.language_id != best.language_id)
        runner_up = std::max(runner_up, ComparedScore(c, cfg.normalize_by_length));
    result.margin = ComparedScore(best, cfg.normalize_by_length) - runner_up;
    result.low_margin = result.margin < cfg.low_margin_threshold;
  }
  result.timings.selection_ms = MillisSince(t0);
  return result;
}

DecodeResult DecodeKnownLanguage(const Lattice &lat, const PipelineConfig &cfg,
                                 size_t language_id) {
  cfg.Check();
  if (language_id >= cfg.lms.size())
    throw Error("language id " + std::to_string(language_id) + " out of range");
  DecodeResult result;
  result.utt_id = lat.utt_id;
  auto t0 = Clock::now();
  Lattice first = FirstPass(lat, cfg);
  result.first_pass_words = BestPath(first, cfg.first_pass_scores).words;
  result.timings.first_pass_ms = MillisSince(t0);
  t0 = Clock::now();
  result.selected =
      RescoreCandidate(first, *cfg.lms[language_id], language_id, cfg.rescore_scores);
  result.all_candidates = {result.selected};
  result.timings.rescoring_ms = MillisSince(t0);
  return result;
}

std::string FormatDecodeRecord(const DecodeResult &result,
                               const std::vector<std::string> &language_names) {
  std::string line = result.utt_id + " ";
  size_t id = result.selected.language_id;
  line += id < language_names.size() ? language_names[id] : std::to_string(id);
  line += " ";
  for (size_t i = 0; i < result.all_candidates.size(); ++i) {
    if (i > 0) line += ",";
    line += FormatFixed(result.all_candidates[i].language_score, 6);
  }
  if (!result.selected.words.empty()) line += " " + JoinWords(result.selected.words);
  return line;
}

}  // namespace langsel
