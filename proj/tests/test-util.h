// tests/test-util.h

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

#ifndef LANGSEL_TESTS_TEST_UTIL_H_
#define LANGSEL_TESTS_TEST_UTIL_H_

// Reference implementations used as oracles.  None of them call into the
// library code they check; they only read model tables and lattice arcs.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "langsel/lattice.h"
#include "langsel/ngram-lm.h"
#include "langsel/rng.h"

namespace langsel::testing {

// ---------------------------------------------------------------------------
// Witten-Bell by direct counting over strings.

class WittenBellOracle {
 public:
  // `vocab` is the predicted-word set: every word, </s> and <unk>.
  WittenBellOracle(const Corpus &corpus, int order, std::set<std::string> vocab)
      : order_(order), vocab_(std::move(vocab)) {
    for (const Sentence &s : corpus) {
      std::vector<std::string> padded{"<s>"};
      for (const std::string &w : s) padded.push_back(vocab_.count(w) ? w : "<unk>");
      padded.push_back("</s>");
      for (size_t i = 1; i < padded.size(); ++i) {
        for (int k = 0; k < order_; ++k) {
          if (static_cast<int>(i) - k < 0) break;
          std::vector<std::string> h(padded.begin() + (i - k), padded.begin() + i);
          counts_[h][padded[i]] += 1;
        }
      }
    }
  }

  double Prob(const std::string &w, std::vector<std::string> h) const {
    if (static_cast<int>(h.size()) > order_ - 1)
      h.erase(h.begin(), h.end() - (order_ - 1));
    double lower;
    if (h.empty()) {
      lower = 1.0 / static_cast<double>(vocab_.size());
    } else {
      lower = Prob(w, std::vector<std::string>(h.begin() + 1, h.end()));
    }
    auto it = counts_.find(h);
    if (it == counts_.end()) return lower;
    double c = 0, t = static_cast<double>(it->second.size());
    for (const auto &[word, n] : it->second) c += n;
    double cw = it->second.count(w) ? it->second.at(w) : 0.0;
    return (cw + t * lower) / (c + t);
  }

 private:
  int order_;
  std::set<std::string> vocab_;
  std::map<std::vector<std::string>, std::map<std::string, double>> counts_;
};

// ---------------------------------------------------------------------------
// Backoff evaluation straight from the stored tables.

inline double BackoffLogProb(const LanguageModel &lm, WordId w,
                             std::vector<WordId> h) {
  if (static_cast<int>(h.size()) > lm.Order() - 1)
    h.erase(h.begin(), h.end() - (lm.Order() - 1));
  NGram full = h;
  full.push_back(w);
  const NGramTable &table = lm.Table(static_cast<int>(full.size()));
  auto it = table.find(full);
  if (it != table.end()) return it->second.log_prob;
  if (h.empty()) return kLogProbFloor;
  double bow = 0.0;
  const NGramTable &ctx_table = lm.Table(static_cast<int>(h.size()));
  auto ct = ctx_table.find(h);
  if (ct != ctx_table.end() && ct->second.backoff) bow = *ct->second.backoff;
  return bow + BackoffLogProb(lm, w, std::vector<WordId>(h.begin() + 1, h.end()));
}

// Sum of p(w | h) over the predictable vocabulary (everything but <s>).
inline double ContextMass(const LanguageModel &lm, const std::vector<WordId> &h) {
  double total = 0.0;
  for (WordId w = 0; w < static_cast<WordId>(lm.Vocab().Size()); ++w) {
    if (w == Vocabulary::kBosId) continue;
    total += std::pow(10.0, BackoffLogProb(lm, w, h));
  }
  return total;
}

// Largest |mass - 1| over every stored context (and the empty history).
inline double MaxNormalizationError(const LanguageModel &lm) {
  double worst = std::abs(ContextMass(lm, {}) - 1.0);
  for (int k = 1; k < lm.Order(); ++k) {
    for (const auto &[ngram, entry] : lm.Table(k)) {
      if (ngram.back() == Vocabulary::kEosId) continue;  // never a history
      worst = std::max(worst, std::abs(ContextMass(lm, ngram) - 1.0));
    }
  }
  return worst;
}

inline double SentenceOracle(const LanguageModel &lm, const Sentence &s) {
  std::vector<WordId> ids{Vocabulary::kBosId};
  for (const std::string &w : s) ids.push_back(lm.Vocab().Id(w));
  ids.push_back(Vocabulary::kEosId);
  double total = 0.0;
  for (size_t i = 1; i < ids.size(); ++i)
    total += BackoffLogProb(lm, ids[i], std::vector<WordId>(ids.begin(), ids.begin() + i));
  return total;
}

// ---------------------------------------------------------------------------
// Lattice path enumeration.

struct EnumeratedPath {
  std::vector<ArcId> arcs;
  Sentence words;
  double am = 0.0;
  double lm = 0.0;
};

inline std::vector<EnumeratedPath> EnumeratePaths(const Lattice &lat,
                                                  size_t limit = 1000000) {
  std::vector<EnumeratedPath> out;
  EnumeratedPath cur;
  std::function<void(NodeId)> walk = [&](NodeId n) {
    if (out.size() > limit) return;
    if (std::binary_search(lat.finals.begin(), lat.finals.end(), n)) out.push_back(cur);
    for (ArcId a = 0; a < static_cast<ArcId>(lat.arcs.size()); ++a) {
      const LatticeArc &arc = lat.arcs[a];
      if (arc.from != n) continue;
      cur.arcs.push_back(a);
      cur.words.push_back(arc.word);
      cur.am += arc.am_score;
      cur.lm += arc.lm_score;
      walk(arc.to);
      cur.am -= arc.am_score;
      cur.lm -= arc.lm_score;
      cur.words.pop_back();
      cur.arcs.pop_back();
    }
  };
  walk(lat.start);
  return out;
}

// Summed in arc order, exactly as a path would be accumulated left to right.
inline double Combined(const Lattice &lat, const std::vector<ArcId> &arcs,
                       const ScoreConfig &cfg) {
  double am = 0.0, lm = 0.0;
  for (ArcId a : arcs) {
    am += lat.arcs[a].am_score;
    lm += lat.arcs[a].lm_score;
  }
  return cfg.am_scale * am + cfg.lm_scale * lm;
}

// Sorted best-first with ties broken by arc sequence.
inline std::vector<EnumeratedPath> RankPaths(const Lattice &lat,
                                             std::vector<EnumeratedPath> paths,
                                             const ScoreConfig &cfg) {
  std::stable_sort(paths.begin(), paths.end(),
                   [&](const EnumeratedPath &a, const EnumeratedPath &b) {
                     double sa = Combined(lat, a.arcs, cfg), sb = Combined(lat, b.arcs, cfg);
                     if (sa != sb) return sa > sb;
                     return a.arcs < b.arcs;
                   });
  return paths;
}

// Random DAG: arcs only go from lower to higher node ids, node 0 is the
// start, and at least one start-to-final chain is always present.
inline Lattice RandomLattice(Rng &rng, int num_nodes, int extra_arcs,
                             const std::vector<std::string> &words,
                             bool integer_scores = false) {
  Lattice lat;
  lat.utt_id = "rand";
  lat.num_nodes = num_nodes;
  lat.start = 0;
  auto score = [&] {
    if (integer_scores) return -static_cast<double>(rng.NextBelow(4));
    return -3.0 * rng.NextDouble();
  };
  auto word = [&] { return words[rng.NextBelow(words.size())]; };
  for (int n = 0; n + 1 < num_nodes; ++n)
    lat.arcs.push_back({n, n + 1, word(), score(), score()});
  for (int i = 0; i < extra_arcs; ++i) {
    NodeId a = static_cast<NodeId>(rng.NextBelow(num_nodes - 1));
    NodeId b = a + 1 + static_cast<NodeId>(rng.NextBelow(num_nodes - 1 - a));
    lat.arcs.push_back({a, b, word(), score(), score()});
  }
  // Shuffle arc order so arc ids do not follow topology.
  for (size_t i = lat.arcs.size(); i > 1; --i)
    std::swap(lat.arcs[i - 1], lat.arcs[rng.NextBelow(i)]);
  lat.finals.push_back(num_nodes - 1);
  for (int n = 1; n + 1 < num_nodes; ++n)
    if (rng.NextDouble() < 0.15) lat.finals.push_back(n);
  std::sort(lat.finals.begin(), lat.finals.end());
  return lat;
}

// ---------------------------------------------------------------------------
// Files.

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("langsel-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string File(const std::string &name) const { return (path_ / name).string(); }
  std::string Write(const std::string &name, const std::string &content) const {
    std::ofstream os(File(name), std::ios::binary);
    os << content;
    return File(name);
  }

 private:
  std::filesystem::path path_;
};

inline std::string Slurp(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace langsel::testing

#endif  // LANGSEL_TESTS_TEST_UTIL_H_
