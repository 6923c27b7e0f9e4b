// langsel/lattice.h

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

#ifndef LANGSEL_LATTICE_H_
#define LANGSEL_LATTICE_H_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "langsel/ngram-lm.h"
#include "langsel/text-utils.h"

namespace langsel {

using NodeId = int32_t;
using ArcId = int32_t;

struct LatticeArc {
  NodeId from = 0;
  NodeId to = 0;
  std::string word;
  double am_score = 0.0;  // log10
  double lm_score = 0.0;  // log10

  bool operator==(const LatticeArc &) const = default;
};

/// Acyclic word graph.  Arc ids are positions in `arcs`; nodes are
/// 0 .. num_nodes - 1.  Every complete path runs from `start` to a node in
/// `finals` and carries at least one word.
struct Lattice {
  std::string utt_id;
  int32_t num_nodes = 0;
  NodeId start = 0;
  std::vector<NodeId> finals;  // sorted, unique
  std::vector<LatticeArc> arcs;

  bool IsFinal(NodeId node) const;
  /// Outgoing arc ids per node, ascending.
  std::vector<std::vector<ArcId>> OutArcs() const;

  bool operator==(const Lattice &) const = default;
};

class LatticeError : public Error {
 public:
  using Error::Error;
};

struct LatticeDiagnostics {
  std::vector<NodeId> topological_order;
  std::vector<NodeId> unreachable;      // not reachable from start
  std::vector<NodeId> dead_ends;        // reachable but cannot reach a final
  int64_t NumDead() const {
    return static_cast<int64_t>(unreachable.size() + dead_ends.size());
  }
};

/// Checks structure and returns diagnostics.  Throws LatticeError for: node
/// ids out of range, a cycle (naming the offending back arc), no final
/// node, a final start node, or no complete path.
LatticeDiagnostics ValidateLattice(const Lattice &lat);

/// Copy with unreachable and dead-end nodes (and their arcs) removed.  Nodes
/// are renumbered in increasing old-id order; arcs keep their relative order.
Lattice NormalizeLattice(const Lattice &lat);

struct ScoreConfig {
  double am_scale = 1.0;
  double lm_scale = 1.0;
  /// Throws Error if a scale is negative or non-finite, or both are zero.
  void Check() const;
  double Combine(double am, double lm) const { return am_scale * am + lm_scale * lm; }
};

struct Path {
  std::vector<ArcId> arcs;
  Sentence words;
  double total_acoustic = 0.0;
  double total_lm = 0.0;
  double combined = 0.0;
};

/// Builds a Path from an arc sequence, summing scores from the first arc.
Path MakePath(const Lattice &lat, std::vector<ArcId> arcs,
              const ScoreConfig &cfg);

/// Highest combined score; among equal scores, the lexicographically
/// smallest arc-id sequence.
Path BestPath(const Lattice &lat, const ScoreConfig &cfg);

/// Up to n distinct paths (as arc sequences), best first, ties broken as in
/// BestPath.  Throws Error if n < 1.
std::vector<Path> NBest(const Lattice &lat, int n, const ScoreConfig &cfg);

/// Equivalent lattice in which every node carries a single history of the
/// last (order - 1) words, with <s> standing in before the first word.  The
/// set of paths, their words and their score totals are unchanged, and
/// outgoing arcs keep their relative order, so BestPath ties resolve to the
/// same word sequence.  Nodes not on any complete path are dropped.
Lattice ExpandToOrder(const Lattice &lat, int order);

/// Replaces every arc's LM score with log10 p(word | history) under `lm`;
/// arcs that end a path also carry the </s> transition, so each path's LM
/// total equals lm.SentenceLogProb(path words).  Acoustic scores are kept.
/// Final nodes with outgoing arcs are split so that this holds for paths
/// that pass through them.
Lattice Rescore(const Lattice &lat, const LanguageModel &lm);

/// Text record:
///   LATTICE <utt-id> <num-nodes> <start-node>
///   A <from> <to> <word> <am_log10> <lm_log10>
///   F <node>
///   .
/// Scores use 6 decimals.
void WriteLattice(const Lattice &lat, std::ostream &os);

/// Reads every record in the stream.  Throws ParseError with the line number
/// on malformed input.
std::vector<Lattice> ReadLattices(std::istream &is);

}  // namespace langsel

#endif  // LANGSEL_LATTICE_H_
