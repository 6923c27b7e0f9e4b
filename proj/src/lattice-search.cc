// lattice-search.cc

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

#include <algorithm>
#include <limits>
#include <queue>

#include "langsel/lattice.h"

namespace langsel {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Best combined score from each node to the end of a complete path.  Stopping
// at a final node is preferred over continuing at equal score (a path is
// lexicographically smaller than its extensions), and among arcs the
// smallest id wins ties.
struct SuffixTable {
  std::vector<double> score;
  std::vector<ArcId> choice;  // -1: stop here
};

SuffixTable BestSuffixes(const Lattice &lat, const LatticeDiagnostics &diag,
                         const std::vector<std::vector<ArcId>> &out,
                         const ScoreConfig &cfg) {
  SuffixTable t;
  t.score.assign(lat.num_nodes, kNegInf);
  t.choice.assign(lat.num_nodes, -1);
  for (auto it = diag.topological_order.rbegin();
       it != diag.topological_order.rend(); ++it) {
    NodeId n = *it;
    if (lat.IsFinal(n)) t.score[n] = 0.0;
    for (ArcId a : out[n]) {
      const LatticeArc &arc = lat.arcs[a];
      if (t.score[arc.to] == kNegInf) continue;
      double s = cfg.Combine(arc.am_score, arc.lm_score) + t.score[arc.to];
      if (s > t.score[n]) {
        t.score[n] = s;
        t.choice[n] = a;
      }
    }
  }
  return t;
}

struct Partial {
  double priority;  // prefix score + best completion
  double prefix_score;
  NodeId node;
  bool complete;
  std::vector<ArcId> arcs;
};

// Pops the highest priority first; equal priorities come out in
// lexicographic arc order.
struct PartialWorse {
  bool operator()(const Partial &a, const Partial &b) const {
    if (a.priority != b.priority) return a.priority < b.priority;
    return std::lexicographical_compare(b.arcs.begin(), b.arcs.end(),
                                        a.arcs.begin(), a.arcs.end());
  }
};

}  // namespace

Path MakePath(const Lattice &lat, std::vector<ArcId> arcs,
              const ScoreConfig &cfg) {
  Path p;
  for (ArcId a : arcs) {
    const LatticeArc &arc = lat.arcs.at(a);
    p.words.push_back(arc.word);
    p.total_acoustic += arc.am_score;
    p.total_lm += arc.lm_score;
  }
  p.combined = cfg.Combine(p.total_acoustic, p.total_lm);
  p.arcs = std::move(arcs);
  return p;
}

Path BestPath(const Lattice &lat, const ScoreConfig &cfg) {
  cfg.Check();
  LatticeDiagnostics diag = ValidateLattice(lat);
  auto out = lat.OutArcs();
  SuffixTable suffix = BestSuffixes(lat, diag, out, cfg);
  std::vector<ArcId> arcs;
  NodeId n = lat.start;
  while (suffix.choice[n] >= 0) {
    ArcId a = suffix.choice[n];
    arcs.push_back(a);
    n = lat.arcs[a].to;
  }
  return MakePath(lat, std::move(arcs), cfg);
}

std::vector<Path> NBest(const Lattice &lat, int n, const ScoreConfig &cfg) {
  if (n < 1) throw Error("n-best size must be >= 1");
  cfg.Check();
  LatticeDiagnostics diag = ValidateLattice(lat);
  auto out = lat.OutArcs();
  SuffixTable suffix = BestSuffixes(lat, diag, out, cfg);

  // Best-first search with the exact completion score as heuristic: complete
  // paths leave the queue in final order.
  std::priority_queue<Partial, std::vector<Partial>, PartialWorse> queue;
  queue.push(Partial{suffix.score[lat.start], 0.0, lat.start, false, {}});
  std::vector<Path> result;
  while (!queue.empty() && static_cast<int>(result.size()) < n) {
    Partial top = queue.top();
    queue.pop();
    if (top.complete) {
      result.push_back(MakePath(lat, std::move(top.arcs), cfg));
      continue;
    }
    if (lat.IsFinal(top.node) && !top.arcs.empty())
      queue.push(Partial{top.prefix_score, top.prefix_score, top.node, true,
                         top.arcs});
    for (ArcId a : out[top.node]) {
      const LatticeArc &arc = lat.arcs[a];
      if (suffix.score[arc.to] == kNegInf) continue;
      double g = top.prefix_score + cfg.Combine(arc.am_score, arc.lm_score);
      Partial next{g + suffix.score[arc.to], g, arc.to, false, top.arcs};
      next.arcs.push_back(a);
      queue.push(std::move(next));
    }
  }
  return result;
}

}  // namespace langsel
