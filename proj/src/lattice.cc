// lattice.cc

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

#include "langsel/lattice.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

namespace langsel {

bool Lattice::IsFinal(NodeId node) const {
  return std::binary_search(finals.begin(), finals.end(), node);
}

std::vector<std::vector<ArcId>> Lattice::OutArcs() const {
  std::vector<std::vector<ArcId>> out(std::max(num_nodes, 0));
  for (ArcId a = 0; a < static_cast<ArcId>(arcs.size()); ++a)
    out.at(arcs[a].from).push_back(a);
  return out;
}

void ScoreConfig::Check() const {
  if (!std::isfinite(am_scale) || !std::isfinite(lm_scale) || am_scale < 0.0 ||
      lm_scale < 0.0)
    throw Error("score scales must be finite and non-negative");
  if (am_scale == 0.0 && lm_scale == 0.0)
    throw Error("acoustic and LM scales cannot both be zero");
}

namespace {

void CheckRanges(const Lattice &lat) {
  const std::string where = "lattice '" + lat.utt_id + "': ";
  if (lat.num_nodes <= 0) throw LatticeError(where + "no nodes");
  if (lat.start < 0 || lat.start >= lat.num_nodes)
    throw LatticeError(where + "start node " + std::to_string(lat.start) +
                       " out of range");
  if (lat.finals.empty()) throw LatticeError(where + "no final node");
  for (size_t i = 0; i < lat.finals.size(); ++i) {
    NodeId f = lat.finals[i];
    if (f < 0 || f >= lat.num_nodes)
      throw LatticeError(where + "final node " + std::to_string(f) +
                         " out of range");
    if (i > 0 && lat.finals[i - 1] >= f)
      throw LatticeError(where + "final node list is not sorted and unique");
  }
  if (lat.IsFinal(lat.start))
    throw LatticeError(where + "start node is final (empty path)");
  for (size_t a = 0; a < lat.arcs.size(); ++a) {
    const LatticeArc &arc = lat.arcs[a];
    if (arc.from < 0 || arc.from >= lat.num_nodes || arc.to < 0 ||
        arc.to >= lat.num_nodes)
      throw LatticeError(where + "arc " + std::to_string(a) +
                         " has a node out of range");
    if (!IsValidToken(arc.word))
      throw LatticeError(where + "arc " + std::to_string(a) +
                         " has an invalid word");
    if (!std::isfinite(arc.am_score) || !std::isfinite(arc.lm_score))
      throw LatticeError(where + "arc " + std::to_string(a) +
                         " has a non-finite score");
  }
}

// Iterative DFS from every node in id order; the first arc found closing a
// cycle is reported.
void CheckAcyclic(const Lattice &lat,
                  const std::vector<std::vector<ArcId>> &out) {
  enum Color : uint8_t { kWhite, kGrey, kBlack };
  std::vector<Color> color(lat.num_nodes, kWhite);
  std::vector<std::pair<NodeId, size_t>> stack;
  for (NodeId root = 0; root < lat.num_nodes; ++root) {
    if (color[root] != kWhite) continue;
    stack.emplace_back(root, 0);
    color[root] = kGrey;
    while (!stack.empty()) {
      auto &[node, next] = stack.back();
      if (next == out[node].size()) {
        color[node] = kBlack;
        stack.pop_back();
        continue;
      }
      ArcId a = out[node][next++];
      NodeId to = lat.arcs[a].to;
      if (color[to] == kGrey)
        throw LatticeError("lattice '" + lat.utt_id + "': cycle through arc " +
                           std::to_string(a) + " (" + std::to_string(lat.arcs[a].from) +
                           " -> " + std::to_string(to) + ")");
      if (color[to] == kWhite) {
        color[to] = kGrey;
        stack.emplace_back(to, 0);
      }
    }
  }
}

std::vector<bool> Reachable(const Lattice &lat,
                            const std::vector<std::vector<ArcId>> &out) {
  std::vector<bool> seen(lat.num_nodes, false);
  std::vector<NodeId> stack{lat.start};
  seen[lat.start] = true;
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    for (ArcId a : out[n]) {
      NodeId to = lat.arcs[a].to;
      if (!seen[to]) {
        seen[to] = true;
        stack.push_back(to);
      }
    }
  }
  return seen;
}

std::vector<bool> CoReachable(const Lattice &lat) {
  std::vector<std::vector<NodeId>> in(lat.num_nodes);
  for (const LatticeArc &arc : lat.arcs) in[arc.to].push_back(arc.from);
  std::vector<bool> seen(lat.num_nodes, false);
  std::vector<NodeId> stack;
  for (NodeId f : lat.finals) {
    seen[f] = true;
    stack.push_back(f);
  }
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    for (NodeId from : in[n]) {
      if (!seen[from]) {
        seen[from] = true;
        stack.push_back(from);
      }
    }
  }
  return seen;
}

}  // namespace

LatticeDiagnostics ValidateLattice(const Lattice &lat) {
  CheckRanges(lat);
  auto out = lat.OutArcs();
  CheckAcyclic(lat, out);

  LatticeDiagnostics diag;
  // Kahn's algorithm, smallest available id first.
  std::vector<int32_t> indegree(lat.num_nodes, 0);
  for (const LatticeArc &arc : lat.arcs) ++indegree[arc.to];
  std::priority_queue<NodeId, std::vector<NodeId>, std::greater<>> ready;
  for (NodeId n = 0; n < lat.num_nodes; ++n)
    if (indegree[n] == 0) ready.push(n);
  while (!ready.empty()) {
    NodeId n = ready.top();
    ready.pop();
    diag.topological_order.push_back(n);
    for (ArcId a : out[n])
      if (--indegree[lat.arcs[a].to] == 0) ready.push(lat.arcs[a].to);
  }

  std::vector<bool> fwd = Reachable(lat, out);
  std::vector<bool> bwd = CoReachable(lat);
  if (!bwd[lat.start])
    throw LatticeError("lattice '" + lat.utt_id + "': no complete path");
  for (NodeId n = 0; n < lat.num_nodes; ++n) {
    if (!fwd[n])
      diag.unreachable.push_back(n);
    else if (!bwd[n])
      diag.dead_ends.push_back(n);
  }
  return diag;
}

Lattice NormalizeLattice(const Lattice &lat) {
  LatticeDiagnostics diag = ValidateLattice(lat);
  std::vector<bool> dead(lat.num_nodes, false);
  for (NodeId n : diag.unreachable) dead[n] = true;
  for (NodeId n : diag.dead_ends) dead[n] = true;
  std::vector<NodeId> remap(lat.num_nodes, -1);
  Lattice out;
  out.utt_id = lat.utt_id;
  for (NodeId n = 0; n < lat.num_nodes; ++n)
    if (!dead[n]) remap[n] = out.num_nodes++;
  out.start = remap[lat.start];
  for (NodeId f : lat.finals)
    if (!dead[f]) out.finals.push_back(remap[f]);
  for (const LatticeArc &arc : lat.arcs) {
    if (dead[arc.from] || dead[arc.to]) continue;
    LatticeArc copy = arc;
    copy.from = remap[arc.from];
    copy.to = remap[arc.to];
    out.arcs.push_back(std::move(copy));
  }
  return out;
}

}  // namespace langsel
