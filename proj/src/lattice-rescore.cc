// lattice-rescore.cc

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

// Exact n-gram rescoring by history expansion.

#include <map>

#include "langsel/lattice.h"

namespace langsel {

namespace {

Sentence ExtendHistory(const Sentence &history, const std::string &word,
                       size_t max_len) {
  Sentence next;
  size_t keep = std::min(history.size() + 1, max_len);
  next.reserve(keep);
  if (keep > 0) {
    size_t from_history = keep - 1;
    next.insert(next.end(), history.end() - from_history, history.end());
    next.push_back(word);
  }
  return next;
}

// Expands `lat` so that each node has one history of at most (order - 1)
// words.  histories[n] is the history of new node n.
//
// States of an old node are numbered together, in history order, when the
// node is reached in topological order; arcs are emitted per state in old
// arc order.  On a lattice that is already expanded and numbered this way
// the output equals the input.
Lattice Expand(const Lattice &lat, int order, std::vector<Sentence> *histories) {
  if (order < 1) throw Error("expansion order must be >= 1");
  LatticeDiagnostics diag = ValidateLattice(lat);
  std::vector<bool> live(lat.num_nodes, true);
  for (NodeId n : diag.unreachable) live[n] = false;
  for (NodeId n : diag.dead_ends) live[n] = false;
  auto out = lat.OutArcs();
  const size_t max_len = static_cast<size_t>(order - 1);

  // Per old node: history -> new id (-1 until numbered).
  std::vector<std::map<Sentence, NodeId>> states(lat.num_nodes);
  Sentence start_history;
  if (max_len > 0) start_history.emplace_back(kSentenceBegin);
  states[lat.start].emplace(start_history, -1);

  struct PendingArc {
    NodeId from;
    NodeId to_old;
    Sentence to_history;
    ArcId old_arc;
  };
  std::vector<PendingArc> pending;
  Lattice result;
  result.utt_id = lat.utt_id;
  histories->clear();

  for (NodeId n : diag.topological_order) {
    if (!live[n]) continue;
    for (auto &[history, id] : states[n]) {
      id = result.num_nodes++;
      histories->push_back(history);
      if (lat.IsFinal(n)) result.finals.push_back(id);
    }
    for (const auto &[history, id] : states[n]) {
      for (ArcId a : out[n]) {
        const LatticeArc &arc = lat.arcs[a];
        if (!live[arc.to]) continue;
        Sentence next = ExtendHistory(history, arc.word, max_len);
        states[arc.to].emplace(next, -1);
        pending.push_back(PendingArc{id, arc.to, std::move(next), a});
      }
    }
  }
  result.start = states[lat.start].begin()->second;
  result.arcs.reserve(pending.size());
  for (PendingArc &p : pending) {
    LatticeArc arc = lat.arcs[p.old_arc];
    arc.from = p.from;
    arc.to = states[p.to_old].at(p.to_history);
    result.arcs.push_back(std::move(arc));
  }
  return result;
}

}  // namespace

Lattice ExpandToOrder(const Lattice &lat, int order) {
  std::vector<Sentence> histories;
  return Expand(lat, order, &histories);
}

Lattice Rescore(const Lattice &lat, const LanguageModel &lm) {
  std::vector<Sentence> histories;
  Lattice expanded = Expand(lat, lm.Order(), &histories);

  // Final nodes that also continue get a final-only twin; arcs into them are
  // duplicated, the copy (ending the path) placed just before the original
  // so that arc-order tie-breaking is unchanged.
  std::vector<bool> has_out(expanded.num_nodes, false);
  for (const LatticeArc &arc : expanded.arcs) has_out[arc.from] = true;
  std::vector<NodeId> twin(expanded.num_nodes, -1);
  Lattice result;
  result.utt_id = expanded.utt_id;
  result.start = expanded.start;
  result.num_nodes = expanded.num_nodes;
  for (NodeId f : expanded.finals) {
    if (has_out[f]) {
      twin[f] = result.num_nodes++;
      histories.push_back(histories[f]);
      result.finals.push_back(twin[f]);
    } else {
      result.finals.push_back(f);
    }
  }
  std::sort(result.finals.begin(), result.finals.end());

  const Vocabulary &vocab = lm.Vocab();
  std::vector<std::vector<WordId>> history_ids(histories.size());
  for (size_t n = 0; n < histories.size(); ++n)
    history_ids[n] = vocab.Map(histories[n]);

  auto score_arc = [&](LatticeArc arc, bool ends_path) {
    const std::vector<WordId> &h = history_ids[arc.from];
    WordId w = vocab.Id(arc.word);
    double lm_score = lm.CondLogProb(w, h);
    if (ends_path) {
      std::vector<WordId> next(h);
      next.push_back(w);
      lm_score += lm.CondLogProb(Vocabulary::kEosId, next);
    }
    arc.lm_score = lm_score;
    return arc;
  };

  for (const LatticeArc &arc : expanded.arcs) {
    if (twin[arc.to] >= 0) {
      LatticeArc ending = arc;
      ending.to = twin[arc.to];
      result.arcs.push_back(score_arc(std::move(ending), true));
      result.arcs.push_back(score_arc(arc, false));
    } else {
      result.arcs.push_back(score_arc(arc, expanded.IsFinal(arc.to)));
    }
  }
  return result;
}

}  // namespace langsel
