// eval.cc

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

#include "langsel/eval.h"

#include <algorithm>
#include <iomanip>
#include <tuple>

namespace langsel {

double WerBreakdown::Wer() const {
  if (ref_length == 0) return 0.0;
  return 100.0 * static_cast<double>(Errors()) / static_cast<double>(ref_length);
}

WerBreakdown &WerBreakdown::operator+=(const WerBreakdown &o) {
  substitutions += o.substitutions;
  insertions += o.insertions;
  deletions += o.deletions;
  ref_length += o.ref_length;
  return *this;
}

namespace {

// (edits, substitutions, deletions), compared lexicographically.  Each
// component is additive along a path, so the DP below is exact for this
// order.
struct Cost {
  int32_t edits = 0, subs = 0, dels = 0;

  bool operator<(const Cost &o) const {
    if (edits != o.edits) return edits < o.edits;
    if (subs != o.subs) return subs < o.subs;
    return dels < o.dels;
  }
};

// Best cost of cell (i, j) from its diagonal, upper (i - 1, j) and left
// (i, j - 1) neighbours.  Ties prefer match/substitution, then deletion.
inline Cost Relax(const Cost &diag, const Cost &up, const Cost &left, bool same,
                  EditOp *op) {
  Cost best = same ? diag : Cost{diag.edits + 1, diag.subs + 1, diag.dels};
  *op = same ? EditOp::kMatch : EditOp::kSubstitution;
  Cost del{up.edits + 1, up.subs, up.dels + 1};
  if (del < best) {
    best = del;
    *op = EditOp::kDeletion;
  }
  Cost ins{left.edits + 1, left.subs, left.dels};
  if (ins < best) {
    best = ins;
    *op = EditOp::kInsertion;
  }
  return best;
}

// Final cost only, two rows.
Cost AlignmentCost(const Sentence &ref, const Sentence &hyp) {
  constexpr size_t kStackRow = 64;
  const size_t n = ref.size(), m = hyp.size();
  Cost stack[2][kStackRow];
  std::vector<Cost> heap;
  Cost *prev = stack[0], *cur = stack[1];
  if (m + 1 > kStackRow) {
    heap.resize(2 * (m + 1));
    prev = heap.data();
    cur = heap.data() + m + 1;
  }
  for (size_t j = 0; j <= m; ++j) prev[j] = Cost{static_cast<int32_t>(j), 0, 0};
  EditOp op;
  for (size_t i = 1; i <= n; ++i) {
    auto [e, s, d] = prev[0];
    cur[0] = Cost{e + 1, s, d + 1};
    for (size_t j = 1; j <= m; ++j)
      cur[j] = Relax(prev[j - 1], prev[j], cur[j - 1], ref[i - 1] == hyp[j - 1], &op);
    std::swap(prev, cur);
  }
  return prev[m];
}

}  // namespace

std::vector<AlignedPair> Align(const Sentence &ref, const Sentence &hyp) {
  const size_t n = ref.size(), m = hyp.size();
  std::vector<Cost> cost((n + 1) * (m + 1));
  std::vector<EditOp> back((n + 1) * (m + 1), EditOp::kMatch);
  auto at = [m](size_t i, size_t j) { return i * (m + 1) + j; };
  for (size_t i = 1; i <= n; ++i) {
    auto [e, s, d] = cost[at(i - 1, 0)];
    cost[at(i, 0)] = Cost{e + 1, s, d + 1};
    back[at(i, 0)] = EditOp::kDeletion;
  }
  for (size_t j = 1; j <= m; ++j) {
    auto [e, s, d] = cost[at(0, j - 1)];
    cost[at(0, j)] = Cost{e + 1, s, d};
    back[at(0, j)] = EditOp::kInsertion;
  }
  for (size_t i = 1; i <= n; ++i)
    for (size_t j = 1; j <= m; ++j)
      cost[at(i, j)] = Relax(cost[at(i - 1, j - 1)], cost[at(i - 1, j)], cost[at(i, j - 1)],
                             ref[i - 1] == hyp[j - 1], &back[at(i, j)]);
  std::vector<AlignedPair> path;
  size_t i = n, j = m;
  while (i > 0 || j > 0) {
    EditOp op = back[at(i, j)];
    switch (op) {
      case EditOp::kMatch:
      case EditOp::kSubstitution:
        path.push_back({op, static_cast<int32_t>(i - 1), static_cast<int32_t>(j - 1)});
        --i;
        --j;
        break;
      case EditOp::kDeletion:
        path.push_back({op, static_cast<int32_t>(i - 1), -1});
        --i;
        break;
      case EditOp::kInsertion:
        path.push_back({op, -1, static_cast<int32_t>(j - 1)});
        --j;
        break;
    }
  }
  std::reverse(path.begin(), path.end());
  return path;
}

WerBreakdown ComputeWer(const Sentence &ref, const Sentence &hyp,
                        std::vector<AlignedPair> *alignment) {
  if (ref.empty()) throw Error("WER needs a non-empty reference");
  WerBreakdown w;
  w.ref_length = static_cast<int64_t>(ref.size());
  if (alignment == nullptr) {
    auto [edits, subs, dels] = AlignmentCost(ref, hyp);
    w.substitutions = subs;
    w.deletions = dels;
    w.insertions = edits - subs - dels;
    return w;
  }
  *alignment = Align(ref, hyp);
  for (const AlignedPair &p : *alignment) {
    if (p.op == EditOp::kSubstitution) ++w.substitutions;
    if (p.op == EditOp::kInsertion) ++w.insertions;
    if (p.op == EditOp::kDeletion) ++w.deletions;
  }
  return w;
}

double ForeignWordStats::Rate() const {
  return total == 0 ? 1.0 : static_cast<double>(correct) / static_cast<double>(total);
}

ForeignWordStats ForeignWordAccuracy(const std::vector<Sentence> &refs,
                                     const std::vector<Sentence> &hyps,
                                     const std::set<std::string> &foreign) {
  if (refs.size() != hyps.size())
    throw Error("foreign-word accuracy: " + std::to_string(refs.size()) +
                " references but " + std::to_string(hyps.size()) + " hypotheses");
  ForeignWordStats stats;
  for (size_t u = 0; u < refs.size(); ++u) {
    for (const AlignedPair &p : Align(refs[u], hyps[u])) {
      if (p.ref_index < 0 || foreign.count(refs[u][p.ref_index]) == 0) continue;
      ++stats.total;
      if (p.op == EditOp::kMatch) ++stats.correct;
    }
  }
  return stats;
}

SelectionAccuracy ComputeSelectionAccuracy(const std::vector<size_t> &selected,
                                           const std::vector<size_t> &truth,
                                           size_t num_languages) {
  if (selected.size() != truth.size())
    throw Error("selection accuracy: " + std::to_string(selected.size()) +
                " results but " + std::to_string(truth.size()) + " labels");
  SelectionAccuracy acc;
  acc.confusion.assign(num_languages, std::vector<int64_t>(num_languages, 0));
  for (size_t i = 0; i < selected.size(); ++i) {
    if (selected[i] >= num_languages || truth[i] >= num_languages)
      throw Error("selection accuracy: language id out of range");
    ++acc.confusion[truth[i]][selected[i]];
    ++acc.total;
    if (selected[i] == truth[i]) ++acc.correct;
  }
  return acc;
}

void EvalReport::WriteTable(std::ostream &os) const {
  size_t id_width = 6;
  for (const UtteranceScore &r : rows) id_width = std::max(id_width, r.utt_id.size());
  os << std::left << std::setw(static_cast<int>(id_width)) << "utt-id" << std::right
     << std::setw(8) << "ref-len" << std::setw(5) << "S" << std::setw(5) << "I"
     << std::setw(5) << "D" << std::setw(9) << "WER" << "  selected  truth\n";
  for (const UtteranceScore &r : rows) {
    os << std::left << std::setw(static_cast<int>(id_width)) << r.utt_id
       << std::right << std::setw(8) << r.wer.ref_length << std::setw(5)
       << r.wer.substitutions << std::setw(5) << r.wer.insertions << std::setw(5)
       << r.wer.deletions << std::setw(9) << FormatFixed(r.wer.Wer(), 2) << "  "
       << std::left << std::setw(8) << r.selected_language.value_or("-") << "  "
       << r.truth_language.value_or("-") << std::right << "\n";
  }
  os << "%WER " << FormatFixed(total.Wer(), 2) << " [ " << total.Errors() << " / "
     << total.ref_length << ", " << total.insertions << " ins, " << total.deletions
     << " del, " << total.substitutions << " sub ]\n";
  os << "Scored " << rows.size() << " utterances\n";
  if (selection_accuracy)
    os << "Selection accuracy " << FormatFixed(100.0 * *selection_accuracy, 2) << "%\n";
  if (foreign_words)
    os << "Foreign-word correct rate " << FormatFixed(100.0 * foreign_words->Rate(), 2)
       << "% [ " << foreign_words->correct << " / " << foreign_words->total << " ]\n";
}

void EvalReport::WriteRows(std::ostream &os) const {
  os << "utt-id\tref-len\tS\tI\tD\twer\tselected-language\ttruth-language\n";
  for (const UtteranceScore &r : rows) {
    os << r.utt_id << '\t' << r.wer.ref_length << '\t' << r.wer.substitutions << '\t'
       << r.wer.insertions << '\t' << r.wer.deletions << '\t'
       << FormatFixed(r.wer.Wer(), 4) << '\t' << r.selected_language.value_or("-")
       << '\t' << r.truth_language.value_or("-") << '\n';
  }
}

}  // namespace langsel
