// lattice-io.cc

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
#include <charconv>
#include <cmath>

#include "langsel/lattice.h"

namespace langsel {

namespace {

template <typename T>
bool ParseNumber(const std::string &s, T *out) {
  const char *begin = s.data();
  const char *end = begin + s.size();
  if constexpr (std::is_floating_point_v<T>) {
    if (begin != end && *begin == '+') ++begin;
  }
  auto [ptr, ec] = std::from_chars(begin, end, *out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

void WriteLattice(const Lattice &lat, std::ostream &os) {
  os << "LATTICE " << lat.utt_id << ' ' << lat.num_nodes << ' ' << lat.start
     << '\n';
  for (const LatticeArc &arc : lat.arcs)
    os << "A " << arc.from << ' ' << arc.to << ' ' << arc.word << ' '
       << FormatFixed(arc.am_score, 6) << ' ' << FormatFixed(arc.lm_score, 6)
       << '\n';
  for (NodeId f : lat.finals) os << "F " << f << '\n';
  os << ".\n";
}

std::vector<Lattice> ReadLattices(std::istream &is) {
  std::vector<Lattice> result;
  std::string line;
  int64_t line_no = 0;
  bool in_record = false;
  int64_t record_line = 0;
  Lattice cur;
  while (std::getline(is, line)) {
    ++line_no;
    std::vector<std::string> f = SplitWhitespace(line);
    if (f.empty()) continue;
    const std::string &tag = f[0];
    if (!in_record) {
      if (tag != "LATTICE")
        throw ParseError("expected 'LATTICE' header, got '" + tag + "'", line_no);
      if (f.size() != 4)
        throw ParseError("LATTICE header needs 3 fields", line_no);
      cur = Lattice();
      cur.utt_id = f[1];
      if (!ParseNumber(f[2], &cur.num_nodes) || cur.num_nodes <= 0)
        throw ParseError("bad node count '" + f[2] + "'", line_no);
      if (!ParseNumber(f[3], &cur.start) || cur.start < 0 ||
          cur.start >= cur.num_nodes)
        throw ParseError("bad start node '" + f[3] + "'", line_no);
      in_record = true;
      record_line = line_no;
      continue;
    }
    auto check_node = [&](const std::string &s, NodeId *node) {
      if (!ParseNumber(s, node) || *node < 0 || *node >= cur.num_nodes)
        throw ParseError("bad node id '" + s + "'", line_no);
    };
    if (tag == "A") {
      if (f.size() != 6) throw ParseError("arc line needs 5 fields", line_no);
      LatticeArc arc;
      check_node(f[1], &arc.from);
      check_node(f[2], &arc.to);
      arc.word = f[3];
      if (!ParseNumber(f[4], &arc.am_score) || !std::isfinite(arc.am_score))
        throw ParseError("bad acoustic score '" + f[4] + "'", line_no);
      if (!ParseNumber(f[5], &arc.lm_score) || !std::isfinite(arc.lm_score))
        throw ParseError("bad LM score '" + f[5] + "'", line_no);
      cur.arcs.push_back(std::move(arc));
    } else if (tag == "F") {
      if (f.size() != 2) throw ParseError("final line needs 1 field", line_no);
      NodeId node;
      check_node(f[1], &node);
      cur.finals.push_back(node);
    } else if (tag == ".") {
      if (f.size() != 1) throw ParseError("junk after record terminator", line_no);
      std::sort(cur.finals.begin(), cur.finals.end());
      cur.finals.erase(std::unique(cur.finals.begin(), cur.finals.end()),
                       cur.finals.end());
      if (cur.finals.empty())
        throw ParseError("lattice '" + cur.utt_id + "' has no final node",
                         line_no);
      result.push_back(std::move(cur));
      in_record = false;
    } else {
      throw ParseError("unknown record line '" + tag + "'", line_no);
    }
  }
  if (in_record)
    throw ParseError("lattice record starting here is not terminated by '.'",
                     record_line);
  return result;
}

}  // namespace langsel
