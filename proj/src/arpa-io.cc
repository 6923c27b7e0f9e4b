// arpa-io.cc

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

#include "langsel/arpa-io.h"

#include <charconv>
#include <cstdio>
#include <fstream>

namespace langsel {

namespace {

std::string FormatScore(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.7g", value);
  return buf;
}

std::string Trim(const std::string &line) {
  size_t b = line.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = line.find_last_not_of(" \t\r");
  return line.substr(b, e - b + 1);
}

bool ParseDouble(const std::string &field, double *out) {
  const char *begin = field.data();
  const char *end = begin + field.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, *out);
  return ec == std::errc() && ptr == end;
}

struct RawEntry {
  std::vector<std::string> words;
  double log_prob = 0.0;
  std::optional<double> backoff;
  int64_t line = 0;
};

class ArpaParser {
 public:
  explicit ArpaParser(std::istream &is) : is_(is) {}

  LanguageModel Parse(std::string name) {
    ReadHeader();
    const int order = static_cast<int>(declared_.size());
    std::vector<std::vector<RawEntry>> sections(order);
    bool have_line = NextNonBlank();
    for (int k = 1; k <= order; ++k) {
      std::string expect = "\\" + std::to_string(k) + "-grams:";
      if (!have_line || Trim(line_) != expect)
        Fail("expected section header " + expect);
      int64_t header_line = line_no_;
      have_line = ReadSection(k, &sections[k - 1]);
      if (static_cast<int64_t>(sections[k - 1].size()) != declared_[k - 1])
        throw ParseError("section " + expect + " declares " +
                             std::to_string(declared_[k - 1]) +
                             " entries but lists " +
                             std::to_string(sections[k - 1].size()),
                         header_line);
    }
    if (!have_line || Trim(line_) != "\\end\\") {
      if (!have_line) throw ParseError("missing \\end\\ marker", line_no_ + 1);
      Fail("expected \\end\\ marker");
    }
    return Build(order, sections, std::move(name));
  }

 private:
  [[noreturn]] void Fail(const std::string &what) const {
    throw ParseError(what, line_no_);
  }

  bool NextLine() {
    if (pushed_back_) {
      pushed_back_ = false;
      return true;
    }
    if (!std::getline(is_, line_)) return false;
    ++line_no_;
    return true;
  }

  bool NextNonBlank() {
    while (NextLine())
      if (!Trim(line_).empty()) return true;
    return false;
  }

  void ReadHeader() {
    bool found = false;
    while (NextLine()) {
      if (Trim(line_) == "\\data\\") {
        found = true;
        break;
      }
    }
    if (!found) throw ParseError("missing \\data\\ header", line_no_);
    // "ngram k=count" lines, k = 1, 2, ... in sequence.
    while (true) {
      if (!NextLine()) throw ParseError("unexpected end of file in header", line_no_);
      std::string t = Trim(line_);
      if (t.empty()) {
        if (declared_.empty()) continue;
        break;
      }
      if (t.rfind("ngram ", 0) != 0) {
        if (t[0] == '\\' && !declared_.empty()) {
          // Section starts without a blank separator line.
          pushed_back_ = true;
          break;
        }
        Fail("malformed header line '" + t + "'");
      }
      std::string spec = Trim(t.substr(6));
      size_t eq = spec.find('=');
      if (eq == std::string::npos) Fail("malformed header line '" + t + "'");
      int k = 0;
      int64_t count = 0;
      std::string ks = Trim(spec.substr(0, eq)), cs = Trim(spec.substr(eq + 1));
      auto r1 = std::from_chars(ks.data(), ks.data() + ks.size(), k);
      auto r2 = std::from_chars(cs.data(), cs.data() + cs.size(), count);
      if (r1.ec != std::errc() || r1.ptr != ks.data() + ks.size() ||
          r2.ec != std::errc() || r2.ptr != cs.data() + cs.size() || count < 0)
        Fail("malformed header line '" + t + "'");
      if (k != static_cast<int>(declared_.size()) + 1)
        Fail("header declares order " + std::to_string(k) + " out of sequence");
      declared_.push_back(count);
    }
    if (declared_.empty()) Fail("header declares no n-gram orders");
  }

  // Reads entries until the next line starting with '\'; returns false at EOF.
  bool ReadSection(int k, std::vector<RawEntry> *entries) {
    while (NextLine()) {
      std::string t = Trim(line_);
      if (t.empty()) continue;
      if (t[0] == '\\') return true;
      std::vector<std::string> fields = SplitWhitespace(t);
      if (fields.size() != static_cast<size_t>(k) + 1 &&
          fields.size() != static_cast<size_t>(k) + 2)
        Fail("expected " + std::to_string(k + 1) + " or " +
             std::to_string(k + 2) + " fields in " + std::to_string(k) +
             "-gram entry, got " + std::to_string(fields.size()));
      RawEntry e;
      e.line = line_no_;
      if (!ParseDouble(fields[0], &e.log_prob))
        Fail("non-numeric log probability '" + fields[0] + "'");
      if (e.log_prob > 0.0) Fail("positive log probability " + fields[0]);
      e.words.assign(fields.begin() + 1, fields.begin() + 1 + k);
      if (fields.size() == static_cast<size_t>(k) + 2) {
        double bo = 0.0;
        if (!ParseDouble(fields.back(), &bo))
          Fail("non-numeric backoff weight '" + fields.back() + "'");
        e.backoff = bo;
      }
      entries->push_back(std::move(e));
    }
    return false;
  }

  LanguageModel Build(int order,
                      const std::vector<std::vector<RawEntry>> &sections,
                      std::string name) {
    std::vector<std::string> words;
    for (const RawEntry &e : sections[0]) words.push_back(e.words[0]);
    Vocabulary vocab;
    try {
      vocab = Vocabulary(words);
    } catch (const Error &err) {
      throw ParseError(err.what(), 0);
    }
    std::vector<NGramTable> tables(order);
    for (int k = 1; k <= order; ++k) {
      for (const RawEntry &e : sections[k - 1]) {
        NGram ngram;
        for (const std::string &w : e.words) {
          std::optional<WordId> id = vocab.Find(w);
          if (!id) throw ParseError("word '" + w + "' missing from \\1-grams:", e.line);
          ngram.push_back(*id);
        }
        if (k > 1) {
          std::span<const WordId> ctx(ngram.data(), k - 1);
          if (tables[k - 2].find(ctx) == tables[k - 2].end())
            throw ParseError("context of " + std::to_string(k) +
                                 "-gram is not a stored " +
                                 std::to_string(k - 1) + "-gram",
                             e.line);
        }
        if (!tables[k - 1].emplace(ngram, NGramEntry{e.log_prob, e.backoff}).second)
          throw ParseError("duplicate " + std::to_string(k) + "-gram", e.line);
      }
    }
    return LanguageModel(order, std::move(vocab), std::move(tables),
                         std::move(name));
  }

  std::istream &is_;
  std::string line_;
  int64_t line_no_ = 0;
  bool pushed_back_ = false;
  std::vector<int64_t> declared_;
};

}  // namespace

void WriteArpa(const LanguageModel &lm, std::ostream &os) {
  os << "\n\\data\\\n";
  for (int k = 1; k <= lm.Order(); ++k)
    os << "ngram " << k << "=" << lm.NumEntries(k) << "\n";
  const Vocabulary &vocab = lm.Vocab();
  for (int k = 1; k <= lm.Order(); ++k) {
    os << "\n\\" << k << "-grams:\n";
    for (const auto &[ngram, entry] : lm.Table(k)) {
      os << FormatScore(entry.log_prob) << '\t';
      for (size_t i = 0; i < ngram.size(); ++i) {
        if (i > 0) os << ' ';
        os << vocab.Word(ngram[i]);
      }
      if (entry.backoff) os << '\t' << FormatScore(*entry.backoff);
      os << '\n';
    }
  }
  os << "\n\\end\\\n";
}

LanguageModel ReadArpa(std::istream &is, std::string name) {
  return ArpaParser(is).Parse(std::move(name));
}

LanguageModel ReadArpaFile(const std::string &path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "' for reading");
  try {
    return ReadArpa(is, path);
  } catch (const ParseError &e) {
    throw ParseError(e.Message(), e.Line(), path);
  }
}

void WriteArpaFile(const LanguageModel &lm, const std::string &path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  WriteArpa(lm, os);
  if (!os) throw IoError("error writing '" + path + "'");
}

}  // namespace langsel
