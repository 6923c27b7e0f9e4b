// text-utils.cc

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

#include "langsel/text-utils.h"

#include <cctype>
#include <cstdio>
#include <set>

namespace langsel {

namespace {

bool IsSpace(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

}  // namespace

std::vector<std::string> SplitWhitespace(std::string_view text) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > start) out.emplace_back(text.substr(start, i - start));
  }
  return out;
}

bool IsValidToken(std::string_view token) {
  if (token.empty()) return false;
  for (char c : token)
    if (IsSpace(c)) return false;
  return true;
}

Corpus ReadCorpus(std::istream &is) {
  Corpus corpus;
  std::string line;
  while (std::getline(is, line)) {
    Sentence words = SplitWhitespace(line);
    if (!words.empty()) corpus.push_back(std::move(words));
  }
  return corpus;
}

std::vector<std::pair<std::string, Sentence>> ReadUtterances(std::istream &is) {
  std::vector<std::pair<std::string, Sentence>> out;
  std::set<std::string> seen;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    Sentence fields = SplitWhitespace(line);
    if (fields.empty()) continue;
    std::string id = fields.front();
    if (!seen.insert(id).second)
      throw ParseError("duplicate utterance id '" + id + "'", line_no);
    fields.erase(fields.begin());
    out.emplace_back(std::move(id), std::move(fields));
  }
  return out;
}

std::string JoinWords(const Sentence &words, std::string_view sep) {
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += sep;
    out += words[i];
  }
  return out;
}

std::string FormatFixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string s(buf);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos)
    s.erase(0, 1);
  return s;
}

}  // namespace langsel
