// vocabulary.cc

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

#include "langsel/vocabulary.h"

#include <algorithm>
#include <set>

#include "langsel/text-utils.h"

namespace langsel {

Vocabulary::Vocabulary() : Vocabulary(std::span<const std::string>()) {}

Vocabulary::Vocabulary(std::span<const std::string> words) {
  std::set<std::string, std::less<>> sorted;
  for (const std::string &w : words) {
    if (!IsValidToken(w))
      throw Error("invalid vocabulary token '" + w + "'");
    if (!IsReserved(w)) sorted.insert(w);
  }
  words_.reserve(sorted.size() + 3);
  words_.emplace_back(kSentenceBegin);
  words_.emplace_back(kSentenceEnd);
  words_.emplace_back(kUnknownWord);
  words_.insert(words_.end(), sorted.begin(), sorted.end());
  for (size_t i = 0; i < words_.size(); ++i)
    index_.emplace(words_[i], static_cast<WordId>(i));
}

WordId Vocabulary::Id(std::string_view word) const {
  auto it = index_.find(word);
  return it == index_.end() ? kUnkId : it->second;
}

std::optional<WordId> Vocabulary::Find(std::string_view word) const {
  auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<WordId> Vocabulary::Map(std::span<const std::string> words) const {
  std::vector<WordId> ids;
  ids.reserve(words.size());
  for (const std::string &w : words) ids.push_back(Id(w));
  return ids;
}

bool Vocabulary::IsReserved(std::string_view word) {
  return word == kSentenceBegin || word == kSentenceEnd || word == kUnknownWord;
}

Vocabulary UnionVocabulary(const Vocabulary &a, const Vocabulary &b) {
  std::vector<std::string> words = a.Words();
  words.insert(words.end(), b.Words().begin(), b.Words().end());
  return Vocabulary(words);
}

}  // namespace langsel
