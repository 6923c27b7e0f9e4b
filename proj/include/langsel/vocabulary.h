// langsel/vocabulary.h

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

#ifndef LANGSEL_VOCABULARY_H_
#define LANGSEL_VOCABULARY_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace langsel {

using WordId = int32_t;

inline constexpr std::string_view kSentenceBegin = "<s>";
inline constexpr std::string_view kSentenceEnd = "</s>";
inline constexpr std::string_view kUnknownWord = "<unk>";

/// Immutable word <-> id bijection. The three reserved tokens always take
/// ids 0, 1, 2; every other word follows in byte-wise sorted order, so the
/// same word set always yields the same ids.
class Vocabulary {
 public:
  static constexpr WordId kBosId = 0;
  static constexpr WordId kEosId = 1;
  static constexpr WordId kUnkId = 2;

  /// Reserved tokens only.
  Vocabulary();

  /// Duplicates and reserved tokens in `words` are ignored. Throws Error on
  /// an empty or whitespace-bearing token.
  explicit Vocabulary(std::span<const std::string> words);

  /// Id of `word`, or kUnkId when absent.
  WordId Id(std::string_view word) const;
  std::optional<WordId> Find(std::string_view word) const;
  bool Contains(std::string_view word) const { return Find(word).has_value(); }

  const std::string &Word(WordId id) const { return words_.at(id); }
  size_t Size() const { return words_.size(); }
  const std::vector<std::string> &Words() const { return words_; }

  /// Maps tokens to ids with OOV -> kUnkId.
  std::vector<WordId> Map(std::span<const std::string> words) const;

  static bool IsReserved(std::string_view word);

  bool operator==(const Vocabulary &other) const {
    return words_ == other.words_;
  }

 private:
  std::vector<std::string> words_;
  std::map<std::string, WordId, std::less<>> index_;
};

/// Union of the two word sets.
Vocabulary UnionVocabulary(const Vocabulary &a, const Vocabulary &b);

}  // namespace langsel

#endif  // LANGSEL_VOCABULARY_H_
