// langsel/lexicon.h

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

#ifndef LANGSEL_LEXICON_H_
#define LANGSEL_LEXICON_H_

// Pronunciation lexicons over a shared phone set: phone mapping between
// alphabets, stress rewriting and merging of per-language lexicons.

#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "langsel/text-utils.h"

namespace langsel {

using Pronunciation = std::vector<std::string>;
using PhoneInventory = std::set<std::string>;

/// word -> set of pronunciations.  `inventory` is the declared phone set;
/// empty means undeclared.
struct Lexicon {
  std::map<std::string, std::set<Pronunciation>> entries;
  PhoneInventory inventory;

  /// Throws Error for an empty pronunciation.
  void Add(const std::string &word, Pronunciation pron);
  size_t NumPronunciations() const;
  bool operator==(const Lexicon &) const = default;
};

struct PhoneMap {
  std::map<std::string, std::string> mapping;
  PhoneInventory inventory;  // target phones

  /// Throws Error if a target phone is missing from the inventory.
  void Check() const;
};

class UnmappedPhoneError : public Error {
 public:
  UnmappedPhoneError(const std::string &word, size_t position,
                     const std::string &phone)
      : Error("word '" + word + "': phone '" + phone + "' at position " +
              std::to_string(position) + " has no mapping"),
        word_(word), position_(position), phone_(phone) {}
  const std::string &Word() const { return word_; }
  size_t Position() const { return position_; }
  const std::string &Phone() const { return phone_; }

 private:
  std::string word_;
  size_t position_;
  std::string phone_;
};

/// Replaces every phone through `map`; pronunciations that become identical
/// collapse.  The result declares the map's inventory.  Throws
/// UnmappedPhoneError for the first phone (in word order) without a mapping.
Lexicon MapPhones(const Lexicon &lex, const PhoneMap &map);

/// Union of words and, per word, of pronunciations.  Throws Error if both
/// lexicons declare different inventories.
Lexicon MergeLexicons(const Lexicon &a, const Lexicon &b);

/// Rewrites a trailing stress marker on a phone symbol: a symbol of at least
/// two characters whose last character is in `stress_marks` gets that
/// character replaced by `replacement` (e.g. AH0 -> AH1).
struct StressRule {
  std::string stress_marks = "012";
  std::string replacement = "1";
};

Lexicon StressToTone(const Lexicon &lex, const StressRule &rule = {});

/// Phones used by the lexicon that are not in its declared inventory (all
/// phones when none is declared).
PhoneInventory PhonesOutsideInventory(const Lexicon &lex);

/// `word<TAB>phone phone ...`, one pronunciation per line.
Lexicon ReadLexicon(std::istream &is);
void WriteLexicon(const Lexicon &lex, std::ostream &os);

/// `src<TAB>dst` per line; the inventory is the set of targets.
PhoneMap ReadPhoneMap(std::istream &is);

}  // namespace langsel

#endif  // LANGSEL_LEXICON_H_
