// lexicon.cc

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

#include "langsel/lexicon.h"

namespace langsel {

void Lexicon::Add(const std::string &word, Pronunciation pron) {
  if (!IsValidToken(word)) throw Error("invalid lexicon word '" + word + "'");
  if (pron.empty()) throw Error("empty pronunciation for '" + word + "'");
  entries[word].insert(std::move(pron));
}

size_t Lexicon::NumPronunciations() const {
  size_t n = 0;
  for (const auto &[word, prons] : entries) n += prons.size();
  return n;
}

void PhoneMap::Check() const {
  for (const auto &[src, dst] : mapping)
    if (inventory.count(dst) == 0)
      throw Error("phone map target '" + dst + "' (from '" + src +
                  "') is not in the inventory");
}

Lexicon MapPhones(const Lexicon &lex, const PhoneMap &map) {
  map.Check();
  Lexicon out;
  out.inventory = map.inventory;
  for (const auto &[word, prons] : lex.entries) {
    for (const Pronunciation &pron : prons) {
      Pronunciation mapped;
      mapped.reserve(pron.size());
      for (size_t i = 0; i < pron.size(); ++i) {
        auto it = map.mapping.find(pron[i]);
        if (it == map.mapping.end()) throw UnmappedPhoneError(word, i, pron[i]);
        mapped.push_back(it->second);
      }
      out.entries[word].insert(std::move(mapped));
    }
  }
  return out;
}

Lexicon MergeLexicons(const Lexicon &a, const Lexicon &b) {
  if (!a.inventory.empty() && !b.inventory.empty() && a.inventory != b.inventory)
    throw Error("cannot merge lexicons declaring different phone inventories");
  Lexicon out = a;
  if (out.inventory.empty()) out.inventory = b.inventory;
  for (const auto &[word, prons] : b.entries)
    out.entries[word].insert(prons.begin(), prons.end());
  return out;
}

Lexicon StressToTone(const Lexicon &lex, const StressRule &rule) {
  PhoneMap map;
  for (const auto &[word, prons] : lex.entries) {
    for (const Pronunciation &pron : prons) {
      for (const std::string &phone : pron) {
        std::string target = phone;
        if (phone.size() >= 2 &&
            rule.stress_marks.find(phone.back()) != std::string::npos)
          target = phone.substr(0, phone.size() - 1) + rule.replacement;
        map.mapping.emplace(phone, target);
        map.inventory.insert(target);
      }
    }
  }
  Lexicon out = MapPhones(lex, map);
  // Keep the caller's declaration, rewritten the same way.
  out.inventory.clear();
  for (const std::string &phone : lex.inventory) {
    std::string target = phone;
    if (phone.size() >= 2 && rule.stress_marks.find(phone.back()) != std::string::npos)
      target = phone.substr(0, phone.size() - 1) + rule.replacement;
    out.inventory.insert(target);
  }
  return out;
}

PhoneInventory PhonesOutsideInventory(const Lexicon &lex) {
  PhoneInventory outside;
  for (const auto &[word, prons] : lex.entries)
    for (const Pronunciation &pron : prons)
      for (const std::string &phone : pron)
        if (lex.inventory.count(phone) == 0) outside.insert(phone);
  return outside;
}

Lexicon ReadLexicon(std::istream &is) {
  Lexicon lex;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (SplitWhitespace(line).empty()) continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("expected 'word<TAB>phones'", line_no);
    std::string word = line.substr(0, tab);
    Pronunciation pron = SplitWhitespace(std::string_view(line).substr(tab + 1));
    try {
      lex.Add(word, std::move(pron));
    } catch (const Error &e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return lex;
}

void WriteLexicon(const Lexicon &lex, std::ostream &os) {
  for (const auto &[word, prons] : lex.entries)
    for (const Pronunciation &pron : prons)
      os << word << '\t' << JoinWords(pron) << '\n';
}

PhoneMap ReadPhoneMap(std::istream &is) {
  PhoneMap map;
  std::string line;
  int64_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    std::vector<std::string> f = SplitWhitespace(line);
    if (f.empty()) continue;
    if (f.size() != 2) throw ParseError("expected 'src<TAB>dst'", line_no);
    if (!map.mapping.emplace(f[0], f[1]).second)
      throw ParseError("phone '" + f[0] + "' mapped twice", line_no);
    map.inventory.insert(f[1]);
  }
  return map;
}

}  // namespace langsel
