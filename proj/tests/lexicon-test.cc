// tests/lexicon-test.cc

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

#include <gtest/gtest.h>

#include <sstream>

#include "langsel/rng.h"

namespace langsel {
namespace {

Pronunciation P(const std::string &s) { return SplitWhitespace(s); }

// Small illustrative ARPAbet-to-shared-set table.
PhoneMap IllustrativeMap() {
  PhoneMap m;
  m.mapping = {{"AA", "a:"}, {"T", "t"}, {"B", "b"}, {"K", "k"}, {"AE", "E"}};
  for (const auto &[src, dst] : m.mapping) m.inventory.insert(dst);
  return m;
}

TEST(MapPhonesTest, Identity) {
  Lexicon lex;
  lex.Add("bat", P("B AE T"));
  lex.Add("bat", P("B AA T"));
  PhoneMap id;
  for (const char *p : {"B", "AE", "AA", "T"}) {
    id.mapping[p] = p;
    id.inventory.insert(p);
  }
  Lexicon out = MapPhones(lex, id);
  EXPECT_EQ(out.entries, lex.entries);
}

TEST(MapPhonesTest, DirectSubstitution) {
  Lexicon lex;
  lex.Add("bat", P("B AA T"));
  Lexicon out = MapPhones(lex, IllustrativeMap());
  EXPECT_EQ(out.entries.at("bat"), std::set<Pronunciation>{P("b a: t")});
  EXPECT_TRUE(PhonesOutsideInventory(out).empty());
}

TEST(MapPhonesTest, CollapsesDuplicates) {
  Lexicon lex;
  lex.Add("x", P("AA T"));
  lex.Add("x", P("AE T"));
  PhoneMap m = IllustrativeMap();
  m.mapping["AE"] = "a:";
  Lexicon out = MapPhones(lex, m);
  EXPECT_EQ(out.entries.at("x").size(), 1u);
}

TEST(MapPhonesTest, UnmappedPhoneNamesWordAndPosition) {
  Lexicon lex;
  lex.Add("cat", P("K AE Z"));
  try {
    MapPhones(lex, IllustrativeMap());
    FAIL();
  } catch (const UnmappedPhoneError &e) {
    EXPECT_EQ(e.Word(), "cat");
    EXPECT_EQ(e.Position(), 2u);
    EXPECT_EQ(e.Phone(), "Z");
    EXPECT_NE(std::string(e.what()).find("cat"), std::string::npos);
  }
}

TEST(MapPhonesTest, TargetOutsideInventory) {
  PhoneMap m = IllustrativeMap();
  m.mapping["Q"] = "nope";
  EXPECT_THROW(m.Check(), Error);
}

TEST(MapPhonesTest, PreservesLengthsAndWords) {
  Rng rng(3);
  std::vector<std::string> phones{"AA", "T", "B", "K", "AE"};
  PhoneMap m = IllustrativeMap();
  for (int trial = 0; trial < 50; ++trial) {
    Lexicon lex;
    for (int w = 0; w < 5; ++w) {
      Pronunciation p;
      for (uint64_t i = 0, n = 1 + rng.NextBelow(5); i < n; ++i) p.push_back(phones[rng.NextBelow(5)]);
      lex.Add("w" + std::to_string(w), p);
    }
    Lexicon out = MapPhones(lex, m);
    ASSERT_EQ(out.entries.size(), lex.entries.size());
    for (const auto &[word, prons] : lex.entries) {
      std::multiset<size_t> in_len, out_len;
      for (const auto &p : prons) in_len.insert(p.size());
      for (const auto &p : out.entries.at(word)) out_len.insert(p.size());
      EXPECT_EQ(in_len, out_len);  // this map is injective, so nothing collapses
    }
  }
}

TEST(MergeTest, DisjointAndShared) {
  Lexicon a, b;
  a.Add("cat", P("k E t"));
  b.Add("com", P("k o m"));
  EXPECT_EQ(MergeLexicons(a, b).entries.size(), 2u);
  b.Add("cat", P("k a: t"));
  Lexicon m = MergeLexicons(a, b);
  EXPECT_EQ(m.entries.at("cat").size(), 2u);
  EXPECT_LE(m.entries.size(), a.entries.size() + b.entries.size());
}

TEST(MergeTest, CommutativeAndAssociative) {
  Rng rng(9);
  auto random = [&] {
    Lexicon l;
    for (int i = 0; i < 4; ++i)
      l.Add("w" + std::to_string(rng.NextBelow(6)), P(rng.NextBelow(2) ? "a b" : "c"));
    return l;
  };
  for (int trial = 0; trial < 30; ++trial) {
    Lexicon a = random(), b = random(), c = random();
    EXPECT_EQ(MergeLexicons(a, b).entries, MergeLexicons(b, a).entries);
    EXPECT_EQ(MergeLexicons(MergeLexicons(a, b), c).entries,
              MergeLexicons(a, MergeLexicons(b, c)).entries);
  }
}

TEST(MergeTest, InventoryMismatch) {
  Lexicon a, b;
  a.inventory = {"a", "b"};
  b.inventory = {"a", "c"};
  EXPECT_THROW(MergeLexicons(a, b), Error);
}

TEST(MergeTest, MergedPhonesStayInInventory) {
  PhoneMap m = IllustrativeMap();
  Lexicon en, vi;
  en.Add("bat", P("B AA T"));
  vi.Add("ba", P("B AA"));
  Lexicon merged = MergeLexicons(MapPhones(en, m), MapPhones(vi, m));
  EXPECT_EQ(merged.inventory, m.inventory);
  EXPECT_TRUE(PhonesOutsideInventory(merged).empty());
}

TEST(StressToToneTest, RewritesStressDigits) {
  Lexicon lex;
  lex.Add("about", P("AH0 B AW1 T"));
  lex.Add("b", P("B IY2"));
  Lexicon out = StressToTone(lex);
  EXPECT_EQ(out.entries.at("about"), std::set<Pronunciation>{P("AH1 B AW1 T")});
  EXPECT_EQ(out.entries.at("b"), std::set<Pronunciation>{P("B IY1")});
}

TEST(StressToToneTest, UnstressedUnchangedAndIdempotent) {
  Lexicon lex;
  lex.Add("tt", P("T T"));
  lex.Add("ah", P("AH0"));
  Lexicon once = StressToTone(lex);
  EXPECT_EQ(once.entries.at("tt"), lex.entries.at("tt"));
  EXPECT_EQ(StressToTone(once), once);
}

TEST(LexiconIoTest, RoundTripAndErrors) {
  std::istringstream is("bat\tB AA T\nbat\tB AE T\n\ncat\tK AE T\n");
  Lexicon lex = ReadLexicon(is);
  EXPECT_EQ(lex.NumPronunciations(), 3u);
  std::ostringstream os;
  WriteLexicon(lex, os);
  EXPECT_EQ(os.str(), "bat\tB AA T\nbat\tB AE T\ncat\tK AE T\n");
  std::istringstream no_tab("bat B AA T\n");
  EXPECT_THROW(ReadLexicon(no_tab), ParseError);
  std::istringstream empty_pron("a\tB\nbat\t  \n");
  try {
    ReadLexicon(empty_pron);
    FAIL();
  } catch (const ParseError &e) {
    EXPECT_EQ(e.Line(), 2);
  }
  std::istringstream map("AA\ta:\nT\tt\n");
  PhoneMap m = ReadPhoneMap(map);
  EXPECT_EQ(m.mapping.at("AA"), "a:");
  EXPECT_EQ(m.inventory, (PhoneInventory{"a:", "t"}));
}

}  // namespace
}  // namespace langsel
