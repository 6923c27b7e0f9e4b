// langsel/arpa-io.h

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

#ifndef LANGSEL_ARPA_IO_H_
#define LANGSEL_ARPA_IO_H_

#include <istream>
#include <ostream>
#include <string>

#include "langsel/ngram-lm.h"

namespace langsel {

// ARPA text layout:
//
//   \data\   (header)
//   ngram 1=<count>
//   ...
//
//   \1-grams:
//   <log10 prob>\t<w1>[\t<log10 backoff>]
//   ...
//
//   \end\    (trailer)
//
// Entries are written in id order, scores with 7 significant digits.

void WriteArpa(const LanguageModel &lm, std::ostream &os);

/// Throws ParseError (with line number) on a malformed header, a section
/// whose entry count differs from the header, non-numeric fields, words that
/// are missing from the unigram section, or a missing \end\ marker.
LanguageModel ReadArpa(std::istream &is, std::string name = "");

LanguageModel ReadArpaFile(const std::string &path);
void WriteArpaFile(const LanguageModel &lm, const std::string &path);

}  // namespace langsel

#endif  // LANGSEL_ARPA_IO_H_
