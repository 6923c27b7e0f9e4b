// langsel/text-utils.h

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

#ifndef LANGSEL_TEXT_UTILS_H_
#define LANGSEL_TEXT_UTILS_H_

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace langsel {

using Sentence = std::vector<std::string>;
using Corpus = std::vector<Sentence>;

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input text. Carries the 1-based line number where the problem
/// was detected (0 when not tied to a line) and, when known, the file name.
class ParseError : public Error {
 public:
  ParseError(const std::string &what, int64_t line, const std::string &file = "")
      : Error(Format(what, line, file)), message_(what), line_(line), file_(file) {}
  int64_t Line() const { return line_; }
  const std::string &File() const { return file_; }
  const std::string &Message() const { return message_; }

 private:
  static std::string Format(const std::string &what, int64_t line,
                            const std::string &file) {
    std::string where = file;
    if (line > 0) where += (file.empty() ? "line " : ":") + std::to_string(line);
    return where.empty() ? what : where + ": " + what;
  }

  std::string message_;
  int64_t line_;
  std::string file_;
};

std::vector<std::string> SplitWhitespace(std::string_view text);

/// True if the token is non-empty and contains no whitespace.
bool IsValidToken(std::string_view token);

/// One sentence per line, whitespace-delimited tokens; blank lines skipped.
Corpus ReadCorpus(std::istream &is);

/// Kaldi-style "text" lines: `<utt-id> word word ...`. The transcript may be
/// empty. Duplicate utterance ids raise ParseError.
std::vector<std::pair<std::string, Sentence>> ReadUtterances(std::istream &is);

std::string JoinWords(const Sentence &words, std::string_view sep = " ");

/// printf-style fixed formatting with the given number of decimals; negative
/// zero is printed without its sign so that output is stable.
std::string FormatFixed(double value, int decimals);

}  // namespace langsel

#endif  // LANGSEL_TEXT_UTILS_H_
