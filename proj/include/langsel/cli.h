// langsel/cli.h

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

#ifndef LANGSEL_CLI_H_
#define LANGSEL_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace langsel {

inline constexpr const char *kToolVersion = "0.1.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // computation or validation failure
  kExitUsage = 2,    // bad arguments or I/O failure
};

/// Runs the `langsel` tool.  `args` excludes the program name.  Reports go
/// to `out`, diagnostics to `err`.
int RunCli(const std::vector<std::string> &args, std::ostream &out,
           std::ostream &err);

/// 64-bit FNV-1a of a file's bytes as 16 hex digits.  Throws IoError when
/// the file cannot be read.
std::string FileDigest(const std::string &path);

}  // namespace langsel

#endif  // LANGSEL_CLI_H_
