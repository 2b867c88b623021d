// Copyright 2026 The hjw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hjw::cli {

/// Process exit codes. Nothing else is ever returned.
enum ExitCode : int { kOk = 0, kParseError = 2, kPreconditionError = 3, kNumericalError = 4 };

/// Runs one command line (args excludes the program name). Documents go to
/// `out` (or --out files), error JSON to `err`; "-" as a path means `in` or
/// `out`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace hjw::cli
