/* Copyright 2026 The Spatialref Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef SPATIALREF_CLI_H_
#define SPATIALREF_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spatialref {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitOperationalError = 2;

struct RunConfig {
  std::string command;
  std::string scenes;
  std::vector<std::string> annotations;
  std::string predictions;
  std::string lexicon;
  std::optional<std::uint64_t> seed;
  std::string decoder = "threshold";  // threshold | topk
  std::string count_source = "file";  // file | heuristic | gold
  std::string group = "relation";     // relation | category | strength | factor
  std::string out_dir;
  bool emit_cases = false;
  // generate
  int per_relation = 500;
  bool violating = false;
  // perturb
  double flip_probability = 0.0;
  // split
  int items = 0;
};

// Executes one command. Output files are staged in memory and written only
// when the command succeeds; on failure a JSON error record goes to `err`
// and nothing is left in the output directory.
int Run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (subcommand first) and dispatches to Run.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace spatialref

#endif  // SPATIALREF_CLI_H_
