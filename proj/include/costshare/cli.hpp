// Copyright 2026 The costshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COSTSHARE_CLI_HPP
#define COSTSHARE_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "costshare/error.hpp"
#include "costshare/scenario.hpp"

namespace costshare {

/// One CSV table of a command's output.
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  /// Per-sample data: written with --out only, left out of summary.json.
  bool raw = false;
};

struct Report {
  std::vector<Table> tables;
  /// Exit status of a run that still produced output (3 for no equilibrium).
  int status = 0;
};

struct CommandOptions {
  std::optional<int> n;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  int workers = 1;
};

/// Runs one command on a parsed scenario. Throws Error on failure.
Report run_command(const std::string& command, const Scenario& scenario, const CommandOptions& options);

const std::vector<std::string>& command_names();

/// Process exit status for an error: 2 validation, 3 no equilibrium,
/// 4 out of reach (TooLarge, InfeasibleDemand), 1 anything else.
int exit_code(ErrorCode code);

/// Tables as "# name" lines each followed by a CSV block.
void write_tables(std::ostream& out, const Report& report);

/// `<name>.csv` per table plus summary.json in `dir`.
void write_report_dir(const std::string& dir, const std::string& command, const Report& report);

/// Full command line entry point: costshare <command> --scenario F [...].
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace costshare

#endif  // COSTSHARE_CLI_HPP
