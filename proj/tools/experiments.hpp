/* Copyright (C) 2026 The circlezeros authors.
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace circlezeros_tools {

struct CliOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::string out_dir;
  std::optional<double> tolerance;
  std::optional<double> alpha;
};

// Runs the experiment described by the config (or reruns a manifest) and
// returns the process exit code: 0 success, 2 bad config or input format,
// 1 any other failure. Failures also print a one-line JSON error record to
// stderr.
int run_experiment(const CliOptions& opts);

// Two-sample comparison of gap/angle files. Prints a JSON report to stdout;
// exit code 0 means not rejected at alpha, 3 means rejected, 2 means a file
// failed to parse.
int run_compare(const std::string& file_a, const std::string& file_b,
                const std::string& test, double alpha,
                const std::string& out_dir);

}  // namespace circlezeros_tools
