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
#include <cstdint>
#include <string>

#include <CLI11.hpp>

#include "experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "circlezeros: sampling and statistics for self-reciprocal polynomials "
      "with zeros on the unit circle, plus Epstein zeta critical-line tools"};
  app.require_subcommand(0, 1);

  circlezeros_tools::CliOptions opts;
  std::uint64_t seed = 0;
  int workers = 0;
  double tolerance = 0.0;
  double alpha = 0.0;

  app.add_option("--config", opts.config_path,
                 "Experiment config JSON (or a manifest.json to rerun)");
  CLI::Option* seed_opt =
      app.add_option("--seed", seed, "Master seed (overrides the config)");
  CLI::Option* workers_opt = app.add_option(
      "--workers", workers, "Worker threads (default: available parallelism)");
  app.add_option("--out", opts.out_dir,
                 "Output directory (CIRCLEZEROS_OUT overrides this flag)");
  CLI::Option* tol_opt = app.add_option(
      "--tolerance", tolerance, "On-circle classification tolerance override");
  CLI::Option* alpha_opt =
      app.add_option("--alpha", alpha, "Significance level for tests");

  CLI::App* cmp = app.add_subcommand(
      "compare", "Two-sample test between gap/angle data files");
  cmp->fallthrough();  // let --alpha/--out after the positionals reach the app
  std::string file_a, file_b, test = "KS";
  cmp->add_option("file_a", file_a, "First sample file")->required();
  cmp->add_option("file_b", file_b, "Second sample file")->required();
  cmp->add_option("--test", test, "KS or chi-square (default KS)");

  CLI11_PARSE(app, argc, argv);

  if (seed_opt->count() > 0) opts.seed = seed;
  if (workers_opt->count() > 0) opts.workers = workers;
  if (tol_opt->count() > 0) opts.tolerance = tolerance;
  if (alpha_opt->count() > 0) opts.alpha = alpha;

  if (cmp->parsed()) {
    const double a = opts.alpha.value_or(0.05);
    return circlezeros_tools::run_compare(file_a, file_b, test, a,
                                          opts.out_dir);
  }
  return circlezeros_tools::run_experiment(opts);
}
