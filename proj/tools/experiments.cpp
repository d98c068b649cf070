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
#include "experiments.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "circlezeros/epstein.hpp"
#include "circlezeros/measures.hpp"
#include "circlezeros/poly.hpp"
#include "circlezeros/roots.hpp"
#include "circlezeros/samplers.hpp"
#include "circlezeros/seeding.hpp"
#include "circlezeros/stats.hpp"
#include "sha256.hpp"

#ifndef CIRCLEZEROS_VERSION
#define CIRCLEZEROS_VERSION "0.0.0"
#endif

namespace circlezeros_tools {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace circlezeros;

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string iso_utc_now() {
  const std::time_t tt =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Collects the experiment's data files, hashing each as it is written so the
// manifest can pair every output with its digest.
struct OutputSet {
  fs::path dir;
  std::map<std::string, std::string> digests;

  void write(const std::string& name, const std::string& content) {
    std::ofstream f(dir / name, std::ios::binary);
    if (!f) throw Error("cannot open output file " + (dir / name).string());
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.close();
    Sha256 h;
    h.update(content.data(), content.size());
    digests[name] = h.hex_digest();
  }
};

struct RunContext {
  json config;
  std::string kind;
  std::uint64_t seed = 0;
  int workers = 1;
  double tolerance = -1.0;  // < 0 means "module default"
  double alpha = 0.05;
  OutputSet out;
};

json load_json_file(const std::string& path, bool as_config) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    const std::string msg = "cannot read file: " + path;
    if (as_config) throw ConfigInvalid(msg);
    throw FormatError(msg);
  }
  json j;
  try {
    f >> j;
  } catch (const json::exception& e) {
    const std::string msg = path + ": " + e.what();
    if (as_config) throw ConfigInvalid(msg);
    throw FormatError(msg);
  }
  return j;
}

double require_number(const json& cfg, const char* key) {
  if (!cfg.contains(key) || !cfg[key].is_number()) {
    throw ConfigInvalid(std::string("missing numeric field \"") + key + "\"");
  }
  return cfg[key].get<double>();
}

long require_integer(const json& cfg, const char* key) {
  if (!cfg.contains(key) || !cfg[key].is_number_integer()) {
    throw ConfigInvalid(std::string("missing integer field \"") + key + "\"");
  }
  return cfg[key].get<long>();
}

std::string require_string(const json& cfg, const char* key) {
  if (!cfg.contains(key) || !cfg[key].is_string()) {
    throw ConfigInvalid(std::string("missing string field \"") + key + "\"");
  }
  return cfg[key].get<std::string>();
}

std::string upper(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return s;
}

Model parse_model(const std::string& name) {
  const std::string u = upper(name);
  if (u == "UNIFORM_DISK_COMPLEX") return Model::UNIFORM_DISK_COMPLEX;
  if (u == "UNIFORM_DISK_REAL") return Model::UNIFORM_DISK_REAL;
  if (u == "GAUSSIAN_SR") return Model::GAUSSIAN_SR;
  if (u == "MATRIX_COE") return Model::MATRIX_COE;
  if (u == "MATRIX_CUE") return Model::MATRIX_CUE;
  if (u == "MCMC") return Model::MCMC;
  throw ConfigInvalid("unknown model \"" + name + "\"");
}

DensityKind parse_density(const std::string& name, int arity) {
  const std::string u = upper(name);
  try {
    if (u == "COE") return DensityKind::coe(arity);
    if (u == "CUE") return DensityKind::cue(arity);
    if (u == "THM1_EVEN") return DensityKind::thm1_even(arity);
    if (u == "THM2_REAL") return DensityKind::thm2_real(arity);
    if (u == "USP_HAAR") return DensityKind::usp_haar(arity);
  } catch (const Error& e) {
    throw ConfigInvalid(std::string("bad density target: ") + e.what());
  }
  throw ConfigInvalid("unknown density \"" + name + "\"");
}

json spec_to_json(const EnsembleSpec& spec) {
  json j{{"model", model_name(spec.model)},
         {"degree", spec.N},
         {"seed", spec.seed},
         {"tolerance", spec.tolerance}};
  if (spec.model == Model::GAUSSIAN_SR) j["epsilon"] = spec.epsilon;
  if (spec.model == Model::MCMC) {
    j["target"] = spec.mcmc_target.name();
    j["arity"] = spec.mcmc_target.arity;
  }
  return j;
}

json batch_meta(const SampleBatch& batch) {
  json j{{"accepted", batch.accepted},
         {"attempted", batch.attempted},
         {"box_domain", batch.box_domain}};
  if (batch.attempted > 0) {
    j["acceptance_rate"] =
        static_cast<double>(batch.accepted) / static_cast<double>(batch.attempted);
  }
  if (batch.mcmc_acceptance >= 0.0) j["mcmc_acceptance"] = batch.mcmc_acceptance;
  return j;
}

std::string angles_to_jsonl(const std::vector<std::vector<double>>& sets) {
  std::string out;
  for (const std::vector<double>& set : sets) {
    out += '[';
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (i) out += ',';
      out += fmt17(set[i]);
    }
    out += "]\n";
  }
  return out;
}

std::string gaps_to_csv(const std::vector<double>& gaps, const char* header) {
  std::string out = header;
  out += '\n';
  for (double g : gaps) {
    out += fmt17(g);
    out += '\n';
  }
  return out;
}

std::string histogram_to_csv(const Histogram& h) {
  std::string out = "bin_lo,bin_hi,count,mass\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out += fmt17(h.edges[i]);
    out += ',';
    out += fmt17(h.edges[i + 1]);
    out += ',';
    out += std::to_string(h.counts[i]);
    out += ',';
    out += fmt17(h.mass[i]);
    out += '\n';
  }
  return out;
}

// Builds the EnsembleSpec shared by the sample and spacings experiments.
EnsembleSpec spec_from_config(const RunContext& ctx) {
  EnsembleSpec spec;
  spec.model = parse_model(require_string(ctx.config, "model"));
  if (spec.model == Model::MCMC) {
    const int arity = static_cast<int>(require_integer(ctx.config, "arity"));
    spec.mcmc_target = parse_density(require_string(ctx.config, "target"), arity);
    spec.N = arity;
  } else {
    spec.N = static_cast<int>(require_integer(ctx.config, "degree"));
    if (spec.N < 1) throw ConfigInvalid("degree must be >= 1");
  }
  spec.seed = ctx.seed;
  spec.tolerance = ctx.tolerance;
  if (ctx.config.contains("epsilon")) {
    spec.epsilon = require_number(ctx.config, "epsilon");
  }
  return spec;
}

// Draws the angle batch for any model. GAUSSIAN_SR goes through the root
// finder; failed classifications are skipped and counted.
SampleBatch draw_batch(const RunContext& ctx, const EnsembleSpec& spec,
                       std::size_t count, json& extra_meta) {
  switch (spec.model) {
    case Model::UNIFORM_DISK_COMPLEX:
    case Model::UNIFORM_DISK_REAL: {
      const std::size_t budget = ctx.config.value("max_attempts", 2000000UL);
      return sample_cn_rejection(spec, count, budget, ctx.workers);
    }
    case Model::MATRIX_COE:
    case Model::MATRIX_CUE:
      return sample_matrix_ensemble_angles(spec, count, ctx.workers);
    case Model::MCMC: {
      const std::size_t burn_in = ctx.config.value("burn_in", 10000UL);
      const std::size_t thin = ctx.config.value(
          "thin", static_cast<std::size_t>(10 * spec.mcmc_target.arity));
      const double scale = ctx.config.value(
          "proposal_scale", 1.0 / std::sqrt(static_cast<double>(
                                spec.mcmc_target.arity)));
      return mcmc_sample(spec.mcmc_target, count, burn_in, thin, scale,
                         spec.seed);
    }
    case Model::GAUSSIAN_SR: {
      const std::vector<SelfReciprocalPoly> polys =
          sample_gaussian_sr(spec, count, ctx.workers);
      SampleBatch batch;
      std::size_t skipped = 0;
      for (std::size_t i = 0; i < polys.size(); ++i) {
        try {
          const RootFindReport rep = find_roots(polys[i]);
          ZeroConfiguration zc = circle_classify(rep, spec.tolerance);
          batch.angle_sets.push_back(std::move(zc.on_circle));
        } catch (const ConvergenceFailure&) {
          ++skipped;
        } catch (const UnpairedRoot&) {
          ++skipped;
        }
        batch.seed_chain.push_back(split_seed(spec.seed, i));
      }
      batch.accepted = batch.angle_sets.size();
      batch.attempted = polys.size();
      extra_meta["skipped"] = skipped;
      return batch;
    }
  }
  throw ConfigInvalid("unhandled model");
}

void write_manifest(RunContext& ctx, const std::string& started) {
  json manifest{{"experiment", ctx.kind},
                {"config", ctx.config},
                {"master_seed", ctx.seed},
                {"code_version", CIRCLEZEROS_VERSION},
                {"started", started},
                {"finished", iso_utc_now()},
                {"outputs", ctx.out.digests}};
  std::ofstream f(ctx.out.dir / "manifest.json", std::ios::binary);
  f << manifest.dump(2) << '\n';
}

// ---- experiment handlers -------------------------------------------------

void run_sample(RunContext& ctx) {
  const std::size_t count =
      static_cast<std::size_t>(require_integer(ctx.config, "count"));
  EnsembleSpec spec = spec_from_config(ctx);
  json extra;
  SampleBatch batch;
  try {
    batch = draw_batch(ctx, spec, count, extra);
  } catch (AttemptBudgetExhausted& e) {
    // Keep the deterministic prefix on disk, then surface the failure.
    ctx.out.write("angles.jsonl", angles_to_jsonl(e.partial.angle_sets));
    json meta{{"spec", spec_to_json(spec)},
              {"requested", count},
              {"batch", batch_meta(e.partial)},
              {"partial", true}};
    ctx.out.write("meta.json", meta.dump(2) + "\n");
    throw;
  }
  ctx.out.write("angles.jsonl", angles_to_jsonl(batch.angle_sets));
  json meta{{"spec", spec_to_json(spec)},
            {"requested", count},
            {"batch", batch_meta(batch)}};
  if (!extra.empty()) meta["classification"] = extra;
  ctx.out.write("meta.json", meta.dump(2) + "\n");
}

void run_spacings(RunContext& ctx) {
  const std::size_t count =
      static_cast<std::size_t>(require_integer(ctx.config, "count"));
  const std::size_t bins = ctx.config.value("bins", 100UL);
  EnsembleSpec spec = spec_from_config(ctx);
  if (spec.model == Model::GAUSSIAN_SR) {
    throw ConfigInvalid(
        "spacings requires a fixed-arity circle model; GAUSSIAN_SR sets vary "
        "in size (use the sample or fraction experiments)");
  }
  json extra;
  SampleBatch batch = draw_batch(ctx, spec, count, extra);
  const SpacingSample gaps = unfolded_gaps(batch);
  const Histogram hist = histogram_from_gaps(gaps.unfolded_gaps, bins);
  ctx.out.write("gaps.csv", gaps_to_csv(gaps.unfolded_gaps, "unfolded_gap"));
  ctx.out.write("histogram.csv", histogram_to_csv(hist));
  json meta{{"spec", spec_to_json(spec)},
            {"requested", count},
            {"bins", bins},
            {"n_gaps", gaps.unfolded_gaps.size()},
            {"batch", batch_meta(batch)}};
  ctx.out.write("meta.json", meta.dump(2) + "\n");
}

void run_jacobian_check(RunContext& ctx) {
  const long trials = require_integer(ctx.config, "trials");
  if (trials < 1) throw ConfigInvalid("trials must be >= 1");
  const std::string kase = ctx.config.value("case", std::string("complex"));
  const double step = ctx.config.value("step", 1e-5);
  std::string csv = "closed_form,oracle,rel_error\n";
  double max_rel = 0.0;

  auto separated_angles = [](Rng& rng, int k, double lo, double hi,
                             double min_sep) {
    std::vector<double> a(static_cast<std::size_t>(k));
    for (int tries = 0; tries < 500; ++tries) {
      for (double& v : a) v = rng.uniform(lo, hi);
      std::vector<double> s = a;
      std::sort(s.begin(), s.end());
      bool ok = true;
      for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] - s[i - 1] < min_sep) ok = false;
      }
      // Circular wrap matters only for full-circle draws.
      if (ok && hi - lo > 6.0 && s.size() > 1 &&
          (s.front() + (hi - lo) - s.back()) < min_sep) {
        ok = false;
      }
      if (ok) return a;
    }
    throw DegenerateInput("could not draw separated angles");
  };

  for (long trial = 0; trial < trials; ++trial) {
    Rng rng(split_seed(ctx.seed, static_cast<std::uint64_t>(trial)));
    double closed = 0.0, oracle = 0.0;
    if (kase == "complex") {
      const int n = static_cast<int>(require_integer(ctx.config, "degree"));
      if (n < 1) throw ConfigInvalid("degree must be >= 1");
      const int max_pairs = n / 2;
      const int m = static_cast<int>(rng.next_u64() % (max_pairs + 1));
      const int k = n - 2 * m;
      const std::vector<double> all =
          separated_angles(rng, k + m, 0.0, kTwoPi, 0.12);
      ZeroConfiguration zc;
      zc.on_circle.assign(all.begin(), all.begin() + k);
      std::sort(zc.on_circle.begin(), zc.on_circle.end());
      for (int j = 0; j < m; ++j) {
        zc.off_pairs.emplace_back(1.15 + 0.85 * rng.uniform01(), all[k + j]);
      }
      closed = jacobian_complex_general(zc);
      oracle = fd_jacobian_complex(zc, step);
    } else if (kase == "real") {
      const int m = static_cast<int>(require_integer(ctx.config, "pairs"));
      if (m < 1) throw ConfigInvalid("pairs must be >= 1");
      const DegreeParity parity =
          ctx.config.value("parity", std::string("even")) == "odd"
              ? DegreeParity::Odd
              : DegreeParity::Even;
      std::vector<double> t = separated_angles(rng, m, 0.15, kPi - 0.15, 0.12);
      std::sort(t.begin(), t.end());
      closed = jacobian_real(t, parity);
      oracle = fd_jacobian_real(t, parity, step);
    } else {
      throw ConfigInvalid("case must be \"complex\" or \"real\"");
    }
    const double rel =
        std::abs(closed - oracle) / std::max(std::abs(oracle), 1e-300);
    max_rel = std::max(max_rel, rel);
    csv += fmt17(closed);
    csv += ',';
    csv += fmt17(oracle);
    csv += ',';
    csv += fmt17(rel);
    csv += '\n';
  }
  ctx.out.write("jacobian.csv", csv);
  json meta{{"case", kase},
            {"trials", trials},
            {"step", step},
            {"max_rel_error", max_rel}};
  if (ctx.config.contains("degree")) meta["degree"] = ctx.config["degree"];
  if (ctx.config.contains("pairs")) meta["pairs"] = ctx.config["pairs"];
  ctx.out.write("meta.json", meta.dump(2) + "\n");
}

void run_fraction(RunContext& ctx) {
  const std::size_t count =
      static_cast<std::size_t>(require_integer(ctx.config, "count"));
  EnsembleSpec spec = spec_from_config(ctx);
  if (spec.model != Model::GAUSSIAN_SR) {
    throw ConfigInvalid("fraction expects model GAUSSIAN_SR");
  }
  const std::vector<SelfReciprocalPoly> polys =
      sample_gaussian_sr(spec, count, ctx.workers);
  const FractionResult fr =
      fraction_on_circle(polys, spec.tolerance, ctx.workers);
  json summary{{"spec", spec_to_json(spec)},  {"count", count},
               {"estimate", fr.estimate},     {"stderr", fr.stderr_},
               {"used", fr.used},             {"skipped", fr.skipped}};
  ctx.out.write("summary.json", summary.dump(2) + "\n");
}

void run_dunnage(RunContext& ctx) {
  const int degree = static_cast<int>(require_integer(ctx.config, "degree"));
  const std::size_t count =
      static_cast<std::size_t>(require_integer(ctx.config, "count"));
  const DunnageResult dr =
      dunnage_real_zero_count(degree, count, ctx.seed, ctx.workers);
  json summary{{"degree", degree},
               {"samples", count},
               {"seed", ctx.seed},
               {"mean", dr.mean},
               {"stderr", dr.stderr_},
               {"used", dr.used},
               {"skipped", dr.skipped},
               {"reference", 2.0 * degree / std::sqrt(3.0)}};
  ctx.out.write("summary.json", summary.dump(2) + "\n");
}

QuadraticForm form_from_json(const json& j) {
  if (!j.is_object() || !j.contains("a") || !j.contains("b") || !j.contains("c")) {
    throw ConfigInvalid("a form must be an object with fields a, b, c");
  }
  try {
    return QuadraticForm(j["a"].get<double>(), j["b"].get<double>(),
                         j["c"].get<double>());
  } catch (const NotPositiveDefinite& e) {
    throw ConfigInvalid(std::string("form not positive definite: ") + e.what());
  }
}

void run_epstein_eval(RunContext& ctx) {
  if (!ctx.config.contains("form")) throw ConfigInvalid("missing \"form\"");
  const QuadraticForm q = form_from_json(ctx.config["form"]);
  if (!ctx.config.contains("s_values") || !ctx.config["s_values"].is_array() ||
      ctx.config["s_values"].empty()) {
    throw ConfigInvalid("missing nonempty array \"s_values\"");
  }
  std::vector<cdouble> svals;
  for (const json& sv : ctx.config["s_values"]) {
    if (sv.is_array() && sv.size() == 2) {
      svals.emplace_back(sv[0].get<double>(), sv[1].get<double>());
    } else if (sv.is_object() && sv.contains("re") && sv.contains("im")) {
      svals.emplace_back(sv["re"].get<double>(), sv["im"].get<double>());
    } else {
      throw ConfigInvalid("s_values entries must be [re, im] or {re, im}");
    }
  }
  std::string csv = "re_s,im_s,re_lambda,im_lambda\n";
  for (const cdouble& s : svals) {
    const cdouble lam = epstein_completed(q, s);
    csv += fmt17(s.real());
    csv += ',';
    csv += fmt17(s.imag());
    csv += ',';
    csv += fmt17(lam.real());
    csv += ',';
    csv += fmt17(lam.imag());
    csv += '\n';
  }
  ctx.out.write("eval.csv", csv);
  json meta{{"form", {{"a", q.a}, {"b", q.b}, {"c", q.c}}},
            {"n_values", svals.size()}};
  ctx.out.write("meta.json", meta.dump(2) + "\n");
}

void run_epstein_zeros(RunContext& ctx) {
  std::vector<QuadraticForm> forms;
  json forms_meta = json::array();
  json sampling_meta;
  if (ctx.config.contains("forms")) {
    if (!ctx.config["forms"].is_array() || ctx.config["forms"].empty()) {
      throw ConfigInvalid("\"forms\" must be a nonempty array");
    }
    for (const json& fj : ctx.config["forms"]) forms.push_back(form_from_json(fj));
  } else if (ctx.config.contains("random_forms")) {
    // The source material fixes no ensemble over forms, so the box and every
    // draw count are recorded alongside the results instead of being implied.
    const json& rf = ctx.config["random_forms"];
    const long count = require_integer(rf, "count");
    if (count < 1) throw ConfigInvalid("random_forms.count must be >= 1");
    auto range = [&](const char* key, double dlo, double dhi) {
      if (!rf.contains(key)) return std::pair<double, double>(dlo, dhi);
      const json& r = rf[key];
      if (!r.is_array() || r.size() != 2) {
        throw ConfigInvalid(std::string("random_forms.") + key +
                            " must be [lo, hi]");
      }
      return std::pair<double, double>(r[0].get<double>(), r[1].get<double>());
    };
    const auto [alo, ahi] = range("a_range", 0.5, 2.0);
    const auto [clo, chi] = range("c_range", 0.5, 2.0);
    const double bmax = rf.value("b_max", 1.0);
    Rng rng(split_seed(ctx.seed, 0x466f726d));
    long draws = 0;
    while (forms.size() < static_cast<std::size_t>(count)) {
      const double a = rng.uniform(alo, ahi);
      const double c = rng.uniform(clo, chi);
      const double b = rng.uniform(-bmax, bmax);
      ++draws;
      if (draws > 10000 * count) {
        throw ConfigInvalid("random_forms box rejects nearly every draw");
      }
      if (b * b - 4.0 * a * c >= 0.0) continue;
      forms.emplace_back(a, b, c);
    }
    sampling_meta = json{{"box",
                          {{"a_range", {alo, ahi}},
                           {"c_range", {clo, chi}},
                           {"b_max", bmax}}},
                         {"draws", draws}};
  } else {
    throw ConfigInvalid("need \"forms\" or \"random_forms\"");
  }
  const double t_min = ctx.config.value("t_min", 0.0);
  const double t_max = require_number(ctx.config, "t_max");
  const double step = ctx.config.value("step", 0.01);
  const ZeroSpacingData data =
      epstein_zero_spacings(forms, t_min, t_max, step, ctx.workers);

  std::string zeros_csv = "form_index,t,refinement_width\n";
  json warn = json::array();
  for (std::size_t fi = 0; fi < data.scans.size(); ++fi) {
    for (const CriticalZero& z : data.scans[fi].zeros) {
      zeros_csv += std::to_string(fi);
      zeros_csv += ',';
      zeros_csv += fmt17(z.t);
      zeros_csv += ',';
      zeros_csv += fmt17(z.refinement_width);
      zeros_csv += '\n';
    }
    for (const StepTooCoarse& w : data.scans[fi].warnings) {
      warn.push_back({{"form_index", fi},
                      {"t_first", w.t_first},
                      {"t_second", w.t_second}});
    }
  }
  ctx.out.write("zeros.csv", zeros_csv);
  ctx.out.write("gaps.csv", gaps_to_csv(data.unfolded_gaps, "unfolded_gap"));
  for (const QuadraticForm& q : forms) {
    forms_meta.push_back({{"a", q.a}, {"b", q.b}, {"c", q.c}});
  }
  json meta{{"forms", forms_meta},
            {"t_min", t_min},
            {"t_max", t_max},
            {"step", step},
            {"zero_count", data.zero_count},
            {"warnings", warn}};
  if (!sampling_meta.is_null()) meta["random_forms"] = sampling_meta;
  ctx.out.write("meta.json", meta.dump(2) + "\n");
}

// Shared by the compare subcommand and the compare experiment kind. Accepts
// one number per line (optional single header) or JSONL arrays of numbers.
std::vector<double> read_sample_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot read file: " + path);
  std::vector<double> out;
  std::string line;
  bool first = true;
  std::size_t lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    std::size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    const std::string body = line.substr(start);
    if (body[0] == '[') {
      json arr;
      try {
        arr = json::parse(body);
      } catch (const json::exception& e) {
        throw FormatError(path + ":" + std::to_string(lineno) + ": " + e.what());
      }
      if (!arr.is_array()) {
        throw FormatError(path + ":" + std::to_string(lineno) +
                          ": expected an array");
      }
      for (const json& v : arr) {
        if (!v.is_number()) {
          throw FormatError(path + ":" + std::to_string(lineno) +
                            ": non-numeric array entry");
        }
        out.push_back(v.get<double>());
      }
      first = false;
      continue;
    }
    char* end = nullptr;
    const double v = std::strtod(body.c_str(), &end);
    if (end != body.c_str() + body.size()) {
      if (first) {  // a single header line is allowed
        first = false;
        continue;
      }
      throw FormatError(path + ":" + std::to_string(lineno) +
                        ": not a number: \"" + body + "\"");
    }
    out.push_back(v);
    first = false;
  }
  if (out.empty()) throw FormatError(path + ": no samples found");
  return out;
}

int compare_impl(const std::string& file_a, const std::string& file_b,
                 const std::string& test, double alpha,
                 const std::string& out_dir) {
  const std::vector<double> a = read_sample_file(file_a);
  const std::vector<double> b = read_sample_file(file_b);
  const std::string u = upper(test);
  TestKind kind;
  if (u == "KS") {
    kind = TestKind::KS;
  } else if (u == "CHI2" || u == "CHI-SQUARE" || u == "CHISQUARE") {
    kind = TestKind::CHI2;
  } else {
    throw ConfigInvalid("test must be KS or chi-square");
  }
  const TestResult r = two_sample_test(a, b, kind);
  const bool rejected = r.p_value < alpha;
  json report{{"test", u == "KS" ? "KS" : "CHI2"},
              {"file_a", file_a},
              {"file_b", file_b},
              {"statistic", r.statistic},
              {"p_value", r.p_value},
              {"n1", r.n1},
              {"n2", r.n2},
              {"alpha", alpha},
              {"rejected", rejected}};
  std::cout << report.dump() << std::endl;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    std::ofstream f(fs::path(out_dir) / "report.json", std::ios::binary);
    f << report.dump(2) << '\n';
  }
  return rejected ? 3 : 0;
}

int print_error(const std::string& name, const std::string& message, int code) {
  json rec{{"error", name}, {"message", message}};
  std::cerr << rec.dump() << std::endl;
  return code;
}

}  // namespace

int run_experiment(const CliOptions& opts) {
  std::string started = iso_utc_now();
  RunContext ctx;
  try {
    if (opts.config_path.empty()) {
      throw ConfigInvalid("--config is required");
    }
    json loaded = load_json_file(opts.config_path, true);
    std::optional<std::uint64_t> manifest_seed;
    if (loaded.contains("config") && loaded["config"].is_object() &&
        loaded["config"].contains("experiment")) {
      // A manifest was passed back in: rerun its embedded config and seed.
      if (loaded.contains("master_seed") &&
          loaded["master_seed"].is_number()) {
        manifest_seed = loaded["master_seed"].get<std::uint64_t>();
      }
      loaded = loaded["config"];
    }
    ctx.config = std::move(loaded);
    ctx.kind = require_string(ctx.config, "experiment");

    if (opts.seed) {
      ctx.seed = *opts.seed;
    } else if (ctx.config.contains("seed") && ctx.config["seed"].is_number()) {
      ctx.seed = ctx.config["seed"].get<std::uint64_t>();
    } else if (manifest_seed) {
      ctx.seed = *manifest_seed;
    } else {
      ctx.seed = 1;
    }
    if (opts.workers) {
      ctx.workers = *opts.workers;
    } else if (ctx.config.contains("workers") &&
               ctx.config["workers"].is_number_integer()) {
      ctx.workers = ctx.config["workers"].get<int>();
    } else {
      ctx.workers = static_cast<int>(
          std::max(1u, std::thread::hardware_concurrency()));
    }
    if (ctx.workers < 1) throw ConfigInvalid("workers must be >= 1");
    if (opts.tolerance) {
      ctx.tolerance = *opts.tolerance;
    } else if (ctx.config.contains("tolerance") &&
               ctx.config["tolerance"].is_number()) {
      ctx.tolerance = ctx.config["tolerance"].get<double>();
    }
    if (opts.alpha) {
      ctx.alpha = *opts.alpha;
    } else if (ctx.config.contains("alpha") &&
               ctx.config["alpha"].is_number()) {
      ctx.alpha = ctx.config["alpha"].get<double>();
    }

    std::string dir;
    if (const char* env = std::getenv("CIRCLEZEROS_OUT"); env && *env) {
      dir = env;
    } else if (!opts.out_dir.empty()) {
      dir = opts.out_dir;
    } else if (ctx.config.contains("out") && ctx.config["out"].is_string()) {
      dir = ctx.config["out"].get<std::string>();
    } else {
      dir = "out";
    }
    ctx.out.dir = dir;
    fs::create_directories(ctx.out.dir);

    if (ctx.kind == "compare") {
      return compare_impl(require_string(ctx.config, "file_a"),
                          require_string(ctx.config, "file_b"),
                          ctx.config.value("test", std::string("KS")),
                          ctx.alpha, dir);
    }
    if (ctx.kind == "sample") {
      run_sample(ctx);
    } else if (ctx.kind == "jacobian-check") {
      run_jacobian_check(ctx);
    } else if (ctx.kind == "spacings") {
      run_spacings(ctx);
    } else if (ctx.kind == "fraction") {
      run_fraction(ctx);
    } else if (ctx.kind == "dunnage") {
      run_dunnage(ctx);
    } else if (ctx.kind == "epstein-eval") {
      run_epstein_eval(ctx);
    } else if (ctx.kind == "epstein-zeros") {
      run_epstein_zeros(ctx);
    } else {
      throw ConfigInvalid("unknown experiment kind \"" + ctx.kind + "\"");
    }
    write_manifest(ctx, started);
    std::cout << (ctx.out.dir / "manifest.json").string() << std::endl;
    return 0;
  } catch (const ConfigInvalid& e) {
    return print_error("ConfigInvalid", e.what(), 2);
  } catch (const FormatError& e) {
    return print_error("FormatError", e.what(), 2);
  } catch (const AttemptBudgetExhausted& e) {
    if (!ctx.out.digests.empty()) write_manifest(ctx, started);
    return print_error("AttemptBudgetExhausted", e.what(), 1);
  } catch (const Error& e) {
    return print_error("Error", e.what(), 1);
  } catch (const std::exception& e) {
    return print_error("Unexpected", e.what(), 1);
  }
}

int run_compare(const std::string& file_a, const std::string& file_b,
                const std::string& test, double alpha,
                const std::string& out_dir) {
  try {
    return compare_impl(file_a, file_b, test, alpha, out_dir);
  } catch (const ConfigInvalid& e) {
    return print_error("ConfigInvalid", e.what(), 2);
  } catch (const FormatError& e) {
    return print_error("FormatError", e.what(), 2);
  } catch (const Error& e) {
    return print_error("Error", e.what(), 1);
  } catch (const std::exception& e) {
    return print_error("Unexpected", e.what(), 1);
  }
}

}  // namespace circlezeros_tools
