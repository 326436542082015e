/*
 * Copyright (C) 2026 The shotnoise-lab authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "shotnoise/lab.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "shotnoise/limits.hpp"
#include "shotnoise/parallel.hpp"
#include "shotnoise/plot.hpp"
#include "shotnoise/shotnoise.hpp"
#include "shotnoise/special.hpp"

namespace shotnoise {

using nlohmann::json;

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json error_json(const std::string& type, const std::string& message, int exit_code) {
  return {{"error", {{"type", type}, {"message", message}}}, {"exit_code", exit_code}};
}

namespace {

std::vector<double> sorted_copy(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> draw_many(long n, int threads, std::uint64_t seed, std::uint64_t tag,
                              const std::function<double(RngStream&)>& draw) {
  std::vector<double> out(static_cast<std::size_t>(n));
  parallel_for(out.size(), threads, [&](std::size_t i) {
    RngStream rng = RngStream::for_replicate(seed, i).split(tag);
    out[i] = draw(rng);
  });
  return out;
}

KsRepetitions ks_repetitions(int repetitions, int min_passes, double p_threshold,
                             const std::function<KsResult(int)>& one) {
  KsRepetitions r;
  for (int i = 0; i < repetitions; ++i) {
    r.runs.push_back(one(i));
    if (r.runs.back().p_value > p_threshold) ++r.passes;
  }
  r.pass = r.passes >= min_passes;
  return r;
}

std::string provenance_lines(const std::string& kind, const json& config, std::uint64_t seed) {
  std::string s;
  s += "# shotnoise-lab " + kind + "\n";
  s += "# schema_version=" + std::to_string(kReportSchemaVersion) + "\n";
  s += "# seed=" + std::to_string(seed) + "\n";
  s += "# config=" + config.dump() + "\n";
  return s;
}

json check_to_json(const CheckResult& c) {
  return {{"name", c.name},   {"u", c.u},       {"statistic", c.statistic},
          {"unit", c.unit},   {"threshold", c.threshold}, {"aux", c.aux},
          {"pass", c.pass},   {"informational", c.informational}};
}

bool wants(const ExperimentConfig& cfg, const std::string& format) {
  return std::find(cfg.formats.begin(), cfg.formats.end(), format) != cfg.formats.end();
}

class OutputDir {
 public:
  explicit OutputDir(const std::string& dir) : dir_(dir) {}

  std::string write(const std::string& name, const std::string& content) {
    std::filesystem::create_directories(dir_);
    const auto path = dir_ / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    f << content;
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    files_.push_back(path.string());
    return path.string();
  }

  const std::vector<std::string>& files() const { return files_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

std::string u_tag(double u) {
  std::string s = format_number(u);
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

// verify-limit

int do_verify_limit(const ExperimentConfig& cfg, OutputDir& dir, json& summary) {
  const ConvergenceReport report = convergence_sweep(cfg);
  if (wants(cfg, "json")) dir.write("report.json", report_to_json(report, cfg).dump(2) + "\n");
  if (wants(cfg, "csv")) dir.write("report.csv", report_to_csv(report, cfg));
  if (wants(cfg, "svg")) {
    const auto& last = report.samples.back();
    for (std::size_t j = 0; j < cfg.u_points.size(); ++j) {
      std::vector<PlotSeries> series{ecdf_series(
          "t=" + format_number(cfg.t_ladder.back()), sorted_copy(last[j]))};
      if (!report.limit_samples[j].empty()) {
        series.push_back(ecdf_series("limit", report.limit_samples[j]));
      }
      dir.write("ecdf_u" + u_tag(cfg.u_points[j]) + ".svg",
                svg_line_plot("ECDF of X_t(" + format_number(cfg.u_points[j]) + ")", "x",
                              "F(x)", series));
    }
    std::vector<PlotSeries> lines;
    for (const auto& check : report.entries.front().checks) {
      PlotSeries s;
      s.name = check.name + " u=" + format_number(check.u);
      for (const auto& e : report.entries) {
        for (const auto& c : e.checks) {
          if (c.name == check.name && c.u == check.u) {
            s.x.push_back(std::log10(e.t));
            s.y.push_back(c.statistic);
          }
        }
      }
      lines.push_back(std::move(s));
    }
    dir.write("statistics.svg", svg_line_plot("Check statistics along t", "log10 t",
                                              "statistic", lines));
  }
  summary["case"] = report.case_id;
  summary["experimental"] = report.experimental;
  summary["verdicts"] = json::array();
  for (const auto& e : report.entries) {
    summary["verdicts"].push_back({{"t", e.t}, {"verdict", e.verdict}});
  }
  summary["pass"] = report.pass;
  if (report.experimental) summary["verdict_status"] = "informational";
  return report.pass ? kExitPass : kExitFailed;
}

// simulate

int do_simulate(const ExperimentConfig& cfg, OutputDir& dir, json& summary) {
  const ResponseFunction& h = cfg.response;
  const LimitCaseSpec spec = cfg.forced_case ? build_case_spec(cfg.law, h, *cfg.forced_case)
                                             : build_case_spec(cfg.law, h);
  const std::size_t ti = cfg.t_ladder.size() - 1;
  const double t = cfg.t_ladder[ti];
  const double u_max = *std::max_element(cfg.u_points.begin(), cfg.u_points.end());
  const GridSpec grid(u_max, cfg.grid_points);
  std::vector<double> times(static_cast<std::size_t>(grid.n_points));
  for (Eigen::Index j = 0; j < grid.n_points; ++j) times[static_cast<std::size_t>(j)] = grid[j] * t;
  const double horizon = required_horizon(h, u_max * t);
  const double scale = spec.scale_fn(t);
  std::vector<double> centers(times.size());
  for (std::size_t j = 0; j < times.size(); ++j) {
    centers[j] = spec.center_fn(t, grid[static_cast<Eigen::Index>(j)]);
  }

  const auto n = static_cast<std::size_t>(cfg.export_paths);
  std::vector<Eigen::VectorXd> raw(n);
  // Same streams as the last rung of verify-limit.
  parallel_for(n, cfg.threads, [&](std::size_t r) {
    RngStream rng = RngStream::for_replicate(cfg.seed, r).split(ti);
    raw[r] = shot_noise_at(sample_renewal_path(cfg.law, horizon, rng), h, times);
  });

  if (wants(cfg, "csv")) {
    std::string s = provenance_lines("simulate", cfg.resolved, cfg.seed);
    s += "replicate,t,u,x,normalized\n";
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < times.size(); ++j) {
        const double x = raw[r](static_cast<Eigen::Index>(j));
        s += std::to_string(r) + "," + format_number(t) + "," +
             format_number(grid[static_cast<Eigen::Index>(j)]) + "," + format_number(x) + "," +
             format_number((x - centers[j]) / scale) + "\n";
      }
    }
    dir.write("paths.csv", s);
  }
  if (wants(cfg, "json")) {
    json j = {{"schema_version", kReportSchemaVersion}, {"kind", "simulate"},
              {"seed", cfg.seed}, {"config", cfg.resolved}, {"case", to_string(spec.limit_case)},
              {"t", t}, {"scale", scale}, {"u", json::array()}, {"paths", json::array()}};
    for (Eigen::Index k = 0; k < grid.n_points; ++k) j["u"].push_back(grid[k]);
    for (std::size_t r = 0; r < n; ++r) {
      json row = json::array();
      for (std::size_t k = 0; k < times.size(); ++k) {
        row.push_back((raw[r](static_cast<Eigen::Index>(k)) - centers[k]) / scale);
      }
      j["paths"].push_back(std::move(row));
    }
    dir.write("paths.json", j.dump(2) + "\n");
  }
  if (wants(cfg, "svg")) {
    std::vector<PlotSeries> series;
    for (std::size_t r = 0; r < std::min<std::size_t>(n, 6); ++r) {
      PlotSeries s;
      s.name = "replicate " + std::to_string(r);
      for (std::size_t k = 0; k < times.size(); ++k) {
        s.x.push_back(grid[static_cast<Eigen::Index>(k)]);
        s.y.push_back((raw[r](static_cast<Eigen::Index>(k)) - centers[k]) / scale);
      }
      series.push_back(std::move(s));
    }
    dir.write("paths.svg", svg_line_plot("X_t(u), t=" + format_number(t), "u", "X_t(u)", series));
  }
  summary["case"] = to_string(spec.limit_case);
  summary["paths"] = n;
  summary["pass"] = true;
  return kExitPass;
}

// selfsim

int do_selfsim(const ExperimentConfig& cfg, OutputDir& dir, json& summary) {
  const auto& ss = cfg.selfsim;
  const KsRepetitions r = selfsim_check(ss, cfg.seed, cfg.threads);
  if (wants(cfg, "csv")) {
    std::string s = provenance_lines("selfsim", cfg.resolved, cfg.seed);
    s += "repetition,ks_distance,p_value,pass\n";
    for (std::size_t i = 0; i < r.runs.size(); ++i) {
      s += std::to_string(i) + "," + format_number(r.runs[i].distance) + "," +
           format_number(r.runs[i].p_value) + "," +
           (r.runs[i].p_value > ss.p_threshold ? "1" : "0") + "\n";
    }
    dir.write("selfsim.csv", s);
  }
  if (wants(cfg, "json")) {
    json j = {{"schema_version", kReportSchemaVersion}, {"kind", "selfsim"}, {"seed", cfg.seed},
              {"config", cfg.resolved}, {"passes", r.passes}, {"pass", r.pass},
              {"runs", json::array()}};
    for (const auto& k : r.runs) j["runs"].push_back({{"ks_distance", k.distance}, {"p_value", k.p_value}});
    dir.write("selfsim.json", j.dump(2) + "\n");
  }
  summary["passes"] = r.passes;
  summary["repetitions"] = ss.repetitions;
  summary["pass"] = r.pass;
  return r.pass ? kExitPass : kExitFailed;
}

// stable-check

int do_stable_check(const ExperimentConfig& cfg, OutputDir& dir, json& summary) {
  const StableCheckResult r = stable_check(cfg.stable_check, cfg.seed, cfg.threads);
  if (wants(cfg, "csv")) {
    std::string s = provenance_lines("stable-check", cfg.resolved, cfg.seed);
    s += "law,alpha,z,deviation_se,threshold_se,pass\n";
    for (const auto& row : r.rows) {
      s += row.law + "," + format_number(row.alpha) + "," + format_number(row.z) + "," +
           format_number(row.deviation) + "," + format_number(cfg.stable_check.max_se) + "," +
           (row.pass ? "1" : "0") + "\n";
    }
    dir.write("stable_check.csv", s);
  }
  if (wants(cfg, "json")) {
    json j = {{"schema_version", kReportSchemaVersion}, {"kind", "stable-check"},
              {"seed", cfg.seed}, {"config", cfg.resolved}, {"pass", r.pass},
              {"rows", json::array()}};
    for (const auto& row : r.rows) {
      j["rows"].push_back({{"law", row.law}, {"alpha", row.alpha}, {"z", row.z},
                           {"deviation_se", row.deviation}, {"pass", row.pass}});
    }
    dir.write("stable_check.json", j.dump(2) + "\n");
  }
  summary["pass"] = r.pass;
  return r.pass ? kExitPass : kExitFailed;
}

json moment_table_json(const MomentTable& t) {
  json rows = json::array();
  for (std::size_t k = 0; k < t.moments.size(); ++k) {
    rows.push_back({{"k", k + 1}, {"moment", t.moments[k]}});
  }
  return {{"alpha", t.alpha}, {"beta", t.beta}, {"u", t.u}, {"moments", rows}};
}

int do_moments(const ExperimentConfig& cfg, OutputDir& dir, std::ostream& out, json& summary) {
  const auto& m = cfg.moments;
  const MomentTable table = moment_table(m.alpha, m.beta, m.u, m.k);
  const std::string csv = moment_table_csv(table, cfg.resolved);
  out << csv;
  if (wants(cfg, "csv")) dir.write("moments.csv", csv);
  if (wants(cfg, "json")) {
    json j = {{"schema_version", kReportSchemaVersion}, {"kind", "moments"}, {"seed", cfg.seed},
              {"config", cfg.resolved}, {"table", moment_table_json(table)}};
    dir.write("moments.json", j.dump(2) + "\n");
  }
  summary["pass"] = true;
  return kExitPass;
}

}  // namespace

KsRepetitions selfsim_check(const SelfSimConfig& cfg, std::uint64_t seed, int threads) {
  const bool stable = cfg.process == "stable";
  const double hurst = stable ? cfg.beta + 1.0 / cfg.alpha : cfg.beta + cfg.alpha;
  const double factor = std::pow(cfg.c, hurst);
  std::function<double(RngStream&)> big, small;
  if (stable) {
    const StableSpec spec = StableSpec::spectrally_negative(cfg.alpha);
    const FractionalStableSampler a(spec, cfg.beta, cfg.c * cfg.u, cfg.grid_points);
    const FractionalStableSampler b(spec, cfg.beta, cfg.u, cfg.grid_points);
    big = [a](RngStream& r) { return a(r); };
    small = [b, factor](RngStream& r) { return factor * b(r); };
  } else {
    const FractionalInverseSubordinatorSampler a(cfg.alpha, cfg.beta, cfg.c * cfg.u, cfg.grid_points);
    const FractionalInverseSubordinatorSampler b(cfg.alpha, cfg.beta, cfg.u, cfg.grid_points);
    big = [a](RngStream& r) { return a(r); };
    small = [b, factor](RngStream& r) { return factor * b(r); };
  }
  return ks_repetitions(cfg.repetitions, cfg.min_passes, cfg.p_threshold, [&](int rep) {
    const auto tag = static_cast<std::uint64_t>(rep) * 2;
    const auto x = sorted_copy(draw_many(cfg.paths, threads, seed, tag, big));
    const auto y = sorted_copy(draw_many(cfg.paths, threads, seed, tag + 1, small));
    return ks_two_sample(x, y);
  });
}

KsRepetitions p3_check(double alpha, double beta, double u, long grid_points, long paths,
                       int repetitions, int min_passes, double p_threshold, std::uint64_t seed,
                       int threads) {
  const StableSpec spec = StableSpec::spectrally_negative(alpha);
  const FractionalStableSampler y(spec, beta, u, grid_points);
  const double scale = p3_scale(alpha, beta, u);
  return ks_repetitions(repetitions, min_passes, p_threshold, [&](int rep) {
    const auto tag = static_cast<std::uint64_t>(rep) * 2;
    const auto a = sorted_copy(draw_many(paths, threads, seed, tag, [&](RngStream& r) { return y(r); }));
    const auto b = sorted_copy(draw_many(paths, threads, seed, tag + 1, [&](RngStream& r) {
      return scale * sample_stable_unit(spec, r);
    }));
    return ks_two_sample(a, b);
  });
}

std::complex<double> subordinator_log_cf(double alpha, double z) {
  if (z == 0.0) return {0.0, 0.0};
  return -gamma_fn(1.0 - alpha) * std::pow(std::complex<double>(0.0, -z), alpha);
}

StableCheckResult stable_check(const StableCheckConfig& cfg, std::uint64_t seed, int threads) {
  StableCheckResult result;
  std::uint64_t tag = 0;
  auto run_law = [&](const std::string& law, double alpha, const StableSpec& spec, const LogCf& cf) {
    const auto draws = draw_many(cfg.draws, threads, seed, tag++, [&](RngStream& r) {
      return sample_stable_unit(spec, r);
    });
    for (double z : cfg.z) {
      const double z1[] = {z};
      StableCheckRow row;
      row.law = law;
      row.alpha = alpha;
      row.z = z;
      row.deviation = ecf_test(draws, cf, z1);
      row.pass = row.deviation < cfg.max_se;
      result.rows.push_back(row);
    }
  };
  for (double a : cfg.alphas) {
    run_law("spectrally_negative", a, StableSpec::spectrally_negative(a),
            [a](double z) { return stable_log_cf(a, z); });
  }
  for (double a : cfg.subordinator_alphas) {
    run_law("subordinator", a, StableSpec::positive_subordinator(a),
            [a](double z) { return subordinator_log_cf(a, z); });
  }
  result.pass = std::all_of(result.rows.begin(), result.rows.end(),
                            [](const StableCheckRow& r) { return r.pass; });
  return result;
}

json report_to_json(const ConvergenceReport& report, const ExperimentConfig& cfg) {
  const SweepThresholds thr = kSweepThresholds;
  json j = {{"schema_version", kReportSchemaVersion},
            {"kind", "verify-limit"},
            {"seed", report.seed},
            {"config", cfg.resolved},
            {"case", report.case_id},
            {"experimental", report.experimental},
            {"verdict_status", report.experimental ? "informational" : "binding"},
            {"pass", report.pass},
            {"thresholds",
             {{"ks_p_value", thr.ks_p},
              {"ks_distance", thr.ks_distance},
              {"moment_se", thr.moment_se},
              {"ecf_se", thr.ecf_se},
              {"note", "thresholds are calibrated empirically, not derived from convergence rates"}}},
            {"entries", json::array()}};
  for (const auto& e : report.entries) {
    json entry = {{"t", e.t}, {"verdict", e.verdict}, {"checks", json::array()}};
    for (const auto& c : e.checks) entry["checks"].push_back(check_to_json(c));
    j["entries"].push_back(std::move(entry));
  }
  return j;
}

std::string report_to_csv(const ConvergenceReport& report, const ExperimentConfig& cfg) {
  std::string s = provenance_lines("verify-limit", cfg.resolved, report.seed);
  s += "# case=" + report.case_id + (report.experimental ? " (informational)" : "") + "\n";
  s += "t,u,check,statistic,unit,threshold,aux,pass,informational,verdict\n";
  for (const auto& e : report.entries) {
    for (const auto& c : e.checks) {
      s += format_number(e.t) + "," + format_number(c.u) + "," + c.name + "," +
           format_number(c.statistic) + "," + c.unit + "," + format_number(c.threshold) + "," +
           format_number(c.aux) + "," + (c.pass ? "1" : "0") + "," +
           (c.informational ? "1" : "0") + "," + (e.verdict ? "1" : "0") + "\n";
    }
  }
  return s;
}

std::string moment_table_csv(const MomentTable& table, const json& provenance) {
  std::string s;
  s += "# shotnoise-lab moments\n";
  s += "# schema_version=" + std::to_string(kReportSchemaVersion) + "\n";
  s += "# config=" + provenance.dump() + "\n";
  s += "k,alpha,beta,u,moment\n";
  for (std::size_t k = 0; k < table.moments.size(); ++k) {
    s += std::to_string(k + 1) + "," + format_number(table.alpha) + "," +
         format_number(table.beta) + "," + format_number(table.u) + "," +
         format_number(table.moments[k]) + "\n";
  }
  return s;
}

int run_document(const std::string& subcommand, const json& doc_in,
                 const RunOverrides& overrides, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> known{"simulate", "verify-limit", "moments", "selfsim",
                                              "stable-check"};
  if (std::find(known.begin(), known.end(), subcommand) == known.end()) {
    err << error_json("usage_error", "unknown subcommand '" + subcommand + "'", kExitConfigError).dump()
        << "\n";
    return kExitConfigError;
  }
  ExperimentConfig cfg;
  try {
    json doc = doc_in;
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    if (overrides.seed) doc["seed"] = *overrides.seed;
    if (overrides.threads) doc["threads"] = *overrides.threads;
    if (overrides.output_dir || overrides.formats) {
      json& o = doc["output"];
      if (o.is_null()) o = json::object();
      if (overrides.output_dir) o["dir"] = *overrides.output_dir;
      if (overrides.formats) o["formats"] = *overrides.formats;
    }
    cfg = parse_config(doc);
  } catch (const ConfigError& e) {
    err << error_json("config_error", e.what(), kExitConfigError).dump() << "\n";
    return kExitConfigError;
  } catch (const json::exception& e) {
    err << error_json("config_error", e.what(), kExitConfigError).dump() << "\n";
    return kExitConfigError;
  }

  OutputDir dir(cfg.output_dir);
  json summary = {{"subcommand", subcommand}, {"seed", cfg.seed}};
  int status = kExitPass;
  try {
    if (subcommand == "verify-limit") status = do_verify_limit(cfg, dir, summary);
    else if (subcommand == "simulate") status = do_simulate(cfg, dir, summary);
    else if (subcommand == "selfsim") status = do_selfsim(cfg, dir, summary);
    else if (subcommand == "stable-check") status = do_stable_check(cfg, dir, summary);
    else status = do_moments(cfg, dir, out, summary);
  } catch (const std::invalid_argument& e) {
    // Parameters that parse but violate a model precondition.
    err << error_json("config_error", e.what(), kExitConfigError).dump() << "\n";
    return kExitConfigError;
  } catch (const SimulationError& e) {
    err << error_json("simulation_error", e.what(), kExitFailed).dump() << "\n";
    return kExitFailed;
  } catch (const std::exception& e) {
    err << error_json("runtime_error", e.what(), kExitFailed).dump() << "\n";
    return kExitFailed;
  }
  summary["files"] = dir.files();
  summary["exit_code"] = status;
  if (subcommand != "moments") out << summary.dump() << "\n";
  if (status == kExitFailed) {
    err << error_json("verdict_failed", "one or more binding verdicts failed", kExitFailed).dump()
        << "\n";
  }
  return status;
}

int run(const std::string& subcommand, const std::string& config_path,
        const RunOverrides& overrides, std::ostream& out, std::ostream& err) {
  std::ifstream in(config_path);
  if (!in) {
    err << error_json("config_error", "cannot read config file '" + config_path + "'",
                      kExitConfigError).dump()
        << "\n";
    return kExitConfigError;
  }
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    err << error_json("config_error", std::string("config is not valid JSON: ") + e.what(),
                      kExitConfigError).dump()
        << "\n";
    return kExitConfigError;
  }
  return run_document(subcommand, doc, overrides, out, err);
}

int run_moments(const MomentsConfig& m, std::ostream& out, std::ostream& err) {
  try {
    const MomentTable table = moment_table(m.alpha, m.beta, m.u, m.k);
    const json provenance = {{"moments", {{"alpha", m.alpha}, {"beta", m.beta}, {"u", m.u}, {"k", m.k}}}};
    out << moment_table_csv(table, provenance);
  } catch (const std::invalid_argument& e) {
    err << error_json("config_error", e.what(), kExitConfigError).dump() << "\n";
    return kExitConfigError;
  }
  return kExitPass;
}

}  // namespace shotnoise
