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

#include "shotnoise/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace shotnoise {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double get_number(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  if (!j.at(key).is_number()) throw ConfigError(where + ": '" + key + "' must be a number");
  return j.at(key).get<double>();
}

double get_number_or(const json& j, const std::string& key, double fallback,
                     const std::string& where) {
  if (!j.contains(key)) return fallback;
  return get_number(j, key, where);
}

long get_integer_or(const json& j, const std::string& key, long fallback,
                    const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + ": '" + key + "' must be an integer");
  return v.get<long>();
}

std::vector<double> get_numbers_or(const json& j, const std::string& key,
                                   std::vector<double> fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_array()) throw ConfigError(where + ": '" + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError(where + ": '" + key + "' must be an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

template <typename F>
auto wrap(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

std::uint64_t parse_seed(const json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    const auto s = v.get<long long>();
    if (s < 0) throw ConfigError("seed must be nonnegative");
    return static_cast<std::uint64_t>(s);
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) {
      throw ConfigError("seed string must be a decimal integer");
    }
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ConfigError("seed does not fit in 64 bits");
    }
  }
  throw ConfigError("seed must be an unsigned 64-bit integer");
}

SlowlyVarying parse_slowly_varying(const json& j) {
  const std::string where = "response.slowly_varying";
  check_keys(j, {"form", "c", "p"}, where);
  const std::string form = j.value("form", "constant");
  const double c = get_number_or(j, "c", 1.0, where);
  if (form == "constant") return wrap(where, [&] { return SlowlyVarying::constant(c); });
  if (form == "log_power") {
    const double p = get_number(j, "p", where);
    return wrap(where, [&] { return SlowlyVarying::log_power(c, p); });
  }
  throw ConfigError(where + ": unknown form '" + form + "'");
}

LeftTail parse_left_tail(const json& j) {
  const std::string where = "response.left_tail";
  check_keys(j, {"decay", "amplitude", "rate", "exponent"}, where);
  const std::string decay = j.value("decay", "exponential");
  const double amplitude = get_number_or(j, "amplitude", 1.0, where);
  if (decay == "exponential") {
    const double rate = get_number_or(j, "rate", 1.0, where);
    return wrap(where, [&] { return LeftTail::exponential(amplitude, rate); });
  }
  if (decay == "power") {
    const double exponent = get_number(j, "exponent", where);
    return wrap(where, [&] { return LeftTail::power(amplitude, exponent); });
  }
  throw ConfigError(where + ": unknown decay '" + decay + "'");
}

json slowly_varying_to_json(const SlowlyVarying& sv) {
  if (sv.form == SlowlyVarying::Form::Constant) return {{"form", "constant"}, {"c", sv.c}};
  return {{"form", "log_power"}, {"c", sv.c}, {"p", sv.p}};
}

}  // namespace

InterArrivalLaw parse_law(const json& j) {
  const std::string where = "law";
  if (!j.is_object() || !j.contains("family") || !j.at("family").is_string()) {
    throw ConfigError("law: expected an object with a 'family' string");
  }
  const std::string family = j.at("family").get<std::string>();
  if (family == "exponential") {
    check_keys(j, {"family", "rate"}, where);
    return wrap(where, [&] { return InterArrivalLaw::exponential(get_number_or(j, "rate", 1.0, where)); });
  }
  if (family == "deterministic") {
    check_keys(j, {"family", "a"}, where);
    return wrap(where, [&] { return InterArrivalLaw::deterministic(get_number(j, "a", where)); });
  }
  if (family == "gamma") {
    check_keys(j, {"family", "shape", "rate"}, where);
    return wrap(where, [&] {
      return InterArrivalLaw::gamma(get_number(j, "shape", where), get_number_or(j, "rate", 1.0, where));
    });
  }
  if (family == "pareto") {
    check_keys(j, {"family", "alpha", "xm"}, where);
    return wrap(where, [&] {
      return InterArrivalLaw::pareto(get_number(j, "alpha", where), get_number_or(j, "xm", 1.0, where));
    });
  }
  if (family == "pareto_log") {
    check_keys(j, {"family", "alpha", "xm", "p"}, where);
    return wrap(where, [&] {
      return InterArrivalLaw::pareto_log(get_number(j, "alpha", where),
                                         get_number_or(j, "xm", 1.0, where),
                                         get_number(j, "p", where));
    });
  }
  throw ConfigError("law: unknown family '" + family + "'");
}

ResponseFunction parse_response(const json& j) {
  const std::string where = "response";
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ConfigError("response: expected an object with a 'kind' string");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "power") {
    check_keys(j, {"kind", "beta", "slowly_varying"}, where);
    const SlowlyVarying sv = j.contains("slowly_varying")
                                 ? parse_slowly_varying(j.at("slowly_varying"))
                                 : SlowlyVarying::constant(1.0);
    return wrap(where, [&] { return ResponseFunction::power(get_number(j, "beta", where), sv); });
  }
  if (kind == "indicator") {
    check_keys(j, {"kind", "c"}, where);
    return wrap(where, [&] { return ResponseFunction::indicator(get_number_or(j, "c", 1.0, where)); });
  }
  if (kind == "bounded_limit") {
    check_keys(j, {"kind", "limit", "rate"}, where);
    return wrap(where, [&] {
      return ResponseFunction::bounded_limit(get_number(j, "limit", where),
                                             get_number_or(j, "rate", 1.0, where));
    });
  }
  if (kind == "step_cdf") {
    check_keys(j, {"kind", "points", "weights"}, where);
    return wrap(where, [&] {
      return ResponseFunction::step_cdf(get_numbers_or(j, "points", {}, where),
                                        get_numbers_or(j, "weights", {}, where));
    });
  }
  if (kind == "two_sided") {
    check_keys(j, {"kind", "right", "left_tail"}, where);
    if (!j.contains("right")) throw ConfigError("response: two_sided needs 'right'");
    if (!j.contains("left_tail")) throw ConfigError("response: two_sided needs 'left_tail'");
    const ResponseFunction right = parse_response(j.at("right"));
    const LeftTail left = parse_left_tail(j.at("left_tail"));
    return wrap(where, [&] { return ResponseFunction::two_sided(right, left); });
  }
  throw ConfigError("response: unknown kind '" + kind + "'");
}

json law_to_json(const InterArrivalLaw& law) {
  using F = InterArrivalLaw::Family;
  switch (law.family()) {
    case F::Exponential: return {{"family", "exponential"}, {"rate", law.rate()}};
    case F::Deterministic: return {{"family", "deterministic"}, {"a", law.location()}};
    case F::Gamma: return {{"family", "gamma"}, {"shape", law.shape()}, {"rate", law.rate()}};
    case F::Pareto: return {{"family", "pareto"}, {"alpha", law.alpha()}, {"xm", law.xm()}};
    case F::ParetoLog:
      return {{"family", "pareto_log"}, {"alpha", law.alpha()}, {"xm", law.xm()}, {"p", law.log_power()}};
  }
  return {};
}

json response_to_json(const ResponseFunction& h) {
  switch (h.kind()) {
    case ResponseKind::Power:
      return {{"kind", "power"}, {"beta", h.beta()}, {"slowly_varying", slowly_varying_to_json(h.slowly_varying())}};
    case ResponseKind::BoundedLimit:
      return {{"kind", "bounded_limit"}, {"limit", h.limit()}, {"rate", h.rate()}};
    case ResponseKind::StepCdf:
      return {{"kind", "step_cdf"}, {"points", h.step_points()}, {"weights", h.step_weights()}};
    case ResponseKind::TwoSided: {
      const LeftTail& left = *h.left_tail();
      json tail = left.decay == LeftTail::Decay::Exponential
                      ? json{{"decay", "exponential"}, {"amplitude", left.amplitude}, {"rate", left.rate}}
                      : json{{"decay", "power"}, {"amplitude", left.amplitude}, {"exponent", left.rate}};
      return {{"kind", "two_sided"}, {"right", response_to_json(h.right_part())}, {"left_tail", tail}};
    }
    case ResponseKind::Smoothed:
      throw std::invalid_argument("smoothed responses are not part of the config format");
  }
  return {};
}

ExperimentConfig parse_config(const json& doc) {
  check_keys(doc,
             {"case", "law", "response", "t_ladder", "u_points", "replicates", "grid_points",
              "limit_samples", "z_grid", "seed", "output", "threads", "export_paths", "selfsim",
              "stable_check", "moments"},
             "config");
  ExperimentConfig cfg;
  const std::string where = "config";

  if (doc.contains("case")) {
    if (!doc.at("case").is_string()) throw ConfigError("config: 'case' must be a string");
    const std::string c = doc.at("case").get<std::string>();
    if (c != "auto") {
      cfg.forced_case = wrap(where, [&] { return limit_case_from_string(c); });
    }
  }
  if (doc.contains("law")) cfg.law = parse_law(doc.at("law"));
  if (doc.contains("response")) cfg.response = parse_response(doc.at("response"));

  cfg.t_ladder = get_numbers_or(doc, "t_ladder", cfg.t_ladder, where);
  if (cfg.t_ladder.empty()) throw ConfigError("config: t_ladder must not be empty");
  for (std::size_t i = 0; i < cfg.t_ladder.size(); ++i) {
    if (!(cfg.t_ladder[i] > 0.0)) throw ConfigError("config: t_ladder entries must be > 0");
    if (i > 0 && !(cfg.t_ladder[i] > cfg.t_ladder[i - 1])) {
      throw ConfigError("config: t_ladder must be strictly increasing");
    }
  }
  cfg.u_points = get_numbers_or(doc, "u_points", cfg.u_points, where);
  if (cfg.u_points.empty()) throw ConfigError("config: u_points must not be empty");
  for (double u : cfg.u_points) {
    if (!(u > 0.0)) throw ConfigError("config: u_points entries must be > 0");
  }
  cfg.replicates = get_integer_or(doc, "replicates", cfg.replicates, where);
  if (cfg.replicates < 1) throw ConfigError("config: replicates must be >= 1");
  cfg.grid_points = get_integer_or(doc, "grid_points", cfg.grid_points, where);
  if (cfg.grid_points < 2) throw ConfigError("config: grid_points must be >= 2");
  cfg.limit_samples = get_integer_or(doc, "limit_samples", cfg.limit_samples, where);
  if (cfg.limit_samples < 1) throw ConfigError("config: limit_samples must be >= 1");
  cfg.z_grid = get_numbers_or(doc, "z_grid", cfg.z_grid, where);
  for (double z : cfg.z_grid) {
    if (z == 0.0 || !std::isfinite(z)) throw ConfigError("config: z_grid entries must be finite and nonzero");
  }
  if (doc.contains("seed")) cfg.seed = parse_seed(doc.at("seed"));
  cfg.threads = static_cast<int>(get_integer_or(doc, "threads", cfg.threads, where));
  if (cfg.threads < 0) throw ConfigError("config: threads must be >= 0");
  cfg.export_paths = get_integer_or(doc, "export_paths", cfg.export_paths, where);
  if (cfg.export_paths < 0) throw ConfigError("config: export_paths must be >= 0");

  if (doc.contains("output")) {
    const json& out = doc.at("output");
    check_keys(out, {"dir", "formats"}, "output");
    if (out.contains("dir")) {
      if (!out.at("dir").is_string()) throw ConfigError("output: 'dir' must be a string");
      cfg.output_dir = out.at("dir").get<std::string>();
    }
    if (out.contains("formats")) {
      if (!out.at("formats").is_array()) throw ConfigError("output: 'formats' must be an array");
      cfg.formats.clear();
      for (const auto& f : out.at("formats")) {
        if (!f.is_string()) throw ConfigError("output: formats must be strings");
        cfg.formats.push_back(f.get<std::string>());
      }
    }
  }
  for (const auto& f : cfg.formats) {
    if (f != "csv" && f != "json" && f != "svg") {
      throw ConfigError("output: unknown format '" + f + "'");
    }
  }

  if (doc.contains("selfsim")) {
    const json& s = doc.at("selfsim");
    const std::string w = "selfsim";
    check_keys(s, {"process", "alpha", "beta", "c", "u", "paths", "grid_points", "repetitions",
                   "min_passes", "p_threshold"}, w);
    auto& ss = cfg.selfsim;
    ss.process = s.value("process", ss.process);
    if (ss.process != "stable" && ss.process != "inverse_subordinator") {
      throw ConfigError("selfsim: process must be 'stable' or 'inverse_subordinator'");
    }
    ss.alpha = get_number_or(s, "alpha", ss.alpha, w);
    ss.beta = get_number_or(s, "beta", ss.beta, w);
    ss.c = get_number_or(s, "c", ss.c, w);
    ss.u = get_number_or(s, "u", ss.u, w);
    ss.paths = get_integer_or(s, "paths", ss.paths, w);
    ss.grid_points = get_integer_or(s, "grid_points", ss.grid_points, w);
    ss.repetitions = static_cast<int>(get_integer_or(s, "repetitions", ss.repetitions, w));
    ss.min_passes = static_cast<int>(get_integer_or(s, "min_passes", ss.min_passes, w));
    ss.p_threshold = get_number_or(s, "p_threshold", ss.p_threshold, w);
    if (ss.paths < 2 || ss.grid_points < 2 || ss.repetitions < 1 || !(ss.c > 0.0) ||
        !(ss.u > 0.0) || !(ss.beta >= 0.0)) {
      throw ConfigError("selfsim: invalid parameters");
    }
  }
  if (doc.contains("stable_check")) {
    const json& s = doc.at("stable_check");
    const std::string w = "stable_check";
    check_keys(s, {"alphas", "subordinator_alphas", "z", "draws", "max_se"}, w);
    auto& sc = cfg.stable_check;
    sc.alphas = get_numbers_or(s, "alphas", sc.alphas, w);
    sc.subordinator_alphas = get_numbers_or(s, "subordinator_alphas", sc.subordinator_alphas, w);
    sc.z = get_numbers_or(s, "z", sc.z, w);
    sc.draws = get_integer_or(s, "draws", sc.draws, w);
    sc.max_se = get_number_or(s, "max_se", sc.max_se, w);
    if (sc.draws < 2) throw ConfigError("stable_check: draws must be >= 2");
  }
  if (doc.contains("moments")) {
    const json& s = doc.at("moments");
    const std::string w = "moments";
    check_keys(s, {"alpha", "beta", "u", "k"}, w);
    auto& m = cfg.moments;
    m.alpha = get_number_or(s, "alpha", m.alpha, w);
    m.beta = get_number_or(s, "beta", m.beta, w);
    m.u = get_number_or(s, "u", m.u, w);
    m.k = static_cast<int>(get_integer_or(s, "k", m.k, w));
  }

  cfg.resolved = to_json(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

json to_json(const ExperimentConfig& cfg) {
  json j;
  j["case"] = cfg.forced_case ? to_string(*cfg.forced_case) : std::string("auto");
  j["law"] = law_to_json(cfg.law);
  j["response"] = response_to_json(cfg.response);
  j["t_ladder"] = cfg.t_ladder;
  j["u_points"] = cfg.u_points;
  j["replicates"] = cfg.replicates;
  j["grid_points"] = cfg.grid_points;
  j["limit_samples"] = cfg.limit_samples;
  j["z_grid"] = cfg.z_grid;
  j["seed"] = cfg.seed;
  j["export_paths"] = cfg.export_paths;
  const auto& ss = cfg.selfsim;
  j["selfsim"] = {{"process", ss.process}, {"alpha", ss.alpha}, {"beta", ss.beta}, {"c", ss.c},
                  {"u", ss.u}, {"paths", ss.paths}, {"grid_points", ss.grid_points},
                  {"repetitions", ss.repetitions}, {"min_passes", ss.min_passes},
                  {"p_threshold", ss.p_threshold}};
  const auto& sc = cfg.stable_check;
  j["stable_check"] = {{"alphas", sc.alphas}, {"subordinator_alphas", sc.subordinator_alphas},
                       {"z", sc.z}, {"draws", sc.draws}, {"max_se", sc.max_se}};
  const auto& m = cfg.moments;
  j["moments"] = {{"alpha", m.alpha}, {"beta", m.beta}, {"u", m.u}, {"k", m.k}};
  return j;
}

}  // namespace shotnoise
