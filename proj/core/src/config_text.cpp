/*
 * Copyright 2026 The pdflow Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pdflow/config_text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace pdflow {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: cannot parse '" + value + "' for " + key);
  }
  if (pos != value.size()) {
    throw std::invalid_argument("config: trailing characters in '" + value + "' for " + key);
  }
  return v;
}

int parse_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config: cannot parse '" + value + "' for " + key);
  }
  if (pos != value.size()) {
    throw std::invalid_argument("config: trailing characters in '" + value + "' for " + key);
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = lower(value);
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw std::invalid_argument("config: cannot parse '" + value + "' as bool for " + key);
}

DataTerm parse_data_term(const std::string& value) {
  const std::string v = lower(value);
  if (v == "l1") return DataTerm::L1;
  if (v == "quadratic") return DataTerm::Quadratic;
  if (v == "charbonnier") return DataTerm::Charbonnier;
  if (v == "lorentzian") return DataTerm::Lorentzian;
  throw std::invalid_argument("config: unknown data_term '" + value + "'");
}

DualProjection parse_dual_projection(const std::string& value) {
  const std::string v = lower(value);
  if (v == "box") return DualProjection::Box;
  if (v == "ball") return DualProjection::Ball;
  throw std::invalid_argument("config: unknown dual_projection '" + value + "'");
}

FilterMode parse_filter_mode(const std::string& value) {
  const std::string v = lower(value);
  if (v == "iterated") return FilterMode::Iterated;
  if (v == "median") return FilterMode::Median;
  if (v == "none") return FilterMode::None;
  throw std::invalid_argument("config: unknown filter_mode '" + value + "'");
}

std::string format_double(double v) {
  std::ostringstream oss;
  oss.precision(17);
  oss << v;
  return oss.str();
}

}  // namespace

void apply_config_entry(SolverConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "tau") cfg.tau = parse_double(key, value);
  else if (key == "sigma") cfg.sigma = parse_double(key, value);
  else if (key == "theta") cfg.theta = parse_double(key, value);
  else if (key == "gamma") cfg.gamma = parse_double(key, value);
  else if (key == "eta") cfg.eta = parse_double(key, value);
  else if (key == "kappa") cfg.kappa = parse_double(key, value);
  else if (key == "blend_r") cfg.blend_r = parse_double(key, value);
  else if (key == "pyramid_spacing") cfg.pyramid_spacing = parse_double(key, value);
  else if (key == "pyramid_levels") cfg.pyramid_levels = lower(value) == "auto" ? 0 : parse_int(key, value);
  else if (key == "pyramid_level_cap") cfg.pyramid_level_cap = parse_int(key, value);
  else if (key == "warps_per_level") cfg.warps_per_level = parse_int(key, value);
  else if (key == "pd_max_iter") cfg.pd_max_iter = parse_int(key, value);
  else if (key == "pd_tol") cfg.pd_tol = parse_double(key, value);
  else if (key == "median_coarse") cfg.median_coarse = parse_int(key, value);
  else if (key == "median_fine") cfg.median_fine = parse_int(key, value);
  else if (key == "wmf_delta") cfg.wmf_delta = parse_double(key, value);
  else if (key == "wmf_radius") cfg.wmf_radius = parse_int(key, value);
  else if (key == "wmf_enabled") cfg.wmf_enabled = parse_bool(key, value);
  else if (key == "data_term") cfg.data_term = parse_data_term(value);
  else if (key == "dual_projection") cfg.dual_projection = parse_dual_projection(value);
  else if (key == "filter_mode") cfg.filter_mode = parse_filter_mode(value);
  else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void apply_param_override(SolverConfig& cfg, const std::string& key_equals_value) {
  const auto eq = key_equals_value.find('=');
  if (eq == std::string::npos) {
    throw std::invalid_argument("config: override '" + key_equals_value +
                                "' is not of the form key=value");
  }
  apply_config_entry(cfg, trim(key_equals_value.substr(0, eq)),
                     trim(key_equals_value.substr(eq + 1)));
}

SolverConfig load_config_file(const std::string& path, SolverConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    try {
      apply_param_override(base, line);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return base;
}

std::map<std::string, std::string> config_to_map(const SolverConfig& cfg) {
  std::map<std::string, std::string> m;
  m["tau"] = format_double(cfg.tau);
  m["sigma"] = format_double(cfg.sigma);
  m["theta"] = format_double(cfg.theta);
  m["gamma"] = format_double(cfg.gamma);
  m["eta"] = format_double(cfg.eta);
  m["kappa"] = format_double(cfg.kappa);
  m["blend_r"] = format_double(cfg.blend_r);
  m["pyramid_spacing"] = format_double(cfg.pyramid_spacing);
  m["pyramid_levels"] = cfg.pyramid_levels == 0 ? "auto" : std::to_string(cfg.pyramid_levels);
  m["pyramid_level_cap"] = std::to_string(cfg.pyramid_level_cap);
  m["warps_per_level"] = std::to_string(cfg.warps_per_level);
  m["pd_max_iter"] = std::to_string(cfg.pd_max_iter);
  m["pd_tol"] = format_double(cfg.pd_tol);
  m["median_coarse"] = std::to_string(cfg.median_coarse);
  m["median_fine"] = std::to_string(cfg.median_fine);
  m["wmf_delta"] = format_double(cfg.wmf_delta);
  m["wmf_radius"] = std::to_string(cfg.wmf_radius);
  m["wmf_enabled"] = cfg.wmf_enabled ? "true" : "false";
  m["data_term"] = to_string(cfg.data_term);
  m["dual_projection"] = to_string(cfg.dual_projection);
  m["filter_mode"] = to_string(cfg.filter_mode);
  return m;
}

}  // namespace pdflow
