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

#include "pdflow/manifest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pdflow/field.hpp"

namespace pdflow {

using nlohmann::json;

std::uint64_t fnv1a_file_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for hashing");
  std::uint64_t hash = 0xcbf29ce484222325ull;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ull;
    }
  }
  return hash;
}

std::string manifest_to_json(const RunManifest& m) {
  json j;
  j["tool"] = m.tool;
  j["command"] = m.command;
  j["config"] = m.config;
  j["inputs"] = json::array();
  for (const auto& in : m.inputs) {
    j["inputs"].push_back({{"path", in.path}, {"fnv1a_hash", in.fnv1a_hash}});
  }
  j["outputs"] = m.outputs;
  j["convergence"] = json::array();
  for (const auto& lt : m.convergence) {
    j["convergence"].push_back({{"level_index", lt.level_index}, {"e", lt.e}});
  }
  j["metrics"] = m.metrics;
  j["wall_clock_seconds"] = m.wall_clock_seconds;
  j["warnings"] = m.warnings;
  return j.dump(2);
}

RunManifest manifest_from_json(const std::string& json_text) {
  RunManifest m;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("manifest parse error: ") + e.what());
  }
  m.tool = j.value("tool", "");
  m.command = j.value("command", "");
  m.config = j.value("config", std::map<std::string, std::string>{});
  for (const auto& in : j.value("inputs", json::array())) {
    m.inputs.push_back({in.at("path").get<std::string>(),
                        in.at("fnv1a_hash").get<std::uint64_t>()});
  }
  m.outputs = j.value("outputs", std::vector<std::string>{});
  for (const auto& lt : j.value("convergence", json::array())) {
    m.convergence.push_back({lt.at("level_index").get<int>(),
                             lt.at("e").get<std::vector<double>>()});
  }
  m.metrics = j.value("metrics", std::map<std::string, double>{});
  m.wall_clock_seconds = j.value("wall_clock_seconds", 0.0);
  m.warnings = j.value("warnings", std::vector<std::string>{});
  return m;
}

void save_manifest(const std::string& path, const RunManifest& m) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << manifest_to_json(m) << "\n";
}

RunManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream oss;
  oss << in.rdbuf();
  return manifest_from_json(oss.str());
}

}  // namespace pdflow
