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

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace pdflow {

/// Reproducibility record written next to every estimated flow: the exact
/// config, input identities, convergence traces, metrics, and timings.
struct RunManifest {
  std::string tool = "pdflow";
  std::string command;
  std::map<std::string, std::string> config;

  struct InputFile {
    std::string path;
    std::uint64_t fnv1a_hash = 0;
    bool operator==(const InputFile&) const = default;
  };
  std::vector<InputFile> inputs;
  std::vector<std::string> outputs;

  struct LevelTraceRecord {
    int level_index = 0;
    std::vector<double> e;
    bool operator==(const LevelTraceRecord&) const = default;
  };
  std::vector<LevelTraceRecord> convergence;

  std::map<std::string, double> metrics;
  double wall_clock_seconds = 0.0;
  std::vector<std::string> warnings;

  bool operator==(const RunManifest&) const = default;
};

/// FNV-1a over the file bytes; identifies inputs in the manifest.
std::uint64_t fnv1a_file_hash(const std::string& path);

std::string manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const std::string& json_text);

void save_manifest(const std::string& path, const RunManifest& m);
RunManifest load_manifest(const std::string& path);

}  // namespace pdflow
