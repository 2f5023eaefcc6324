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

#include <map>
#include <string>

#include "pdflow/config.hpp"

namespace pdflow {

/// Sets one field by name ("tau", "median_coarse", "data_term", ...).
/// Throws std::invalid_argument for unknown keys or unparseable values.
void apply_config_entry(SolverConfig& cfg, const std::string& key, const std::string& value);

/// Parses a "key=value" override as passed on the command line.
void apply_param_override(SolverConfig& cfg, const std::string& key_equals_value);

/// Loads a flat key=value config file ('#' starts a comment) on top of `base`.
SolverConfig load_config_file(const std::string& path, SolverConfig base = {});

/// Full field-name -> value snapshot of a config (the inverse of
/// apply_config_entry for every field).
std::map<std::string, std::string> config_to_map(const SolverConfig& cfg);

}  // namespace pdflow
