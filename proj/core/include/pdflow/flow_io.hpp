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

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pdflow/field.hpp"

namespace pdflow {

/// Middlebury .flo sentinel handling: the magic float decodes the "PIEH" tag;
/// values of magnitude above 1e9 mark unknown flow.
inline constexpr float kFloMagic = 202021.25f;
inline constexpr double kUnknownFlowThreshold = 1e9;
inline constexpr double kUnknownFlowValue = 1e10;

inline bool flow_value_unknown(double u1, double u2) {
  return std::abs(u1) > kUnknownFlowThreshold || std::abs(u2) > kUnknownFlowThreshold;
}

/// Reads a Middlebury .flo file: float magic, int32 width/height, then
/// interleaved (u1,u2) float32 pairs, row-major, little-endian.
FlowField read_flo(const std::string& path);

/// Writes a .flo file; values pass through float32, so flows read from file
/// round-trip bit-exactly.
void write_flo(const std::string& path, const FlowField& flow);

/// Copy of `flow` with the unknown sentinel at every zero-mask pixel.
FlowField flow_with_unknown(const FlowField& flow, const std::vector<std::uint8_t>& valid);

/// Mask of pixels whose flow is known (sentinel-free).
std::vector<std::uint8_t> mask_from_sentinels(const FlowField& flow);

}  // namespace pdflow
