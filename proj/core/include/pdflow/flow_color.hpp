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

#include <optional>

#include "pdflow/field.hpp"
#include "pdflow/image_io.hpp"

namespace pdflow {

/// Middlebury color-wheel rendering: hue encodes direction, saturation scales
/// with magnitude/max_magnitude (99th-percentile magnitude when absent).
/// Zero flow maps to white; unknown-flow pixels render black.
RgbImage flow_to_color(const FlowField& flow,
                       std::optional<double> max_magnitude = std::nullopt);

}  // namespace pdflow
