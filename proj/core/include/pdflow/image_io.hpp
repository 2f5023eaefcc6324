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
#include <string>
#include <vector>

#include "pdflow/field.hpp"

namespace pdflow {

/// 8-bit interleaved RGB image.
struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;  // 3 bytes per pixel, row-major
};

/// Loads an 8/16-bit grayscale or RGB image (PNG, PGM, or PPM), converts RGB
/// to luminance 0.299R + 0.587G + 0.114B, and scales to [0,1].
ScalarField read_image(const std::string& path);

/// Writes a [0,1] field as an 8-bit grayscale image; format chosen by
/// extension (.png or .pgm). Values are clamped then rounded.
void write_image(const std::string& path, const ScalarField& img);

/// Writes an 8-bit RGB PNG.
void write_png_rgb(const std::string& path, const RgbImage& img);

}  // namespace pdflow
