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

#include "pdflow/field.hpp"

namespace pdflow {

/// Out-of-range samples replicate the nearest edge pixel everywhere.
enum class BoundaryPolicy { ReplicateEdge };

enum class Axis { X, Y };

/// Catmull-Rom bicubic interpolation of f at real coordinates (x, y).
/// Exact at integer coordinates; coordinates outside the grid are clamped.
double bicubic_sample(const ScalarField& f, double x, double y);

/// output(x,y) = f2 sampled at (x + u1(x,y), y + u2(x,y)).
ScalarField warp_image(const ScalarField& f2, const FlowField& flow);

/// 5-point derivative filter (1/12)[-1, 8, 0, -8, 1]; a ramp f = x yields +1.
/// Requires at least 5 pixels along the requested axis.
ScalarField derivative_5pt(const ScalarField& f, Axis axis);

/// Separable Gaussian blur, kernel truncated at 4*std and renormalized.
/// std = 0 returns the input unchanged.
ScalarField gaussian_smooth(const ScalarField& f, double std);

/// Bicubic resampling onto a new_w x new_h grid (pixel-center mapping).
/// Downsampling is preceded by a Gaussian blur with std = 0.5*(factor - 1)
/// per axis, where factor = old/new.
ScalarField resample(const ScalarField& f, int new_w, int new_h);

/// Adds seeded N(0, variance) noise per pixel and clamps to [0,1].
ScalarField add_gaussian_noise(const ScalarField& f, double variance, std::uint64_t seed);

/// Replaces each pixel by 0 or 1 (equal probability) with probability density.
ScalarField add_salt_pepper_noise(const ScalarField& f, double density, std::uint64_t seed);

/// 10*log10(1/MSE) for [0,1] images; +infinity when the images are identical.
double psnr(const ScalarField& clean, const ScalarField& noisy);

}  // namespace pdflow
