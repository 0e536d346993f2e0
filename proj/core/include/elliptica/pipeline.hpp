// Copyright 2026 The Elliptica Project Developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or
// implied. See the License for the specific language governing
// permissions and limitations under the License.

#pragma once

#include <cstdint>
#include <random>

#include "elliptica/image.hpp"
#include "elliptica/solver.hpp"

namespace elliptica {

/// Non-local means parameters. The template patch is (2r+1)^2 pixels, the
/// search window (2R+1)^2, and `h` controls the decay of the patch-distance
/// weights. Invariants: r >= 1, R >= r, h > 0.
struct NLMeansParams {
    int template_radius = 3;  ///< r; 7x7 patch by default
    int search_radius = 10;   ///< R; 21x21 window by default
    double h = 15.0 / 255.0;  ///< weight decay parameter
};

/// Deterministic, portable stream of standard normal deviates.
///
/// The stream is fully pinned down so that a seed reproduces the same noise
/// everywhere: a std::mt19937_64 engine feeds the polar-free Box-Muller
/// transform. Each engine draw is mapped to a uniform in (0, 1] via
/// ((x >> 11) + 1) * 2^-53; a pair (u1, u2) yields
///   z0 = sqrt(-2 ln u1) cos(2 pi u2),  z1 = sqrt(-2 ln u1) sin(2 pi u2),
/// returned in that order.
class GaussianNoiseStream {
public:
    explicit GaussianNoiseStream(std::uint64_t seed) : engine_(seed) {}

    double next();

private:
    double uniform01(); // in (0, 1]

    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// Adds i.i.d. zero-mean Gaussian noise of standard deviation `sigma` to
/// every value, then clips to [0, 1]. Sites are visited in storage order
/// (row-major, channel minor) so a fixed seed reproduces bit-identical
/// output. sigma = 0 returns the input unchanged.
RGBImage add_gaussian_noise(const RGBImage& img, double sigma,
                            std::uint64_t seed);

/// Non-local means. Each output pixel is the weighted average of the search
/// window around it,
///   out(p) = sum_q w(p, q) img(q),
/// with one weight field shared across channels. The patch distance is the
/// mean squared difference over the 3*(2r+1)^2 patch entries (all channels),
/// and w(p, q) is proportional to exp(-dist / h^2), normalized to unit sum
/// over the window. Patches and windows extend past the image edge by
/// reflection. If every weight underflows to zero the pixel is left
/// unchanged (cannot happen in exact arithmetic: q = p has weight one).
RGBImage nl_means(const RGBImage& img, const NLMeansParams& params);

/// Per channel, replaces each pixel with the median of its k x k
/// neighborhood (reflect-padded). k must be odd and >= 3.
RGBImage median_filter(const RGBImage& img, int k);

/// Applies solve_pde independently to each channel, then clips to [0, 1].
RGBImage restore_rgb(const RGBImage& img, const SolverConfig& config);

struct PipelineResult {
    RGBImage restored;
    RGBImage noisy;
    RGBImage denoised;
};

/// Full restoration pipeline: PDE restoration, then Gaussian noise injected
/// into the restored image, then non-local means, then a median filter.
PipelineResult run_pipeline(const RGBImage& img, const SolverConfig& config,
                            double noise_sigma, std::uint64_t seed,
                            const NLMeansParams& nlm, int median_k);

} // namespace elliptica
