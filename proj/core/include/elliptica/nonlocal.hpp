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

#include <vector>

#include "elliptica/field.hpp"

namespace elliptica {

/// Discrete Gaussian smoothing kernel. `taps` holds the 1-D weights over
/// offsets [-truncation_radius, +truncation_radius]; the 2-D kernel is the
/// outer product of `taps` with itself. After construction the taps are
/// symmetric, nonnegative, and sum to one, so the induced averaging operator
/// has unit mass.
struct KernelSpec {
    double sigma = 0.0;
    int truncation_radius = 0;
    std::vector<double> taps;
};

/// Samples exp(-k^2 / (2 sigma^2)) over |k| <= ceil(4 sigma) and normalizes
/// to unit sum. Throws std::invalid_argument for sigma <= 0.
KernelSpec make_gaussian_kernel(double sigma);

/// Same, with an explicit truncation radius (>= 1).
KernelSpec make_gaussian_kernel(double sigma, int truncation_radius);

/// Separable convolution of `u` with the kernel, rows then columns, using
/// half-sample symmetric (reflect) boundary extension. Output shape equals
/// input shape. The induced linear map is symmetric and, for unit-mass taps,
/// contracts the Euclidean norm.
Field2D gaussian_convolve(const Field2D& u, const KernelSpec& kernel);

/// Allocation-free variant; `scratch` and `out` must match the shape of `u`.
void gaussian_convolve_into(const Field2D& u, const KernelSpec& kernel,
                            Field2D& scratch, Field2D& out);

/// Row-sum bound M of the induced averaging map, i.e. the per-axis tap mass
/// sum_k |taps[k]|. Equals one for kernels built by make_gaussian_kernel,
/// which certifies |G(u)|_2 <= |u|_2.
double operator_mass(const KernelSpec& kernel);

} // namespace elliptica
