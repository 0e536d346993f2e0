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

#include <string>

#include "elliptica/image.hpp"

namespace elliptica {

/// Image quality summary. `psnr_db` is +infinity exactly when `mse` is zero.
struct MetricReport {
    double mse = 0.0;
    double psnr_db = 0.0;
    double ssim = 0.0;
};

/// Mean squared error over all sites and channels (N = rows*cols*3).
double mse(const RGBImage& a, const RGBImage& b);

/// 20 log10(1 / sqrt(mse)) for unit data range; +infinity when mse is 0.
double psnr_from_mse(double mse_value);

double psnr(const RGBImage& a, const RGBImage& b);

/// Mean structural similarity over all 7x7 sliding windows, per channel with
/// plain (uniform, population) window statistics, averaged over the three
/// channels. Stabilizers C1 = 0.01^2 and C2 = 0.03^2 for data range 1.
/// Requires at least 7 sites per axis.
double ssim(const RGBImage& a, const RGBImage& b);

/// All three metrics of `b` against reference `a`.
MetricReport compare(const RGBImage& a, const RGBImage& b);

/// {"mse":..., "psnr_db":..., "ssim":...}; an infinite PSNR is rendered as
/// the string "inf".
std::string to_json(const MetricReport& report);

} // namespace elliptica
