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

#include "elliptica/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace elliptica {

namespace {

constexpr int kWindow = 7;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

void check_same_shape(const RGBImage& a, const RGBImage& b, const char* op) {
    if (!a.same_shape(b) || a.empty()) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch");
    }
}

} // namespace

double mse(const RGBImage& a, const RGBImage& b) {
    check_same_shape(a, b, "mse");
    const double* pa = a.data();
    const double* pb = b.data();
    const std::size_t n = a.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = pa[i] - pb[i];
        sum += d * d;
    }
    return sum / static_cast<double>(n);
}

double psnr_from_mse(double mse_value) {
    if (mse_value < 0.0) {
        throw std::invalid_argument("psnr_from_mse: mse must be nonnegative");
    }
    if (mse_value == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 20.0 * std::log10(1.0 / std::sqrt(mse_value));
}

double psnr(const RGBImage& a, const RGBImage& b) {
    return psnr_from_mse(mse(a, b));
}

double ssim(const RGBImage& a, const RGBImage& b) {
    check_same_shape(a, b, "ssim");
    if (a.rows() < kWindow || a.cols() < kWindow) {
        throw std::invalid_argument("ssim: image smaller than the 7x7 window");
    }
    const std::size_t rows = a.rows();
    const std::size_t cols = a.cols();
    constexpr double inv_count = 1.0 / (kWindow * kWindow);

    double channel_mean_sum = 0.0;
    for (std::size_t c = 0; c < RGBImage::kChannels; ++c) {
        double window_sum = 0.0;
        std::size_t windows = 0;
        for (std::size_t wi = 0; wi + kWindow <= rows; ++wi) {
            for (std::size_t wj = 0; wj + kWindow <= cols; ++wj) {
                double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
                for (std::size_t i = wi; i < wi + kWindow; ++i) {
                    for (std::size_t j = wj; j < wj + kWindow; ++j) {
                        const double x = a(i, j, c);
                        const double y = b(i, j, c);
                        sx += x;
                        sy += y;
                        sxx += x * x;
                        syy += y * y;
                        sxy += x * y;
                    }
                }
                const double mx = sx * inv_count;
                const double my = sy * inv_count;
                const double vx = sxx * inv_count - mx * mx;
                const double vy = syy * inv_count - my * my;
                const double cov = sxy * inv_count - mx * my;
                const double value = ((2.0 * mx * my + kC1) * (2.0 * cov + kC2)) /
                                     ((mx * mx + my * my + kC1) * (vx + vy + kC2));
                window_sum += value;
                ++windows;
            }
        }
        channel_mean_sum += window_sum / static_cast<double>(windows);
    }
    return channel_mean_sum / static_cast<double>(RGBImage::kChannels);
}

MetricReport compare(const RGBImage& a, const RGBImage& b) {
    MetricReport report;
    report.mse = mse(a, b);
    report.psnr_db = psnr_from_mse(report.mse);
    report.ssim = ssim(a, b);
    return report;
}

std::string to_json(const MetricReport& report) {
    nlohmann::json j;
    j["mse"] = report.mse;
    if (std::isinf(report.psnr_db)) {
        j["psnr_db"] = "inf";
    } else {
        j["psnr_db"] = report.psnr_db;
    }
    j["ssim"] = report.ssim;
    return j.dump();
}

} // namespace elliptica
