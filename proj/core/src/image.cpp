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

#include "elliptica/image.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace elliptica {

namespace {

void check_shape(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("RGBImage: rows and cols must be positive");
    }
}

} // namespace

RGBImage::RGBImage(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols * kChannels, fill) {
    check_shape(rows, cols);
    if (!(fill >= 0.0 && fill <= 1.0)) {
        throw std::invalid_argument("RGBImage: fill value must lie in [0, 1]");
    }
}

RGBImage::RGBImage(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    check_shape(rows, cols);
    if (values_.size() != rows * cols * kChannels) {
        throw std::invalid_argument("RGBImage: expected " +
                                    std::to_string(rows * cols * kChannels) +
                                    " values, got " + std::to_string(values_.size()));
    }
    for (double v : values_) {
        if (!(v >= 0.0 && v <= 1.0)) {
            throw std::invalid_argument("RGBImage: values must lie in [0, 1]");
        }
    }
}

Field2D extract_channel(const RGBImage& img, std::size_t c) {
    if (c >= RGBImage::kChannels) {
        throw std::invalid_argument("extract_channel: channel out of range");
    }
    if (img.empty()) {
        throw std::invalid_argument("extract_channel: empty image");
    }
    Field2D field(img.rows(), img.cols());
    const double* src = img.data() + c;
    double* dst = field.data();
    const std::size_t n = img.pixels();
    for (std::size_t p = 0; p < n; ++p) {
        dst[p] = src[p * RGBImage::kChannels];
    }
    return field;
}

void set_channel(RGBImage& img, std::size_t c, const Field2D& field) {
    if (c >= RGBImage::kChannels) {
        throw std::invalid_argument("set_channel: channel out of range");
    }
    if (field.rows() != img.rows() || field.cols() != img.cols()) {
        throw std::invalid_argument("set_channel: shape mismatch");
    }
    double* dst = img.data() + c;
    const double* src = field.data();
    const std::size_t n = img.pixels();
    for (std::size_t p = 0; p < n; ++p) {
        dst[p * RGBImage::kChannels] = std::clamp(src[p], 0.0, 1.0);
    }
}

} // namespace elliptica
