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

#include <cstddef>
#include <span>
#include <vector>

#include "elliptica/field.hpp"

namespace elliptica {

/// Three-channel image with values in [0, 1]. Storage is row-major with
/// interleaved channels: index(i, j, c) = (i*cols + j)*3 + c. Every public
/// pipeline operation keeps values inside [0, 1].
class RGBImage {
public:
    static constexpr std::size_t kChannels = 3;

    RGBImage() = default;

    RGBImage(std::size_t rows, std::size_t cols, double fill = 0.0);

    /// Adopts interleaved values (rows*cols*3 entries). Throws
    /// std::invalid_argument on size mismatch or entries outside [0, 1].
    RGBImage(std::size_t rows, std::size_t cols, std::vector<double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t pixels() const noexcept { return rows_ * cols_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    double operator()(std::size_t i, std::size_t j, std::size_t c) const {
        return values_[(i * cols_ + j) * kChannels + c];
    }
    double& operator()(std::size_t i, std::size_t j, std::size_t c) {
        return values_[(i * cols_ + j) * kChannels + c];
    }

    const double* data() const noexcept { return values_.data(); }
    double* data() noexcept { return values_.data(); }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    bool same_shape(const RGBImage& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

/// Copies channel `c` into a standalone grid function.
Field2D extract_channel(const RGBImage& img, std::size_t c);

/// Writes a grid function into channel `c`, clipping to [0, 1]. Shapes must
/// match.
void set_channel(RGBImage& img, std::size_t c, const Field2D& field);

} // namespace elliptica
