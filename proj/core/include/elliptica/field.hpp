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

namespace elliptica {

/// Single-channel real-valued grid function on an R x C lattice with unit
/// grid spacing. Storage is row-major; (i, j) indexes (row, column).
///
/// Values are kept finite by every public operation of the library. Grids as
/// small as 1x1 are representable (image plumbing needs them); the stencil
/// operations below require at least 3 sites per axis so that the interior
/// is nonempty.
class Field2D {
public:
    Field2D() = default;

    /// Grid of the given shape filled with a constant (default 0).
    Field2D(std::size_t rows, std::size_t cols, double fill = 0.0);

    /// Grid adopting `values` (row-major, rows*cols entries). Throws
    /// std::invalid_argument on a size mismatch or non-finite entries.
    Field2D(std::size_t rows, std::size_t cols, std::vector<double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }

    double operator()(std::size_t i, std::size_t j) const {
        return values_[i * cols_ + j];
    }
    double& operator()(std::size_t i, std::size_t j) {
        return values_[i * cols_ + j];
    }

    const double* data() const noexcept { return values_.data(); }
    double* data() noexcept { return values_.data(); }

    const double* row(std::size_t i) const noexcept { return values_.data() + i * cols_; }
    double* row(std::size_t i) noexcept { return values_.data() + i * cols_; }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    bool same_shape(const Field2D& other) const noexcept {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> values_;
};

/// Five-point Laplacian with unit spacing. Interior site (i,j) receives
/// u(i+1,j)+u(i-1,j)+u(i,j+1)+u(i,j-1)-4u(i,j); boundary sites are zero so
/// the output shares the input's shape. Requires at least 3 sites per axis.
Field2D laplacian(const Field2D& u);

/// Allocation-free variant; `out` must have the shape of `u`.
void laplacian_into(const Field2D& u, Field2D& out);

/// Returns a copy with the first/last row and column set to zero.
Field2D enforce_dirichlet(Field2D u);

void enforce_dirichlet_in_place(Field2D& u);

/// Euclidean norm over all sites (fixed row-major summation order).
double norm_l2(const Field2D& u);

/// Inner product over all sites; shapes must match.
double dot(const Field2D& a, const Field2D& b);

double min_value(const Field2D& u);
double max_value(const Field2D& u);

/// Half-sample symmetric boundary fold: indices past an edge reflect back
/// with the edge sample repeated (... c b a | a b c ... | c b a ...). Total
/// for any integer index and any n >= 1.
inline std::size_t reflect_index(std::ptrdiff_t i, std::size_t n) {
    const std::ptrdiff_t period = 2 * static_cast<std::ptrdiff_t>(n);
    std::ptrdiff_t m = i % period;
    if (m < 0) m += period;
    if (m >= static_cast<std::ptrdiff_t>(n)) m = period - 1 - m;
    return static_cast<std::size_t>(m);
}

} // namespace elliptica
