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

#include "elliptica/field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace elliptica {

namespace {

void check_shape(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("Field2D: rows and cols must be positive");
    }
}

void check_stencil_shape(const Field2D& u, const char* op) {
    if (u.rows() < 3 || u.cols() < 3) {
        throw std::invalid_argument(std::string(op) +
                                    ": grid must be at least 3x3, got " +
                                    std::to_string(u.rows()) + "x" +
                                    std::to_string(u.cols()));
    }
}

} // namespace

Field2D::Field2D(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {
    check_shape(rows, cols);
    if (!std::isfinite(fill)) {
        throw std::invalid_argument("Field2D: fill value must be finite");
    }
}

Field2D::Field2D(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
    check_shape(rows, cols);
    if (values_.size() != rows * cols) {
        throw std::invalid_argument("Field2D: expected " +
                                    std::to_string(rows * cols) + " values, got " +
                                    std::to_string(values_.size()));
    }
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("Field2D: values must be finite");
        }
    }
}

void laplacian_into(const Field2D& u, Field2D& out) {
    check_stencil_shape(u, "laplacian");
    if (!u.same_shape(out)) {
        throw std::invalid_argument("laplacian: output shape mismatch");
    }
    const std::size_t rows = u.rows();
    const std::size_t cols = u.cols();

    double* top = out.row(0);
    double* bottom = out.row(rows - 1);
    for (std::size_t j = 0; j < cols; ++j) {
        top[j] = 0.0;
        bottom[j] = 0.0;
    }
    for (std::size_t i = 1; i + 1 < rows; ++i) {
        const double* above = u.row(i - 1);
        const double* here = u.row(i);
        const double* below = u.row(i + 1);
        double* dst = out.row(i);
        dst[0] = 0.0;
        for (std::size_t j = 1; j + 1 < cols; ++j) {
            dst[j] = below[j] + above[j] + here[j + 1] + here[j - 1] - 4.0 * here[j];
        }
        dst[cols - 1] = 0.0;
    }
}

Field2D laplacian(const Field2D& u) {
    Field2D out(u.rows(), u.cols());
    laplacian_into(u, out);
    return out;
}

void enforce_dirichlet_in_place(Field2D& u) {
    if (u.empty()) {
        throw std::invalid_argument("enforce_dirichlet: empty field");
    }
    const std::size_t rows = u.rows();
    const std::size_t cols = u.cols();
    double* top = u.row(0);
    double* bottom = u.row(rows - 1);
    for (std::size_t j = 0; j < cols; ++j) {
        top[j] = 0.0;
        bottom[j] = 0.0;
    }
    for (std::size_t i = 0; i < rows; ++i) {
        u(i, 0) = 0.0;
        u(i, cols - 1) = 0.0;
    }
}

Field2D enforce_dirichlet(Field2D u) {
    enforce_dirichlet_in_place(u);
    return u;
}

double norm_l2(const Field2D& u) {
    double sum = 0.0;
    for (double v : u.values()) {
        sum += v * v;
    }
    return std::sqrt(sum);
}

double dot(const Field2D& a, const Field2D& b) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument("dot: shape mismatch");
    }
    double sum = 0.0;
    const double* pa = a.data();
    const double* pb = b.data();
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        sum += pa[i] * pb[i];
    }
    return sum;
}

double min_value(const Field2D& u) {
    if (u.empty()) {
        throw std::invalid_argument("min_value: empty field");
    }
    double m = u.data()[0];
    for (double v : u.values()) {
        if (v < m) m = v;
    }
    return m;
}

double max_value(const Field2D& u) {
    if (u.empty()) {
        throw std::invalid_argument("max_value: empty field");
    }
    double m = u.data()[0];
    for (double v : u.values()) {
        if (v > m) m = v;
    }
    return m;
}

} // namespace elliptica
