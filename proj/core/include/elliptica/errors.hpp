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

#include <stdexcept>
#include <string>

namespace elliptica {

/// Thrown when a relaxation run produces a non-finite residual. Carries the
/// 1-based iteration index at which the blow-up was detected.
class DivergenceError : public std::runtime_error {
public:
    explicit DivergenceError(int iteration)
        : std::runtime_error("solver diverged: non-finite residual at iteration " +
                             std::to_string(iteration)),
          iteration_(iteration) {}

    int iteration() const noexcept { return iteration_; }

private:
    int iteration_;
};

/// Thrown when the dense reference solve cannot produce a solution that
/// reproduces the right-hand side.
class SingularSystemError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace elliptica
